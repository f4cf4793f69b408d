#pragma once

#include <complex>
#include <functional>
#include <span>
#include <utility>

namespace spincoh {

struct ToleranceSpec {
    double rel = 1e-8;
    double abs = 0.0;
    long max_evals = 2000000;
};

struct QuadratureReport {
    double rel_error = 0.0;     // estimated relative error of the returned value
    long evaluations = 0;       // integrand evaluations
    long subdivisions = 0;      // interval splits performed
    bool converged = true;
};

// Integration domain. hi may be +infinity, in which case decay_rate (>0) must give
// the asymptotic exponential damping e^{-decay_rate * x} of |f| so the tail can be
// bounded analytically; truncation_hint, when positive, overrides the automatic cutoff.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double decay_rate = 0.0;
    double truncation_hint = 0.0;
};

using ComplexIntegrand = std::function<std::complex<double>(double)>;

// Globally adaptive Gauss(7)/Kronrod(15) quadrature on dyadic subdivisions.
// Converges when the summed error estimate meets tol.rel (relative to the accumulated
// value) or tol.abs; on budget exhaustion returns the partial result with
// report.converged = false. Deterministic: fixed summation order.
std::pair<std::complex<double>, QuadratureReport>
integrate_adaptive(const ComplexIntegrand& f, Interval iv, ToleranceSpec tol = {});

// Vector-valued variant used by the Green-tensor kernels: f fills n components.
using VectorIntegrand = std::function<void(double, std::complex<double>*)>;
QuadratureReport integrate_adaptive_vec(const VectorIntegrand& f, int n,
                                        std::complex<double>* out, Interval iv,
                                        ToleranceSpec tol = {});

// Bessel functions J0, J1, J2. Power series below x = 8, Chebyshev-corrected
// asymptotic form beyond (frozen coefficient tables); |error| <= 1e-13 for x <= 1e3.
double bessel_j(int n, double x);

// Bisection root finding on [bracket_lo, bracket_hi]; requires a sign change.
// Stops when the bracket width falls below max(tol_abs, tol_rel*|mid|).
double bisect(const std::function<double(double)>& f, double bracket_lo, double bracket_hi,
              double tol_rel = 1e-12, double tol_abs = 0.0);

// Second derivative by central differences; one Richardson level when requested.
double second_derivative(const std::function<double(double)>& f, double x, double h,
                         bool richardson = true);

// Least-squares slope of log(y) vs log(x) and the RMS of the log residuals.
std::pair<double, double> loglog_slope(std::span<const double> xs, std::span<const double> ys);

} // namespace spincoh
