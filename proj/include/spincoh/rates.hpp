#pragma once

#include <span>
#include <utility>
#include <vector>

#include "spincoh/atomics.hpp"
#include "spincoh/constants.hpp"
#include "spincoh/greens.hpp"
#include "spincoh/layered.hpp"

namespace spincoh {

struct RateResult {
    double gamma12 = 0.0;       // 1/s (thermal when requested)
    double delta_omega = 0.0;   // rad/s
    double thermal_factor = 1.0; // n_bar + 1
    QuadratureReport report;
};

struct CoherenceResult {
    double S = 0.0;
    double l = 0.0, d = 0.0;
    std::vector<std::pair<double, double>> rho12_samples; // (t, value)
    double small_l_coeff = 0.0; // 1/m^2
    QuadratureReport report;
};

struct AsymptoticFit {
    double exponent = 0.0;
    double residual = 0.0;
};

// Diagonal density-matrix elements stay normalized for the two-level transition.
inline constexpr double kRho11 = 1.0;
inline constexpr double kRho22 = 1.0;

struct RateOptions {
    double tol = 1e-8;
    bool quasi_static = true;
    SeparationAxis axis = SeparationAxis::X;
    long max_evals = 400000;
};

// Zero-temperature spin-flip rate from the closed-form radial quadrature
// (3 pi/ (2 pi)^2) (mu_B g_S)^2/(8 c^2 eps0 hbar) Int K^2 dK e^{-2Kd}/2 Im r^TE.
std::pair<double, QuadratureReport>
gamma12_closed_form(double d, double omega_A, const LayerStack& stack,
                    const PhysicalConstants& k = PhysicalConstants::codata2018(),
                    const RateOptions& opt = {});

// General contraction 2 (mu_B g_S)^2/(c^2 eps0 hbar) <f|S_q|i><i|S_k|f> Im H_qk(0,d).
double gamma_general(double d, double omega_A, const LayerStack& stack,
                     const SpinVector& spin_elements,
                     const PhysicalConstants& k = PhysicalConstants::codata2018(),
                     const RateOptions& opt = {});

// Two-site rate for distinct heights: arithmetic mean of the one-site rates.
double gamma12_two_site(double d1, double d2, double omega_A, const LayerStack& stack,
                        const SpinVector& spin_elements,
                        const PhysicalConstants& k = PhysicalConstants::codata2018(),
                        const RateOptions& opt = {});

// Line shift: same contraction with Re H and half the rate prefactor. Computed but
// never folded back into omega_A downstream.
double line_shift(double d, double omega_A, const LayerStack& stack,
                  const SpinVector& spin_elements,
                  const PhysicalConstants& k = PhysicalConstants::codata2018(),
                  const RateOptions& opt = {});

// rate * (n_bar(omega_A, T) + 1)
double apply_thermal(double rate, double omega_A, double temperature,
                     const PhysicalConstants& k = PhysicalConstants::codata2018());

// Spatial coherence S(l) = contraction[Im H(l,d)] / contraction[Im H(0,d)];
// S(0) = 1 by construction and S is temperature independent.
double coherence_S(double l, double d, double omega_A, const LayerStack& stack,
                   const SpinVector& spin_elements,
                   const PhysicalConstants& k = PhysicalConstants::codata2018(),
                   const RateOptions& opt = {});

// Caches the coincident-point denominator so S(l) costs one kernel per call.
class CoherenceEvaluator {
public:
    CoherenceEvaluator(double d, double omega_A, const LayerStack& stack,
                       const SpinVector& spin_elements,
                       const PhysicalConstants& k = PhysicalConstants::codata2018(),
                       const RateOptions& opt = {});
    double S(double l) const;
    double gamma0() const { return gamma0_; } // zero-T rate from the same contraction
    const QuadratureReport& denominator_report() const { return report_; }

private:
    double d_, omega_;
    const LayerStack stack_;
    SpinVector elements_;
    PhysicalConstants constants_;
    RateOptions opt_;
    double denom_;
    double gamma0_;
    QuadratureReport report_;
};

// rho12(t) = e^{-Gamma t} + (1 - e^{-Gamma t}) S with the thermal rate.
double rho12(double t, double l, double d, double omega_A, const LayerStack& stack,
             const SpinVector& spin_elements, double temperature,
             const PhysicalConstants& k = PhysicalConstants::codata2018(),
             const RateOptions& opt = {});

// c2 = (5/96) Gamma''(d)/Gamma(d) via central differences (h = d/200) with one
// Richardson level; S(l) = 1 - c2 l^2 + O(l^4).
double small_l_coefficient(double d, double omega_A, const LayerStack& stack,
                           const PhysicalConstants& k = PhysicalConstants::codata2018(),
                           const RateOptions& opt = {});

// Linearized short-time loss |rho12(t) - 1| ~= (5 alpha l^2 / 48 d^2) t Gamma12,
// valid for t << 1/Gamma12 (document: t < tau/10).
double short_time_decoherence(double t, double l, double d, double gamma12, double alpha);

// l such that S(l) = 1/2; bisection to 1e-4 relative on an auto-expanded
// bracket capped at 32 d.
double half_coherence_length(double d, double omega_A, const LayerStack& stack,
                             const SpinVector& spin_elements,
                             const PhysicalConstants& k = PhysicalConstants::codata2018(),
                             const RateOptions& opt = {});

// Least-squares exponent n of Gamma ~ d^-n from log-log data.
AsymptoticFit fit_asymptotic_exponent(std::span<const double> ds, std::span<const double> gammas);

} // namespace spincoh
