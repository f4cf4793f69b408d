#include "spincoh/rates.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "spincoh/errors.hpp"
#include "spincoh/numerics.hpp"

namespace spincoh {

namespace {

double rate_prefactor(const PhysicalConstants& k) {
    const double mg = k.mu_B * k.g_S;
    return 2.0 * mg * mg / (k.c * k.c * k.eps0 * k.hbar);
}

// Sum_qk conj(A_q) A_k Im(M_qk): the rate-like contraction. Real up to the
// imaginary residue tracked by the reality tests.
Complex contract_im(const SpinVector& a, const Mat3c& m) {
    Complex s = 0.0;
    for (int q = 0; q < 3; ++q)
        for (int kk = 0; kk < 3; ++kk) s += std::conj(a[q]) * a[kk] * m(q, kk).imag();
    return s;
}

Complex contract_re(const SpinVector& a, const Mat3c& m) {
    Complex s = 0.0;
    for (int q = 0; q < 3; ++q)
        for (int kk = 0; kk < 3; ++kk) s += std::conj(a[q]) * a[kk] * m(q, kk).real();
    return s;
}

KernelOptions kernel_opts(const RateOptions& o) {
    KernelOptions ko;
    ko.tol = o.tol;
    ko.quasi_static = o.quasi_static;
    ko.axis = o.axis;
    ko.max_evals = o.max_evals;
    return ko;
}

double min_skin_depth(const LayerStack& stack) {
    double smallest = 0.0;
    for (const auto& layer : stack.layers())
        if (layer.model.kind == PermittivityModel::Kind::DrudeSkinDepth)
            smallest = smallest == 0.0 ? layer.model.skin_depth
                                       : std::min(smallest, layer.model.skin_depth);
    return smallest;
}

} // namespace

std::pair<double, QuadratureReport> gamma12_closed_form(double d, double omega_A,
                                                        const LayerStack& stack,
                                                        const PhysicalConstants& k,
                                                        const RateOptions& opt) {
    if (!(d > 0.0)) throw DomainError("gamma12_closed_form: d must be positive");
    const double mg = k.mu_B * k.g_S;
    const double pref = mg * mg / (8.0 * k.c * k.c * k.eps0 * k.hbar) * 3.0 * M_PI /
                        (4.0 * M_PI * M_PI);
    Interval iv;
    iv.lo = 0.0;
    iv.hi = std::numeric_limits<double>::infinity();
    iv.decay_rate = 2.0 * d;
    const double delta = min_skin_depth(stack);
    iv.truncation_hint = std::max(60.0 / (2.0 * d), delta > 0.0 ? 20.0 / delta : 0.0);
    ToleranceSpec tol;
    tol.rel = opt.tol;
    tol.max_evals = opt.max_evals;
    auto f = [&](double K) -> Complex {
        const double im_r = stack_reflection(stack, omega_A, K, Polarization::TE).imag();
        return {K * K * std::exp(-2.0 * K * d) * 0.5 * im_r, 0.0};
    };
    auto [val, report] = integrate_adaptive(f, iv, tol);
    if (!report.converged) {
        std::ostringstream os;
        os << "gamma12_closed_form: quadrature budget exhausted at d=" << d;
        throw QuadratureError(os.str(), pref * val.real(), report.rel_error);
    }
    return {pref * val.real(), report};
}

double gamma_general(double d, double omega_A, const LayerStack& stack,
                     const SpinVector& spin_elements, const PhysicalConstants& k,
                     const RateOptions& opt) {
    auto [H, report] = magnetic_kernel(0.0, d, omega_A, stack, kernel_opts(opt));
    return rate_prefactor(k) * contract_im(spin_elements, H).real();
}

double gamma12_two_site(double d1, double d2, double omega_A, const LayerStack& stack,
                        const SpinVector& spin_elements, const PhysicalConstants& k,
                        const RateOptions& opt) {
    if (d1 == d2) return gamma_general(d1, omega_A, stack, spin_elements, k, opt);
    return 0.5 * (gamma_general(d1, omega_A, stack, spin_elements, k, opt) +
                  gamma_general(d2, omega_A, stack, spin_elements, k, opt));
}

double line_shift(double d, double omega_A, const LayerStack& stack,
                  const SpinVector& spin_elements, const PhysicalConstants& k,
                  const RateOptions& opt) {
    auto [H, report] = magnetic_kernel(0.0, d, omega_A, stack, kernel_opts(opt));
    return 0.5 * rate_prefactor(k) * contract_re(spin_elements, H).real();
}

double apply_thermal(double rate, double omega_A, double temperature,
                     const PhysicalConstants& k) {
    if (rate < 0.0) throw DomainError("apply_thermal: negative rate");
    return rate * (thermal_photon_number(omega_A, temperature, k) + 1.0);
}

CoherenceEvaluator::CoherenceEvaluator(double d, double omega_A, const LayerStack& stack,
                                       const SpinVector& spin_elements,
                                       const PhysicalConstants& k, const RateOptions& opt)
    : d_(d), omega_(omega_A), stack_(stack), elements_(spin_elements), constants_(k),
      opt_(opt) {
    auto [H0, report] = magnetic_kernel(0.0, d_, omega_, stack_, kernel_opts(opt_));
    report_ = report;
    denom_ = contract_im(elements_, H0).real();
    gamma0_ = rate_prefactor(constants_) * denom_;
    if (denom_ == 0.0)
        throw SingularityError("coherence_S: Gamma12 vanishes, the ratio is degenerate");
}

double CoherenceEvaluator::S(double l) const {
    auto [Hl, report] = magnetic_kernel(l, d_, omega_, stack_, kernel_opts(opt_));
    return contract_im(elements_, Hl).real() / denom_;
}

double coherence_S(double l, double d, double omega_A, const LayerStack& stack,
                   const SpinVector& spin_elements, const PhysicalConstants& k,
                   const RateOptions& opt) {
    if (l < 0.0) throw DomainError("coherence_S: l must be >= 0");
    if (l == 0.0) return 1.0;
    return CoherenceEvaluator(d, omega_A, stack, spin_elements, k, opt).S(l);
}

double rho12(double t, double l, double d, double omega_A, const LayerStack& stack,
             const SpinVector& spin_elements, double temperature, const PhysicalConstants& k,
             const RateOptions& opt) {
    if (t < 0.0) throw DomainError("rho12: t must be >= 0");
    if (t == 0.0) return 1.0;
    CoherenceEvaluator ev(d, omega_A, stack, spin_elements, k, opt);
    const double S = (l == 0.0) ? 1.0 : ev.S(l);
    const double gamma = apply_thermal(ev.gamma0(), omega_A, temperature, k);
    const double decay = std::exp(-gamma * t);
    return decay + (1.0 - decay) * S;
}

double small_l_coefficient(double d, double omega_A, const LayerStack& stack,
                           const PhysicalConstants& k, const RateOptions& opt) {
    if (!(d > 0.0)) throw DomainError("small_l_coefficient: d must be positive");
    RateOptions tight = opt;
    tight.tol = std::min(opt.tol, 1e-11); // FD noise floor well below the h^2 truncation
    auto gamma = [&](double x) { return gamma12_closed_form(x, omega_A, stack, k, tight).first; };
    const double g0 = gamma(d);
    const double d2 = second_derivative(gamma, d, d / 200.0, /*richardson=*/true);
    return (5.0 / 96.0) * d2 / g0;
}

double short_time_decoherence(double t, double l, double d, double gamma12, double alpha) {
    if (t < 0.0 || l < 0.0 || !(d > 0.0)) throw DomainError("short_time_decoherence: bad input");
    return (5.0 * alpha * l * l) / (48.0 * d * d) * (t * gamma12);
}

double half_coherence_length(double d, double omega_A, const LayerStack& stack,
                             const SpinVector& spin_elements, const PhysicalConstants& k,
                             const RateOptions& opt) {
    CoherenceEvaluator ev(d, omega_A, stack, spin_elements, k, opt);
    double hi = d;
    double s_hi = ev.S(hi);
    while (s_hi > 0.5) {
        hi *= 2.0;
        if (hi > 32.0 * d) {
            std::ostringstream os;
            os << "half_coherence_length: no S=1/2 crossing in [0, 32 d]; S(0)=1, S("
               << hi / 2.0 << ")=" << s_hi;
            throw BracketError(os.str(), 1.0, s_hi);
        }
        s_hi = ev.S(hi);
    }
    return bisect([&](double l) { return ev.S(l) - 0.5; }, 0.0, hi, 1e-4, 0.0);
}

AsymptoticFit fit_asymptotic_exponent(std::span<const double> ds,
                                      std::span<const double> gammas) {
    auto [slope, residual] = loglog_slope(ds, gammas);
    return AsymptoticFit{-slope, residual};
}

} // namespace spincoh
