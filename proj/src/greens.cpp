#include "spincoh/greens.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "spincoh/errors.hpp"

namespace spincoh {

namespace {
constexpr double kSpeedOfLight = 299792458.0;
const Complex kI{0.0, 1.0};
} // namespace

Mat3c& Mat3c::operator+=(const Mat3c& o) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] += o.m[i][j];
    return *this;
}

Mat3c Mat3c::operator*(Complex s) const {
    Mat3c r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] * s;
    return r;
}

Mat3c Mat3c::transposed() const {
    Mat3c r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
}

double Mat3c::max_abs() const {
    double v = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) v = std::max(v, std::abs(m[i][j]));
    return v;
}

Mat3c reflection_components(double K, double phi, double omega, double z, double zp,
                            const LayerStack& stack) {
    if (!(z > 0.0) || !(zp > 0.0))
        throw DomainError("reflection_components: both points must lie in the vacuum region");
    if (K < 0.0) throw DomainError("reflection_components: K must be >= 0");
    const double k1 = omega / kSpeedOfLight;
    const Complex k1z = normal_wavenumber(omega, K, {1.0, 0.0});
    const Complex rs = stack_reflection(stack, omega, K, Polarization::TE);
    const Complex rp = stack_reflection(stack, omega, K, Polarization::TM);
    const Complex pref = kI * std::exp(kI * k1z * (z + zp)) / (2.0 * k1z);
    const double c = std::cos(phi), s = std::sin(phi);

    Mat3c R;
    // TE block: r^TE s-hat s-hat with s-hat = (-sin, cos, 0)
    R(0, 0) += rs * (s * s);
    R(0, 1) += rs * (-c * s);
    R(1, 0) += rs * (-c * s);
    R(1, 1) += rs * (c * c);
    // TM block: r^TM/k1^2 * (-k1z k-hat|| + K z-hat)(k1z k-hat|| + K z-hat)
    const Complex t = rp / (k1 * k1);
    R(0, 0) += t * (-k1z * k1z * c * c);
    R(0, 1) += t * (-k1z * k1z * c * s);
    R(1, 0) += t * (-k1z * k1z * c * s);
    R(1, 1) += t * (-k1z * k1z * s * s);
    R(0, 2) += t * (-k1z * K * c);
    R(1, 2) += t * (-k1z * K * s);
    R(2, 0) += t * (k1z * K * c);
    R(2, 1) += t * (k1z * K * s);
    R(2, 2) += t * (K * K);
    return R * pref;
}

Mat3c magnetic_weyl_integrand(double K, double phi, double omega, double d,
                              const LayerStack& stack, bool quasi_static) {
    if (!(d > 0.0)) throw DomainError("magnetic_weyl_integrand: d must be positive");
    if (!(K > 0.0)) throw DomainError("magnetic_weyl_integrand: K must be positive");
    const double k1 = omega / kSpeedOfLight;
    const Complex k1z = quasi_static ? Complex(0.0, K) : normal_wavenumber(omega, K, {1.0, 0.0});
    const Complex rs = stack_reflection(stack, omega, K, Polarization::TE);
    const Complex rp = stack_reflection(stack, omega, K, Polarization::TM);
    const Complex pref = quasi_static ? Complex(std::exp(-2.0 * K * d) / (2.0 * K), 0.0)
                                      : kI * std::exp(2.0 * kI * k1z * d) / (2.0 * k1z);
    const double c = std::cos(phi), s = std::sin(phi);
    // (k_f x s-hat) = (-k1z c, -k1z s, K); (s-hat x k_s) = (k1z c, k1z s, K)
    const Complex u[3] = {-k1z * c, -k1z * s, Complex(K, 0.0)};
    const Complex v[3] = {k1z * c, k1z * s, Complex(K, 0.0)};
    // TM: (k_f x p+)(p- x k_s) = k1^2 (s, -c, 0)(s, -c, 0)
    const double w[3] = {s, -c, 0.0};

    Mat3c H;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            H(i, j) = pref * (rs * u[i] * v[j] + rp * (k1 * k1) * w[i] * w[j]);
    return H;
}

namespace {

// Radial integrand components after the analytic phi integration; separation l
// along `axis`. Components: 0 diag-xx, 1 diag-yy, 2 diag-zz, 3 the single TE
// k1z*K coupling entry (xz for axis X, yz for axis Y); its partner is -that.
struct RadialParams {
    double l, d, omega;
    const LayerStack* stack;
    bool quasi_static;
    SeparationAxis axis;
};

void radial_integrand(const RadialParams& p, double K, Complex* out) {
    const double k1 = p.omega / kSpeedOfLight;
    const Complex k1z =
        p.quasi_static ? Complex(0.0, K) : normal_wavenumber(p.omega, K, {1.0, 0.0});
    const Complex rs = stack_reflection(*p.stack, p.omega, K, Polarization::TE);
    const Complex rp = stack_reflection(*p.stack, p.omega, K, Polarization::TM);
    const Complex pref = p.quasi_static
                             ? Complex(std::exp(-2.0 * K * p.d) / (2.0 * K), 0.0)
                             : kI * std::exp(2.0 * kI * k1z * p.d) / (2.0 * k1z);
    const double x = K * p.l;
    const double J0 = bessel_j(0, x);
    const double J1 = bessel_j(1, x);
    const double J2 = bessel_j(2, x);
    // along-axis diagonal gets (J0 - J2), transverse (J0 + J2)
    const double Jm = J0 - J2, Jp = J0 + J2;
    const double along = (p.axis == SeparationAxis::X) ? Jm : Jp;
    const double trans = (p.axis == SeparationAxis::X) ? Jp : Jm;
    const Complex te_k1z2 = -k1z * k1z;
    const Complex xx = rs * te_k1z2 * M_PI * along + rp * (k1 * k1) * M_PI * trans;
    const Complex yy = rs * te_k1z2 * M_PI * trans + rp * (k1 * k1) * M_PI * along;
    const Complex zz = rs * (K * K) * 2.0 * M_PI * J0;
    const Complex cpl = rs * (-k1z * K) * 2.0 * M_PI * kI * J1;
    const Complex weight = K * pref / (4.0 * M_PI * M_PI);
    out[0] = weight * xx;
    out[1] = weight * yy;
    out[2] = weight * zz;
    out[3] = weight * cpl;
}

Mat3c assemble(const Complex comp[4], SeparationAxis axis) {
    Mat3c H;
    H(0, 0) = comp[0];
    H(1, 1) = comp[1];
    H(2, 2) = comp[2];
    if (axis == SeparationAxis::X) {
        H(0, 2) = comp[3];
        H(2, 0) = -comp[3];
    } else {
        H(1, 2) = comp[3];
        H(2, 1) = -comp[3];
    }
    return H;
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

std::pair<Mat3c, QuadratureReport> magnetic_kernel(double l, double d, double omega,
                                                   const LayerStack& stack,
                                                   const KernelOptions& opt) {
    if (l < 0.0) throw DomainError("magnetic_kernel: l must be >= 0");
    if (!(d > 0.0)) throw DomainError("magnetic_kernel: d must be positive");
    if (!(opt.tol > 0.0)) throw DomainError("magnetic_kernel: tol must be positive");
    RadialParams p{l, d, omega, &stack, opt.quasi_static, opt.axis};

    Interval iv;
    iv.lo = 0.0;
    iv.hi = std::numeric_limits<double>::infinity();
    iv.decay_rate = 2.0 * d;
    const double delta = min_skin_depth(stack);
    iv.truncation_hint = std::max(60.0 / (2.0 * d), delta > 0.0 ? 20.0 / delta : 0.0);

    ToleranceSpec tol;
    tol.rel = opt.tol;
    tol.abs = 0.0;
    tol.max_evals = opt.max_evals;

    Complex comp[4];
    auto report = integrate_adaptive_vec(
        [&p](double K, Complex* out) { radial_integrand(p, K, out); }, 4, comp, iv, tol);
    if (!report.converged && opt.throw_on_failure) {
        std::ostringstream os;
        os << "magnetic_kernel: quadrature budget exhausted at l=" << l << " d=" << d
           << " (estimated rel error " << report.rel_error << ")";
        throw QuadratureError(os.str(), std::abs(comp[2]), report.rel_error);
    }
    return {assemble(comp, opt.axis), report};
}

Mat3c brute_force_kernel(double l, double d, double omega, const LayerStack& stack,
                         const BruteGrid& grid, bool quasi_static, SeparationAxis axis) {
    if (!(d > 0.0)) throw DomainError("brute_force_kernel: d must be positive");
    const double kmax = grid.kmax > 0.0 ? grid.kmax : 50.0 / (2.0 * d);
    const int n = grid.panels;
    if (n < 2) throw DomainError("brute_force_kernel: need at least 2 panels");

    // 15-point Gauss-Legendre nodes per panel, edges graded toward the origin
    // where |k| is only C0 in (kx, ky).
    static const double gl_x[15] = {
        -0.987992518020485428, -0.937273392400705904, -0.848206583410427216,
        -0.724417731360170047, -0.570972172608538848, -0.394151347077563370,
        -0.201194093997434522, 0.0,                   0.201194093997434522,
        0.394151347077563370,  0.570972172608538848,  0.724417731360170047,
        0.848206583410427216,  0.937273392400705904,  0.987992518020485428};
    static const double gl_w[15] = {
        0.0307532419961172684, 0.0703660474881081247, 0.107159220467171935,
        0.139570677926154314,  0.166269205816993934,  0.186161000015562211,
        0.198431485327111576,  0.202578241925561273,  0.198431485327111576,
        0.186161000015562211,  0.166269205816993934,  0.139570677926154314,
        0.107159220467171935,  0.0703660474881081247, 0.0307532419961172684};

    std::vector<double> nodes, weights;
    nodes.reserve(2 * 15 * n);
    weights.reserve(2 * 15 * n);
    for (int i = 0; i < n; ++i) {
        const double a = kmax * std::pow(static_cast<double>(i) / n, grid.grade);
        const double b = kmax * std::pow(static_cast<double>(i + 1) / n, grid.grade);
        for (int q = 0; q < 15; ++q) {
            nodes.push_back(0.5 * (a + b) + 0.5 * (b - a) * gl_x[q]);
            weights.push_back(0.5 * (b - a) * gl_w[q]);
        }
    }
    const std::size_t half = nodes.size();
    for (std::size_t i = 0; i < half; ++i) {
        nodes.push_back(-nodes[i]);
        weights.push_back(weights[i]);
    }

    // Outer loop runs over the separation-carrying coordinate so the e^{i k l}
    // phase factors out of the inner sum.
    Mat3c H;
    for (std::size_t ia = 0; ia < nodes.size(); ++ia) {
        const double kpar = nodes[ia];
        Mat3c row;
        for (std::size_t ib = 0; ib < nodes.size(); ++ib) {
            const double kperp = nodes[ib];
            const double kx = (axis == SeparationAxis::X) ? kpar : kperp;
            const double ky = (axis == SeparationAxis::X) ? kperp : kpar;
            const double K = std::hypot(kx, ky);
            if (K <= 0.0) continue;
            const double phi = std::atan2(ky, kx);
            row += magnetic_weyl_integrand(K, phi, omega, d, stack, quasi_static) * weights[ib];
        }
        H += row * (weights[ia] * std::exp(kI * kpar * l));
    }
    return H * (1.0 / (4.0 * M_PI * M_PI));
}

double tm_fraction(double d, double omega, const LayerStack& stack, double tol) {
    const double k1 = omega / kSpeedOfLight;
    auto part = [&](bool tm) {
        Interval iv{0.0, std::numeric_limits<double>::infinity(), 2.0 * d,
                    std::max(60.0 / (2.0 * d),
                             min_skin_depth(stack) > 0 ? 20.0 / min_skin_depth(stack) : 0.0)};
        auto f = [&](double K) -> Complex {
            const Complex pref{std::exp(-2.0 * K * d) / (2.0 * K), 0.0};
            const Complex r = stack_reflection(stack, omega, K,
                                               tm ? Polarization::TM : Polarization::TE);
            const Complex ang = tm ? Complex(k1 * k1 * M_PI, 0.0) : Complex(K * K * M_PI, 0.0);
            return K * pref * r * ang / (4.0 * M_PI * M_PI);
        };
        ToleranceSpec ts;
        ts.rel = tol;
        return integrate_adaptive(f, iv, ts).first;
    };
    const double te = std::abs(part(false).imag());
    const double tm = std::abs(part(true).imag());
    return te > 0.0 ? tm / te : 0.0;
}

} // namespace spincoh
