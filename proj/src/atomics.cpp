#include "spincoh/atomics.hpp"

#include <cmath>
#include <utility>

#include "spincoh/errors.hpp"

namespace spincoh {

AtomTransition::AtomTransition(double omega, const SpinVector& elements, std::string name)
    : omega_A(omega), spin_elements(elements), label(std::move(name)) {
    if (!(omega_A > 0.0)) throw DomainError("AtomTransition: omega_A must be positive");
    double norm = 0.0;
    for (const auto& e : spin_elements) norm += std::norm(e);
    if (norm == 0.0) throw DomainError("AtomTransition: spin elements all zero");
}

AtomTransition AtomTransition::default_rb87() {
    return AtomTransition(2.0 * M_PI * 560e3,
                          {std::complex<double>(0.0, 0.0), std::complex<double>(0.0, 0.25),
                           std::complex<double>(0.25, 0.0)},
                          "rb87 |2,2> -> |2,1>");
}

ThermalState ThermalState::make(double temperature, double omega, const PhysicalConstants& k) {
    if (temperature < 0.0) throw DomainError("ThermalState: negative temperature");
    return ThermalState{temperature, thermal_photon_number(omega, temperature, k)};
}

TrapField::TrapField(double b0) : B0(b0) {
    if (B0 < 0.0) throw DomainError("TrapField: negative bias field");
}

double larmor_frequency(double B0, const PhysicalConstants& k) {
    if (B0 < 0.0) throw DomainError("larmor_frequency: negative bias field");
    return k.g_S * k.mu_B * B0 / k.hbar;
}

double thermal_photon_number(double omega, double temperature, const PhysicalConstants& k) {
    if (!(omega > 0.0)) throw DomainError("thermal_photon_number: omega must be positive");
    if (temperature < 0.0) throw DomainError("thermal_photon_number: negative temperature");
    if (temperature == 0.0) return 0.0;
    return 1.0 / std::expm1(k.hbar * omega / (k.k_B * temperature));
}

namespace {

bool is_half_integral(double x) {
    return std::abs(2.0 * x - std::round(2.0 * x)) < 1e-9;
}

// log n! for small n
double lfact(int n) { return std::lgamma(n + 1.0); }

int as2(double x) { return static_cast<int>(std::llround(2.0 * x)); } // doubled value

} // namespace

double clebsch_gordan(double j1, double m1, double j2, double m2, double J, double M) {
    for (double v : {j1, m1, j2, m2, J, M})
        if (!is_half_integral(v)) throw DomainError("clebsch_gordan: non-half-integral argument");
    if (j1 < 0 || j2 < 0 || J < 0) throw DomainError("clebsch_gordan: negative spin");
    if (std::abs(m1) > j1 + 1e-9 || std::abs(m2) > j2 + 1e-9 || std::abs(M) > J + 1e-9)
        throw DomainError("clebsch_gordan: |m| exceeds j");
    if ((as2(j1) + as2(m1)) % 2 || (as2(j2) + as2(m2)) % 2 || (as2(J) + as2(M)) % 2)
        throw DomainError("clebsch_gordan: m not compatible with j");
    if (as2(m1) + as2(m2) != as2(M)) return 0.0;
    if (J > j1 + j2 + 1e-9 || J < std::abs(j1 - j2) - 1e-9) return 0.0;
    if ((as2(j1) + as2(j2) + as2(J)) % 2) return 0.0; // integer perimeter required

    // Racah's closed form, evaluated with log-factorials.
    const int tj1 = as2(j1), tj2 = as2(j2), tJ = as2(J);
    const int tm1 = as2(m1), tm2 = as2(m2), tM = as2(M);
    auto f = [](int twice) { return lfact(twice / 2); };
    const double logpre =
        0.5 * (std::log(tJ + 1.0) + f(tj1 + tj2 - tJ) + f(tj1 - tj2 + tJ) + f(-tj1 + tj2 + tJ) -
               f(tj1 + tj2 + tJ + 2) + f(tj1 + tm1) + f(tj1 - tm1) + f(tj2 + tm2) + f(tj2 - tm2) +
               f(tJ + tM) + f(tJ - tM));
    double sum = 0.0;
    const int kmin = std::max({0, (tj2 - tJ - tm1) / 2, (tj1 - tJ + tm2) / 2});
    const int kmax = std::min({(tj1 + tj2 - tJ) / 2, (tj1 - tm1) / 2, (tj2 + tm2) / 2});
    for (int k = kmin; k <= kmax; ++k) {
        const double logden = lfact(k) + f(tj1 + tj2 - tJ - 2 * k) + f(tj1 - tm1 - 2 * k) +
                              f(tj2 + tm2 - 2 * k) + f(tJ - tj2 + tm1 + 2 * k) +
                              f(tJ - tj1 - tm2 + 2 * k);
        sum += (k % 2 ? -1.0 : 1.0) * std::exp(logpre - logden);
    }
    return sum;
}

SpinVector spin_matrix_elements(double F_i, double mF_i, double F_f, double mF_f, double S,
                                double I) {
    if (std::abs(S - 0.5) > 1e-9)
        throw DomainError("spin_matrix_elements: electron spin must be 1/2");
    if (!is_half_integral(I) || I < 0) throw DomainError("spin_matrix_elements: bad nuclear spin");
    auto check_F = [&](double F, double mF) {
        const bool ok_F = std::abs(F - (I + 0.5)) < 1e-9 || std::abs(F - std::abs(I - 0.5)) < 1e-9;
        if (!ok_F) throw DomainError("spin_matrix_elements: F not in {|I-1/2|, I+1/2}");
        if (std::abs(mF) > F + 1e-9 || (as2(F) + as2(mF)) % 2)
            throw DomainError("spin_matrix_elements: bad mF");
    };
    check_F(F_i, mF_i);
    check_F(F_f, mF_f);

    // amplitudes of |F,mF> on |m_S = +-1/2, m_I = mF -+ 1/2>
    auto amp = [&](double F, double mF, double mS) {
        const double mI = mF - mS;
        if (std::abs(mI) > I + 1e-9) return 0.0;
        return clebsch_gordan(0.5, mS, I, mI, F, mF);
    };

    // <i|S_q|f> in the atom frame (quantization axis = z). S_z diagonal in m_S;
    // S+- connect m_S = -+1/2 with matrix element 1 for spin 1/2; m_I untouched.
    std::complex<double> sp = 0.0, sm = 0.0, sz = 0.0;
    for (double mS : {0.5, -0.5}) {
        // S_z: requires mF_i == mF_f and same m_S
        if (as2(mF_i) == as2(mF_f)) sz += amp(F_i, mF_i, mS) * mS * amp(F_f, mF_f, mS);
    }
    // S+ |mS=-1/2> = |mS=+1/2>: <i|S+|f> nonzero when mF_i = mF_f + 1
    if (as2(mF_i) == as2(mF_f) + 2) sp = amp(F_i, mF_i, 0.5) * amp(F_f, mF_f, -0.5);
    // S- |mS=+1/2> = |mS=-1/2>: mF_i = mF_f - 1
    if (as2(mF_i) == as2(mF_f) - 2) sm = amp(F_i, mF_i, -0.5) * amp(F_f, mF_f, 0.5);

    const std::complex<double> sx = 0.5 * (sp + sm);
    const std::complex<double> sy = std::complex<double>(0.0, -0.5) * (sp - sm);

    // Atom frame -> surface frame: R_y(-90 deg), bias axis onto +x.
    // (vx, vy, vz)_surface = (-vz, vy, vx)_atom.
    return {-sz, sy, sx};
}

} // namespace spincoh
