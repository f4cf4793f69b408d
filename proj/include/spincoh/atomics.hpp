#pragma once

#include <array>
#include <complex>
#include <string>

#include "spincoh/constants.hpp"

namespace spincoh {

using SpinVector = std::array<std::complex<double>, 3>;

// Two-level transition |i> -> |f| between Zeeman sublevels. spin_elements are
// <i|S_q|f> per Cartesian surface-frame axis, dimensionless (hbar absorbed into
// the rate prefactors).
struct AtomTransition {
    double omega_A;            // transition angular frequency, rad/s
    SpinVector spin_elements;
    std::string label;

    AtomTransition(double omega, const SpinVector& elements, std::string name = {});

    // Spec default: f = 560 kHz with elements (0, i/4, 1/4).
    static AtomTransition default_rb87();
};

struct ThermalState {
    double temperature; // K
    double n_bar;       // mean photon number at the transition frequency

    static ThermalState make(double temperature, double omega,
                             const PhysicalConstants& k = PhysicalConstants::codata2018());
};

struct TrapField {
    double B0; // bias field strength, T
    explicit TrapField(double b0);
};

// Larmor splitting omega_L = g_S mu_B B0 / hbar.
double larmor_frequency(double B0,
                        const PhysicalConstants& k = PhysicalConstants::codata2018());

// Bose occupation 1/(e^{hbar omega/k_B T} - 1); exactly 0 at T = 0.
double thermal_photon_number(double omega, double temperature,
                             const PhysicalConstants& k = PhysicalConstants::codata2018());

// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M>, Condon-Shortley phases.
// Arguments may be half-integral; validated.
double clebsch_gordan(double j1, double m1, double j2, double m2, double J, double M);

// <i|S_{x,y,z}|f> for hyperfine states |F,mF> of an electron-spin-1/2 atom with
// nuclear spin I, expanded in the |m_S, m_I> product basis via Clebsch-Gordan
// coefficients. Returned in the surface frame: the quantization (bias) axis maps
// onto the in-plane x direction by the fixed rotation R_y(-90 deg), so that the
// stretched-state transition carries its weight on the y and z components.
SpinVector spin_matrix_elements(double F_i, double mF_i, double F_f, double mF_f,
                                double S, double I);

} // namespace spincoh
