#pragma once

namespace spincoh {

// Physical constants, SI. Values: CODATA 2018.
struct PhysicalConstants {
    double mu_B = 9.2740100783e-24;     // Bohr magneton, J/T
    double g_S = 2.00231930436256;      // electron g-factor (magnitude)
    double hbar = 1.054571817e-34;      // reduced Planck constant, J s
    double eps0 = 8.8541878128e-12;     // vacuum permittivity, F/m
    double c = 299792458.0;             // speed of light, m/s
    double k_B = 1.380649e-23;          // Boltzmann constant, J/K (exact)

    static const PhysicalConstants& codata2018() {
        static const PhysicalConstants k{};
        return k;
    }
};

} // namespace spincoh
