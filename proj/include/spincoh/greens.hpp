#pragma once

#include <array>
#include <complex>
#include <utility>

#include "spincoh/layered.hpp"
#include "spincoh/numerics.hpp"

namespace spincoh {

struct Mat3c {
    std::array<std::array<Complex, 3>, 3> m{};

    Complex& operator()(int i, int j) { return m[i][j]; }
    const Complex& operator()(int i, int j) const { return m[i][j]; }
    Mat3c& operator+=(const Mat3c& o);
    Mat3c operator*(Complex s) const;
    Mat3c transposed() const;
    double max_abs() const;
};

// In-plane separation axis between the two sites (the paper never fixes it;
// x is the default, see rates module).
enum class SeparationAxis { X, Y };

struct KernelOptions {
    double tol = 1e-8;          // relative quadrature tolerance
    bool quasi_static = true;   // e^{ik1z(z+z')} -> e^{-2dK}, k1z^2 -> -K^2
    SeparationAxis axis = SeparationAxis::X;
    long max_evals = 400000;
    bool throw_on_failure = true;
};

// Electric reflection Green tensor components R^(12)(K, phi; z, z'), exact phase
// e^{ik1z(z+z')}, prefactor i/(2 k1z); units 1/m. TM off-diagonal signs follow the
// doubly-transverse convention (R_xz = -r^TM k1z kx / k1^2), under which the tensor
// obeys reciprocity R(k; z,z') = R^T(-k; z',z) and the perfect-conductor image limit.
Mat3c reflection_components(double K, double phi, double omega, double z, double zp,
                            const LayerStack& stack);

// [curl x R x curl'] for a single (K, phi) mode at z = z' = d: field-side cross
// product with i(k||, +k1z), source side with (-k||, +k1z). Built dyad-wise (the
// TM k1^2 cancellation done analytically) so the quasi-static regime K >> omega/c
// stays well-conditioned.
Mat3c magnetic_weyl_integrand(double K, double phi, double omega, double d,
                              const LayerStack& stack, bool quasi_static);

// H_{qk}(l, d, omega) = [curl x G x curl'] at field point (l,0,d) (axis X) and
// source (0,0,d); reflected part only; units 1/m^3. Adaptive radial quadrature of
// the phi-integrated Bessel kernels J0/J1/J2 over K in (0, inf).
std::pair<Mat3c, QuadratureReport> magnetic_kernel(double l, double d, double omega,
                                                   const LayerStack& stack,
                                                   const KernelOptions& opt = {});

// Independent oracle: tensor-product quadrature in (kx, ky) without the analytic
// phi step; graded panels toward the origin. Test/verify use only.
struct BruteGrid {
    int panels = 48;     // panels per half-axis
    double grade = 3.0;  // panel-edge grading exponent toward K = 0
    double kmax = 0.0;   // 0 = automatic (50/(2d))
};
Mat3c brute_force_kernel(double l, double d, double omega, const LayerStack& stack,
                         const BruteGrid& grid = {}, bool quasi_static = true,
                         SeparationAxis axis = SeparationAxis::X);

// |TM| / |TE| contribution ratio to Im H_yy at coincidence; diagnostic for the
// closed-form comparison (expected ~1e-23 in the quasi-static regime).
double tm_fraction(double d, double omega, const LayerStack& stack, double tol = 1e-8);

} // namespace spincoh
