#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "spincoh/atomics.hpp"
#include "spincoh/errors.hpp"
#include "spincoh/greens.hpp"
#include "spincoh/verify.hpp"

using namespace spincoh;

namespace {
constexpr double kC = 299792458.0;
const double kOmega = 2.0 * M_PI * 560e3;
const LayerStack kHalf110 = LayerStack::half_space(PermittivityModel::drude(110e-6));

double rel_mat_dev(const Mat3c& a, const Mat3c& b) {
    const double scale = std::max(a.max_abs(), b.max_abs());
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)) / scale);
    return worst;
}
} // namespace

TEST_CASE("reflection components: explicit k-factor zeros") {
    const double d = 10e-6;
    // k_x = 0 (phi = pi/2): R_xz and R_xy vanish
    const Mat3c R = reflection_components(2e5, M_PI / 2.0, kOmega, d, d, kHalf110);
    const double scale = R.max_abs();
    CHECK(std::abs(R(0, 2)) / scale < 1e-15);
    CHECK(std::abs(R(0, 1)) / scale < 1e-15);
    // k_x = k_y (phi = pi/4): R_xx = R_yy
    const Mat3c R2 = reflection_components(2e5, M_PI / 4.0, kOmega, d, d, kHalf110);
    CHECK(std::abs(R2(0, 0) - R2(1, 1)) / R2.max_abs() < 1e-15);
}

TEST_CASE("reflection components: vacuum stack vanishes") {
    const Mat3c R = reflection_components(2e5, 0.7, kOmega, 1e-5, 2e-5, LayerStack::vacuum_only());
    CHECK(R.max_abs() == 0.0);
}

TEST_CASE("reflection components: reciprocity R(k; z,z') = R^T(-k; z',z)") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 40; ++t) {
        const double K = std::pow(10.0, 2.0 + 4.0 * u(rng));
        const double phi = 2.0 * M_PI * u(rng);
        const double z = 1e-6 + 3e-5 * u(rng), zp = 1e-6 + 3e-5 * u(rng);
        const Mat3c A = reflection_components(K, phi, kOmega, z, zp, kHalf110);
        const Mat3c B = reflection_components(K, phi + M_PI, kOmega, zp, z, kHalf110).transposed();
        CHECK(rel_mat_dev(A, B) < 1e-13);
    }
}

TEST_CASE("reflection components reject points outside vacuum") {
    CHECK_THROWS_AS(reflection_components(1e5, 0.0, kOmega, -1e-6, 1e-6, kHalf110), DomainError);
    CHECK_THROWS_AS(reflection_components(1e5, 0.0, kOmega, 1e-6, 0.0, kHalf110), DomainError);
}

TEST_CASE("weyl integrand: vacuum stack vanishes, both modes") {
    for (bool qs : {true, false}) {
        const Mat3c H =
            magnetic_weyl_integrand(2e5, 1.1, kOmega, 8e-6, LayerStack::vacuum_only(), qs);
        CHECK(H.max_abs() == 0.0);
    }
}

TEST_CASE("weyl integrand agrees with finite-difference curls") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double lambda = 2.0 * M_PI * kC / kOmega;
    const double k1 = kOmega / kC;
    for (int t = 0; t < 5; ++t) {
        const double d = lambda * (0.02 + 0.13 * u(rng));
        const double K = k1 * std::pow(10.0, -1.0 + 2.0 * u(rng));
        const double phi = 2.0 * M_PI * u(rng);
        const auto stack =
            LayerStack::half_space(PermittivityModel::drude(10e-6 + 190e-6 * u(rng)));
        CHECK(fd_curl_relative_error(K, phi, kOmega, d, stack) < 1e-4);
    }
}

TEST_CASE("weyl integrand: quasi-static matches exact at d = lambda/1e4") {
    const double lambda = 2.0 * M_PI * kC / kOmega;
    const double d = lambda / 1e4;
    KernelOptions exact;
    exact.quasi_static = false;
    exact.tol = 1e-11;
    KernelOptions qs;
    qs.tol = 1e-11;
    const auto [Hq, r1] = magnetic_kernel(0.0, d, kOmega, kHalf110, qs);
    const auto [Hx, r2] = magnetic_kernel(0.0, d, kOmega, kHalf110, exact);
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(Hq(i, i) - Hx(i, i)) / std::abs(Hx(i, i)) < 1e-3);
}

TEST_CASE("magnetic kernel at coincidence: structure and positivity") {
    const double d = 10e-6;
    auto [H, rep] = magnetic_kernel(0.0, d, kOmega, kHalf110);
    CHECK(rep.converged);
    CHECK(rep.rel_error <= 1e-8);
    // diagonal only; transverse components equal
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(std::abs(H(i, j)) == 0.0);
    CHECK(std::abs(H(0, 0) - H(1, 1)) / std::abs(H(0, 0)) < 1e-14);
    // rate-like contraction is real and positive at coincidence
    const SpinVector A{Complex(0.0, 0.0), Complex(0.0, 0.25), Complex(0.25, 0.0)};
    Complex contraction = 0.0;
    for (int q = 0; q < 3; ++q)
        for (int k = 0; k < 3; ++k)
            contraction += std::conj(A[q]) * A[k] * H(q, k).imag();
    CHECK(contraction.real() > 0.0);
    CHECK(std::abs(contraction.imag()) <= 1e-12 * contraction.real());
}

TEST_CASE("magnetic kernel: monotone decay of Im H diagonal in d") {
    double prev[3] = {0.0, 0.0, 0.0};
    bool first = true;
    for (int i = 0; i <= 19; ++i) {
        const double d = 5e-6 + (100e-6 - 5e-6) * i / 19.0;
        auto [H, rep] = magnetic_kernel(0.0, d, kOmega, kHalf110);
        for (int q = 0; q < 3; ++q) {
            const double cur = std::abs(H(q, q).imag());
            if (!first) CHECK(cur < prev[q]);
            prev[q] = cur;
        }
        first = false;
    }
}

TEST_CASE("magnetic kernel vs brute-force oracle") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 3; ++t) {
        const double d = 2e-6 + 50e-6 * u(rng);
        const double l = 4.0 * d * u(rng);
        const double delta = 10e-6 + 190e-6 * u(rng);
        const LayerStack stack =
            t % 2 ? LayerStack::film_on_substrate(PermittivityModel::drude(delta),
                                                  0.5e-6 + 20e-6 * u(rng),
                                                  PermittivityModel::constant({2.25, 0.0}))
                  : LayerStack::half_space(PermittivityModel::drude(delta));
        auto [Hr, rep] = magnetic_kernel(l, d, kOmega, stack);
        const Mat3c Hb = brute_force_kernel(l, d, kOmega, stack);
        CHECK(rel_mat_dev(Hr, Hb) < 1e-6);
    }
    // l = 0 comparison at tight tolerance
    KernelOptions ko;
    ko.tol = 1e-8;
    auto [H0, rep] = magnetic_kernel(0.0, 10e-6, kOmega, kHalf110, ko);
    const Mat3c Hb = brute_force_kernel(0.0, 10e-6, kOmega, kHalf110);
    CHECK(rel_mat_dev(H0, Hb) < 1e-6);
}

TEST_CASE("magnetic kernel reciprocity H(l) = H^T(-l)") {
    const double d = 9e-6, l = 2.3 * d;
    auto [Hl, rep] = magnetic_kernel(l, d, kOmega, kHalf110);
    const Mat3c Hm = brute_force_kernel(-l, d, kOmega, kHalf110).transposed();
    CHECK(rel_mat_dev(Hl, Hm) < 1e-6);
}

TEST_CASE("magnetic kernel decays at large separation") {
    const auto stack = LayerStack::half_space(PermittivityModel::drude(50e-6));
    const double d = 10e-6;
    auto [H0, r0] = magnetic_kernel(0.0, d, kOmega, stack);
    KernelOptions ko;
    ko.tol = 1e-9;
    auto [Hf, rf] = magnetic_kernel(100.0 * d, d, kOmega, stack, ko);
    CHECK(Hf.max_abs() <= 1e-3 * H0.max_abs());
}

TEST_CASE("magnetic kernel: budget exhaustion raises a quadrature error") {
    KernelOptions ko;
    ko.tol = 1e-13;
    ko.max_evals = 500;
    CHECK_THROWS_AS(magnetic_kernel(40e-6, 10e-6, kOmega, kHalf110, ko), QuadratureError);
    ko.throw_on_failure = false;
    auto [H, rep] = magnetic_kernel(40e-6, 10e-6, kOmega, kHalf110, ko);
    CHECK_FALSE(rep.converged);
}

TEST_CASE("brute force kernel: vacuum stack vanishes") {
    BruteGrid g;
    g.panels = 8;
    const Mat3c H = brute_force_kernel(5e-6, 10e-6, kOmega, LayerStack::vacuum_only(), g);
    CHECK(H.max_abs() == 0.0);
}

TEST_CASE("kernel input validation") {
    CHECK_THROWS_AS(magnetic_kernel(-1e-6, 1e-5, kOmega, kHalf110), DomainError);
    CHECK_THROWS_AS(magnetic_kernel(0.0, 0.0, kOmega, kHalf110), DomainError);
    KernelOptions ko;
    ko.tol = 0.0;
    CHECK_THROWS_AS(magnetic_kernel(0.0, 1e-5, kOmega, kHalf110, ko), DomainError);
}

TEST_CASE("tm fraction is negligible in the quasi-static regime") {
    CHECK(tm_fraction(10e-6, kOmega, kHalf110) < 1e-10);
}
