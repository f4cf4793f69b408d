#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "spincoh/errors.hpp"
#include "spincoh/layered.hpp"

using namespace spincoh;

namespace {
constexpr double kC = 299792458.0;
const double kOmega = 2.0 * M_PI * 560e3;
} // namespace

TEST_CASE("drude permittivity") {
    const auto drude = PermittivityModel::drude(110e-6);
    const Complex e1 = evaluate_permittivity(drude, kOmega);
    CHECK(e1.real() == 0.0); // purely imaginary by construction
    const Complex e2 = evaluate_permittivity(drude, 2.0 * kOmega);
    CHECK(std::abs(e2 / e1 - 0.25) < 1e-15);
    // hand evaluation of 2 c^2 / (omega^2 delta^2) at delta = 110 um, f = 560 kHz
    CHECK(std::abs(std::abs(e1) - 1199914331494.2339) / 1199914331494.2339 < 1e-12);
    CHECK(evaluate_permittivity(PermittivityModel::vacuum(), kOmega) == Complex(1.0, 0.0));
    const Complex val{2.25, 0.5};
    CHECK(evaluate_permittivity(PermittivityModel::constant(val), kOmega) == val);
    CHECK_THROWS_AS(evaluate_permittivity(drude, 0.0), DomainError);
    CHECK_THROWS_AS(PermittivityModel::constant({2.0, -0.1}), DomainError);
    CHECK_THROWS_AS(PermittivityModel::drude(0.0), DomainError);
}

TEST_CASE("normal wavenumber branches") {
    const double k0 = kOmega / kC;
    const Complex a = normal_wavenumber(kOmega, 0.0, {1.0, 0.0});
    CHECK(a.imag() == 0.0);
    CHECK(std::abs(a.real() - k0) < 1e-18);
    const Complex b = normal_wavenumber(kOmega, 2.0 * k0, {1.0, 0.0});
    CHECK(b.real() == 0.0);
    CHECK(std::abs(b.imag() - std::sqrt(3.0) * k0) / (std::sqrt(3.0) * k0) < 1e-14);
    // drude: k_z -> (1+i)/delta for K << |k2|
    const double delta = 110e-6;
    const Complex eps = evaluate_permittivity(PermittivityModel::drude(delta), kOmega);
    const double kmag = std::abs(std::sqrt(eps) * k0);
    const Complex kz = normal_wavenumber(kOmega, kmag / 100.0, eps);
    const Complex ref = Complex(1.0, 1.0) / delta;
    CHECK(std::abs(kz - ref) / std::abs(ref) < 1e-3);
}

TEST_CASE("normal wavenumber keeps Im >= 0 on random inputs") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 300; ++t) {
        const Complex eps{20.0 * u(rng) - 5.0, 30.0 * u(rng)};
        const double K = std::pow(10.0, 6.0 * u(rng));
        const Complex kz = normal_wavenumber(kOmega, K, eps);
        CHECK(kz.imag() >= 0.0);
        if (kz.imag() == 0.0) CHECK(kz.real() >= 0.0);
    }
}

TEST_CASE("fresnel coefficients") {
    CHECK(std::abs(fresnel_te(kOmega, 123.0, {4.0, 1.0}, {4.0, 1.0})) == 0.0);
    CHECK(std::abs(fresnel_tm(kOmega, 123.0, {4.0, 1.0}, {4.0, 1.0})) == 0.0);
    // normal incidence onto eps = 4: r^TE = (1-2)/(1+2)
    const Complex r = fresnel_te(kOmega, 0.0, {1.0, 0.0}, {4.0, 0.0});
    CHECK(std::abs(r - Complex(-1.0 / 3.0, 0.0)) < 1e-14);
    // perfect-conductor limit: drude with delta = lambda/1e6
    const double lambda = 2.0 * M_PI * kC / kOmega;
    const Complex eps = evaluate_permittivity(PermittivityModel::drude(lambda * 1e-6), kOmega);
    CHECK(std::abs(fresnel_te(kOmega, 0.0, {1.0, 0.0}, eps) + 1.0) < 1e-3);
    CHECK(std::abs(fresnel_tm(kOmega, 0.0, {1.0, 0.0}, eps) - 1.0) < 1e-3);
}

TEST_CASE("three-layer coefficient") {
    const Complex r12{0.3, 0.1}, r23{-0.2, 0.05};
    // no second interface
    CHECK(three_layer_fresnel(r12, -r12, {0.0, 0.0}, {1e5, 1e4}, 3e-6) == r12);
    // evanescent film kills the second term
    const Complex far = three_layer_fresnel(r12, -r12, r23, {0.0, 1e5}, 2e-3);
    CHECK(std::abs(far - r12) < 1e-15);
    CHECK_THROWS_AS(three_layer_fresnel({0.5, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {1e5, 0.0}, 0.0),
                    SingularityError);
    CHECK_THROWS_AS(three_layer_fresnel(r12, -r12, r23, {1e5, 0.0}, -1.0), DomainError);
}

TEST_CASE("three-layer h=0 equals the direct 1->3 interface (random property)") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        const Complex e2{1.0 + 40.0 * u(rng), 40.0 * u(rng)};
        const Complex e3{1.0 + 40.0 * u(rng), 40.0 * u(rng)};
        const double K = std::pow(10.0, 1.0 + 5.0 * u(rng));
        for (auto pol : {Polarization::TE, Polarization::TM}) {
            auto rf = [&](Complex a, Complex b) {
                return pol == Polarization::TE ? fresnel_te(kOmega, K, a, b)
                                               : fresnel_tm(kOmega, K, a, b);
            };
            const Complex composite =
                three_layer_fresnel(rf(1.0, e2), rf(e2, 1.0), rf(e2, e3),
                                    normal_wavenumber(kOmega, K, e2), 0.0);
            const Complex direct = rf(1.0, e3);
            CHECK(std::abs(composite - direct) <= 1e-12 * std::abs(direct));
        }
    }
}

TEST_CASE("stack reflection basics") {
    const auto half = LayerStack::half_space(PermittivityModel::drude(110e-6));
    const Complex e2 = evaluate_permittivity(PermittivityModel::drude(110e-6), kOmega);
    for (double K : {1e2, 1e4, 2e5}) {
        CHECK(stack_reflection(half, kOmega, K, Polarization::TE) ==
              fresnel_te(kOmega, K, {1.0, 0.0}, e2));
        CHECK(stack_reflection(half, kOmega, K, Polarization::TM) ==
              fresnel_tm(kOmega, K, {1.0, 0.0}, e2));
    }
    const auto vac = LayerStack::vacuum_only();
    CHECK(std::abs(stack_reflection(vac, kOmega, 1e4, Polarization::TE)) == 0.0);
    CHECK(std::abs(stack_reflection(vac, kOmega, 1e4, Polarization::TM)) == 0.0);
}

TEST_CASE("thick film converges to the semi-infinite coefficient") {
    const double delta = 30e-6;
    const auto film = LayerStack::film_on_substrate(
        PermittivityModel::drude(delta), 10.0 * delta, PermittivityModel::constant({2.25, 0.0}));
    const auto half = LayerStack::half_space(PermittivityModel::drude(delta));
    for (double K : {1e3, 1e4, 1e5, 5e5}) {
        for (auto pol : {Polarization::TE, Polarization::TM}) {
            const Complex a = stack_reflection(film, kOmega, K, pol);
            const Complex b = stack_reflection(half, kOmega, K, pol);
            CHECK(std::abs(a - b) <= 1e-6 * std::abs(b));
        }
    }
}

TEST_CASE("passivity: Im r_TE >= 0 on the evanescent sector") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double k0 = kOmega / kC;
    for (int t = 0; t < 120; ++t) {
        const double delta = 10e-6 + 190e-6 * u(rng);
        const LayerStack stack =
            t % 3 == 0
                ? LayerStack::half_space(PermittivityModel::drude(delta))
                : (t % 3 == 1 ? LayerStack::film_on_substrate(
                                    PermittivityModel::drude(delta), 1e-6 + 20e-6 * u(rng),
                                    PermittivityModel::constant({2.25, 0.0}))
                              : LayerStack::half_space(
                                    PermittivityModel::constant({3.0, 10.0 * u(rng)})));
        const double K = k0 * std::pow(10.0, 1.0 + 7.0 * u(rng));
        CHECK(stack_reflection(stack, kOmega, K, Polarization::TE).imag() >= -1e-16);
    }
}

TEST_CASE("|r| <= 1 for propagating incidence on a passive stack") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double k0 = kOmega / kC;
    for (int t = 0; t < 100; ++t) {
        const auto stack = LayerStack::half_space(
            PermittivityModel::constant({1.0 + 8.0 * u(rng), 5.0 * u(rng)}));
        const double K = 0.999 * k0 * u(rng);
        for (auto pol : {Polarization::TE, Polarization::TM})
            CHECK(std::abs(stack_reflection(stack, kOmega, K, pol)) <= 1.0 + 1e-12);
    }
}

TEST_CASE("branch continuity across K = omega/c for lossy media") {
    // r(K) has a sqrt cusp at K = omega/c but no jump: the largest sampled step
    // difference must shrink under refinement (a branch jump would not).
    const double k0 = kOmega / kC;
    const auto stack = LayerStack::half_space(PermittivityModel::constant({4.0, 2.0}));
    for (auto pol : {Polarization::TE, Polarization::TM}) {
        auto max_step = [&](int n) {
            double worst = 0.0;
            Complex prev = stack_reflection(stack, kOmega, 0.99 * k0, pol);
            for (int i = 1; i <= n; ++i) {
                const double K = (0.99 + 0.02 * i / n) * k0;
                const Complex cur = stack_reflection(stack, kOmega, K, pol);
                worst = std::max(worst, std::abs(cur - prev));
                prev = cur;
            }
            return worst;
        };
        const double coarse = max_step(400);
        const double fine = max_step(1600);
        CHECK(fine < 0.02);
        CHECK(fine < 0.7 * coarse);
    }
}

TEST_CASE("layer stack validation") {
    CHECK_THROWS_AS(LayerStack({}), DomainError);
    CHECK_THROWS_AS(LayerStack({Layer::finite(PermittivityModel::vacuum(), 1e-6)}), DomainError);
    CHECK_THROWS_AS(LayerStack({Layer::bottom(PermittivityModel::vacuum()),
                                Layer::bottom(PermittivityModel::vacuum())}),
                    DomainError);
    CHECK_THROWS_AS(Layer::finite(PermittivityModel::vacuum(), 0.0), DomainError);
}

TEST_CASE("wave context carries per-region wavenumbers") {
    const auto stack = LayerStack::film_on_substrate(PermittivityModel::drude(50e-6), 2e-6,
                                                     PermittivityModel::constant({2.25, 0.0}));
    const auto ctx = WaveContext::make(stack, kOmega, 3e4);
    REQUIRE(ctx.eps.size() == 3);
    REQUIRE(ctx.kz.size() == 3);
    CHECK(ctx.eps[0] == Complex(1.0, 0.0));
    for (std::size_t i = 0; i < ctx.kz.size(); ++i) {
        CHECK(ctx.kz[i] == normal_wavenumber(kOmega, 3e4, ctx.eps[i]));
        CHECK(ctx.kz[i].imag() >= 0.0);
    }
}
