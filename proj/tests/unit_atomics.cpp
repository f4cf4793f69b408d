#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "spincoh/atomics.hpp"
#include "spincoh/errors.hpp"

using namespace spincoh;
using Complexd = std::complex<double>;

TEST_CASE("larmor frequency") {
    CHECK(larmor_frequency(0.0) == 0.0);
    const double w1 = larmor_frequency(1.3e-5);
    CHECK(larmor_frequency(2.6e-5) == 2.0 * w1); // exactly linear
    // hand evaluation of g_S mu_B B0 / hbar at B0 = 20 uT (50-digit arithmetic)
    CHECK(std::abs(larmor_frequency(2e-5) - 3521719.2626024874) / 3521719.2626024874 < 1e-14);
    CHECK_THROWS_AS(larmor_frequency(-1.0), DomainError);
}

TEST_CASE("thermal photon number") {
    const auto& k = PhysicalConstants::codata2018();
    CHECK(thermal_photon_number(1e7, 0.0) == 0.0);
    // hbar omega = k_B T ln2  =>  n = 1
    const double omega = 1e7;
    const double T = k.hbar * omega / (k.k_B * std::log(2.0));
    CHECK(std::abs(thermal_photon_number(omega, T) - 1.0) < 1e-12);
    // high-temperature regime k_B T / (hbar omega) = 1e4
    const double T4 = 1e4 * k.hbar * omega / k.k_B;
    const double direct = thermal_photon_number(omega, T4);
    CHECK(std::abs(direct - 1e4) / 1e4 < 1e-4);
    CHECK_THROWS_AS(thermal_photon_number(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(thermal_photon_number(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(thermal_photon_number(1e7, -1.0), DomainError);
}

TEST_CASE("thermal photon number monotonicity") {
    double prev = 0.0;
    for (double T = 1.0; T <= 400.0; T += 40.0) {
        const double n = thermal_photon_number(2.0 * M_PI * 560e3, T);
        CHECK(n > prev);
        prev = n;
    }
    prev = thermal_photon_number(1e5, 300.0);
    for (double w = 2e5; w <= 2e6; w += 2e5) {
        const double n = thermal_photon_number(w, 300.0);
        CHECK(n < prev);
        prev = n;
    }
}

TEST_CASE("clebsch-gordan spot values") {
    CHECK(std::abs(clebsch_gordan(0.5, 0.5, 1.5, 1.5, 2.0, 2.0) - 1.0) < 1e-14);
    CHECK(std::abs(clebsch_gordan(0.5, 0.5, 1.5, 0.5, 2.0, 1.0) - 0.86602540378443865) < 1e-14);
    CHECK(std::abs(clebsch_gordan(0.5, -0.5, 1.5, 1.5, 2.0, 1.0) - 0.5) < 1e-14);
    CHECK(clebsch_gordan(0.5, 0.5, 1.5, 0.5, 2.0, 2.0) == 0.0); // m1+m2 != M
    // completeness of one |m1,m2> state over J
    double s = 0.0;
    for (double J : {1.0, 2.0}) {
        const double c = clebsch_gordan(0.5, 0.5, 1.5, 0.5, J, 1.0);
        s += c * c;
    }
    CHECK(std::abs(s - 1.0) < 1e-14);
    CHECK_THROWS_AS(clebsch_gordan(0.5, 0.25, 1.5, 0.5, 2.0, 0.75), DomainError);
    CHECK_THROWS_AS(clebsch_gordan(0.5, 1.5, 1.5, 0.5, 2.0, 2.0), DomainError);
}

TEST_CASE("spin matrix elements of the stretched-state transition") {
    // 87Rb ground manifold: |2,2> -> |2,1>, S=1/2, I=3/2
    const auto e = spin_matrix_elements(2, 2, 2, 1, 0.5, 1.5);
    CHECK(std::abs(e[0]) < 1e-14);
    CHECK(std::abs(std::abs(e[1]) - 0.25) < 1e-14);
    CHECK(std::abs(std::abs(e[2]) - 0.25) < 1e-14);
}

TEST_CASE("spin matrix elements: selection rules") {
    // Delta mF = 0: ladder terms vanish; only the quantization-axis component
    // (mapped onto x) survives
    const auto e0 = spin_matrix_elements(2, 2, 2, 2, 0.5, 1.5);
    CHECK(std::abs(e0[1]) < 1e-14);
    CHECK(std::abs(e0[2]) < 1e-14);
    CHECK(std::abs(std::abs(e0[0]) - 0.5) < 1e-14);
    // |Delta mF| = 2: a single spin-1/2 operator cannot connect them
    const auto e2 = spin_matrix_elements(2, 2, 2, 0, 0.5, 1.5);
    for (const auto& c : e2) CHECK(std::abs(c) < 1e-14);
}

TEST_CASE("spin matrix elements: hermiticity") {
    struct Pair {
        double Fi, mi, Ff, mf;
    };
    for (const Pair& p : std::vector<Pair>{{2, 2, 2, 1}, {2, 1, 2, 0}, {2, 0, 1, 0},
                                           {1, 1, 2, 1}, {2, -1, 1, 0}}) {
        const auto a = spin_matrix_elements(p.Fi, p.mi, p.Ff, p.mf, 0.5, 1.5);
        const auto b = spin_matrix_elements(p.Ff, p.mf, p.Fi, p.mi, 0.5, 1.5);
        for (int q = 0; q < 3; ++q) CHECK(std::abs(a[q] - std::conj(b[q])) < 1e-13);
    }
}

TEST_CASE("spin matrix elements: sum rule over the full hyperfine manifold") {
    // sum_f sum_q |<i|S_q|f>|^2 = S(S+1) = 3/4 (electron spin 1/2)
    for (double I : {1.5, 0.5}) {
        std::vector<std::pair<double, double>> states;
        for (double F : {I - 0.5, I + 0.5})
            for (double m = -F; m <= F + 1e-9; m += 1.0) states.push_back({F, m});
        for (const auto& [Fi, mi] : states) {
            double total = 0.0;
            for (const auto& [Ff, mf] : states) {
                const auto e = spin_matrix_elements(Fi, mi, Ff, mf, 0.5, I);
                for (const auto& c : e) total += std::norm(c);
            }
            CHECK(std::abs(total - 0.75) < 1e-12);
        }
    }
}

TEST_CASE("spin matrix elements reject inconsistent quantum numbers") {
    CHECK_THROWS_AS(spin_matrix_elements(3, 0, 2, 0, 0.5, 1.5), DomainError);
    CHECK_THROWS_AS(spin_matrix_elements(2, 3, 2, 1, 0.5, 1.5), DomainError);
    CHECK_THROWS_AS(spin_matrix_elements(2, 2, 2, 1, 1.0, 1.5), DomainError);
    CHECK_THROWS_AS(spin_matrix_elements(2, 2, 2, 1, 0.5, -0.5), DomainError);
}

TEST_CASE("domain type invariants") {
    CHECK_THROWS_AS(AtomTransition(0.0, {Complexd(1, 0), 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(AtomTransition(1e6, {Complexd(0, 0), 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(TrapField(-1e-6), DomainError);
    CHECK_THROWS_AS(ThermalState::make(-1.0, 1e6), DomainError);
    CHECK(ThermalState::make(0.0, 1e6).n_bar == 0.0);
    const auto rb = AtomTransition::default_rb87();
    CHECK(rb.omega_A == 2.0 * M_PI * 560e3);
    CHECK(rb.spin_elements[1] == Complexd(0.0, 0.25));
    CHECK(rb.spin_elements[2] == Complexd(0.25, 0.0));
}
