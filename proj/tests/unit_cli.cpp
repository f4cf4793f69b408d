#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "spincoh/config.hpp"
#include "spincoh/errors.hpp"
#include "spincoh/sweep.hpp"

using namespace spincoh;

TEST_CASE("config parse / serialize round-trip") {
    const Config a = Config::parse(default_config_text());
    const Config b = Config::parse(a.serialize());
    CHECK(a == b);
    const Config c = Config::parse(b.serialize());
    CHECK(b == c);
}

TEST_CASE("template defaults interpret to the reference sweep") {
    const RunConfig rc = RunConfig::from_config(Config::parse(default_config_text()));
    CHECK(rc.omega_A == 2.0 * M_PI * 560e3);
    REQUIRE(rc.d_list.size() == 3);
    CHECK(rc.d_list[0] == doctest::Approx(5e-6).epsilon(1e-14));
    CHECK(rc.d_list[2] == doctest::Approx(20e-6).epsilon(1e-14));
    REQUIRE(rc.l_list.size() == 41);
    CHECK(rc.l_list.front() == 0.0);
    CHECK(std::abs(rc.l_list.back() - 100e-6) < 1e-18);
    CHECK(rc.spin_elements[1] == Complex(0.0, 0.25));
    CHECK(rc.spin_elements[2] == Complex(0.25, 0.0));
    REQUIRE(rc.skin_depths.size() == 1);
    CHECK(rc.skin_depths[0] == doctest::Approx(110e-6).epsilon(1e-14));
    CHECK(std::isinf(rc.film_thicknesses.at(0)));
    CHECK(rc.temperature == 0.0);
    CHECK(rc.tol == 1e-8);
    CHECK(rc.quasi_static);
    CHECK(rc.hw_deltas.size() == 3);
    CHECK(rc.hw_hs.size() == 9);
}

TEST_CASE("set overrides and presets") {
    Config cfg = Config::parse(default_config_text());
    cfg.apply_override("stack.preset=niobium-9K");
    cfg.apply_override("geometry.d_um=50");
    cfg.apply_override("atom.temperature_k=300");
    const RunConfig rc = RunConfig::from_config(cfg);
    REQUIRE(rc.skin_depths.size() == 1);
    CHECK(rc.skin_depths[0] == doctest::Approx(15e-6).epsilon(1e-14));
    REQUIRE(rc.d_list.size() == 1);
    CHECK(rc.d_list[0] == doctest::Approx(50e-6).epsilon(1e-14));
    CHECK(rc.temperature == 300.0);
    CHECK_THROWS_AS(cfg.apply_override("no-dot"), ConfigError);
    CHECK_THROWS_AS(cfg.apply_override("a.b"), ConfigError);
}

TEST_CASE("explicit layer lists") {
    Config cfg = Config::parse(default_config_text());
    cfg.apply_override("stack.layers=drude:110:1.0; const:2.25,0:inf");
    const RunConfig rc = RunConfig::from_config(cfg);
    REQUIRE(rc.explicit_layers.has_value());
    REQUIRE(rc.explicit_layers->size() == 2);
    CHECK(rc.explicit_layers->at(0).model.kind == PermittivityModel::Kind::DrudeSkinDepth);
    CHECK(rc.explicit_layers->at(0).thickness == 1e-6);
    CHECK(rc.explicit_layers->at(1).semi_infinite);
    const LayerStack stack = rc.build_stack(110e-6, 1e-6);
    CHECK(stack.layers().size() == 2);
}

TEST_CASE("stack construction from sweep coordinates") {
    const RunConfig rc = RunConfig::from_config(Config::parse(default_config_text()));
    const LayerStack half = rc.build_stack(110e-6, std::numeric_limits<double>::infinity());
    CHECK(half.layers().size() == 1);
    const LayerStack film = rc.build_stack(50e-6, 2e-6);
    REQUIRE(film.layers().size() == 2);
    CHECK(film.layers()[0].thickness == 2e-6);
    CHECK(film.layers()[1].model.kind == PermittivityModel::Kind::Constant);
}

TEST_CASE("config rejects bad values") {
    auto with = [](const char* key_value) {
        Config cfg = Config::parse(default_config_text());
        cfg.apply_override(key_value);
        return RunConfig::from_config(cfg);
    };
    CHECK_THROWS_AS(with("atom.frequency_hz=0"), ConfigError);
    CHECK_THROWS_AS(with("atom.frequency_hz=abc"), ConfigError);
    CHECK_THROWS_AS(with("atom.spin_elements=1 2 3"), ConfigError);
    CHECK_THROWS_AS(with("atom.spin_elements=0 0 0 0 0 0"), ConfigError);
    CHECK_THROWS_AS(with("atom.temperature_k=-2"), ConfigError);
    CHECK_THROWS_AS(with("geometry.d_um="), ConfigError);
    CHECK_THROWS_AS(with("geometry.d_um=-3"), ConfigError);
    CHECK_THROWS_AS(with("stack.preset=unobtainium"), ConfigError);
    CHECK_THROWS_AS(with("stack.substrate=metal"), ConfigError);
    CHECK_THROWS_AS(with("numerics.tol=0"), ConfigError);
    CHECK_THROWS_AS(with("numerics.separation_axis=z"), ConfigError);
    CHECK_THROWS_AS(with("output.jobs=-1"), ConfigError);
    CHECK_THROWS_AS(Config::parse("key = 1\n"), ConfigError);       // key outside section
    CHECK_THROWS_AS(Config::parse("[a\nk = 1\n"), ConfigError);     // unterminated section
    CHECK_THROWS_AS(Config::parse("[a]\njust-a-line\n"), ConfigError);
}

TEST_CASE("grid syntax start:stop:count") {
    Config cfg = Config::parse(default_config_text());
    cfg.apply_override("geometry.l_um=0:10:5");
    const RunConfig rc = RunConfig::from_config(cfg);
    REQUIRE(rc.l_list.size() == 5);
    CHECK(rc.l_list[0] == 0.0);
    CHECK(std::abs(rc.l_list[1] - 2.5e-6) < 1e-20);
    CHECK(std::abs(rc.l_list[4] - 10e-6) < 1e-20);
}

TEST_CASE("parallel map preserves grid order and propagates errors") {
    auto rows = parallel_map(64, 4, [](std::size_t i) {
        return std::vector<double>{static_cast<double>(i), static_cast<double>(i * i)};
    });
    REQUIRE(rows.size() == 64);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i][0] == static_cast<double>(i));
        CHECK(rows[i][1] == static_cast<double>(i * i));
    }
    CHECK_THROWS_AS(parallel_map(8, 2,
                                 [](std::size_t i) -> std::vector<double> {
                                     if (i == 5) throw DomainError("boom");
                                     return {0.0};
                                 }),
                    DomainError);
}

TEST_CASE("csv rendering is deterministic and carries the units header") {
    ResultTable t;
    t.command = "rate";
    t.columns = {"d_um", "gamma12"};
    t.units = {"um", "1/s"};
    t.rows = {{5.0, 1.25e-7}, {10.0, 2.5e-8}};
    const std::string a = render_csv(t, /*timestamp=*/false);
    const std::string b = render_csv(t, /*timestamp=*/false);
    CHECK(a == b);
    CHECK(a.find("# units: d_um=um gamma12=1/s") != std::string::npos);
    CHECK(a.find("5," + format_double(1.25e-7)) != std::string::npos);
    // full-precision round trip
    for (double v : {1.25e-7, 3.0, 1.0 / 3.0, 6.62607015e-34}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    const std::string j = render_json(t);
    CHECK(j.find("\"gamma12\"") != std::string::npos);
}
