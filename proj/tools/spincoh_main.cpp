// spincoh: thermally driven spin-flip rates and spatial coherence of two-site
// atomic superpositions above planar layered substrates.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spincoh/config.hpp"
#include "spincoh/errors.hpp"
#include "spincoh/rates.hpp"
#include "spincoh/sweep.hpp"
#include "spincoh/verify.hpp"

namespace {

using namespace spincoh;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitVerify = 3;

struct GlobalFlags {
    std::string config_path;
    std::vector<std::string> sets;
    bool json = false;
    bool no_timestamp = false;
    int jobs = -1;
    double tol = 0.0;
};

RunConfig load_config(const GlobalFlags& g) {
    std::string text = default_config_text();
    if (!g.config_path.empty()) {
        std::ifstream in(g.config_path);
        if (!in) throw ConfigError("cannot read config file: " + g.config_path);
        std::stringstream buf;
        buf << in.rdbuf();
        // file entries parse on top of the template defaults
        text += "\n" + buf.str();
    }
    Config cfg = Config::parse(text);
    for (const auto& s : g.sets) cfg.apply_override(s);
    RunConfig rc = RunConfig::from_config(cfg);
    if (g.json) rc.json = true;
    if (g.no_timestamp) rc.timestamp = false;
    if (g.jobs >= 0) rc.jobs = g.jobs;
    if (g.tol > 0.0) rc.tol = g.tol;
    return rc;
}

RateOptions rate_options(const RunConfig& rc) {
    RateOptions ro;
    ro.tol = rc.tol;
    ro.quasi_static = rc.quasi_static;
    ro.axis = rc.axis;
    return ro;
}

std::string um_tag(double meters) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", meters * 1e6);
    return buf;
}

int cmd_rate(const RunConfig& rc) {
    const auto& k = PhysicalConstants::codata2018();
    const auto ro = rate_options(rc);
    const auto& ds = rc.d_list;
    const auto& hs = rc.film_thicknesses;
    const auto& deltas = rc.skin_depths;
    if (rc.explicit_layers && (hs.size() > 1 || deltas.size() > 1))
        throw ConfigError("stack.layers fixes the stack; film/skin-depth sweeps do not apply");

    const std::size_t n = ds.size() * hs.size() * deltas.size();
    KernelOptions ko;
    ko.tol = rc.tol;
    ko.quasi_static = rc.quasi_static;
    ko.axis = rc.axis;
    auto rows = parallel_map(n, rc.jobs, [&](std::size_t idx) {
        const std::size_t id = idx % ds.size();
        const std::size_t ih = (idx / ds.size()) % hs.size();
        const std::size_t idel = idx / (ds.size() * hs.size());
        const LayerStack stack = rc.build_stack(deltas[idel], hs[ih]);
        auto [H, rep] = magnetic_kernel(0.0, ds[id], rc.omega_A, stack, ko);
        Complex im = 0.0, re = 0.0;
        for (int q = 0; q < 3; ++q)
            for (int kk = 0; kk < 3; ++kk) {
                const Complex w = std::conj(rc.spin_elements[q]) * rc.spin_elements[kk];
                im += w * H(q, kk).imag();
                re += w * H(q, kk).real();
            }
        const double mg = k.mu_B * k.g_S;
        const double pref = 2.0 * mg * mg / (k.c * k.c * k.eps0 * k.hbar);
        const double gamma0 = pref * im.real();
        const double shift = 0.5 * pref * re.real();
        const double factor = thermal_photon_number(rc.omega_A, rc.temperature, k) + 1.0;
        return std::vector<double>{deltas[idel] * 1e6, hs[ih] * 1e6,     ds[id] * 1e6,
                                   gamma0,             gamma0 * factor,  shift,
                                   factor,             rep.rel_error};
    });

    ResultTable table;
    table.command = "rate";
    table.columns = {"delta_um", "h_um",          "d_um",          "gamma12_T0",
                     "gamma12",  "delta_omega",   "thermal_factor", "quad_rel_err"};
    table.units = {"um", "um", "um", "1/s", "1/s", "rad/s", "1", "1"};
    table.rows = std::move(rows);
    emit_table(table, rc);
    return kExitOk;
}

int cmd_coherence(const RunConfig& rc) {
    const auto& k = PhysicalConstants::codata2018();
    const auto ro = rate_options(rc);
    if (rc.l_list.empty()) throw ConfigError("coherence: geometry.l_um must not be empty");
    const double delta = rc.skin_depths.front();
    const double film_h = rc.film_thicknesses.front();
    const LayerStack stack = rc.build_stack(delta, film_h);

    struct PerD {
        CoherenceEvaluator ev;
        double c2;
        double gamma_thermal;
    };
    std::vector<PerD> per_d;
    per_d.reserve(rc.d_list.size());
    for (double d : rc.d_list) {
        CoherenceEvaluator ev(d, rc.omega_A, stack, rc.spin_elements, k, ro);
        const double c2 = small_l_coefficient(d, rc.omega_A, stack, k, ro);
        const double gt = apply_thermal(ev.gamma0(), rc.omega_A, rc.temperature, k);
        per_d.push_back(PerD{std::move(ev), c2, gt});
    }

    const std::size_t n = rc.d_list.size() * rc.l_list.size();
    auto rows = parallel_map(n, rc.jobs, [&](std::size_t idx) {
        const std::size_t il = idx % rc.l_list.size();
        const std::size_t id = idx / rc.l_list.size();
        const double d = rc.d_list[id];
        const double l = rc.l_list[il];
        const auto& pd = per_d[id];
        const double S = l == 0.0 ? 1.0 : pd.ev.S(l);
        std::vector<double> row{d * 1e6, l * 1e6, S, 1.0 - pd.c2 * l * l};
        for (double t : rc.t_list) {
            const double decay = std::exp(-pd.gamma_thermal * t);
            row.push_back(decay + (1.0 - decay) * S);
        }
        row.push_back(pd.ev.denominator_report().rel_error);
        return row;
    });

    ResultTable table;
    table.command = "coherence";
    table.columns = {"d_um", "l_um", "S", "S_small_l"};
    table.units = {"um", "um", "1", "1"};
    for (std::size_t i = 0; i < rc.t_list.size(); ++i) {
        table.columns.push_back("rho12_t" + std::to_string(i));
        table.units.push_back("1[t=" + format_double(rc.t_list[i]) + "s]");
    }
    table.columns.push_back("quad_rel_err");
    table.units.push_back("1");
    table.rows = rows;
    emit_table(table, rc);

    if (rc.fig_files) {
        for (std::size_t id = 0; id < rc.d_list.size(); ++id) {
            std::vector<std::vector<double>> fig;
            for (std::size_t il = 0; il < rc.l_list.size(); ++il) {
                const auto& row = rows[id * rc.l_list.size() + il];
                fig.push_back({row[1], row[2]});
            }
            write_fig_csv(rc.fig_dir, "fig1_d" + um_tag(rc.d_list[id]) + ".csv", {"l_um", "S"},
                          fig);
        }
    }
    return kExitOk;
}

int cmd_halfwidth(const RunConfig& rc) {
    const auto& k = PhysicalConstants::codata2018();
    const auto ro = rate_options(rc);
    if (rc.hw_hs.empty()) throw ConfigError("halfwidth: halfwidth.h_um must not be empty");
    if (rc.hw_deltas.empty()) throw ConfigError("halfwidth: halfwidth.delta_um must not be empty");
    const double d = rc.d_list.front();

    const std::size_t n = rc.hw_deltas.size() * rc.hw_hs.size();
    auto rows = parallel_map(n, rc.jobs, [&](std::size_t idx) {
        const std::size_t ih = idx % rc.hw_hs.size();
        const std::size_t idel = idx / rc.hw_hs.size();
        const LayerStack stack = rc.build_stack(rc.hw_deltas[idel], rc.hw_hs[ih]);
        const double lh =
            half_coherence_length(d, rc.omega_A, stack, rc.spin_elements, k, ro);
        return std::vector<double>{rc.hw_deltas[idel] * 1e6, rc.hw_hs[ih] * 1e6, lh * 1e6};
    });

    ResultTable table;
    table.command = "halfwidth";
    table.columns = {"delta_um", "h_um", "l_half_um"};
    table.units = {"um", "um", "um"};
    table.rows = rows;
    emit_table(table, rc);

    if (rc.fig_files) {
        for (std::size_t idel = 0; idel < rc.hw_deltas.size(); ++idel) {
            std::vector<std::vector<double>> fig;
            for (std::size_t ih = 0; ih < rc.hw_hs.size(); ++ih) {
                const auto& row = rows[idel * rc.hw_hs.size() + ih];
                fig.push_back({row[1], row[2]});
            }
            write_fig_csv(rc.fig_dir, "fig2_delta" + um_tag(rc.hw_deltas[idel]) + ".csv",
                          {"h_um", "l_half_um"}, fig);
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spin-flip rates and spatial coherence above layered substrates"};
    app.require_subcommand(1);

    GlobalFlags g;
    app.add_option("--config", g.config_path, "configuration file (see `spincoh init`)");
    app.add_option("--set", g.sets, "override a config value: section.key=value (repeatable)");
    app.add_flag("--json", g.json, "also emit a JSON mirror of the table");
    app.add_option("--jobs", g.jobs, "worker threads (0 = all cores)");
    app.add_flag("--no-timestamp", g.no_timestamp, "suppress the timestamp header line");
    app.add_option("--tol", g.tol, "relative quadrature tolerance");

    auto* rate = app.add_subcommand("rate", "spin-flip rate and line-shift sweep over (d, h, delta)");
    auto* coherence =
        app.add_subcommand("coherence", "spatial coherence S(l) per distance d (+ rho12 samples)");
    auto* halfwidth =
        app.add_subcommand("halfwidth", "half-coherence length l_1/2 vs film thickness per delta");
    auto* verify = app.add_subcommand("verify", "run the numerical verification suites");
    bool inject_tm = false;
    int verify_sets = 10;
    verify->add_flag("--inject-tm-flip", inject_tm,
                     "mutation hook: flip the TM Fresnel sign (the suite must then fail)");
    verify->add_option("--sets", verify_sets, "random parameter sets per oracle check");
    auto* init = app.add_subcommand("init", "write a template configuration");
    std::string init_path;
    init->add_option("path", init_path, "destination (stdout when omitted)");
    for (auto* sc : {rate, coherence, halfwidth, verify, init}) sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (init->parsed()) {
            if (init_path.empty()) {
                std::cout << default_config_text();
            } else {
                std::ofstream out(init_path);
                if (!out) throw ConfigError("cannot write " + init_path);
                out << default_config_text();
            }
            return kExitOk;
        }
        if (verify->parsed()) {
            VerifyOptions vo;
            vo.tol = g.tol > 0.0 ? g.tol : 1e-8;
            vo.inject_tm_flip = inject_tm;
            vo.random_sets = verify_sets;
            return run_verification(vo, std::cout) ? kExitOk : kExitVerify;
        }
        const RunConfig rc = load_config(g);
        if (rate->parsed()) return cmd_rate(rc);
        if (coherence->parsed()) return cmd_coherence(rc);
        if (halfwidth->parsed()) return cmd_halfwidth(rc);
        throw ConfigError("no subcommand given");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const QuadratureError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const BracketError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const SingularityError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
