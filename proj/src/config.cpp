#include "spincoh/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "spincoh/errors.hpp"

namespace spincoh {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& ctx) {
    const std::string t = trim(s);
    if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad number for " + ctx + ": '" + t + "'");
    }
}

bool parse_bool(const std::string& s, const std::string& ctx) {
    const std::string t = trim(s);
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw ConfigError("bad boolean for " + ctx + ": '" + t + "'");
}

// list: whitespace/comma separated values, or "start:stop:count" grid
std::vector<double> parse_list(const std::string& s, const std::string& ctx) {
    std::vector<double> out;
    const std::string t = trim(s);
    if (t.empty()) return out;
    if (std::count(t.begin(), t.end(), ':') == 2 &&
        t.find_first_of(", \t") == std::string::npos) {
        const auto p1 = t.find(':');
        const auto p2 = t.find(':', p1 + 1);
        const double lo = parse_double(t.substr(0, p1), ctx);
        const double hi = parse_double(t.substr(p1 + 1, p2 - p1 - 1), ctx);
        const long n = std::lround(parse_double(t.substr(p2 + 1), ctx));
        if (n < 1) throw ConfigError("grid count must be >= 1 in " + ctx);
        for (long i = 0; i < n; ++i)
            out.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1));
        return out;
    }
    std::string item;
    std::istringstream is(t);
    std::string norm = t;
    std::replace(norm.begin(), norm.end(), ',', ' ');
    std::istringstream is2(norm);
    while (is2 >> item) out.push_back(parse_double(item, ctx));
    return out;
}

constexpr double kMicron = 1e-6;

} // namespace

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
    for (auto& [name, entries] : sections_) {
        if (name != section) continue;
        for (auto& [k, v] : entries) {
            if (k == key) {
                v = value;
                return;
            }
        }
        entries.emplace_back(key, value);
        return;
    }
    sections_.push_back({section, {{key, value}}});
}

std::optional<std::string> Config::get(const std::string& section, const std::string& key) const {
    for (const auto& [name, entries] : sections_)
        if (name == section)
            for (const auto& [k, v] : entries)
                if (k == key) return v;
    return std::nullopt;
}

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated section");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        if (section.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
        cfg.set(section, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return cfg;
}

std::string Config::serialize() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [name, entries] : sections_) {
        if (!first) os << "\n";
        first = false;
        os << "[" << name << "]\n";
        for (const auto& [k, v] : entries) os << k << " = " << v << "\n";
    }
    return os.str();
}

void Config::apply_override(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects section.key=value: " + spec);
    const std::string key_path = trim(spec.substr(0, eq));
    const auto dot = key_path.find('.');
    if (dot == std::string::npos) throw ConfigError("--set expects section.key=value: " + spec);
    set(key_path.substr(0, dot), key_path.substr(dot + 1), trim(spec.substr(eq + 1)));
}

std::string default_config_text() {
    return R"(# spincoh run configuration
# boundary units: frequencies Hz, lengths um, temperature K, time s

[atom]
frequency_hz = 560e3
# <i|S|f> surface-frame components: x_re x_im y_re y_im z_re z_im
spin_elements = 0 0 0 0.25 0.25 0
temperature_k = 0

[stack]
# preset: aluminium-300K (skin depth 110 um) | niobium-9K (15 um) | custom
preset = aluminium-300K
# skin_depth_um = 110
film_thickness_um = inf
substrate = dielectric
substrate_eps_re = 2.25
substrate_eps_im = 0
# layers = drude:110:inf    advanced full stack; entries model:param:thickness_um
#                           models: vacuum | const:re,im | drude:delta_um

[geometry]
d_um = 5 10 20
l_um = 0:100:41
t_s =

[halfwidth]
delta_um = 100 50 10
h_um = 1 2 5 10 20 50 100 200 400

[numerics]
tol = 1e-8
quasi_static = true
separation_axis = x

[output]
path =
fig_files = false
fig_dir = .
json = false
timestamp = true
jobs = 0
)";
}

namespace {

PermittivityModel parse_model(const std::string& spec) {
    const auto c1 = spec.find(':');
    const std::string kind = trim(c1 == std::string::npos ? spec : spec.substr(0, c1));
    const std::string arg = c1 == std::string::npos ? "" : trim(spec.substr(c1 + 1));
    if (kind == "vacuum") return PermittivityModel::vacuum();
    if (kind == "drude") {
        if (arg.empty()) throw ConfigError("drude model needs a skin depth: " + spec);
        return PermittivityModel::drude(parse_double(arg, "drude skin depth") * kMicron);
    }
    if (kind == "const") {
        const auto comma = arg.find(',');
        const double re = parse_double(comma == std::string::npos ? arg : arg.substr(0, comma),
                                       "const eps");
        const double im =
            comma == std::string::npos ? 0.0 : parse_double(arg.substr(comma + 1), "const eps");
        return PermittivityModel::constant({re, im});
    }
    throw ConfigError("unknown permittivity model: " + spec);
}

std::vector<Layer> parse_layers(const std::string& value) {
    std::vector<Layer> layers;
    std::istringstream is(value);
    std::string entry;
    while (std::getline(is, entry, ';')) {
        entry = trim(entry);
        if (entry.empty()) continue;
        const auto last = entry.rfind(':');
        if (last == std::string::npos) throw ConfigError("layer entry needs model:thickness: " + entry);
        const std::string thick = trim(entry.substr(last + 1));
        const PermittivityModel model = parse_model(trim(entry.substr(0, last)));
        if (thick == "inf")
            layers.push_back(Layer::bottom(model));
        else
            layers.push_back(Layer::finite(model, parse_double(thick, "layer thickness") * kMicron));
    }
    if (layers.empty()) throw ConfigError("stack.layers: no layers given");
    return layers;
}

} // namespace

RunConfig RunConfig::from_config(const Config& cfg) {
    const Config defaults = Config::parse(default_config_text());
    auto value = [&](const char* sec, const char* key) -> std::string {
        if (auto v = cfg.get(sec, key)) return *v;
        if (auto v = defaults.get(sec, key)) return *v;
        return {};
    };
    RunConfig rc;
    const double freq = parse_double(value("atom", "frequency_hz"), "atom.frequency_hz");
    if (!(freq > 0.0)) throw ConfigError("atom.frequency_hz must be positive");
    rc.omega_A = 2.0 * M_PI * freq;

    const auto se = parse_list(value("atom", "spin_elements"), "atom.spin_elements");
    if (se.size() != 6) throw ConfigError("atom.spin_elements needs 6 numbers (re/im per axis)");
    rc.spin_elements = {Complex(se[0], se[1]), Complex(se[2], se[3]), Complex(se[4], se[5])};
    if (std::norm(rc.spin_elements[0]) + std::norm(rc.spin_elements[1]) +
            std::norm(rc.spin_elements[2]) == 0.0)
        throw ConfigError("atom.spin_elements must not all vanish");

    rc.temperature = parse_double(value("atom", "temperature_k"), "atom.temperature_k");
    if (rc.temperature < 0.0) throw ConfigError("atom.temperature_k must be >= 0");

    // stack
    const std::string preset = trim(value("stack", "preset"));
    std::vector<double> deltas;
    if (auto v = cfg.get("stack", "skin_depth_um")) {
        for (double x : parse_list(*v, "stack.skin_depth_um")) deltas.push_back(x * kMicron);
    } else if (preset == "aluminium-300K" || preset.empty()) {
        deltas = {110e-6};
    } else if (preset == "niobium-9K") {
        deltas = {15e-6};
    } else if (preset == "custom") {
        throw ConfigError("stack.preset=custom requires stack.skin_depth_um");
    } else {
        throw ConfigError("unknown stack.preset: " + preset);
    }
    for (double x : deltas)
        if (!(x > 0.0)) throw ConfigError("stack skin depth must be positive");
    rc.skin_depths = deltas;

    for (double x : parse_list(value("stack", "film_thickness_um"), "stack.film_thickness_um"))
        rc.film_thicknesses.push_back(x * kMicron);
    if (rc.film_thicknesses.empty())
        rc.film_thicknesses.push_back(std::numeric_limits<double>::infinity());
    for (double x : rc.film_thicknesses)
        if (!(x > 0.0)) throw ConfigError("stack.film_thickness_um entries must be positive");

    const std::string sub = trim(value("stack", "substrate"));
    if (sub == "vacuum") {
        rc.substrate = PermittivityModel::vacuum();
    } else if (sub == "dielectric") {
        rc.substrate = PermittivityModel::constant(
            {parse_double(value("stack", "substrate_eps_re"), "stack.substrate_eps_re"),
             parse_double(value("stack", "substrate_eps_im"), "stack.substrate_eps_im")});
    } else {
        throw ConfigError("stack.substrate must be vacuum or dielectric");
    }
    if (auto v = cfg.get("stack", "layers")) rc.explicit_layers = parse_layers(*v);

    // geometry
    for (double x : parse_list(value("geometry", "d_um"), "geometry.d_um"))
        rc.d_list.push_back(x * kMicron);
    for (double x : parse_list(value("geometry", "l_um"), "geometry.l_um"))
        rc.l_list.push_back(x * kMicron);
    rc.t_list = parse_list(value("geometry", "t_s"), "geometry.t_s");
    for (double x : rc.d_list)
        if (!(x > 0.0)) throw ConfigError("geometry.d_um entries must be positive");
    for (double x : rc.l_list)
        if (x < 0.0) throw ConfigError("geometry.l_um entries must be >= 0");
    for (double x : rc.t_list)
        if (x < 0.0) throw ConfigError("geometry.t_s entries must be >= 0");
    if (rc.d_list.empty()) throw ConfigError("geometry.d_um: at least one distance required");

    for (double x : parse_list(value("halfwidth", "delta_um"), "halfwidth.delta_um"))
        rc.hw_deltas.push_back(x * kMicron);
    for (double x : parse_list(value("halfwidth", "h_um"), "halfwidth.h_um"))
        rc.hw_hs.push_back(x * kMicron);

    // numerics
    rc.tol = parse_double(value("numerics", "tol"), "numerics.tol");
    if (!(rc.tol > 0.0)) throw ConfigError("numerics.tol must be positive");
    rc.quasi_static = parse_bool(value("numerics", "quasi_static"), "numerics.quasi_static");
    const std::string axis = trim(value("numerics", "separation_axis"));
    if (axis == "x")
        rc.axis = SeparationAxis::X;
    else if (axis == "y")
        rc.axis = SeparationAxis::Y;
    else
        throw ConfigError("numerics.separation_axis must be x or y");

    // output
    rc.out_path = trim(value("output", "path"));
    rc.fig_files = parse_bool(value("output", "fig_files"), "output.fig_files");
    rc.fig_dir = trim(value("output", "fig_dir"));
    if (rc.fig_dir.empty()) rc.fig_dir = ".";
    rc.json = parse_bool(value("output", "json"), "output.json");
    rc.timestamp = parse_bool(value("output", "timestamp"), "output.timestamp");
    rc.jobs = static_cast<int>(std::lround(parse_double(value("output", "jobs"), "output.jobs")));
    if (rc.jobs < 0) throw ConfigError("output.jobs must be >= 0");
    return rc;
}

LayerStack RunConfig::build_stack(double delta, double film_h) const {
    if (explicit_layers) return LayerStack(*explicit_layers);
    const auto film = PermittivityModel::drude(delta);
    if (std::isinf(film_h)) return LayerStack::half_space(film);
    return LayerStack::film_on_substrate(film, film_h, substrate);
}

} // namespace spincoh
