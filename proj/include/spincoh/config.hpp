#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spincoh/atomics.hpp"
#include "spincoh/greens.hpp"
#include "spincoh/layered.hpp"

namespace spincoh {

// Ordered sections of ordered key/value pairs; values stay strings until the
// RunConfig interpretation step.
class Config {
public:
    void set(const std::string& section, const std::string& key, const std::string& value);
    std::optional<std::string> get(const std::string& section, const std::string& key) const;

    static Config parse(const std::string& text);
    std::string serialize() const;
    bool operator==(const Config&) const = default;

    // "section.key=value" (the --set flag)
    void apply_override(const std::string& spec);

private:
    using Section = std::pair<std::string, std::vector<std::pair<std::string, std::string>>>;
    std::vector<Section> sections_;
};

// The `init` template; also the source of all defaults.
std::string default_config_text();

// Fully interpreted run parameters, SI units throughout.
struct RunConfig {
    // atom
    double omega_A = 0.0;
    SpinVector spin_elements{};
    double temperature = 0.0;

    // stack sweep axes (rate command): skin depth x film thickness
    std::vector<double> skin_depths;      // m
    std::vector<double> film_thicknesses; // m; +inf = semi-infinite metal
    PermittivityModel substrate;          // below the film
    std::optional<std::vector<Layer>> explicit_layers; // overrides the film model

    // geometry
    std::vector<double> d_list; // m
    std::vector<double> l_list; // m
    std::vector<double> t_list; // s

    // halfwidth sweep
    std::vector<double> hw_deltas; // m
    std::vector<double> hw_hs;     // m

    // numerics
    double tol = 1e-8;
    bool quasi_static = true;
    SeparationAxis axis = SeparationAxis::X;

    // output
    std::string out_path;
    bool fig_files = false;
    std::string fig_dir = ".";
    bool json = false;
    bool timestamp = true;
    int jobs = 0;

    static RunConfig from_config(const Config& cfg);
    LayerStack build_stack(double delta, double film_h) const;
};

} // namespace spincoh
