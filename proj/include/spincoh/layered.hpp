#pragma once

#include <complex>
#include <vector>

namespace spincoh {

using Complex = std::complex<double>;

// Local permittivity model evaluated at a single frequency. The Drude form
// 2ic^2/(omega^2 delta^2) is valid only in a restricted frequency interval;
// it is used here at the single transition frequency, never integrated over
// broad omega ranges.
struct PermittivityModel {
    enum class Kind { Vacuum, Constant, DrudeSkinDepth };
    Kind kind = Kind::Vacuum;
    Complex eps_value{1.0, 0.0}; // Constant
    double skin_depth = 0.0;     // DrudeSkinDepth, m

    static PermittivityModel vacuum();
    static PermittivityModel constant(Complex eps);
    static PermittivityModel drude(double delta);
};

Complex evaluate_permittivity(const PermittivityModel& model, double omega);

struct Layer {
    PermittivityModel model;
    double thickness = 0.0; // m; ignored when semi_infinite
    bool semi_infinite = false;

    static Layer finite(PermittivityModel m, double h);
    static Layer bottom(PermittivityModel m); // semi-infinite terminating layer
};

// Planar layers below the vacuum half-space (region 1, eps = 1). layers[0] is
// adjacent to vacuum; the last layer must be the semi-infinite substrate.
class LayerStack {
public:
    explicit LayerStack(std::vector<Layer> layers);

    const std::vector<Layer>& layers() const { return layers_; }
    std::size_t regions() const { return layers_.size() + 1; } // incl. vacuum

    static LayerStack vacuum_only();
    static LayerStack half_space(PermittivityModel m);
    static LayerStack film_on_substrate(PermittivityModel film, double h,
                                        PermittivityModel substrate);

private:
    std::vector<Layer> layers_;
};

enum class Polarization { TE, TM };

// Per-region permittivities and normal wavenumbers at fixed (omega, K).
struct WaveContext {
    double omega = 0.0;
    double K = 0.0;
    std::vector<Complex> eps; // region i, 0 = vacuum
    std::vector<Complex> kz;  // Im >= 0 branch

    static WaveContext make(const LayerStack& stack, double omega, double K);
};

// Principal branch with Im kz >= 0 (Re kz >= 0 on the real axis).
Complex normal_wavenumber(double omega, double K, Complex eps);

Complex fresnel_te(double omega, double K, Complex eps1, Complex eps2);
Complex fresnel_tm(double omega, double K, Complex eps1, Complex eps2);

// Generalized coefficient for a film of thickness h between media 1 and 3:
// (r12 + r23 e^{2 i k2z h}) / (1 - r21 r23 e^{2 i k2z h}).
Complex three_layer_fresnel(Complex r12, Complex r21, Complex r23, Complex k2z, double h);

// Reflection seen from vacuum, arbitrary depth by folding three_layer_fresnel
// from the bottom up.
Complex stack_reflection(const LayerStack& stack, double omega, double K, Polarization pol);

// Debug hook for the verify command's mutation test: flips the sign of every
// TM Fresnel coefficient. Never set outside `verify --inject-tm-flip`.
void debug_set_tm_sign_flip(bool enabled);
bool debug_tm_sign_flip();

} // namespace spincoh
