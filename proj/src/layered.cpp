#include "spincoh/layered.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <utility>

#include "spincoh/errors.hpp"

namespace spincoh {

namespace {
std::atomic<bool> g_flip_tm{false};
}

void debug_set_tm_sign_flip(bool enabled) { g_flip_tm.store(enabled); }
bool debug_tm_sign_flip() { return g_flip_tm.load(std::memory_order_relaxed); }

PermittivityModel PermittivityModel::vacuum() { return {}; }

PermittivityModel PermittivityModel::constant(Complex eps) {
    if (eps.imag() < 0.0) throw DomainError("PermittivityModel: Im eps < 0 violates passivity");
    PermittivityModel m;
    m.kind = Kind::Constant;
    m.eps_value = eps;
    return m;
}

PermittivityModel PermittivityModel::drude(double delta) {
    if (!(delta > 0.0)) throw DomainError("PermittivityModel: skin depth must be positive");
    PermittivityModel m;
    m.kind = Kind::DrudeSkinDepth;
    m.skin_depth = delta;
    return m;
}

Complex evaluate_permittivity(const PermittivityModel& model, double omega) {
    if (!(omega > 0.0)) throw DomainError("evaluate_permittivity: omega must be positive");
    switch (model.kind) {
        case PermittivityModel::Kind::Vacuum:
            return {1.0, 0.0};
        case PermittivityModel::Kind::Constant:
            return model.eps_value;
        case PermittivityModel::Kind::DrudeSkinDepth: {
            constexpr double c = 299792458.0;
            const double val = 2.0 * c * c / (omega * omega * model.skin_depth * model.skin_depth);
            return {0.0, val};
        }
    }
    throw DomainError("evaluate_permittivity: unknown model");
}

Layer Layer::finite(PermittivityModel m, double h) {
    if (!(h > 0.0)) throw DomainError("Layer: finite thickness must be positive");
    return Layer{m, h, false};
}

Layer Layer::bottom(PermittivityModel m) { return Layer{m, 0.0, true}; }

LayerStack::LayerStack(std::vector<Layer> layers) : layers_(std::move(layers)) {
    if (layers_.empty()) throw DomainError("LayerStack: empty");
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        const bool last = (i + 1 == layers_.size());
        if (layers_[i].semi_infinite != last)
            throw DomainError("LayerStack: exactly the last layer must be semi-infinite");
        if (!last && !(layers_[i].thickness > 0.0))
            throw DomainError("LayerStack: inner layer needs positive thickness");
    }
}

LayerStack LayerStack::vacuum_only() { return LayerStack({Layer::bottom(PermittivityModel::vacuum())}); }

LayerStack LayerStack::half_space(PermittivityModel m) {
    return LayerStack({Layer::bottom(std::move(m))});
}

LayerStack LayerStack::film_on_substrate(PermittivityModel film, double h,
                                         PermittivityModel substrate) {
    return LayerStack({Layer::finite(std::move(film), h), Layer::bottom(std::move(substrate))});
}

Complex normal_wavenumber(double omega, double K, Complex eps) {
    if (!(omega > 0.0)) throw DomainError("normal_wavenumber: omega must be positive");
    if (K < 0.0) throw DomainError("normal_wavenumber: K must be >= 0");
    const double k0 = omega / 299792458.0;
    Complex kz2 = eps * (k0 * k0) - K * K;
    // keep the branch cut away from the passive upper half plane
    if (kz2.imag() == 0.0) kz2 = Complex(kz2.real(), 0.0);
    Complex w = std::sqrt(kz2);
    if (w.imag() < 0.0) w = -w;
    if (w.imag() == 0.0 && w.real() < 0.0) w = -w;
    return w;
}

WaveContext WaveContext::make(const LayerStack& stack, double omega, double K) {
    WaveContext ctx;
    ctx.omega = omega;
    ctx.K = K;
    ctx.eps.push_back({1.0, 0.0});
    for (const auto& layer : stack.layers()) ctx.eps.push_back(evaluate_permittivity(layer.model, omega));
    for (const auto& e : ctx.eps) ctx.kz.push_back(normal_wavenumber(omega, K, e));
    return ctx;
}

namespace {

Complex fresnel_te_kz(Complex k1z, Complex k2z) {
    const Complex den = k1z + k2z;
    const double scale = std::abs(k1z) + std::abs(k2z);
    if (scale == 0.0 || std::abs(den) < 1e-14 * scale) {
        std::ostringstream os;
        os << "fresnel_te: vanishing denominator, k1z=" << k1z << " k2z=" << k2z;
        throw SingularityError(os.str());
    }
    return (k1z - k2z) / den;
}

Complex fresnel_tm_kz(Complex k1z, Complex k2z, Complex e1, Complex e2) {
    const Complex num = e2 * k1z - e1 * k2z;
    const Complex den = e2 * k1z + e1 * k2z;
    const double scale = std::abs(e2 * k1z) + std::abs(e1 * k2z);
    if (scale == 0.0 || std::abs(den) < 1e-14 * scale) {
        std::ostringstream os;
        os << "fresnel_tm: vanishing denominator, k1z=" << k1z << " k2z=" << k2z;
        throw SingularityError(os.str());
    }
    const Complex r = num / den;
    return debug_tm_sign_flip() ? -r : r;
}

} // namespace

Complex fresnel_te(double omega, double K, Complex eps1, Complex eps2) {
    return fresnel_te_kz(normal_wavenumber(omega, K, eps1), normal_wavenumber(omega, K, eps2));
}

Complex fresnel_tm(double omega, double K, Complex eps1, Complex eps2) {
    return fresnel_tm_kz(normal_wavenumber(omega, K, eps1), normal_wavenumber(omega, K, eps2),
                         eps1, eps2);
}

Complex three_layer_fresnel(Complex r12, Complex r21, Complex r23, Complex k2z, double h) {
    if (h < 0.0) throw DomainError("three_layer_fresnel: negative thickness");
    const Complex phase = std::exp(Complex(0.0, 2.0) * k2z * h);
    const Complex den = 1.0 - r21 * r23 * phase;
    if (std::abs(den) < 1e-14) {
        std::ostringstream os;
        os << "three_layer_fresnel: guided-mode denominator " << den << " at h=" << h;
        throw SingularityError(os.str());
    }
    return (r12 + r23 * phase) / den;
}

Complex stack_reflection(const LayerStack& stack, double omega, double K, Polarization pol) {
    const WaveContext ctx = WaveContext::make(stack, omega, K);
    const auto& eps = ctx.eps;
    const auto& kzs = ctx.kz;
    const std::size_t n = eps.size(); // regions, >= 2
    auto iface = [&](std::size_t up, std::size_t lo) {
        return pol == Polarization::TE ? fresnel_te_kz(kzs[up], kzs[lo])
                                       : fresnel_tm_kz(kzs[up], kzs[lo], eps[up], eps[lo]);
    };
    Complex r_below = iface(n - 2, n - 1);
    for (std::size_t j = n - 2; j >= 1; --j) {
        const double h = stack.layers()[j - 1].thickness;
        r_below = three_layer_fresnel(iface(j - 1, j), iface(j, j - 1), r_below, kzs[j], h);
    }
    return r_below;
}

} // namespace spincoh
