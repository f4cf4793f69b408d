#include "spincoh/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "spincoh/errors.hpp"
#include "bessel_tables.hpp"

namespace spincoh {

namespace {

constexpr int kMaxComponents = 8;

struct Values {
    std::complex<double> v[kMaxComponents]{};
};

double norm1(const Values& a, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::abs(a.v[i]);
    return s;
}

struct Segment {
    double a, b;
    Values integral;
    double err;
};

struct SegmentWorse {
    bool operator()(const Segment& x, const Segment& y) const {
        if (x.err != y.err) return x.err < y.err;
        return x.a < y.a; // deterministic tie-break
    }
};

// One Gauss7/Kronrod15 pass on [a,b]; err = |K15 - G7| in the 1-norm.
Segment gk_eval(const VectorIntegrand& f, int n, double a, double b) {
    using detail::kGaussWeights;
    using detail::kKronrodNodes;
    using detail::kKronrodWeights;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Values k15, g7;
    std::complex<double> fv[kMaxComponents];
    for (int i = 0; i < 15; ++i) {
        const double x = mid + half * kKronrodNodes[i];
        f(x, fv);
        for (int c = 0; c < n; ++c) {
            k15.v[c] += kKronrodWeights[i] * fv[c];
            if (i % 2 == 1) g7.v[c] += kGaussWeights[i / 2] * fv[c];
        }
    }
    Segment s{a, b, {}, 0.0};
    double diff = 0.0;
    for (int c = 0; c < n; ++c) {
        s.integral.v[c] = k15.v[c] * half;
        diff += std::abs((k15.v[c] - g7.v[c]) * half);
    }
    s.err = diff;
    return s;
}

} // namespace

QuadratureReport integrate_adaptive_vec(const VectorIntegrand& f, int n,
                                        std::complex<double>* out, Interval iv,
                                        ToleranceSpec tol) {
    if (n < 1 || n > kMaxComponents) throw DomainError("integrate_adaptive: bad component count");
    if (tol.rel <= 0.0 && tol.abs <= 0.0) throw DomainError("integrate_adaptive: no tolerance given");

    double hi = iv.hi;
    double tail_bound = 0.0;
    const bool semi_infinite = std::isinf(iv.hi);
    if (semi_infinite) {
        if (iv.decay_rate <= 0.0)
            throw DomainError("integrate_adaptive: semi-infinite interval needs a decay rate");
        // Truncate where e^{-rate (x-lo)} is below 1e-20 (or at the caller's hint if
        // farther), then bound the remainder by |f(hi)| * 2/rate.
        hi = iv.lo + 46.1 / iv.decay_rate;
        if (iv.truncation_hint > hi) hi = iv.truncation_hint;
        std::complex<double> fv[kMaxComponents];
        f(hi, fv);
        Values vtail;
        for (int c = 0; c < n; ++c) vtail.v[c] = fv[c];
        tail_bound = norm1(vtail, n) * 2.0 / iv.decay_rate;
    }
    if (!(iv.lo < hi)) throw DomainError("integrate_adaptive: empty interval");

    QuadratureReport report;
    std::priority_queue<Segment, std::vector<Segment>, SegmentWorse> heap;
    double total_err = tail_bound;
    Values total;
    auto push_segment = [&](Segment&& s) {
        total_err += s.err;
        for (int c = 0; c < n; ++c) total.v[c] += s.integral.v[c];
        heap.push(std::move(s));
    };

    // Initial dyadic split toward lo: the integrands here peak a few decades
    // below the truncation point.
    {
        std::vector<double> edges;
        edges.push_back(hi);
        double len = hi - iv.lo;
        for (int k = 1; k <= 12; ++k) {
            len *= 0.5;
            edges.push_back(iv.lo + len);
        }
        edges.push_back(iv.lo);
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            push_segment(gk_eval(f, n, edges[i + 1], edges[i]));
            report.evaluations += 15;
        }
    }

    const long max_evals = tol.max_evals > 0 ? tol.max_evals : 2000000;
    bool converged = false;
    while (true) {
        const double scale = norm1(total, n);
        const double target = std::max(tol.rel * scale, tol.abs);
        report.rel_error = scale > 0.0 ? total_err / scale : total_err;
        if (total_err <= target) {
            converged = true;
            break;
        }
        if (report.evaluations + 30 > max_evals) break;
        Segment worst = heap.top();
        const double m = 0.5 * (worst.a + worst.b);
        if (!(worst.a < m && m < worst.b) || worst.err == 0.0)
            break; // nothing further to refine at double resolution
        heap.pop();
        total_err -= worst.err;
        for (int c = 0; c < n; ++c) total.v[c] -= worst.integral.v[c];
        push_segment(gk_eval(f, n, worst.a, m));
        push_segment(gk_eval(f, n, m, worst.b));
        report.evaluations += 30;
        report.subdivisions += 1;
    }

    // Deterministic final summation: segments in ascending position order.
    {
        std::vector<Segment> segs;
        segs.reserve(heap.size());
        while (!heap.empty()) {
            segs.push_back(heap.top());
            heap.pop();
        }
        std::sort(segs.begin(), segs.end(),
                  [](const Segment& x, const Segment& y) { return x.a < y.a; });
        Values sum;
        double err = tail_bound;
        for (const auto& s : segs) {
            err += s.err;
            for (int c = 0; c < n; ++c) sum.v[c] += s.integral.v[c];
        }
        for (int c = 0; c < n; ++c) out[c] = sum.v[c];
        const double scale = norm1(sum, n);
        report.rel_error = scale > 0.0 ? err / scale : err;
        if (converged && err > std::max(tol.rel * scale, tol.abs))
            converged = err <= 1.01 * std::max(tol.rel * scale, tol.abs);
    }
    report.converged = converged;
    return report;
}

std::pair<std::complex<double>, QuadratureReport>
integrate_adaptive(const ComplexIntegrand& f, Interval iv, ToleranceSpec tol) {
    std::complex<double> out;
    auto report = integrate_adaptive_vec(
        [&f](double x, std::complex<double>* v) { v[0] = f(x); }, 1, &out, iv, tol);
    return {out, report};
}

namespace {

double cheb_eval(const double* coef, int n, double u) {
    const double t = 2.0 * u - 1.0;
    double b0 = 0.0, b1 = 0.0;
    for (int i = n - 1; i >= 1; --i) {
        const double tmp = 2.0 * t * b0 - b1 + coef[i];
        b1 = b0;
        b0 = tmp;
    }
    return t * b0 - b1 + coef[0];
}

// Power series about 0; adequate to ~7e-14 absolute at the x=8 switch point.
double j_series(int n, double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    for (int k = 1; k <= n; ++k) term *= 0.5 * x / k;
    double sum = term;
    for (int k = 1; k < 60; ++k) {
        term *= -q / (static_cast<double>(k) * (k + n));
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1.0)) break;
    }
    return sum;
}

double j_asymptotic(int n, double x) {
    using namespace detail;
    const double u = (8.0 / x) * (8.0 / x);
    const double p = cheb_eval(n == 0 ? kP0Cheb : kP1Cheb, 19, u);
    const double qh = cheb_eval(n == 0 ? kQ0Cheb : kQ1Cheb, 19, u);
    const double chi = x - (2 * n + 1) * 0.25 * M_PI;
    return std::sqrt(2.0 / (M_PI * x)) * (p * std::cos(chi) - (8.0 / x) * qh * std::sin(chi));
}

} // namespace

double bessel_j(int n, double x) {
    if (n < 0 || n > 2) throw DomainError("bessel_j: order must be 0, 1 or 2");
    if (x < 0.0) throw DomainError("bessel_j: negative argument");
    if (x < 8.0) return j_series(n, x);
    if (n < 2) return j_asymptotic(n, x);
    return 2.0 * j_asymptotic(1, x) / x - j_asymptotic(0, x);
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol_rel,
              double tol_abs) {
    if (!(lo < hi)) throw DomainError("bisect: invalid bracket");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw BracketError("bisect: no sign change over bracket", flo, fhi);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double width = hi - lo;
        if (width <= std::max(tol_abs, tol_rel * std::abs(mid)) || mid == lo || mid == hi)
            return mid;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double second_derivative(const std::function<double(double)>& f, double x, double h,
                         bool richardson) {
    if (!(h > 0.0)) throw DomainError("second_derivative: step must be positive");
    auto d2 = [&](double hh) { return (f(x + hh) - 2.0 * f(x) + f(x - hh)) / (hh * hh); };
    const double coarse = d2(h);
    if (!richardson) return coarse;
    const double fine = d2(0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

std::pair<double, double> loglog_slope(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t n = xs.size();
    if (n < 3 || ys.size() != n) throw DomainError("loglog_slope: need >= 3 matched points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw DomainError("loglog_slope: inputs must be positive");
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double den = n * sxx - sx * sx;
    if (den == 0.0) throw DomainError("loglog_slope: degenerate abscissae");
    const double slope = (n * sxy - sx * sy) / den;
    const double icept = (sy - slope * sx) / n;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (slope * lx[i] + icept);
        rss += r * r;
    }
    return {slope, std::sqrt(rss / n)};
}

} // namespace spincoh
