#include "longbond/curve.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "longbond/errors.hpp"

namespace longbond {

double CurveView::value_at(double x) const {
    const auto& xs = grid->nodes();
    if (x <= 0.0) return values.front();
    if (x >= xs.back()) return values.back();
    const std::size_t k = grid->locate(x);
    const double u = (x - xs[k]) / (xs[k + 1] - xs[k]);
    return (1.0 - u) * values[k] + u * values[k + 1];
}

ForwardCurve ForwardCurve::from_values(GridPtr g, std::vector<double> v) {
    if (!g) throw ConfigError("forward curve needs a grid");
    if (v.size() != g->size())
        throw ConfigError("forward curve has " + std::to_string(v.size()) +
                          " values for a grid of " + std::to_string(g->size()) + " nodes");
    for (double x : v)
        if (!std::isfinite(x)) throw ConfigError("forward curve values must be finite");
    ForwardCurve out;
    out.grid = std::move(g);
    out.long_rate = v.back();
    out.values = std::move(v);
    return out;
}

ForwardCurve ForwardCurve::flat(GridPtr g, double level) {
    std::vector<double> v(g->size(), level);
    return from_values(std::move(g), std::move(v));
}

ForwardCurve ForwardCurve::sample(GridPtr g, const std::function<double(double)>& f) {
    std::vector<double> v(g->size());
    for (std::size_t i = 0; i < g->size(); ++i) v[i] = f(g->node(i));
    return from_values(std::move(g), std::move(v));
}

double sobolev_norm(const CurveView& h, const WeightSpec& w) {
    const auto& xs = h.grid->nodes();
    double acc = h.values[0] * h.values[0];
    double w_left = w.norm_weight(xs[0]);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double dx = xs[i + 1] - xs[i];
        const double slope = (h.values[i + 1] - h.values[i]) / dx;
        const double w_right = w.norm_weight(xs[i + 1]);
        acc += slope * slope * 0.5 * (w_left + w_right) * dx;
        w_left = w_right;
    }
    return std::sqrt(acc);
}

double sobolev_norm(const ForwardCurve& h, const WeightSpec& w) {
    return sobolev_norm(h.view(), w);
}

double long_forward_rate(const CurveView& h) { return h.values.back(); }
double long_forward_rate(const ForwardCurve& h) { return h.long_rate; }

ForwardCurve translate(const ForwardCurve& h, double dt) {
    if (dt < 0.0) throw ConfigError("translate needs dt >= 0");
    const auto& xs = h.grid->nodes();
    std::vector<double> v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i] + dt;
        if (x >= xs.back()) {
            v[i] = h.values.back();
        } else {
            const std::size_t k = h.grid->locate(x);
            const double u = (x - xs[k]) / (xs[k + 1] - xs[k]);
            v[i] = (1.0 - u) * h.values[k] + u * h.values[k + 1];
        }
    }
    return ForwardCurve::from_values(h.grid, std::move(v));
}

namespace {

// Exact integral of |linear segment| with endpoint values a, b over width d.
double abs_segment_integral(double a, double b, double d) {
    if (a == 0.0 && b == 0.0) return 0.0;
    if (a * b >= 0.0) return 0.5 * d * (std::fabs(a) + std::fabs(b));
    // sign change: split at the root
    const double aa = std::fabs(a), ab = std::fabs(b);
    return 0.5 * d * (aa * aa + ab * ab) / (aa + ab);
}

} // namespace

double tail_abs_integral(const CurveView& h, double from) {
    if (from < 0.0) throw ConfigError("tail integral needs from >= 0");
    if (h.values.back() != 0.0) return std::numeric_limits<double>::infinity();
    const auto& xs = h.grid->nodes();
    if (from >= xs.back()) return 0.0;
    const std::size_t k0 = h.grid->locate(from);
    double acc = 0.0;
    // partial first cell
    {
        const double fa = h.value_at(from);
        const double fb = h.values[k0 + 1];
        acc += abs_segment_integral(fa, fb, xs[k0 + 1] - from);
    }
    for (std::size_t k = k0 + 1; k + 1 < xs.size(); ++k)
        acc += abs_segment_integral(h.values[k], h.values[k + 1], xs[k + 1] - xs[k]);
    return acc;
}

double tail_abs_integral(const ForwardCurve& h, double from) {
    return tail_abs_integral(h.view(), from);
}

double curve_integral(const CurveView& h, double upto) {
    if (upto < 0.0) throw ConfigError("curve integral needs upto >= 0");
    const auto& xs = h.grid->nodes();
    if (upto > xs.back() * (1.0 + 1e-12))
        throw ConfigError("curve integral to " + std::to_string(upto) +
                          " exceeds grid horizon " + std::to_string(xs.back()) +
                          "; extend the grid");
    if (upto == 0.0) return 0.0;
    double acc = 0.0;
    std::size_t k = 0;
    while (k + 1 < xs.size() && xs[k + 1] <= upto) {
        acc += 0.5 * (h.values[k] + h.values[k + 1]) * (xs[k + 1] - xs[k]);
        ++k;
    }
    if (k + 1 < xs.size() && upto > xs[k]) {
        const double fu = h.value_at(upto);
        acc += 0.5 * (h.values[k] + fu) * (upto - xs[k]);
    }
    return acc;
}

} // namespace longbond
