#pragma once

#include <functional>
#include <span>
#include <vector>

#include "longbond/grid.hpp"
#include "longbond/weight.hpp"

namespace longbond {

/// Non-owning view of a curve's node values on a grid; the representative is
/// piecewise linear between nodes and constant beyond x_max.
struct CurveView {
    const MaturityGrid* grid = nullptr;
    std::span<const double> values;

    double value_at(double x) const;
    double short_rate() const { return values.front(); }
    double long_rate() const { return values.back(); }
};

/// Forward curve sampled on a maturity grid.  The stored long_rate always
/// equals the last node value; the curve is flat at long_rate beyond x_max.
struct ForwardCurve {
    GridPtr grid;
    std::vector<double> values;
    double long_rate = 0.0;

    static ForwardCurve from_values(GridPtr g, std::vector<double> v);
    static ForwardCurve flat(GridPtr g, double level);
    static ForwardCurve sample(GridPtr g, const std::function<double(double)>& f);

    CurveView view() const { return CurveView{grid.get(), values}; }
    double value_at(double x) const { return view().value_at(x); }
    double short_rate() const { return values.front(); }
};

/// Curve-space norm sqrt(|h(0)|^2 + Integral |h'|^2 m(x) dx), with h' the exact
/// piecewise-constant slopes and the weight integrated by the trapezoid rule
/// per cell.  The constant tail beyond x_max contributes nothing.
double sobolev_norm(const CurveView& h, const WeightSpec& w);
double sobolev_norm(const ForwardCurve& h, const WeightSpec& w);

/// The flat tail level f(x_max); invariant under translation.
double long_forward_rate(const CurveView& h);
double long_forward_rate(const ForwardCurve& h);

/// h(. + dt) re-sampled onto the same grid by linear interpolation, constant
/// beyond x_max.  Preserves the long rate exactly.
ForwardCurve translate(const ForwardCurve& h, double dt);

/// Integral of |h| over [from, infinity).  Exact for the piecewise-linear
/// representative up to x_max; +infinity when the tail level is nonzero.
double tail_abs_integral(const CurveView& h, double from);
double tail_abs_integral(const ForwardCurve& h, double from);

/// Integral of h over [0, upto]; upto must not exceed x_max.
double curve_integral(const CurveView& h, double upto);

} // namespace longbond
