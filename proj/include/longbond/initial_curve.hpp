#pragma once

#include <memory>
#include <string>
#include <vector>

#include "longbond/curve.hpp"
#include "longbond/grid.hpp"

namespace longbond {

/// Initial forward curve as a function of maturity.  Analytic families carry
/// an exact derivative; tabulated curves do not.
class InitialCurve {
public:
    virtual ~InitialCurve() = default;
    virtual double eval(double u) const = 0;
    /// d/du of the curve; throws ConfigError for tabulated data.
    virtual double derivative(double u) const = 0;
    virtual bool analytic() const = 0;
    virtual std::string describe() const = 0;

    ForwardCurve sample(GridPtr g) const;
};

using InitialCurvePtr = std::shared_ptr<const InitialCurve>;

InitialCurvePtr flat_initial_curve(double level);

/// c_inf + sum_i a_i e^{-b_i u}
InitialCurvePtr exp_affine_initial_curve(double c_inf, std::vector<double> a,
                                         std::vector<double> b);

/// The mean-reverting-model initial curve consistent with a constant
/// risk-neutral level theta_q:
///   f0(u) = theta_q (1-E) - sigma^2/(2 kappa^2) (1-E)^2 + r0 E,  E = e^{-kappa u}.
InitialCurvePtr vasicek_initial_curve_fn(double theta_q, double kappa, double sigma,
                                         double r0);

/// Piecewise-linear interpolation of tabulated (u, f) points, constant beyond
/// the last point.  No analytic derivative.
InitialCurvePtr tabulated_initial_curve(std::vector<double> u, std::vector<double> f);

} // namespace longbond
