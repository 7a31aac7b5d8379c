#pragma once

#include <cstdint>
#include <vector>

#include "longbond/curve.hpp"
#include "longbond/initial_curve.hpp"
#include "longbond/measure.hpp"
#include "longbond/vol.hpp"

namespace longbond {

/// x -> f(x) * Integral_0^x f, the quadratic map behind the arbitrage-free
/// drift; cumulative trapezoid on the grid.
ForwardCurve s_operator(const ForwardCurve& f);

/// Drift of the forward curve under a given measure, split into the
/// no-arbitrage part and the measure-dependent adjustment:
///   mu = alpha_hjm - adjustment,
/// with adjustment = sum_j c_j sigma^j and c_j the market price of risk (P),
/// zero (Q), the T-bond volatility (QT), or the long-bond volatility (QInf).
struct DriftAssembly {
    ForwardCurve alpha_hjm;
    ForwardCurve adjustment;
    ForwardCurve mu;
};

DriftAssembly hjm_drift(const VolSpec& v, const MarketPriceOfRisk& g, double t,
                        const ForwardCurve& f, const MeasureTag& measure);

/// Time-stepping scheme selector.
struct StepScheme {
    enum class Kind { EulerMaruyama, ExactGaussian };
    Kind kind = Kind::EulerMaruyama;
    double dt = 1.0 / 250.0;
};

/// Pre-resolved interpolation for h -> h(. + dt) on a fixed grid.  Node i maps
/// to cell k[i] with fraction u[i]; nodes shifted past x_max carry (last, 0)
/// so the tail value is copied bitwise.
class TranslateStencil {
public:
    TranslateStencil(const MaturityGrid& grid, double dt);

    /// In-place is allowed: k[i] >= i for dt >= 0, so reads stay ahead of writes.
    void apply(std::span<const double> in, std::span<double> out) const;

private:
    std::vector<std::size_t> k_;
    std::vector<double> u_;
};

/// Semi-Lagrangian Euler-Maruyama stepper: translate by dt, then add the
/// reaction terms mu*dt + sum_j sigma^j dW_j.  Caches the stencil, the base
/// no-arbitrage drift, and the factor curves; pure w.r.t. path state.
class EulerStepper {
public:
    EulerStepper(GridPtr grid, VolSpec vol, MarketPriceOfRisk mpr, MeasureTag measure, double dt);

    /// One step in place.  `values` is the path's node buffer at time t; dW has
    /// one increment per factor.  Throws NumericalBlowup carrying (t, path_id)
    /// on non-finite output and InvariantViolation if the tail node moves.
    void step(std::vector<double>& values, double t, std::span<const double> dW,
              long long path_id = -1) const;

    const GridPtr& grid() const { return grid_; }
    double dt() const { return dt_; }
    const VolSpec& vol() const { return vol_; }
    const MarketPriceOfRisk& mpr() const { return mpr_; }
    const MeasureTag& measure() const { return measure_; }

private:
    GridPtr grid_;
    VolSpec vol_;
    MarketPriceOfRisk mpr_;
    MeasureTag measure_;
    double dt_;
    TranslateStencil stencil_;
    std::vector<double> alpha_base_;                 // sum_j S(sigma_base^j)
    std::vector<std::vector<double>> factor_base_;   // sigma_base^j node values
};

/// Exact transition sampler for the deterministic exponential-factor Gaussian
/// model.  The curve at time t is
///   f_t(x) = f0(t + x) + det_m(t, x) + sum_j sigma_j e^{-kappa_j x} X_j(t)
/// with X_j an Ornstein-Uhlenbeck state driven by the simulation-measure
/// increments and det_m the closed-form drift integral of measure m.  The last
/// node is pinned to the sampled initial tail so the long rate is conserved
/// bitwise.  Requires analytic f0, exponential factors, static vol, and
/// constant market price of risk.
class ExactGaussianStepper {
public:
    ExactGaussianStepper(InitialCurvePtr f0, GridPtr grid, VolSpec vol, MarketPriceOfRisk mpr,
                         MeasureTag measure, double dt);

    struct State {
        double t = 0.0;
        std::vector<double> x; // one OU state per factor
    };

    State initial_state() const;

    /// Advance the OU states by one exact transition using increments dW.
    void advance(State& s, std::span<const double> dW) const;

    /// Render the curve at the state's time onto the grid.
    void render(const State& s, std::vector<double>& values) const;

    /// Closed-form deterministic drift integral det_m(t, x) for this measure.
    double deterministic_term(double t, double x) const;

    const GridPtr& grid() const { return grid_; }
    double dt() const { return dt_; }
    const std::vector<ExpFactor>& factors() const { return factors_; }

private:
    InitialCurvePtr f0_;
    GridPtr grid_;
    VolSpec vol_;
    MarketPriceOfRisk mpr_;
    MeasureTag measure_;
    double dt_;
    std::vector<ExpFactor> factors_;
    std::vector<double> gamma_;      // constant MPR levels
    std::vector<double> decay_;      // e^{-kappa_j dt}
    std::vector<double> shock_;      // stddev multiplier per unit dW
    double f0_tail_ = 0.0;           // sampled f0(x_max), pinned at the last node
};

/// One step of the curve SDE as a pure function (module-level entry point).
/// EulerMaruyama builds a transient stepper; ExactGaussian recovers the OU
/// states from the curve itself (linear solve at spread-out nodes) and applies
/// the exact transition, so it requires the Gaussian model's f0.
ForwardCurve step(const ForwardCurve& f, double t, const StepScheme& scheme, const VolSpec& v,
                  const MarketPriceOfRisk& g, const MeasureTag& measure,
                  std::span<const double> dW, const InitialCurvePtr& f0 = nullptr);

} // namespace longbond
