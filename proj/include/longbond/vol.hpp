#pragma once

#include <cstdint>
#include <vector>

#include "longbond/curve.hpp"
#include "longbond/grid.hpp"
#include "longbond/weight.hpp"

namespace longbond {

/// One exponential volatility factor sigma * e^{-kappa x}.
struct ExpFactor {
    double sigma = 0.0;
    double kappa = 0.0;
};

/// Parameters of the tail-decay envelope C(T) = K * min(T^{-eps/2}, 1).
struct TailBoundParams {
    double K = 1.0;
    double eps = 1.0;
};

/// C(T) = K * min(T^{-eps/2}, 1); non-increasing, C(0) = K.
double tail_bound_c(const TailBoundParams& p, double T);

/// Grid-free norm of sigma * e^{-kappa x} under weight w, by dense quadrature
/// of the norm integral (used for envelope calibration, not simulation).
double exp_factor_weighted_norm(double sigma, double kappa, const WeightSpec& w);

/// Smallest K making  tail_integral(h, T) <= C(T) * ||h||_w  hold across a
/// fixed pseudo-random calibration set of exponential factor curves and a
/// fixed T grid.  Deterministic for a given seed.
double calibrate_tail_k(const WeightSpec& w, std::uint64_t seed = 0x5eedc0de5eedc0deULL,
                        int members = 100);

/// Calibrated-and-frozen envelope for a weight family: eps from the weight's
/// tail asymptotics, K from calibrate_tail_k with the default seed (cached).
/// Requires the long-bond weight condition.
TailBoundParams default_tail_bound(const WeightSpec& w);

/// J-factor volatility map.  Factor curves live in the zero-long-rate curve
/// space under the reciprocal weight wbar and are sampled on the shared grid
/// with the last node snapped to exactly zero.
///
/// Kinds:
///   Exponential     sigma_j e^{-kappa_j x}, deterministic
///   Tabulated       arbitrary sampled curves, deterministic, hard zero tail
///   StateDependent  exponential base loadings scaled by the bounded factor
///                   g(f) = 1 + amplitude * tanh(slope * (f(0) - pivot))
class VolSpec {
public:
    enum class Kind { Exponential, Tabulated, StateDependent };

    static VolSpec exponential(std::vector<ExpFactor> factors, GridPtr grid, WeightSpec wbar,
                               double lipschitz_d1 = 0.0, double bound_d2 = 0.0);
    static VolSpec tabulated(std::vector<std::vector<double>> factor_values, GridPtr grid,
                             WeightSpec wbar, double lipschitz_d1 = 0.0, double bound_d2 = 0.0);
    static VolSpec state_dependent(std::vector<ExpFactor> factors, GridPtr grid, WeightSpec wbar,
                                   double pivot_rate, double amplitude, double slope,
                                   double lipschitz_d1 = 0.0, double bound_d2 = 0.0);

    Kind kind() const { return kind_; }
    int n_factors() const { return static_cast<int>(base_.size()); }
    const GridPtr& grid() const { return grid_; }
    const WeightSpec& wbar() const { return wbar_; }
    double lipschitz_d1() const { return lipschitz_d1_; }
    double bound_d2() const { return bound_d2_; }

    /// True when the factor curves do not depend on (t, f).
    bool is_static() const { return kind_ != Kind::StateDependent; }

    /// True when closed-form Gaussian treatment applies.
    bool is_exponential_family() const { return kind_ != Kind::Tabulated; }

    /// Exponential parameters; throws for the tabulated kind.
    const std::vector<ExpFactor>& exp_factors() const;

    /// Cached base factor curves on the grid (state scale not applied).
    const std::vector<ForwardCurve>& base_factors() const { return base_; }

    /// l2-aggregate of the base factor curve norms under wbar (grid quadrature).
    double aggregate_norm() const { return aggregate_norm_; }

    /// Bounded multiplier applied to the base loadings; 1 for static kinds.
    double state_scale(double t, const CurveView& f) const;

    /// Factor curves at (t, f).  Asserts the aggregate-norm bound D2.
    std::vector<ForwardCurve> eval(double t, const ForwardCurve& f) const;

    /// Per-factor volatility of the T-maturity bond, integral of the factor
    /// curve over [0, T - t]; closed form for the exponential family.
    std::vector<double> bond_vol(double t, const CurveView& f, double T) const;

    /// Per-factor long-bond volatility, integral over [0, infinity); requires
    /// the long-bond condition on wbar.
    std::vector<double> long_bond_vol(double t, const CurveView& f) const;

private:
    VolSpec() = default;
    void finalize(double lipschitz_d1, double bound_d2);

    Kind kind_ = Kind::Exponential;
    GridPtr grid_;
    WeightSpec wbar_ = WeightSpec::reciprocal_power(4.0);
    std::vector<ExpFactor> exp_;
    std::vector<ForwardCurve> base_;
    std::vector<double> base_long_vol_; // integral of each base factor over [0, inf)
    double aggregate_norm_ = 0.0;
    double lipschitz_d1_ = 0.0;
    double bound_d2_ = 0.0;
    // state-dependent scale parameters
    double pivot_ = 0.0, amplitude_ = 0.0, slope_ = 0.0;
};

/// Market price of risk gamma(t, f), a J-vector with a declared dominator
/// Gamma(t) >= ||gamma||_l2 that is square integrable on any finite horizon.
class MarketPriceOfRisk {
public:
    enum class Kind { Zero, Constant, Deterministic, StateDependent };

    static MarketPriceOfRisk zero(int n_factors);
    static MarketPriceOfRisk constant(std::vector<double> levels);
    /// gamma_j(t) = levels_j * e^{-decay t}, decay >= 0.
    static MarketPriceOfRisk deterministic(std::vector<double> levels, double decay);
    /// gamma_j(t, f) = levels_j * (1 + amplitude * tanh(slope * (f(0) - pivot))).
    static MarketPriceOfRisk state_dependent(std::vector<double> levels, double pivot_rate,
                                             double amplitude, double slope);

    Kind kind() const { return kind_; }
    int n_factors() const { return static_cast<int>(levels_.size()); }
    bool is_zero() const;
    bool is_constant() const { return kind_ == Kind::Zero || kind_ == Kind::Constant; }

    /// Dominator Gamma(t) and its squared integral over [0, horizon].
    double dominator(double t) const;
    double dominator_sq_integral(double horizon) const;

    /// gamma at (t, f); asserts ||gamma||_l2 <= Gamma(t).
    std::vector<double> eval(double t, const CurveView& f) const;

private:
    MarketPriceOfRisk() = default;
    Kind kind_ = Kind::Zero;
    std::vector<double> levels_;
    double decay_ = 0.0;
    double pivot_ = 0.0, amplitude_ = 0.0, slope_ = 0.0;
};

} // namespace longbond
