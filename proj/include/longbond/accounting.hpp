#pragma once

#include <span>
#include <vector>

#include "longbond/curve.hpp"
#include "longbond/grid.hpp"
#include "longbond/measure.hpp"
#include "longbond/vol.hpp"

namespace longbond {

/// Roll-over bookkeeping for one tracked maturity T: the strategy holds the
/// (k+1)T-maturity bond on [kT, (k+1)T), reinvesting at each kT.  log_prod
/// accumulates ln prod_{i<=k} P_{iT}^{(i+1)T}, seeded with ln P_0^T.
struct RolloverTrack {
    double T = 0.0;
    int segment = 0;
    double log_prod = 0.0;
};

/// Per-path accounting state.  All multiplicative processes are carried in
/// log space; binf_excess = ln B_inf - ln A so the factorization residual is
/// independent of the accumulated short-rate integral.
struct PathState {
    GridPtr grid;
    std::vector<double> values; // forward curve nodes at time t
    double t = 0.0;
    double log_a = 0.0;       // ln A_t, left-endpoint rule
    double log_m = 0.0;       // ln M_t
    double log_minf = 0.0;    // ln M_t^inf
    double binf_excess = 0.0; // ln B_t^inf - ln A_t
    std::vector<RolloverTrack> rollover;
    long long path_id = -1;

    CurveView view() const { return CurveView{grid.get(), values}; }
    double log_binf() const { return log_a + binf_excess; }
};

/// P_t^{t+tau} = exp(-Integral_0^tau f_t(u) du); tau must stay on the grid.
double bond_price(const CurveView& f, double time_to_maturity);

/// Advances the pricing-kernel accumulators one step of size dt.  The same
/// Brownian increments drive every accumulator; increments are converted to
/// the data-generating measure by the deterministic-in-step shift
/// dW^P = dW^sim + shift(t, f) dt.
class Accountant {
public:
    Accountant(VolSpec vol, MarketPriceOfRisk mpr, MeasureTag sim_measure, double dt);

    /// Update ps over [ps.t, ps.t + dt] using the curve ps.values at ps.t and
    /// the simulation-measure increments dW.  Advances ps.t.
    void accrue(PathState& ps, std::span<const double> dW) const;

    /// shift(t, f) with dW^P = dW^sim + shift dt: zero under P, gamma under Q,
    /// gamma - sigma^T under QT, gamma^inf = gamma - sigma^inf under QInf.
    void measure_shift(double t, const CurveView& f, std::span<double> out) const;

    /// gamma and sigma^inf at (t, f), as used by accrue.
    void kernel_vectors(double t, const CurveView& f, std::span<double> gamma,
                        std::span<double> sigma_inf) const;

    const VolSpec& vol() const { return vol_; }
    const MarketPriceOfRisk& mpr() const { return mpr_; }
    const MeasureTag& sim_measure() const { return sim_; }
    double dt() const { return dt_; }

private:
    VolSpec vol_;
    MarketPriceOfRisk mpr_;
    MeasureTag sim_;
    double dt_;
    bool cache_ok_ = false;     // gamma and sigma^inf constant over (t, f)
    std::vector<double> gamma0_, siginf0_;
};

/// Start a roll-over tracker at t = 0 from the initial curve.
RolloverTrack make_rollover_track(double T, const CurveView& f0);

/// ln B_t^T = -log_prod + ln P_t^{(k+1)T} for t in the current segment.
double rollover_log_value(const RolloverTrack& track, const CurveView& f, double t);

/// Reinvest at t = (segment+1) T: fold ln P_t^{t+T} into the product.
void reinvest(RolloverTrack& track, const CurveView& f);

/// M_t^T = S_t B_t^T with S_t = M_t / A_t; tracker for T must exist in ps.
double forward_martingale(const PathState& ps, double T);

/// B_t^inf = exp(ln A_t + excess).
double long_bond(const PathState& ps);

/// pi_t = e^{-lambda t} B_t^inf; pi_0 = 1.
double pi_process(const PathState& ps, double lambda);

/// Relative residual |S_t - M_t^inf / B_t^inf| / S_t of the long-term
/// factorization, evaluated as |expm1(log_minf - binf_excess - log_m)| so the
/// savings-account accumulator cancels exactly.
double factorization_check(const PathState& ps);

/// Radon-Nikodym density d(to)/d(from) on F_t along this path.
double density_ratio(const PathState& ps, const MeasureTag& from, const MeasureTag& to);

} // namespace longbond
