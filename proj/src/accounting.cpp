#include "longbond/accounting.hpp"

#include <algorithm>
#include <cmath>

#include "longbond/errors.hpp"

namespace longbond {

namespace {
constexpr int kMaxFactors = 16;
}

double bond_price(const CurveView& f, double time_to_maturity) {
    if (!(time_to_maturity >= 0.0))
        throw ConfigError("time to maturity must be >= 0");
    return std::exp(-curve_integral(f, time_to_maturity));
}

Accountant::Accountant(VolSpec vol, MarketPriceOfRisk mpr, MeasureTag sim_measure, double dt)
    : vol_(std::move(vol)), mpr_(std::move(mpr)), sim_(sim_measure), dt_(dt) {
    if (!(dt > 0.0)) throw ConfigError("step size must be > 0");
    if (mpr_.n_factors() != vol_.n_factors())
        throw ConfigError("market price of risk and volatility disagree on the factor count");
    if (vol_.n_factors() > kMaxFactors)
        throw ConfigError("factor count exceeds the supported maximum of 16");
    if (vol_.is_static() && mpr_.is_constant()) {
        const ForwardCurve dummy = ForwardCurve::flat(vol_.grid(), 0.0);
        gamma0_ = mpr_.eval(0.0, dummy.view());
        siginf0_ = vol_.long_bond_vol(0.0, dummy.view());
        cache_ok_ = true;
    }
}

void Accountant::kernel_vectors(double t, const CurveView& f, std::span<double> gamma,
                                std::span<double> sigma_inf) const {
    const std::size_t nj = static_cast<std::size_t>(vol_.n_factors());
    if (cache_ok_) {
        std::copy(gamma0_.begin(), gamma0_.end(), gamma.begin());
        std::copy(siginf0_.begin(), siginf0_.end(), sigma_inf.begin());
        return;
    }
    const std::vector<double> g = mpr_.eval(t, f);
    const std::vector<double> s = vol_.long_bond_vol(t, f);
    for (std::size_t j = 0; j < nj; ++j) {
        gamma[j] = g[j];
        sigma_inf[j] = s[j];
    }
}

void Accountant::measure_shift(double t, const CurveView& f, std::span<double> out) const {
    const std::size_t nj = static_cast<std::size_t>(vol_.n_factors());
    double gamma[kMaxFactors], siginf[kMaxFactors];
    kernel_vectors(t, f, {gamma, nj}, {siginf, nj});
    switch (sim_.kind) {
        case MeasureTag::Kind::P:
            for (std::size_t j = 0; j < nj; ++j) out[j] = 0.0;
            break;
        case MeasureTag::Kind::Q:
            for (std::size_t j = 0; j < nj; ++j) out[j] = gamma[j];
            break;
        case MeasureTag::Kind::QT: {
            const std::vector<double> bv = vol_.bond_vol(t, f, sim_.T);
            for (std::size_t j = 0; j < nj; ++j) out[j] = gamma[j] - bv[j];
            break;
        }
        case MeasureTag::Kind::QInf:
            for (std::size_t j = 0; j < nj; ++j) out[j] = gamma[j] - siginf[j];
            break;
    }
}

void Accountant::accrue(PathState& ps, std::span<const double> dW) const {
    const std::size_t nj = static_cast<std::size_t>(vol_.n_factors());
    if (dW.size() != nj) throw ConfigError("Brownian increment count does not match factors");
    const CurveView pre = ps.view();

    double gamma[kMaxFactors], siginf[kMaxFactors], shift[kMaxFactors], dwp[kMaxFactors];
    kernel_vectors(ps.t, pre, {gamma, nj}, {siginf, nj});
    measure_shift(ps.t, pre, {shift, nj});
    for (std::size_t j = 0; j < nj; ++j) dwp[j] = dW[j] + shift[j] * dt_;

    double g_dw = 0.0, g2 = 0.0, gi_dw = 0.0, gi2 = 0.0, si_dw = 0.0, si2 = 0.0, si_g = 0.0;
    for (std::size_t j = 0; j < nj; ++j) {
        const double gi = gamma[j] - siginf[j]; // gamma^inf
        g_dw += gamma[j] * dwp[j];
        g2 += gamma[j] * gamma[j];
        gi_dw += gi * dwp[j];
        gi2 += gi * gi;
        si_dw += siginf[j] * dwp[j];
        si2 += siginf[j] * siginf[j];
        si_g += siginf[j] * gamma[j];
    }

    ps.log_a += pre.short_rate() * dt_;
    ps.log_m += g_dw - 0.5 * g2 * dt_;
    ps.log_minf += gi_dw - 0.5 * gi2 * dt_;
    ps.binf_excess += si_g * dt_ - si_dw - 0.5 * si2 * dt_;
    ps.t += dt_;

    if (!std::isfinite(ps.log_a) || !std::isfinite(ps.log_m) || !std::isfinite(ps.log_minf) ||
        !std::isfinite(ps.binf_excess))
        throw NumericalBlowup(ps.t, ps.path_id);
}

RolloverTrack make_rollover_track(double T, const CurveView& f0) {
    if (!(T > 0.0)) throw ConfigError("tracked maturity must be > 0");
    RolloverTrack track;
    track.T = T;
    track.segment = 0;
    track.log_prod = -curve_integral(f0, T); // ln P_0^T
    return track;
}

double rollover_log_value(const RolloverTrack& track, const CurveView& f, double t) {
    const double maturity = (track.segment + 1) * track.T;
    const double tau = maturity - t;
    if (tau < -1e-9 * track.T)
        throw InvariantViolation("roll-over tracker lagging behind path time; reinvest missed");
    return -track.log_prod - curve_integral(f, std::max(tau, 0.0));
}

void reinvest(RolloverTrack& track, const CurveView& f) {
    track.log_prod += -curve_integral(f, track.T); // ln P_{kT}^{(k+1)T}
    track.segment += 1;
}

double forward_martingale(const PathState& ps, double T) {
    for (const auto& track : ps.rollover)
        if (track.T == T)
            return std::exp(ps.log_m - ps.log_a + rollover_log_value(track, ps.view(), ps.t));
    throw ConfigError("no roll-over tracker for the requested maturity");
}

double long_bond(const PathState& ps) { return std::exp(ps.log_binf()); }

double pi_process(const PathState& ps, double lambda) {
    return std::exp(-lambda * ps.t + ps.log_binf());
}

double factorization_check(const PathState& ps) {
    return std::abs(std::expm1(ps.log_minf - ps.binf_excess - ps.log_m));
}

namespace {
double log_density_vs_p(const PathState& ps, const MeasureTag& m) {
    switch (m.kind) {
        case MeasureTag::Kind::P: return 0.0;
        case MeasureTag::Kind::Q: return ps.log_m;
        case MeasureTag::Kind::QInf: return ps.log_minf;
        case MeasureTag::Kind::QT:
            for (const auto& track : ps.rollover)
                if (track.T == m.T)
                    return ps.log_m - ps.log_a + rollover_log_value(track, ps.view(), ps.t);
            throw ConfigError("no roll-over tracker for the requested forward measure");
    }
    throw ConfigError("unknown measure");
}
} // namespace

double density_ratio(const PathState& ps, const MeasureTag& from, const MeasureTag& to) {
    if (from == to) return 1.0;
    return std::exp(log_density_vs_p(ps, to) - log_density_vs_p(ps, from));
}

} // namespace longbond
