#include "longbond/vol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <random>

#include "longbond/errors.hpp"

namespace longbond {

namespace {

/// (1 - e^{-a}) / a, continuous at a = 0.
double one_minus_exp_over(double a) {
    if (a == 0.0) return 1.0;
    return -std::expm1(-a) / a;
}

/// Composite Simpson of g over [a, b].
double simpson(double a, double b, int panels, const std::function<double(double)>& g) {
    if (b <= a) return 0.0;
    const double h = (b - a) / (2.0 * panels);
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < 2 * panels; i += 2) odd += g(a + i * h);
    for (int i = 2; i < 2 * panels; i += 2) even += g(a + i * h);
    return (h / 3.0) * (g(a) + 4.0 * odd + 2.0 * even + g(b));
}

void require_longbond_weight(const WeightSpec& w) {
    if (!w.longbond_condition())
        throw ConfigError("weight '" + w.name() +
                          "' violates the long-bond weight condition (W2): "
                          "1/w(x) must decay at least like x^-(3+eps)");
}

} // namespace

double tail_bound_c(const TailBoundParams& p, double T) {
    if (!(p.K > 0.0) || !(p.eps > 0.0)) throw ConfigError("tail bound needs K > 0 and eps > 0");
    if (!(T >= 0.0)) throw ConfigError("tail bound evaluated at negative T");
    if (T <= 1.0) return p.K;
    return p.K * std::pow(T, -0.5 * p.eps);
}

double exp_factor_weighted_norm(double sigma, double kappa, const WeightSpec& w) {
    if (sigma == 0.0) return 0.0;
    if (!(kappa > 0.0)) throw ConfigError("exponential factor norm needs kappa > 0");
    if (w.family() == WeightFamily::Exponential && w.alpha() >= 2.0 * kappa)
        return std::numeric_limits<double>::infinity();
    const auto integrand = [&](double x) {
        const double d = sigma * kappa * std::exp(-kappa * x);
        return d * d * w.norm_weight(x);
    };
    const double x_end = 30.0 / kappa;
    // Split at x = 1 where the reciprocal-power multiplier has a kink.
    double integral = 0.0;
    if (x_end <= 1.0) {
        integral = simpson(0.0, x_end, 4096, integrand);
    } else {
        integral = simpson(0.0, 1.0, 4096, integrand) + simpson(1.0, x_end, 8192, integrand);
    }
    return std::sqrt(sigma * sigma + integral);
}

double calibrate_tail_k(const WeightSpec& w, std::uint64_t seed, int members) {
    require_longbond_weight(w);
    if (members < 1) throw ConfigError("calibration needs at least one member");
    const double eps = w.tail_eps();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> sig_dist(0.001, 0.05);
    std::uniform_real_distribution<double> kap_dist(0.1, 2.0);
    double k_min = 0.0;
    for (int m = 0; m < members; ++m) {
        const double sigma = sig_dist(rng);
        const double kappa = kap_dist(rng);
        const double norm = exp_factor_weighted_norm(sigma, kappa, w);
        for (int i = 0; i <= 256; ++i) {
            const double T = 0.25 * i;
            const double tail = (sigma / kappa) * std::exp(-kappa * T);
            const double envelope = (T <= 1.0) ? 1.0 : std::pow(T, -0.5 * eps);
            k_min = std::max(k_min, tail / (envelope * norm));
        }
    }
    return k_min;
}

TailBoundParams default_tail_bound(const WeightSpec& w) {
    require_longbond_weight(w);
    static std::mutex mu;
    static std::map<std::string, double> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(w.name());
    if (it == cache.end()) it = cache.emplace(w.name(), calibrate_tail_k(w)).first;
    return TailBoundParams{it->second, w.tail_eps()};
}

// --- VolSpec ---------------------------------------------------------------

void VolSpec::finalize(double lipschitz_d1, double bound_d2) {
    double agg_sq = 0.0;
    base_long_vol_.clear();
    for (const auto& c : base_) {
        const double n = sobolev_norm(c, wbar_);
        agg_sq += n * n;
        base_long_vol_.push_back(curve_integral(c.view(), grid_->x_max()));
    }
    aggregate_norm_ = std::sqrt(agg_sq);
    if (kind_ != Kind::Tabulated) {
        for (std::size_t j = 0; j < exp_.size(); ++j)
            base_long_vol_[j] = (exp_[j].sigma == 0.0) ? 0.0 : exp_[j].sigma / exp_[j].kappa;
    }

    const double scale_max = (kind_ == Kind::StateDependent) ? 1.0 + std::abs(amplitude_) : 1.0;
    if (bound_d2 > 0.0) {
        bound_d2_ = bound_d2;
    } else if (kind_ == Kind::Tabulated) {
        bound_d2_ = aggregate_norm_;
    } else {
        double closed = 0.0;
        for (const auto& fct : exp_) closed += fct.sigma * fct.sigma * (1.0 + fct.kappa);
        bound_d2_ = scale_max * std::sqrt(closed);
    }
    if (aggregate_norm_ * scale_max > bound_d2_ * (1.0 + 1e-9))
        throw ConfigError("declared volatility bound D2 = " + std::to_string(bound_d2_) +
                          " is below the realized aggregate norm " +
                          std::to_string(aggregate_norm_ * scale_max) + " (V1)");

    if (lipschitz_d1 > 0.0) {
        lipschitz_d1_ = lipschitz_d1;
    } else {
        lipschitz_d1_ = (kind_ == Kind::StateDependent)
                            ? std::abs(amplitude_) * std::abs(slope_) * aggregate_norm_
                            : 0.0;
    }
}

VolSpec VolSpec::exponential(std::vector<ExpFactor> factors, GridPtr grid, WeightSpec wbar,
                             double lipschitz_d1, double bound_d2) {
    if (!grid) throw ConfigError("volatility needs a maturity grid");
    require_longbond_weight(wbar);
    VolSpec v;
    v.kind_ = Kind::Exponential;
    v.grid_ = grid;
    v.wbar_ = wbar;
    v.exp_ = std::move(factors);
    for (const auto& fct : v.exp_) {
        if (!(fct.sigma >= 0.0)) throw ConfigError("factor volatility must be >= 0");
        if (fct.sigma > 0.0 && !(fct.kappa > 0.0))
            throw ConfigError("a nonzero exponential factor needs kappa > 0 so that the "
                              "factor curve vanishes at infinity");
    }
    for (const auto& fct : v.exp_) {
        ForwardCurve c = ForwardCurve::sample(
            grid, [&](double x) { return fct.sigma * std::exp(-fct.kappa * x); });
        c.values.back() = 0.0; // hard-zero tail keeps the long rate invariant
        c.long_rate = 0.0;
        v.base_.push_back(std::move(c));
    }
    v.finalize(lipschitz_d1, bound_d2);
    return v;
}

VolSpec VolSpec::tabulated(std::vector<std::vector<double>> factor_values, GridPtr grid,
                           WeightSpec wbar, double lipschitz_d1, double bound_d2) {
    if (!grid) throw ConfigError("volatility needs a maturity grid");
    require_longbond_weight(wbar);
    VolSpec v;
    v.kind_ = Kind::Tabulated;
    v.grid_ = grid;
    v.wbar_ = wbar;
    for (auto& vals : factor_values) {
        if (!vals.empty() && vals.back() != 0.0)
            throw ConfigError("tabulated factor curves must end at exactly zero "
                              "(zero tail beyond x_max)");
        v.base_.push_back(ForwardCurve::from_values(grid, std::move(vals)));
    }
    v.finalize(lipschitz_d1, bound_d2);
    return v;
}

VolSpec VolSpec::state_dependent(std::vector<ExpFactor> factors, GridPtr grid, WeightSpec wbar,
                                 double pivot_rate, double amplitude, double slope,
                                 double lipschitz_d1, double bound_d2) {
    if (!(std::abs(amplitude) < 1.0))
        throw ConfigError("state-dependent volatility amplitude must lie in (-1, 1) so the "
                          "scale stays positive and bounded");
    if (!(slope >= 0.0)) throw ConfigError("state-dependent volatility slope must be >= 0");
    VolSpec v = exponential(std::move(factors), std::move(grid), wbar);
    v.kind_ = Kind::StateDependent;
    v.pivot_ = pivot_rate;
    v.amplitude_ = amplitude;
    v.slope_ = slope;
    v.finalize(lipschitz_d1, bound_d2);
    return v;
}

const std::vector<ExpFactor>& VolSpec::exp_factors() const {
    if (kind_ == Kind::Tabulated)
        throw ConfigError("tabulated volatility has no exponential parameters");
    return exp_;
}

double VolSpec::state_scale(double t, const CurveView& f) const {
    (void)t;
    if (kind_ != Kind::StateDependent) return 1.0;
    return 1.0 + amplitude_ * std::tanh(slope_ * (f.short_rate() - pivot_));
}

std::vector<ForwardCurve> VolSpec::eval(double t, const ForwardCurve& f) const {
    if (!(t >= 0.0)) throw ConfigError("volatility evaluated at negative time");
    const double scale = state_scale(t, f.view());
    if (aggregate_norm_ * std::abs(scale) > bound_d2_ * (1.0 + 1e-9))
        throw InvariantViolation("volatility evaluation exceeds the declared bound D2 (V1)");
    std::vector<ForwardCurve> out;
    out.reserve(base_.size());
    for (const auto& c : base_) {
        ForwardCurve scaled = c;
        if (scale != 1.0)
            for (auto& x : scaled.values) x *= scale;
        out.push_back(std::move(scaled));
    }
    return out;
}

std::vector<double> VolSpec::bond_vol(double t, const CurveView& f, double T) const {
    if (t > T) throw ConfigError("bond volatility needs t <= T");
    const double tau = T - t;
    const double scale = state_scale(t, f);
    std::vector<double> out(base_.size(), 0.0);
    if (is_exponential_family()) {
        for (std::size_t j = 0; j < exp_.size(); ++j)
            out[j] = scale * exp_[j].sigma * tau * one_minus_exp_over(exp_[j].kappa * tau);
    } else {
        const double upto = std::min(tau, grid_->x_max());
        for (std::size_t j = 0; j < base_.size(); ++j)
            out[j] = curve_integral(base_[j].view(), upto);
    }
    return out;
}

std::vector<double> VolSpec::long_bond_vol(double t, const CurveView& f) const {
    const double scale = state_scale(t, f);
    std::vector<double> out(base_long_vol_);
    if (scale != 1.0)
        for (auto& x : out) x *= scale;
    return out;
}

// --- MarketPriceOfRisk ------------------------------------------------------

namespace {
double l2_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}
void require_finite_levels(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) throw ConfigError("market price of risk must be finite");
}
} // namespace

MarketPriceOfRisk MarketPriceOfRisk::zero(int n_factors) {
    if (n_factors < 0) throw ConfigError("factor count must be >= 0");
    MarketPriceOfRisk g;
    g.kind_ = Kind::Zero;
    g.levels_.assign(static_cast<std::size_t>(n_factors), 0.0);
    return g;
}

MarketPriceOfRisk MarketPriceOfRisk::constant(std::vector<double> levels) {
    require_finite_levels(levels);
    MarketPriceOfRisk g;
    g.kind_ = Kind::Constant;
    g.levels_ = std::move(levels);
    return g;
}

MarketPriceOfRisk MarketPriceOfRisk::deterministic(std::vector<double> levels, double decay) {
    require_finite_levels(levels);
    if (!(decay >= 0.0)) throw ConfigError("market-price-of-risk decay must be >= 0");
    MarketPriceOfRisk g;
    g.kind_ = Kind::Deterministic;
    g.levels_ = std::move(levels);
    g.decay_ = decay;
    return g;
}

MarketPriceOfRisk MarketPriceOfRisk::state_dependent(std::vector<double> levels, double pivot_rate,
                                                     double amplitude, double slope) {
    require_finite_levels(levels);
    if (!(std::abs(amplitude) < 1.0))
        throw ConfigError("state-dependent market-price-of-risk amplitude must lie in (-1, 1)");
    if (!(slope >= 0.0)) throw ConfigError("state-dependent market-price-of-risk slope must be >= 0");
    MarketPriceOfRisk g;
    g.kind_ = Kind::StateDependent;
    g.levels_ = std::move(levels);
    g.pivot_ = pivot_rate;
    g.amplitude_ = amplitude;
    g.slope_ = slope;
    return g;
}

bool MarketPriceOfRisk::is_zero() const {
    if (kind_ == Kind::Zero) return true;
    return std::all_of(levels_.begin(), levels_.end(), [](double x) { return x == 0.0; });
}

double MarketPriceOfRisk::dominator(double t) const {
    const double base = l2_norm(levels_);
    switch (kind_) {
        case Kind::Zero:
        case Kind::Constant: return base;
        case Kind::Deterministic: return base * std::exp(-decay_ * t);
        case Kind::StateDependent: return base * (1.0 + std::abs(amplitude_));
    }
    return base;
}

double MarketPriceOfRisk::dominator_sq_integral(double horizon) const {
    if (!(horizon >= 0.0)) throw ConfigError("horizon must be >= 0");
    const double b2 = l2_norm(levels_) * l2_norm(levels_);
    switch (kind_) {
        case Kind::Zero: return 0.0;
        case Kind::Constant: return b2 * horizon;
        case Kind::Deterministic:
            if (decay_ == 0.0) return b2 * horizon;
            return b2 * -std::expm1(-2.0 * decay_ * horizon) / (2.0 * decay_);
        case Kind::StateDependent: {
            const double s = 1.0 + std::abs(amplitude_);
            return b2 * s * s * horizon;
        }
    }
    return b2 * horizon;
}

std::vector<double> MarketPriceOfRisk::eval(double t, const CurveView& f) const {
    if (!(t >= 0.0)) throw ConfigError("market price of risk evaluated at negative time");
    std::vector<double> out(levels_);
    switch (kind_) {
        case Kind::Zero:
        case Kind::Constant: break;
        case Kind::Deterministic: {
            const double s = std::exp(-decay_ * t);
            for (auto& x : out) x *= s;
            break;
        }
        case Kind::StateDependent: {
            const double s = 1.0 + amplitude_ * std::tanh(slope_ * (f.short_rate() - pivot_));
            for (auto& x : out) x *= s;
            break;
        }
    }
    if (l2_norm(out) > dominator(t) * (1.0 + 1e-12))
        throw InvariantViolation("market price of risk exceeds its declared dominator (M1)");
    return out;
}

} // namespace longbond
