#include "longbond/engine.hpp"

#include <algorithm>
#include <cmath>

#include "longbond/errors.hpp"

namespace longbond {

namespace {

constexpr int kMaxFactors = 16;

/// (1 - e^{-a}) / a, continuous at a = 0.
double one_minus_exp_over(double a) {
    if (a == 0.0) return 1.0;
    return -std::expm1(-a) / a;
}

/// Solve A x = b by Gaussian elimination with partial pivoting (tiny systems).
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (a[pivot][col] == 0.0) throw InvariantViolation("singular factor-recovery system");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double m = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= m * a[col][c];
            b[r] -= m * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return x;
}

} // namespace

ForwardCurve s_operator(const ForwardCurve& f) {
    const auto& xs = f.grid->nodes();
    const std::size_t n = xs.size();
    std::vector<double> out(n);
    double integral = 0.0;
    out[0] = 0.0; // f(0) * empty integral
    for (std::size_t i = 1; i < n; ++i) {
        integral += 0.5 * (f.values[i - 1] + f.values[i]) * (xs[i] - xs[i - 1]);
        out[i] = f.values[i] * integral;
    }
    return ForwardCurve::from_values(f.grid, std::move(out));
}

DriftAssembly hjm_drift(const VolSpec& v, const MarketPriceOfRisk& g, double t,
                        const ForwardCurve& f, const MeasureTag& measure) {
    if (f.grid != v.grid())
        throw ConfigError("drift assembly needs the curve and volatility on one shared grid");
    if (g.n_factors() != v.n_factors())
        throw ConfigError("market price of risk and volatility disagree on the factor count");
    const std::size_t n = f.grid->size();
    const double scale = v.state_scale(t, f.view());

    std::vector<double> alpha(n, 0.0);
    for (const auto& base : v.base_factors()) {
        const ForwardCurve s = s_operator(base);
        for (std::size_t i = 0; i < n; ++i) alpha[i] += scale * scale * s.values[i];
    }

    std::vector<double> coef(static_cast<std::size_t>(v.n_factors()), 0.0);
    switch (measure.kind) {
        case MeasureTag::Kind::Q: break;
        case MeasureTag::Kind::P: coef = g.eval(t, f.view()); break;
        case MeasureTag::Kind::QT: coef = v.bond_vol(t, f.view(), measure.T); break;
        case MeasureTag::Kind::QInf: coef = v.long_bond_vol(t, f.view()); break;
    }

    std::vector<double> adj(n, 0.0);
    for (int j = 0; j < v.n_factors(); ++j) {
        const auto& base = v.base_factors()[static_cast<std::size_t>(j)].values;
        const double c = coef[static_cast<std::size_t>(j)] * scale;
        if (c == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) adj[i] += c * base[i];
    }

    std::vector<double> mu(n);
    for (std::size_t i = 0; i < n; ++i) mu[i] = alpha[i] - adj[i];

    DriftAssembly out;
    out.alpha_hjm = ForwardCurve::from_values(f.grid, std::move(alpha));
    out.adjustment = ForwardCurve::from_values(f.grid, std::move(adj));
    out.mu = ForwardCurve::from_values(f.grid, std::move(mu));
    return out;
}

// --- TranslateStencil --------------------------------------------------------

TranslateStencil::TranslateStencil(const MaturityGrid& grid, double dt) {
    if (!(dt >= 0.0)) throw ConfigError("translation stencil needs dt >= 0");
    const auto& xs = grid.nodes();
    const std::size_t n = xs.size();
    k_.resize(n);
    u_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = xs[i] + dt;
        if (y >= xs.back()) {
            // (n-2, u=1) evaluates to the tail value bitwise: 0*v[n-2] + 1*v[n-1].
            k_[i] = n - 2;
            u_[i] = 1.0;
        } else {
            const std::size_t k = grid.locate(y);
            k_[i] = k;
            u_[i] = (y - xs[k]) / (xs[k + 1] - xs[k]);
        }
    }
}

void TranslateStencil::apply(std::span<const double> in, std::span<double> out) const {
    const std::size_t n = k_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double u = u_[i];
        out[i] = (1.0 - u) * in[k_[i]] + u * in[k_[i] + 1];
    }
}

// --- EulerStepper ------------------------------------------------------------

EulerStepper::EulerStepper(GridPtr grid, VolSpec vol, MarketPriceOfRisk mpr, MeasureTag measure,
                           double dt)
    : grid_(std::move(grid)),
      vol_(std::move(vol)),
      mpr_(std::move(mpr)),
      measure_(measure),
      dt_(dt),
      stencil_(*grid_, dt) {
    if (!(dt > 0.0)) throw ConfigError("step size must be > 0");
    if (grid_ != vol_.grid()) throw ConfigError("stepper and volatility need one shared grid");
    if (mpr_.n_factors() != vol_.n_factors())
        throw ConfigError("market price of risk and volatility disagree on the factor count");
    if (vol_.n_factors() > kMaxFactors)
        throw ConfigError("factor count exceeds the supported maximum of 16");

    const std::size_t n = grid_->size();
    alpha_base_.assign(n, 0.0);
    for (const auto& base : vol_.base_factors()) {
        const ForwardCurve s = s_operator(base);
        for (std::size_t i = 0; i < n; ++i) alpha_base_[i] += s.values[i];
        factor_base_.push_back(base.values);
    }
}

void EulerStepper::step(std::vector<double>& values, double t, std::span<const double> dW,
                        long long path_id) const {
    const std::size_t n = values.size();
    const std::size_t nj = factor_base_.size();
    if (n != grid_->size()) throw ConfigError("curve buffer does not match the grid");
    if (dW.size() != nj) throw ConfigError("Brownian increment count does not match factors");

    const double tail_before = values.back();
    const CurveView pre{grid_.get(), values};
    const double scale = vol_.state_scale(t, pre);

    double coef[kMaxFactors] = {};
    switch (measure_.kind) {
        case MeasureTag::Kind::Q:
            for (std::size_t j = 0; j < nj; ++j) coef[j] = scale * dW[j];
            break;
        case MeasureTag::Kind::P: {
            const std::vector<double> g = mpr_.eval(t, pre);
            for (std::size_t j = 0; j < nj; ++j) coef[j] = scale * (dW[j] - dt_ * g[j]);
            break;
        }
        case MeasureTag::Kind::QT: {
            const std::vector<double> bv = vol_.bond_vol(t, pre, measure_.T);
            for (std::size_t j = 0; j < nj; ++j) coef[j] = scale * (dW[j] - dt_ * bv[j]);
            break;
        }
        case MeasureTag::Kind::QInf: {
            const std::vector<double> lv = vol_.long_bond_vol(t, pre);
            for (std::size_t j = 0; j < nj; ++j) coef[j] = scale * (dW[j] - dt_ * lv[j]);
            break;
        }
    }

    stencil_.apply(values, values);

    const double a = scale * scale * dt_;
    for (std::size_t i = 0; i < n; ++i) {
        double acc = a * alpha_base_[i];
        for (std::size_t j = 0; j < nj; ++j) acc += coef[j] * factor_base_[j][i];
        values[i] += acc;
    }

    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(values[i])) throw NumericalBlowup(t + dt_, path_id);
    if (!(values.back() == tail_before))
        throw InvariantViolation("long rate moved during a step; reaction terms must have "
                                 "zero tail");
}

// --- ExactGaussianStepper ----------------------------------------------------

ExactGaussianStepper::ExactGaussianStepper(InitialCurvePtr f0, GridPtr grid, VolSpec vol,
                                           MarketPriceOfRisk mpr, MeasureTag measure, double dt)
    : f0_(std::move(f0)),
      grid_(std::move(grid)),
      vol_(std::move(vol)),
      mpr_(std::move(mpr)),
      measure_(measure),
      dt_(dt) {
    if (!(dt > 0.0)) throw ConfigError("step size must be > 0");
    if (!f0_ || !f0_->analytic())
        throw ConfigError("the exact Gaussian scheme needs an analytic initial curve");
    if (!vol_.is_exponential_family() || !vol_.is_static())
        throw ConfigError("the exact Gaussian scheme needs deterministic exponential factors");
    if (!mpr_.is_constant())
        throw ConfigError("the exact Gaussian scheme needs a constant market price of risk");
    if (grid_ != vol_.grid()) throw ConfigError("stepper and volatility need one shared grid");
    if (mpr_.n_factors() != vol_.n_factors())
        throw ConfigError("market price of risk and volatility disagree on the factor count");

    factors_ = vol_.exp_factors();
    const ForwardCurve dummy = ForwardCurve::flat(grid_, 0.0);
    gamma_ = mpr_.eval(0.0, dummy.view());
    for (const auto& fct : factors_) {
        decay_.push_back(std::exp(-fct.kappa * dt_));
        const double a = 2.0 * fct.kappa * dt_;
        shock_.push_back(a == 0.0 ? 1.0 : std::sqrt(-std::expm1(-a) / a));
    }
    f0_tail_ = f0_->eval(grid_->x_max());
}

ExactGaussianStepper::State ExactGaussianStepper::initial_state() const {
    State s;
    s.t = 0.0;
    s.x.assign(factors_.size(), 0.0);
    return s;
}

void ExactGaussianStepper::advance(State& s, std::span<const double> dW) const {
    if (dW.size() != factors_.size())
        throw ConfigError("Brownian increment count does not match factors");
    for (std::size_t j = 0; j < factors_.size(); ++j)
        s.x[j] = decay_[j] * s.x[j] + shock_[j] * dW[j];
    s.t += dt_;
}

double ExactGaussianStepper::deterministic_term(double t, double x) const {
    if (measure_.kind == MeasureTag::Kind::QT && t > measure_.T)
        throw ConfigError("the T-forward measure is defined up to its maturity only");
    double out = 0.0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        const double sig = factors_[j].sigma;
        if (sig == 0.0) continue;
        const double kap = factors_[j].kappa;
        const double ex = std::exp(-kap * x);
        const double ex2 = ex * ex;
        const double et = -std::expm1(-kap * t);   // 1 - e^{-kt}
        const double et2 = -std::expm1(-2.0 * kap * t);
        const double v2 = sig * sig / (kap * kap);
        if (measure_.kind == MeasureTag::Kind::QInf) {
            out += -0.5 * v2 * ex2 * et2;
            continue;
        }
        out += v2 * (ex * et - 0.5 * ex2 * et2); // risk-neutral drift integral
        if (measure_.kind == MeasureTag::Kind::P) {
            out += -(sig * gamma_[j] / kap) * ex * et;
        } else if (measure_.kind == MeasureTag::Kind::QT) {
            const double bridge =
                std::exp(-kap * (measure_.T - t)) - std::exp(-kap * (measure_.T + t));
            out += -v2 * ex * (et - 0.5 * bridge);
        }
    }
    return out;
}

void ExactGaussianStepper::render(const State& s, std::vector<double>& values) const {
    const auto& xs = grid_->nodes();
    const std::size_t n = xs.size();
    values.resize(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double v = f0_->eval(s.t + xs[i]) + deterministic_term(s.t, xs[i]);
        for (std::size_t j = 0; j < factors_.size(); ++j)
            v += factors_[j].sigma * std::exp(-factors_[j].kappa * xs[i]) * s.x[j];
        values[i] = v;
    }
    values[n - 1] = f0_tail_; // Theorem-style tail conservation, bitwise
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(values[i])) throw NumericalBlowup(s.t, -1);
}

// --- module-level step -------------------------------------------------------

ForwardCurve step(const ForwardCurve& f, double t, const StepScheme& scheme, const VolSpec& v,
                  const MarketPriceOfRisk& g, const MeasureTag& measure,
                  std::span<const double> dW, const InitialCurvePtr& f0) {
    if (scheme.kind == StepScheme::Kind::EulerMaruyama) {
        EulerStepper stepper(f.grid, v, g, measure, scheme.dt);
        ForwardCurve out = f;
        stepper.step(out.values, t, dW);
        out.long_rate = out.values.back();
        return out;
    }

    if (!f0)
        throw ConfigError("the exact Gaussian scheme needs the analytic initial curve");
    ExactGaussianStepper stepper(f0, f.grid, v, g, measure, scheme.dt);

    // Recover the factor states from the curve at spread-out nodes, excluding
    // the pinned tail node.
    std::vector<std::size_t> live;
    for (std::size_t j = 0; j < stepper.factors().size(); ++j)
        if (stepper.factors()[j].sigma != 0.0) live.push_back(j);

    ExactGaussianStepper::State s;
    s.t = t;
    s.x.assign(stepper.factors().size(), 0.0);
    if (!live.empty()) {
        const std::size_t m = live.size();
        const auto& xs = f.grid->nodes();
        std::vector<std::vector<double>> a(m, std::vector<double>(m));
        std::vector<double> b(m);
        for (std::size_t r = 0; r < m; ++r) {
            const std::size_t i = (r * (xs.size() - 2)) / m;
            b[r] = f.values[i] - f0->eval(t + xs[i]) - stepper.deterministic_term(t, xs[i]);
            for (std::size_t c = 0; c < m; ++c) {
                const auto& fct = stepper.factors()[live[c]];
                a[r][c] = fct.sigma * std::exp(-fct.kappa * xs[i]);
            }
        }
        const std::vector<double> x = solve_dense(std::move(a), std::move(b));
        for (std::size_t c = 0; c < m; ++c) s.x[live[c]] = x[c];
    }

    stepper.advance(s, dW);
    ForwardCurve out = f;
    stepper.render(s, out.values);
    out.long_rate = out.values.back();
    return out;
}

} // namespace longbond
