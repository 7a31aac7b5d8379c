#include "longbond/vasicek.hpp"

#include <cmath>

#include "longbond/errors.hpp"

namespace longbond {

namespace {

void require_scalar_model(const VasicekParams& p) {
    if (!(p.sigma > 0.0) || !(p.kappa > 0.0))
        throw ConfigError("the Gaussian benchmark needs sigma > 0 and kappa > 0");
    if (!p.f0 || !p.grid) throw ConfigError("benchmark parameters are incomplete");
}

double simpson(double a, double b, int panels, const std::function<double(double)>& g) {
    if (b <= a) return 0.0;
    const double h = (b - a) / (2.0 * panels);
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < 2 * panels; i += 2) odd += g(a + i * h);
    for (int i = 2; i < 2 * panels; i += 2) even += g(a + i * h);
    return (h / 3.0) * (g(a) + 4.0 * odd + 2.0 * even + g(b));
}

} // namespace

VasicekParams VasicekParams::time_homogeneous_model(double theta_q, double kappa, double sigma,
                                                    double gamma, double r0, GridPtr grid) {
    VasicekParams p;
    p.sigma = sigma;
    p.kappa = kappa;
    p.gamma = gamma;
    p.r0 = r0;
    p.theta_q = theta_q;
    p.time_homogeneous = true;
    p.grid = std::move(grid);
    p.f0 = vasicek_initial_curve_fn(theta_q, kappa, sigma, r0);
    require_scalar_model(p);
    return p;
}

VasicekParams VasicekParams::from_curve(InitialCurvePtr f0, double kappa, double sigma,
                                        double gamma, GridPtr grid) {
    VasicekParams p;
    p.sigma = sigma;
    p.kappa = kappa;
    p.gamma = gamma;
    p.time_homogeneous = false;
    p.f0 = std::move(f0);
    p.grid = std::move(grid);
    if (!p.f0) throw ConfigError("benchmark needs an initial curve");
    p.r0 = p.f0->eval(0.0);
    require_scalar_model(p);
    return p;
}

ForwardCurve vasicek_initial_curve(double theta_q, double kappa, double sigma, double r0,
                                   GridPtr grid) {
    return vasicek_initial_curve_fn(theta_q, kappa, sigma, r0)->sample(std::move(grid));
}

double long_yield_limit(const VasicekParams& p) {
    if (p.time_homogeneous)
        return p.theta_q - p.sigma * p.sigma / (2.0 * p.kappa * p.kappa);
    return p.f0->eval(p.grid->x_max());
}

double deterministic_shift(const VasicekParams& p, double t, double x, const MeasureTag& m) {
    require_scalar_model(p);
    const double k = p.kappa;
    const double v2 = p.sigma * p.sigma / (k * k);
    const double ex = std::exp(-k * x);
    const double ex2 = ex * ex;
    const double et = -std::expm1(-k * t);
    const double et2 = -std::expm1(-2.0 * k * t);
    switch (m.kind) {
        case MeasureTag::Kind::QInf: return -0.5 * v2 * ex2 * et2;
        case MeasureTag::Kind::Q: return v2 * (ex * et - 0.5 * ex2 * et2);
        case MeasureTag::Kind::P:
            return v2 * (ex * et - 0.5 * ex2 * et2) - (p.sigma * p.gamma / k) * ex * et;
        case MeasureTag::Kind::QT: {
            if (t > m.T)
                throw ConfigError("the T-forward measure is defined up to its maturity only");
            const double bridge = std::exp(-k * (m.T - t)) - std::exp(-k * (m.T + t));
            return v2 * (ex * et - 0.5 * ex2 * et2) - v2 * ex * (et - 0.5 * bridge);
        }
    }
    throw ConfigError("unknown measure");
}

namespace {
ForwardCurve exact_curve(const VasicekParams& p, double t, double ou_integral,
                         const MeasureTag& m) {
    require_scalar_model(p);
    const auto& xs = p.grid->nodes();
    std::vector<double> v(xs.size());
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        v[i] = p.f0->eval(t + xs[i]) + deterministic_shift(p, t, xs[i], m) +
               p.sigma * std::exp(-p.kappa * xs[i]) * ou_integral;
    }
    v.back() = p.f0->eval(xs.back()); // pinned tail: long-rate invariance
    return ForwardCurve::from_values(p.grid, std::move(v));
}
} // namespace

ForwardCurve forward_curve_q(const VasicekParams& p, double t, double wq_integral) {
    return exact_curve(p, t, wq_integral, MeasureTag::q());
}

ForwardCurve forward_curve_qinf(const VasicekParams& p, double t, double wqinf_integral) {
    return exact_curve(p, t, wqinf_integral, MeasureTag::qinf());
}

ShortRateParams short_rate_params(const VasicekParams& p, const MeasureTag& m, double t) {
    require_scalar_model(p);
    if (m.kind != MeasureTag::Kind::Q && m.kind != MeasureTag::Kind::QInf)
        throw ConfigError("short-rate parameters are defined under Q and Qinf");
    if (!p.f0->analytic())
        throw ConfigError("short-rate parameters need an analytic initial curve");
    const double k = p.kappa;
    const double v2 = p.sigma * p.sigma / (k * k);
    double theta = p.f0->derivative(t) / k + p.f0->eval(t) - 0.5 * v2 * std::expm1(-2.0 * k * t);
    if (m.kind == MeasureTag::Kind::QInf) theta -= v2;
    return ShortRateParams{k, theta};
}

double mean_short_rate_q(const VasicekParams& p, double t) {
    require_scalar_model(p);
    const double one_e = -std::expm1(-p.kappa * t);
    return p.f0->eval(t) +
           0.5 * (p.sigma * p.sigma / (p.kappa * p.kappa)) * one_e * one_e;
}

double long_bond_closed_form(const VasicekParams& p, double t, double log_a, double w_driver,
                             const MeasureTag& m) {
    require_scalar_model(p);
    const double s_over_k = p.sigma / p.kappa;
    const double half_var_t = 0.5 * s_over_k * s_over_k * t;
    switch (m.kind) {
        case MeasureTag::Kind::Q:
            return std::exp(log_a - s_over_k * w_driver - half_var_t);
        case MeasureTag::Kind::QInf:
            return std::exp(log_a - s_over_k * w_driver + half_var_t);
        case MeasureTag::Kind::P:
            return std::exp(log_a + s_over_k * p.gamma * t - s_over_k * w_driver - half_var_t);
        case MeasureTag::Kind::QT:
            throw ConfigError("closed-form long bond is provided under P, Q, and Qinf");
    }
    throw ConfigError("unknown measure");
}

double initial_curve_integral(const VasicekParams& p, double u) {
    require_scalar_model(p);
    if (!(u >= 0.0)) throw ConfigError("integration bound must be >= 0");
    if (!p.time_homogeneous)
        return simpson(0.0, u, 20000, [&](double s) { return p.f0->eval(s); });
    const double k = p.kappa;
    const double c = 0.5 * p.sigma * p.sigma / (k * k);
    const double one_e = -std::expm1(-k * u);            // 1 - e^{-ku}
    const double one_e2 = -std::expm1(-2.0 * k * u);     // 1 - e^{-2ku}
    const double i1 = u - one_e / k;                     // Integral (1-E)
    const double i2 = u - 2.0 * one_e / k + 0.5 * one_e2 / k; // Integral (1-E)^2
    const double i3 = one_e / k;                         // Integral E
    return p.theta_q * i1 - c * i2 + p.r0 * i3;
}

double affine_bond_price(const VasicekParams& p, double t, double r_t, double tau) {
    require_scalar_model(p);
    if (!(tau >= 0.0)) throw ConfigError("time to maturity must be >= 0");
    const double k = p.kappa;
    const double b = -std::expm1(-k * tau) / k;
    const double log_p0_ratio = -(initial_curve_integral(p, t + tau) - initial_curve_integral(p, t));
    const double convexity =
        -0.25 * (p.sigma * p.sigma / k) * b * b * -std::expm1(-2.0 * k * t);
    return std::exp(log_p0_ratio + b * p.f0->eval(t) + convexity - b * r_t);
}

} // namespace longbond
