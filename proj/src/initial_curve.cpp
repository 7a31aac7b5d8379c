#include "longbond/initial_curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "longbond/errors.hpp"

namespace longbond {

ForwardCurve InitialCurve::sample(GridPtr g) const {
    std::vector<double> v(g->size());
    for (std::size_t i = 0; i < g->size(); ++i) v[i] = eval(g->node(i));
    return ForwardCurve::from_values(std::move(g), std::move(v));
}

namespace {

class FlatCurve final : public InitialCurve {
public:
    explicit FlatCurve(double c) : c_(c) {}
    double eval(double) const override { return c_; }
    double derivative(double) const override { return 0.0; }
    bool analytic() const override { return true; }
    std::string describe() const override {
        std::ostringstream o;
        o << "flat " << c_;
        return o.str();
    }

private:
    double c_;
};

class ExpAffineCurve final : public InitialCurve {
public:
    ExpAffineCurve(double c, std::vector<double> a, std::vector<double> b)
        : c_(c), a_(std::move(a)), b_(std::move(b)) {
        if (a_.size() != b_.size())
            throw ConfigError("exp-affine initial curve: coefficient lists differ in length");
    }
    double eval(double u) const override {
        double s = c_;
        for (std::size_t i = 0; i < a_.size(); ++i) s += a_[i] * std::exp(-b_[i] * u);
        return s;
    }
    double derivative(double u) const override {
        double s = 0.0;
        for (std::size_t i = 0; i < a_.size(); ++i) s -= a_[i] * b_[i] * std::exp(-b_[i] * u);
        return s;
    }
    bool analytic() const override { return true; }
    std::string describe() const override { return "exp-affine"; }

private:
    double c_;
    std::vector<double> a_, b_;
};

class VasicekCurve final : public InitialCurve {
public:
    VasicekCurve(double theta_q, double kappa, double sigma, double r0)
        : theta_(theta_q), kappa_(kappa), sigma_(sigma), r0_(r0) {
        if (!(kappa > 0.0)) throw ConfigError("vasicek initial curve needs kappa > 0");
        if (sigma < 0.0) throw ConfigError("vasicek initial curve needs sigma >= 0");
    }
    double eval(double u) const override {
        const double e = std::exp(-kappa_ * u);
        const double one_e = -std::expm1(-kappa_ * u); // 1 - e, stable for small u
        const double conv = sigma_ * sigma_ / (2.0 * kappa_ * kappa_);
        return theta_ * one_e - conv * one_e * one_e + r0_ * e;
    }
    double derivative(double u) const override {
        const double e = std::exp(-kappa_ * u);
        const double one_e = -std::expm1(-kappa_ * u);
        return kappa_ * e * (theta_ - (sigma_ * sigma_ / (kappa_ * kappa_)) * one_e - r0_);
    }
    bool analytic() const override { return true; }
    std::string describe() const override { return "vasicek"; }

private:
    double theta_, kappa_, sigma_, r0_;
};

class TabulatedCurve final : public InitialCurve {
public:
    TabulatedCurve(std::vector<double> u, std::vector<double> f)
        : u_(std::move(u)), f_(std::move(f)) {
        if (u_.size() != f_.size() || u_.size() < 2)
            throw ConfigError("tabulated initial curve needs >= 2 (u,f) pairs");
        for (std::size_t i = 1; i < u_.size(); ++i)
            if (!(u_[i] > u_[i - 1]))
                throw ConfigError("tabulated initial curve abscissae must increase");
    }
    double eval(double u) const override {
        if (u <= u_.front()) return f_.front();
        if (u >= u_.back()) return f_.back();
        auto it = std::upper_bound(u_.begin(), u_.end(), u);
        const std::size_t k = std::size_t(it - u_.begin()) - 1;
        const double w = (u - u_[k]) / (u_[k + 1] - u_[k]);
        return (1.0 - w) * f_[k] + w * f_[k + 1];
    }
    double derivative(double) const override {
        throw ConfigError("tabulated initial curve has no analytic derivative");
    }
    bool analytic() const override { return false; }
    std::string describe() const override { return "tabulated"; }

private:
    std::vector<double> u_, f_;
};

} // namespace

InitialCurvePtr flat_initial_curve(double level) {
    return std::make_shared<FlatCurve>(level);
}

InitialCurvePtr exp_affine_initial_curve(double c_inf, std::vector<double> a,
                                         std::vector<double> b) {
    return std::make_shared<ExpAffineCurve>(c_inf, std::move(a), std::move(b));
}

InitialCurvePtr vasicek_initial_curve_fn(double theta_q, double kappa, double sigma,
                                         double r0) {
    return std::make_shared<VasicekCurve>(theta_q, kappa, sigma, r0);
}

InitialCurvePtr tabulated_initial_curve(std::vector<double> u, std::vector<double> f) {
    return std::make_shared<TabulatedCurve>(std::move(u), std::move(f));
}

} // namespace longbond
