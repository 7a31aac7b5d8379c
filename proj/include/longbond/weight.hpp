#pragma once

#include <string>

namespace longbond {

enum class WeightFamily {
    Exponential,     // e^{a x}, a > 0
    Power,           // (1+x)^a
    PowerLog,        // (1+x)^3 (log(2+x))^6
    ReciprocalPower, // specified by its inverse: norm multiplier min(x^{-a}, 1)
};

/// Weight on the maturity axis defining the curve-space norm
///   ||h||^2 = |h(0)|^2 + Integral |h'(x)|^2 m(x) dx.
///
/// For the first three families m(x) equals the growth weight w(x) (>= 1,
/// non-decreasing).  The reciprocal-power family is specified by its inverse:
/// the norm multiplier is m(x) = min(x^{-a}, 1) and the associated growth
/// weight is its reciprocal max(x^a, 1); tail estimates use 1/w as usual.
class WeightSpec {
public:
    static WeightSpec exponential(double alpha);
    static WeightSpec power(double alpha);
    static WeightSpec power_log();
    static WeightSpec reciprocal_power(double alpha);

    /// Parse "exponential 0.1" | "power 4" | "power-log" | "reciprocal-power 4".
    static WeightSpec parse(const std::string& text);

    /// Growth weight w(x): >= 1 and non-decreasing for every family.
    double value(double x) const;

    /// Multiplier of |h'(x)|^2 in the norm integral.
    double norm_weight(double x) const;

    /// Base space hypothesis (W1): Integral of w^{-1/3} over [0,inf) finite.
    bool base_condition() const;

    /// Long-bond hypothesis (W2): 1/w(x) = O(x^{-(3+eps)}) for some eps > 0.
    bool longbond_condition() const;

    /// eps in the W2 tail rate; only meaningful when longbond_condition() holds.
    double tail_eps() const;

    WeightFamily family() const { return family_; }
    double alpha() const { return alpha_; }
    std::string name() const;

private:
    WeightSpec(WeightFamily f, double a) : family_(f), alpha_(a) {}
    WeightFamily family_;
    double alpha_;
};

/// Spec-level accessor: the growth weight value w(x).
double weight_eval(const WeightSpec& w, double x);

} // namespace longbond
