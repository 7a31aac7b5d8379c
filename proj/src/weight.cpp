#include "longbond/weight.hpp"

#include <cmath>
#include <sstream>

#include "longbond/errors.hpp"

namespace longbond {

WeightSpec WeightSpec::exponential(double alpha) {
    if (!(alpha > 0.0)) throw ConfigError("exponential weight needs alpha > 0");
    return WeightSpec(WeightFamily::Exponential, alpha);
}

WeightSpec WeightSpec::power(double alpha) {
    if (!(alpha > 0.0)) throw ConfigError("power weight needs alpha > 0");
    return WeightSpec(WeightFamily::Power, alpha);
}

WeightSpec WeightSpec::power_log() { return WeightSpec(WeightFamily::PowerLog, 3.0); }

WeightSpec WeightSpec::reciprocal_power(double alpha) {
    if (!(alpha > 0.0)) throw ConfigError("reciprocal-power weight needs alpha > 0");
    return WeightSpec(WeightFamily::ReciprocalPower, alpha);
}

WeightSpec WeightSpec::parse(const std::string& text) {
    std::istringstream in(text);
    std::string fam;
    in >> fam;
    double a = 0.0;
    const bool has_a = bool(in >> a);
    if (fam == "exponential" && has_a) return exponential(a);
    if (fam == "power" && has_a) return power(a);
    if (fam == "power-log") return power_log();
    if (fam == "reciprocal-power" && has_a) return reciprocal_power(a);
    throw ConfigError("cannot parse weight spec '" + text +
                      "' (expected: exponential A | power A | power-log | reciprocal-power A)");
}

double WeightSpec::value(double x) const {
    switch (family_) {
        case WeightFamily::Exponential: return std::exp(alpha_ * x);
        case WeightFamily::Power: return std::pow(1.0 + x, alpha_);
        case WeightFamily::PowerLog: {
            const double l = std::log(2.0 + x);
            const double l2 = l * l;
            return (1.0 + x) * (1.0 + x) * (1.0 + x) * l2 * l2 * l2;
        }
        case WeightFamily::ReciprocalPower: {
            if (x <= 1.0) return 1.0;
            return std::pow(x, alpha_);
        }
    }
    return 1.0;
}

double WeightSpec::norm_weight(double x) const {
    if (family_ == WeightFamily::ReciprocalPower) {
        if (x <= 1.0) return 1.0;
        return std::pow(x, -alpha_);
    }
    return value(x);
}

bool WeightSpec::base_condition() const {
    switch (family_) {
        case WeightFamily::Exponential: return true;          // integral of e^{-ax/3}
        case WeightFamily::Power: return alpha_ > 3.0;        // integral of (1+x)^{-a/3}
        case WeightFamily::PowerLog: return true;             // 1/((1+x) log^2(2+x))
        case WeightFamily::ReciprocalPower: return alpha_ > 3.0;
    }
    return false;
}

bool WeightSpec::longbond_condition() const {
    switch (family_) {
        case WeightFamily::Exponential: return true;  // exponential tail beats any power
        case WeightFamily::Power: return alpha_ > 3.0;
        case WeightFamily::PowerLog: return false;    // (1+x)^{-3} log^{-6} misses every x^{-(3+eps)}
        case WeightFamily::ReciprocalPower: return alpha_ > 3.0;
    }
    return false;
}

double WeightSpec::tail_eps() const {
    switch (family_) {
        case WeightFamily::Exponential: return 1.0;
        case WeightFamily::Power: return alpha_ - 3.0;
        case WeightFamily::PowerLog: return 0.0;
        case WeightFamily::ReciprocalPower: return alpha_ - 3.0;
    }
    return 0.0;
}

std::string WeightSpec::name() const {
    std::ostringstream out;
    switch (family_) {
        case WeightFamily::Exponential: out << "exponential " << alpha_; break;
        case WeightFamily::Power: out << "power " << alpha_; break;
        case WeightFamily::PowerLog: out << "power-log"; break;
        case WeightFamily::ReciprocalPower: out << "reciprocal-power " << alpha_; break;
    }
    return out.str();
}

double weight_eval(const WeightSpec& w, double x) {
    if (x < 0.0) throw ConfigError("weight evaluated at negative maturity");
    return w.value(x);
}

} // namespace longbond
