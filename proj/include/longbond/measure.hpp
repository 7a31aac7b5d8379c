#pragma once

#include <string>

#include "longbond/errors.hpp"

namespace longbond {

/// Probability measure a path is simulated (or a density is expressed) under.
///   P     data-generating measure
///   Q     risk-neutral measure
///   QT    T-forward measure (carries the maturity)
///   QInf  long forward measure
struct MeasureTag {
    enum class Kind { P, Q, QT, QInf };
    Kind kind = Kind::Q;
    double T = 0.0; // only for QT

    static MeasureTag p() { return {Kind::P, 0.0}; }
    static MeasureTag q() { return {Kind::Q, 0.0}; }
    static MeasureTag qt(double T) {
        if (!(T > 0.0)) throw ConfigError("T-forward measure needs T > 0");
        return {Kind::QT, T};
    }
    static MeasureTag qinf() { return {Kind::QInf, 0.0}; }

    bool operator==(const MeasureTag& o) const { return kind == o.kind && T == o.T; }

    std::string name() const {
        switch (kind) {
            case Kind::P: return "P";
            case Kind::Q: return "Q";
            case Kind::QT: return "QT:" + std::to_string(T);
            case Kind::QInf: return "Qinf";
        }
        return "?";
    }

    static MeasureTag parse(const std::string& s) {
        if (s == "P" || s == "p") return p();
        if (s == "Q" || s == "q") return q();
        if (s == "Qinf" || s == "QInf" || s == "qinf") return qinf();
        if (s.rfind("QT:", 0) == 0 || s.rfind("qt:", 0) == 0)
            return qt(std::stod(s.substr(3)));
        throw ConfigError("unknown measure '" + s + "' (expected P | Q | QT:<T> | Qinf)");
    }
};

} // namespace longbond
