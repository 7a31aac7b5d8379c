#pragma once

#include "longbond/curve.hpp"
#include "longbond/grid.hpp"
#include "longbond/initial_curve.hpp"
#include "longbond/measure.hpp"

namespace longbond {

/// Scalar Gaussian benchmark model (mean-reverting short rate with constant
/// market price of risk).  Closed forms here are the authoritative reference
/// for the Gaussian acceptance tests; engine code never calls into this
/// module.
struct VasicekParams {
    double sigma = 0.0;   // factor loading scale
    double kappa = 0.0;   // mean reversion
    double gamma = 0.0;   // constant market price of risk
    double r0 = 0.0;      // initial short rate
    double theta_q = 0.0; // risk-neutral long-run level (time-homogeneous case)
    bool time_homogeneous = true;
    InitialCurvePtr f0;
    GridPtr grid;

    /// Time-homogeneous model: f0 generated from (theta_q, kappa, sigma, r0).
    static VasicekParams time_homogeneous_model(double theta_q, double kappa, double sigma,
                                                double gamma, double r0, GridPtr grid);

    /// Extended model fitted to a general analytic initial curve.
    static VasicekParams from_curve(InitialCurvePtr f0, double kappa, double sigma, double gamma,
                                    GridPtr grid);
};

/// The time-homogeneous initial curve sampled on the grid:
///   f0(u) = theta_q (1-E) - sigma^2/(2 kappa^2) (1-E)^2 + r0 E,  E = e^{-kappa u}.
ForwardCurve vasicek_initial_curve(double theta_q, double kappa, double sigma, double r0,
                                   GridPtr grid);

/// lambda = f0(infinity); equals theta_q - sigma^2/(2 kappa^2) in the
/// time-homogeneous model.
double long_yield_limit(const VasicekParams& p);

/// Deterministic part of f_t(x) - f0(t+x) under the given measure (risk
/// neutral, data generating, T-forward, or long forward).
double deterministic_shift(const VasicekParams& p, double t, double x, const MeasureTag& m);

/// Exact curve at time t under Q given the realized Ornstein-Uhlenbeck
/// integral xi = Integral_0^t e^{-kappa(t-s)} dW_s^Q:
///   f_t(x) = f0(t+x) + (s2/k2)[e^{-kx}(1-e^{-kt}) - e^{-2kx}(1-e^{-2kt})/2]
///            + sigma e^{-kappa x} xi.
/// The last node is pinned to the sampled f0 tail (long-rate invariance).
ForwardCurve forward_curve_q(const VasicekParams& p, double t, double wq_integral);

/// Exact curve under the long forward measure given the realized OU integral:
///   f_t(x) = f0(t+x) - (s2/2k2) e^{-2kx}(1-e^{-2kt}) + sigma e^{-kappa x} xi.
ForwardCurve forward_curve_qinf(const VasicekParams& p, double t, double wqinf_integral);

/// Mean-reversion pair (kappa, theta(t)) of the short-rate SDE under Q or
/// QInf: theta_Q(t) = f0'(t)/kappa + f0(t) + (s2/2k2)(1-e^{-2kt});
/// theta_Qinf(t) = theta_Q(t) - s2/k2.  Needs an analytic f0.
struct ShortRateParams {
    double kappa = 0.0;
    double theta = 0.0;
};
ShortRateParams short_rate_params(const VasicekParams& p, const MeasureTag& m, double t);

/// Closed-form short-rate mean at t under Q: f0(t) + (s2/2k2)(1-e^{-kt})^2.
double mean_short_rate_q(const VasicekParams& p, double t);

/// Exact long bond given ln A_t and the realized Brownian level under the
/// chosen measure: under Q, A_t e^{-(s/k) W - s2/(2k2) t}; under QInf the
/// variance term flips sign; under P, A_t e^{(s/k) gamma t - (s/k) W - s2/(2k2) t}.
double long_bond_closed_form(const VasicekParams& p, double t, double log_a, double w_driver,
                             const MeasureTag& m);

/// Integral of f0 over [0, u]: closed form in the time-homogeneous model,
/// dense quadrature otherwise.
double initial_curve_integral(const VasicekParams& p, double u);

/// Affine (Hull-White style) bond price at time t for time to maturity tau,
/// given the short rate: P = (P0(t+tau)/P0(t)) exp(B f0(t) - (s2/4k) B^2
/// (1-e^{-2kt}) - B r), with B = (1-e^{-kappa tau})/kappa.
double affine_bond_price(const VasicekParams& p, double t, double r_t, double tau);

} // namespace longbond
