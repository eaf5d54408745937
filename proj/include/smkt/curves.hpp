#pragma once

#include <functional>

namespace smkt {

using ScalarMap = std::function<double(double)>;

/// Concave decreasing price-vs-quantity map on [0, q_max] together with its
/// first two derivatives and its inverse. Immutable after construction; all
/// five maps must be supplied (no automatic differentiation), so the solver
/// core stays dependency-free. Out-of-domain evaluation throws rather than
/// clamping: a silently clamped price would mask equilibrium violations.
class DemandCurve {
public:
    DemandCurve(ScalarMap value, ScalarMap slope, ScalarMap curvature, ScalarMap inverse,
                double p_max, double q_max);

    double price(double q) const;     ///< P(q)
    double slope(double q) const;     ///< P'(q)
    double curvature(double q) const; ///< P''(q)
    double quantity(double p) const;  ///< Q(p), the inverse of P

    double p_max() const { return p_max_; }
    double q_max() const { return q_max_; }

private:
    ScalarMap value_, slope_, curvature_, inverse_;
    double p_max_, q_max_;
};

/// Convex increasing load-delay map on [0, inf) with l(0) = 0, exposed with
/// derivatives and inverse like DemandCurve.
class LatencyCurve {
public:
    LatencyCurve(ScalarMap value, ScalarMap slope, ScalarMap curvature, ScalarMap inverse);

    double at(double x) const;        ///< l(x)
    double slope(double x) const;     ///< l'(x)
    double curvature(double x) const; ///< l''(x)
    double inverse(double y) const;   ///< l^-1(y)

private:
    ScalarMap value_, slope_, curvature_, inverse_;
};

struct LinearCurves {
    DemandCurve demand;
    LatencyCurve latency;
};

/// P(q) = p_max (1 - q/q_max); q_max defaults to the unit normalization.
DemandCurve make_linear_demand(double p_max, double q_max = 1.0);

/// l(x) = x.
LatencyCurve make_linear_latency();

/// l(x) = x^k for k >= 1; k < 1 breaks convexity and is rejected.
LatencyCurve make_power_latency(double exponent);

LinearCurves make_linear_curves(double p_max, double q_max = 1.0);

} // namespace smkt
