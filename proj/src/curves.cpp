#include "smkt/curves.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "smkt/errors.hpp"

namespace smkt {

namespace {

// Roundoff slack on domain endpoints. Arguments are passed through untouched;
// anything further out is rejected.
double slack(double scale) {
    return 1e-9 * std::max(1.0, scale);
}

[[noreturn]] void out_of_domain(const char* what, double value, double lo, double hi) {
    std::ostringstream msg;
    msg << what << " evaluated at " << value << ", outside [" << lo << ", " << hi << "]";
    throw DomainError(msg.str());
}

} // namespace

DemandCurve::DemandCurve(ScalarMap value, ScalarMap slope, ScalarMap curvature,
                         ScalarMap inverse, double p_max, double q_max)
    : value_(std::move(value)),
      slope_(std::move(slope)),
      curvature_(std::move(curvature)),
      inverse_(std::move(inverse)),
      p_max_(p_max),
      q_max_(q_max) {
    if (!(p_max_ > 0.0)) throw DomainError("demand curve requires p_max > 0");
    if (!(q_max_ > 0.0)) throw DomainError("demand curve requires q_max > 0");
}

double DemandCurve::price(double q) const {
    if (q < -slack(q_max_) || q > q_max_ + slack(q_max_))
        out_of_domain("demand price", q, 0.0, q_max_);
    return value_(q);
}

double DemandCurve::slope(double q) const {
    if (q < -slack(q_max_) || q > q_max_ + slack(q_max_))
        out_of_domain("demand slope", q, 0.0, q_max_);
    return slope_(q);
}

double DemandCurve::curvature(double q) const {
    if (q < -slack(q_max_) || q > q_max_ + slack(q_max_))
        out_of_domain("demand curvature", q, 0.0, q_max_);
    return curvature_(q);
}

double DemandCurve::quantity(double p) const {
    if (p < -slack(p_max_) || p > p_max_ + slack(p_max_))
        out_of_domain("inverse demand", p, 0.0, p_max_);
    return inverse_(p);
}

LatencyCurve::LatencyCurve(ScalarMap value, ScalarMap slope, ScalarMap curvature,
                           ScalarMap inverse)
    : value_(std::move(value)),
      slope_(std::move(slope)),
      curvature_(std::move(curvature)),
      inverse_(std::move(inverse)) {}

double LatencyCurve::at(double x) const {
    if (x < -slack(1.0)) out_of_domain("latency", x, 0.0, INFINITY);
    return value_(x);
}

double LatencyCurve::slope(double x) const {
    if (x < -slack(1.0)) out_of_domain("latency slope", x, 0.0, INFINITY);
    return slope_(x);
}

double LatencyCurve::curvature(double x) const {
    if (x < -slack(1.0)) out_of_domain("latency curvature", x, 0.0, INFINITY);
    return curvature_(x);
}

double LatencyCurve::inverse(double y) const {
    if (y < -slack(1.0)) out_of_domain("inverse latency", y, 0.0, INFINITY);
    return inverse_(y);
}

DemandCurve make_linear_demand(double p_max, double q_max) {
    if (!(p_max > 0.0)) throw DomainError("make_linear_demand: p_max must be positive");
    if (!(q_max > 0.0)) throw DomainError("make_linear_demand: q_max must be positive");
    return DemandCurve(
        [p_max, q_max](double q) { return p_max * (1.0 - q / q_max); },
        [p_max, q_max](double) { return -p_max / q_max; },
        [](double) { return 0.0; },
        [p_max, q_max](double p) { return q_max * (1.0 - p / p_max); },
        p_max, q_max);
}

LatencyCurve make_linear_latency() {
    auto identity = [](double x) { return x; };
    return LatencyCurve(identity, [](double) { return 1.0; }, [](double) { return 0.0; },
                        identity);
}

LatencyCurve make_power_latency(double exponent) {
    if (!(exponent >= 1.0))
        throw DomainError("make_power_latency: exponent below 1 is not convex increasing");
    if (exponent == 1.0) return make_linear_latency();
    const double k = exponent;
    return LatencyCurve(
        [k](double x) { return std::pow(x, k); },
        [k](double x) { return k * std::pow(x, k - 1.0); },
        [k](double x) { return k * (k - 1.0) * std::pow(x, k - 2.0); },
        [k](double y) { return std::pow(y, 1.0 / k); });
}

LinearCurves make_linear_curves(double p_max, double q_max) {
    return LinearCurves{make_linear_demand(p_max, q_max), make_linear_latency()};
}

} // namespace smkt
