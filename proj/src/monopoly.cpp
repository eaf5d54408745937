#include "smkt/monopoly.hpp"

#include <cmath>
#include <sstream>
#include <tuple>

#include "smkt/errors.hpp"
#include "smkt/solver.hpp"

namespace smkt {

namespace {

constexpr double kArgTol = 1e-15;

void check(const MonopolyScenario& s) {
    if (!(s.capacity > 0.0)) throw DomainError("monopoly scenario requires capacity > 0");
}

void check(const MonopolyWhitespaceScenario& s) {
    if (!(s.capacity > 0.0)) throw DomainError("whitespace scenario requires capacity > 0");
    if (s.whitespace < 0.0) throw DomainError("whitespace capacity must be nonnegative");
}

// Largest quantity the provider can serve: price hits zero where
// l(q/C) = P(q). Solved on the delivered-price axis so every evaluation
// stays inside the curve domains.
double zero_price_quantity(const DemandCurve& demand, const LatencyCurve& latency,
                           double capacity) {
    const auto gap = [&](double lambda) {
        return capacity * latency.inverse(lambda) - demand.quantity(lambda);
    };
    const double lambda = find_root(gap, {0.0, demand.p_max()}, {kArgTol, 200});
    return demand.quantity(lambda);
}

double consumer_surplus(const DemandCurve& demand, double total_quantity) {
    const double gross =
        integrate([&](double q) { return demand.price(q); }, 0.0, total_quantity);
    return gross - total_quantity * demand.price(total_quantity);
}

} // namespace

EquilibriumOutcome solve_monopoly(const MonopolyScenario& s) {
    check(s);
    const double q_cap = zero_price_quantity(s.demand, s.latency, s.capacity);

    // Revenue q * (P(q) - l(q/C)) is strictly concave; its derivative falls
    // from p_max at 0 to a negative value at the zero-price quantity, so the
    // optimum is the unique root of the first-order condition.
    const auto marginal_revenue = [&](double q) {
        return s.demand.price(q) - s.latency.at(q / s.capacity) +
               q * (s.demand.slope(q) - s.latency.slope(q / s.capacity) / s.capacity);
    };
    const double q_star = find_root(marginal_revenue, {0.0, q_cap}, {kArgTol, 200});

    const double p_star = s.demand.price(q_star) - s.latency.at(q_star / s.capacity);
    const double lambda = s.demand.price(q_star);

    EquilibriumOutcome out;
    out.delivered_price = lambda;
    out.channels.push_back({"provider", q_star, p_star, s.latency.at(q_star / s.capacity),
                            p_star * q_star});
    out.consumer_surplus = consumer_surplus(s.demand, q_star);
    out.total_welfare = out.consumer_surplus + p_star * q_star;
    return out;
}

EquilibriumOutcome monopoly_closed_form_linear(double p_max, double capacity) {
    if (!(p_max > 0.0)) throw DomainError("monopoly closed form: p_max must be positive");
    if (!(capacity > 0.0)) throw DomainError("monopoly closed form: capacity must be positive");
    const double cp = capacity * p_max;
    const double share = cp / (1.0 + cp);
    const double q = 0.5 * share;
    const double p = 0.5 * p_max;
    const double revenue = 0.25 * p_max * share;
    const double surplus = p_max / 8.0 * share * share;

    EquilibriumOutcome out;
    out.delivered_price = p_max * (1.0 - q);
    out.channels.push_back({"provider", q, p, q / capacity, revenue});
    out.consumer_surplus = surplus;
    out.total_welfare = revenue + surplus;
    return out;
}

MonopolySensitivity monopoly_sensitivity(const MonopolyScenario& s) {
    const EquilibriumOutcome eq = solve_monopoly(s);
    const double q = eq.channels.front().quantity;
    const double C = s.capacity;
    const double load = q / C;

    const double price_gap = s.demand.price(q) - s.latency.at(load); // = p* > 0
    const double dP = s.demand.slope(q);
    const double d2P = s.demand.curvature(q);
    const double dl = s.latency.slope(load);
    const double d2l = s.latency.curvature(load);

    const double margin = dP - dl / C;
    const double beta = 2.0 * margin * margin - price_gap * (d2P - d2l / (C * C));
    if (!(beta > 0.0)) {
        std::ostringstream msg;
        msg << "sensitivity denominator " << beta << " is not positive";
        throw DegeneracyError(msg.str());
    }

    MonopolySensitivity sens;
    sens.beta = beta;
    sens.quantity_slope = price_gap * (2.0 * dl / (C * C) + q * d2l / (C * C * C)) / beta;
    sens.price_slope =
        price_gap * q * (dP * d2l / (C * C * C) - d2P * dl / (C * C)) / beta;
    sens.welfare_slope = -q * dP * sens.quantity_slope + q * q * dl / (C * C);
    return sens;
}

WhitespaceBounds whitespace_bounds(const MonopolyWhitespaceScenario& s) {
    check(s);
    if (!(s.whitespace > 0.0))
        throw DomainError("whitespace_bounds requires whitespace capacity > 0");
    const double W = s.whitespace;

    // Open access alone: l_w(q/W) = P(q), parameterized by delivered price.
    const auto standalone_gap = [&](double lambda) {
        return W * s.whitespace_latency.inverse(lambda) - s.demand.quantity(lambda);
    };
    const double lambda_hat =
        find_root(standalone_gap, {0.0, s.demand.p_max()}, {kArgTol, 200});
    const double q_hat = W * s.whitespace_latency.inverse(lambda_hat);

    // Zero provider price: both sources fill to a common delivered price.
    const auto zero_price_gap = [&](double lambda) {
        return s.capacity * s.provider_latency.inverse(lambda) +
               W * s.whitespace_latency.inverse(lambda) - s.demand.quantity(lambda);
    };
    const double lambda_tilde =
        find_root(zero_price_gap, {0.0, s.demand.p_max()}, {kArgTol, 200});
    const double q_tilde = W * s.whitespace_latency.inverse(lambda_tilde);

    if (!(q_tilde < q_hat)) {
        std::ostringstream msg;
        msg << "whitespace bounds out of order: " << q_tilde << " !< " << q_hat;
        throw DegeneracyError(msg.str());
    }
    return {q_tilde, q_hat};
}

EquilibriumOutcome solve_monopoly_whitespace(const MonopolyWhitespaceScenario& s) {
    check(s);
    if (s.whitespace == 0.0)
        return solve_monopoly({s.demand, s.provider_latency, s.capacity});

    const double C = s.capacity;
    const double W = s.whitespace;
    const WhitespaceBounds bounds = whitespace_bounds(s);

    // One degree of freedom: pick the open-access quantity q_w, then
    //   lambda = l_w(q_w / W),  q_m = Q(lambda) - q_w,  p = lambda - l_m(q_m / C).
    // Keeping q_w inside the feasible window keeps p in [0, P(q^)], which is
    // where the provider can attract any traffic at all.
    const auto state = [&](double q_w) {
        const double lambda = s.whitespace_latency.at(q_w / W);
        const double q_m = s.demand.quantity(lambda) - q_w;
        const double p = lambda - s.provider_latency.at(q_m / C);
        return std::tuple<double, double, double>{lambda, q_m, p};
    };

    const auto revenue_slope = [&](double q_w) {
        const auto [lambda, q_m, p] = state(q_w);
        const double dlambda = s.whitespace_latency.slope(q_w / W) / W;
        const double dq_m = dlambda / s.demand.slope(s.demand.quantity(lambda)) - 1.0;
        const double dp = dlambda - s.provider_latency.slope(q_m / C) / C * dq_m;
        return dp * q_m + p * dq_m;
    };

    double q_w_star;
    const double slope_lo = revenue_slope(bounds.zero_price_quantity);
    const double slope_hi = revenue_slope(bounds.standalone_quantity);
    if (slope_lo <= 0.0) {
        q_w_star = bounds.zero_price_quantity;
    } else if (slope_hi >= 0.0) {
        q_w_star = bounds.standalone_quantity;
    } else {
        q_w_star = find_root(revenue_slope,
                             {bounds.zero_price_quantity, bounds.standalone_quantity},
                             {kArgTol, 200});
    }

    const auto [lambda, q_m, p] = state(q_w_star);

    EquilibriumOutcome out;
    out.delivered_price = lambda;
    out.channels.push_back(
        {"provider", q_m, p, s.provider_latency.at(q_m / C), p * q_m});
    out.channels.push_back({"whitespace", q_w_star, 0.0, lambda, 0.0});
    out.consumer_surplus = consumer_surplus(s.demand, q_m + q_w_star);
    out.total_welfare = out.consumer_surplus + p * q_m;
    return out;
}

MarginalWhitespaceReport marginal_whitespace(const MonopolyScenario& s,
                                             const LatencyCurve& whitespace_latency) {
    const EquilibriumOutcome eq = solve_monopoly(s);
    const double q = eq.channels.front().quantity;
    const double C = s.capacity;

    const double dP = s.demand.slope(q);
    const double d2P = s.demand.curvature(q);
    const double dl = s.latency.slope(q / C);

    const double entrant = whitespace_latency.inverse(s.demand.price(q));
    const double entrant_slope = whitespace_latency.slope(entrant);

    const double concavity = dP - dl / C + 0.5 * q * d2P;
    if (!(concavity < 0.0)) {
        std::ostringstream msg;
        msg << "marginal whitespace analysis needs a strictly concave revenue; "
               "second-order coefficient "
            << concavity;
        throw DegeneracyError(msg.str());
    }

    const double numerator = (entrant + q * dP / entrant_slope) * dP + q * entrant * d2P;

    MarginalWhitespaceReport report;
    report.entrant_demand = entrant;
    report.quantity_response = -0.5 * numerator / concavity;
    report.price_response = report.quantity_response * (dP - dl / C) + entrant * dP;
    report.revenue_response = q * entrant * dP;
    report.surplus_response = -(report.quantity_response + entrant) * q * dP;
    report.welfare_response = 0.5 * (numerator / concavity) * q * dP;
    return report;
}

} // namespace smkt
