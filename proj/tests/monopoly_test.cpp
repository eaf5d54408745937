#include "smkt/monopoly.hpp"

#include <cmath>
#include <random>

#include "smkt/errors.hpp"
#include "smkt/solver.hpp"
#include "support/checks.hpp"

using namespace smkt;

namespace {

MonopolyScenario linear_scenario(double p_max, double capacity) {
    const LinearCurves curves = make_linear_curves(p_max);
    return {curves.demand, curves.latency, capacity};
}

MonopolyWhitespaceScenario linear_mw(double p_max, double capacity, double whitespace) {
    const LinearCurves curves = make_linear_curves(p_max);
    return {curves.demand, curves.latency, curves.latency, capacity, whitespace};
}

const Channel& provider(const EquilibriumOutcome& eq) { return eq.channels.front(); }

const Channel& whitespace_channel(const EquilibriumOutcome& eq) {
    for (const auto& c : eq.channels)
        if (c.name == "whitespace") return c;
    throw std::runtime_error("no whitespace channel");
}

void solve_monopoly_values() {
    const EquilibriumOutcome unit = solve_monopoly(linear_scenario(1.0, 1.0));
    CHECK_CLOSE(provider(unit).quantity, 0.25, 1e-10);
    CHECK_CLOSE(provider(unit).price, 0.5, 1e-10);
    CHECK_CLOSE(provider(unit).revenue, 0.125, 1e-10);
    CHECK_CLOSE(unit.consumer_surplus, 0.03125, 1e-10);
    CHECK_CLOSE(unit.total_welfare, 0.15625, 1e-10);
    CHECK_CLOSE(max_wardrop_residual(unit), 0.0, 1e-12);

    const EquilibriumOutcome wide = solve_monopoly(linear_scenario(1.0, 2.0));
    CHECK_CLOSE(provider(wide).quantity, 1.0 / 3.0, 1e-10);
    CHECK_CLOSE(provider(wide).price, 0.5, 1e-10);
    CHECK_CLOSE(provider(wide).revenue, 1.0 / 6.0, 1e-10);
    CHECK_CLOSE(wide.consumer_surplus, 1.0 / 18.0, 1e-10);

    const EquilibriumOutcome starved = solve_monopoly(linear_scenario(1.0, 1e-9));
    CHECK(provider(starved).quantity < 1e-9);
    CHECK(starved.total_welfare < 1e-9);
    CHECK(starved.total_welfare >= 0.0);

    CHECK_THROWS(DomainError, solve_monopoly(linear_scenario(1.0, 0.0)));
}

void closed_form_values() {
    const EquilibriumOutcome unit = monopoly_closed_form_linear(1.0, 1.0);
    CHECK_CLOSE(provider(unit).quantity, 0.25, 1e-15);
    CHECK_CLOSE(provider(unit).price, 0.5, 1e-15);
    CHECK_CLOSE(provider(unit).revenue, 0.125, 1e-15);
    CHECK_CLOSE(unit.consumer_surplus, 0.03125, 1e-15);

    const EquilibriumOutcome wide = monopoly_closed_form_linear(1.0, 2.0);
    CHECK_CLOSE(provider(wide).quantity, 1.0 / 3.0, 1e-15);
    CHECK_CLOSE(provider(wide).revenue, 1.0 / 6.0, 1e-15);

    CHECK_THROWS(DomainError, monopoly_closed_form_linear(-1.0, 1.0));
    CHECK_THROWS(DomainError, monopoly_closed_form_linear(1.0, 0.0));
}

void solver_agrees_with_closed_form() {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> price(0.5, 3.0), cap(0.1, 5.0);
    for (int i = 0; i < 50; ++i) {
        const double p_max = price(rng), C = cap(rng);
        const EquilibriumOutcome solved = solve_monopoly(linear_scenario(p_max, C));
        const EquilibriumOutcome closed = monopoly_closed_form_linear(p_max, C);
        CHECK_CLOSE(provider(solved).quantity, provider(closed).quantity, 1e-10);
        CHECK_CLOSE(provider(solved).price, provider(closed).price, 1e-10);
        CHECK_CLOSE(provider(solved).revenue, provider(closed).revenue, 1e-10);
        CHECK_CLOSE(solved.consumer_surplus, closed.consumer_surplus, 1e-10);
        CHECK_CLOSE(solved.total_welfare, closed.total_welfare, 1e-10);
    }
}

// The first-order condition the optimum satisfies, in its fixed-point form.
double fixed_point_residual(const MonopolyScenario& s, double q) {
    const double gap = s.demand.price(q) - s.latency.at(q / s.capacity);
    const double margin = s.demand.slope(q) - s.latency.slope(q / s.capacity) / s.capacity;
    return q + gap / margin;
}

void optimality_properties() {
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> price(0.5, 3.0), cap(0.2, 4.0);
    for (int i = 0; i < 20; ++i) {
        const double p_max = price(rng), C = cap(rng);
        const bool nonlinear = i % 2 == 1;
        const MonopolyScenario s{
            make_linear_demand(p_max),
            nonlinear ? make_power_latency(2.0) : make_linear_latency(), C};
        const EquilibriumOutcome eq = solve_monopoly(s);
        const double q = provider(eq).quantity;
        CHECK_CLOSE(fixed_point_residual(s, q), 0.0, 1e-9);

        const auto revenue = [&](double x) {
            return x * (s.demand.price(x) - s.latency.at(x / C));
        };
        CHECK(revenue(q) >= revenue(q - 1e-4));
        CHECK(revenue(q) >= revenue(q + 1e-4));

        // golden-section cross-check of the same concave program
        const double q_cap = s.demand.quantity(
            find_root([&](double lam) { return C * s.latency.inverse(lam) -
                                               s.demand.quantity(lam); },
                      {0.0, p_max}));
        const MaxResult scan = maximize_concave(revenue, 0.0, q_cap);
        CHECK_CLOSE(provider(eq).revenue, scan.value, 1e-8);
    }
}

void welfare_monotone_in_capacity() {
    for (const bool nonlinear : {false, true}) {
        double previous = -1.0;
        for (int i = 1; i <= 30; ++i) {
            const MonopolyScenario s{make_linear_demand(1.0),
                                     nonlinear ? make_power_latency(2.0)
                                               : make_linear_latency(),
                                     0.1 + 0.2 * i};
            const double welfare = solve_monopoly(s).total_welfare;
            CHECK(welfare >= previous);
            previous = welfare;
        }
    }
}

void sensitivity_values() {
    const MonopolySensitivity unit = monopoly_sensitivity(linear_scenario(1.0, 1.0));
    CHECK_CLOSE(unit.welfare_slope, 0.09375, 1e-10);
    CHECK_CLOSE(unit.price_slope, 0.0, 0.0);
    CHECK(unit.quantity_slope > 0.0);
    CHECK(unit.beta > 0.0);

    const auto quantity_of = [](double c) {
        return solve_monopoly(linear_scenario(1.0, c)).channels.front().quantity;
    };
    CHECK_CLOSE(unit.quantity_slope, central_difference(quantity_of, 1.0, fd_step(1.0)),
                1e-6);

    // arbitrary linear capacities keep the price flat
    for (const double c : {0.3, 0.9, 2.7}) {
        CHECK_CLOSE(monopoly_sensitivity(linear_scenario(1.0, c)).price_slope, 0.0, 0.0);
    }
}

void sensitivity_matches_differences_nonlinear() {
    const MonopolyScenario s{make_linear_demand(1.2), make_power_latency(2.0), 1.3};
    const MonopolySensitivity sens = monopoly_sensitivity(s);
    const auto solve_at = [&](double c) {
        return solve_monopoly({s.demand, s.latency, c});
    };
    const double h = fd_step(s.capacity);
    CHECK_CLOSE(sens.quantity_slope,
                central_difference(
                    [&](double c) { return solve_at(c).channels.front().quantity; },
                    s.capacity, h),
                1e-6);
    CHECK_CLOSE(sens.price_slope,
                central_difference(
                    [&](double c) { return solve_at(c).channels.front().price; },
                    s.capacity, h),
                1e-6);
    CHECK_CLOSE(sens.welfare_slope,
                central_difference([&](double c) { return solve_at(c).total_welfare; },
                                   s.capacity, h),
                1e-6);
}

void whitespace_bounds_values() {
    const WhitespaceBounds b = whitespace_bounds(linear_mw(1.0, 1.0, 1.0));
    CHECK_CLOSE(b.standalone_quantity, 0.5, 1e-12);
    CHECK_CLOSE(b.zero_price_quantity, 1.0 / 3.0, 1e-12);

    CHECK_THROWS(DomainError, whitespace_bounds(linear_mw(1.0, 1.0, 0.0)));

    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> cap(0.2, 3.0), ws(0.05, 3.0);
    for (int i = 0; i < 25; ++i) {
        MonopolyWhitespaceScenario s = linear_mw(1.0, cap(rng), ws(rng));
        if (i % 3 == 2) s.whitespace_latency = make_power_latency(2.0);
        const WhitespaceBounds bounds = whitespace_bounds(s);
        CHECK(bounds.zero_price_quantity < bounds.standalone_quantity);
    }
}

void solve_whitespace_values() {
    const EquilibriumOutcome eq = solve_monopoly_whitespace(linear_mw(1.0, 1.0, 1.0));
    CHECK_CLOSE(provider(eq).quantity, 1.0 / 6.0, 1e-10);
    CHECK_CLOSE(provider(eq).price, 0.25, 1e-10);
    CHECK_CLOSE(whitespace_channel(eq).quantity, 5.0 / 12.0, 1e-10);
    CHECK_CLOSE(provider(eq).revenue, 1.0 / 24.0, 1e-10);
    CHECK_CLOSE(whitespace_channel(eq).price, 0.0, 0.0);
    CHECK_CLOSE(max_wardrop_residual(eq), 0.0, 1e-9);
    CHECK_CLOSE(eq.delivered_price, 5.0 / 12.0, 1e-10);

    // W = 0 falls back to the plain monopoly
    const EquilibriumOutcome degenerate = solve_monopoly_whitespace(linear_mw(1.0, 1.0, 0.0));
    const EquilibriumOutcome plain = solve_monopoly(linear_scenario(1.0, 1.0));
    CHECK(degenerate.channels.size() == 1);
    CHECK_CLOSE(provider(degenerate).quantity, provider(plain).quantity, 0.0);
    CHECK_CLOSE(degenerate.total_welfare, plain.total_welfare, 0.0);

    // W = 2: evaluating the linear closed forms gives R = 1/48,
    // S = (1/2)(17/24)^2 = 289/1152, T = 313/1152
    const EquilibriumOutcome big = solve_monopoly_whitespace(linear_mw(1.0, 1.0, 2.0));
    CHECK_CLOSE(provider(big).revenue, 1.0 / 48.0, 1e-10);
    CHECK_CLOSE(big.consumer_surplus, 289.0 / 1152.0, 1e-10);
    CHECK_CLOSE(big.total_welfare, 313.0 / 1152.0, 1e-10);
    CHECK_CLOSE(provider(big).quantity, 0.125, 1e-10);
    CHECK_CLOSE(whitespace_channel(big).quantity, 7.0 / 12.0, 1e-10);
}

// Linear closed forms for the whitespace equilibrium, used as the oracle for
// random scenarios.
void whitespace_matches_closed_forms() {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> price(0.5, 2.0), cap(0.2, 3.0), ws(0.05, 3.0);
    for (int i = 0; i < 25; ++i) {
        const double p = price(rng), C = cap(rng), W = ws(rng);
        const double cp = C * p, wp = W * p;
        const double q_m = 0.5 * cp / (cp + wp + 1.0);
        const double p_m = 0.5 * p / (1.0 + wp);
        const double q_w = (0.5 * cp + wp + 1.0) / (cp + wp + 1.0) * wp / (wp + 1.0);
        const double revenue = 0.25 * p * cp / (cp + wp + 1.0) / (1.0 + wp);

        const EquilibriumOutcome eq = solve_monopoly_whitespace(linear_mw(p, C, W));
        CHECK_CLOSE(provider(eq).quantity, q_m, 1e-10);
        CHECK_CLOSE(provider(eq).price, p_m, 1e-10);
        CHECK_CLOSE(whitespace_channel(eq).quantity, q_w, 1e-10);
        CHECK_CLOSE(provider(eq).revenue, revenue, 1e-10);
        CHECK_CLOSE(max_wardrop_residual(eq), 0.0, 1e-9);
        CHECK_CLOSE(welfare_identity_residual(eq), 0.0, 1e-9);
    }
}

void whitespace_extreme_scenarios() {
    // huge open band next to a small provider, and the reverse
    for (const auto& [C, W] : {std::pair{0.05, 50.0}, std::pair{50.0, 0.05},
                               std::pair{1e-3, 1e-3}, std::pair{8.0, 8.0}}) {
        const EquilibriumOutcome eq = solve_monopoly_whitespace(linear_mw(1.0, C, W));
        CHECK_CLOSE(max_wardrop_residual(eq), 0.0, 1e-9);
        CHECK_CLOSE(welfare_identity_residual(eq), 0.0, 1e-9);
        CHECK(provider(eq).quantity >= 0.0);
        CHECK(whitespace_channel(eq).quantity >= 0.0);
        CHECK(eq.total_quantity() <= 1.0 + 1e-9);
    }
}

void whitespace_nonlinear_latency_consistency() {
    // convex open-access latency still reduces to the same scalar program
    const LinearCurves curves = make_linear_curves(1.0);
    const MonopolyWhitespaceScenario s{curves.demand, curves.latency,
                                       make_power_latency(2.0), 1.0, 1.0};
    const EquilibriumOutcome eq = solve_monopoly_whitespace(s);
    CHECK_CLOSE(max_wardrop_residual(eq), 0.0, 1e-9);
    CHECK_CLOSE(welfare_identity_residual(eq), 0.0, 1e-9);
    CHECK(provider(eq).price > 0.0);
    CHECK(whitespace_channel(eq).quantity > 0.0);

    // and the provider prefers its optimum to nearby feasible quantities
    const WhitespaceBounds bounds = whitespace_bounds(s);
    const auto revenue_at = [&](double q_w) {
        const double lam = s.whitespace_latency.at(q_w / s.whitespace);
        const double q_m = s.demand.quantity(lam) - q_w;
        return (lam - s.provider_latency.at(q_m / s.capacity)) * q_m;
    };
    const double q_w = whitespace_channel(eq).quantity;
    const double up = std::min(q_w + 1e-5, bounds.standalone_quantity);
    const double down = std::max(q_w - 1e-5, bounds.zero_price_quantity);
    CHECK(provider(eq).revenue >= revenue_at(up) - 1e-12);
    CHECK(provider(eq).revenue >= revenue_at(down) - 1e-12);
}

void marginal_whitespace_values() {
    const MonopolyScenario s = linear_scenario(1.0, 1.0);
    const MarginalWhitespaceReport report = marginal_whitespace(s, make_linear_latency());
    CHECK_CLOSE(report.entrant_demand, 0.75, 1e-12);
    CHECK_CLOSE(report.welfare_response, -1.0 / 32.0, 1e-12);
    CHECK_CLOSE(report.revenue_response, -0.1875, 1e-12);
    CHECK_CLOSE(report.quantity_response, -0.125, 1e-12);
    CHECK_CLOSE(report.price_response, -0.5, 1e-12);
    CHECK_CLOSE(report.surplus_response, 5.0 / 32.0, 1e-12);
    CHECK_CLOSE(report.welfare_response, report.revenue_response + report.surplus_response,
                1e-12);
}

// Two-point quotient between W = 0 and W = 1e-5. A difference centered at
// 1e-5 would estimate the response there, and its own first-order drift
// (about 1.7e-4 relative for the welfare response) already exceeds the
// tolerance; anchoring one end at 0 halves that drift.
void marginal_whitespace_matches_differences() {
    const double W = 1e-5;
    const MarginalWhitespaceReport report =
        marginal_whitespace(linear_scenario(1.0, 1.0), make_linear_latency());
    const auto at = [&](double w) { return solve_monopoly_whitespace(linear_mw(1.0, 1.0, w)); };

    const auto fd = [&](auto&& extract) {
        return (extract(at(W)) - extract(at(0.0))) / W;
    };
    CHECK_REL(report.quantity_response,
              fd([](const EquilibriumOutcome& e) { return e.channels[0].quantity; }), 1e-4);
    CHECK_REL(report.price_response,
              fd([](const EquilibriumOutcome& e) { return e.channels[0].price; }), 1e-4);
    CHECK_REL(report.revenue_response,
              fd([](const EquilibriumOutcome& e) { return e.channels[0].revenue; }), 1e-4);
    CHECK_REL(report.surplus_response,
              fd([](const EquilibriumOutcome& e) { return e.consumer_surplus; }), 1e-4);
    CHECK_REL(report.welfare_response,
              fd([](const EquilibriumOutcome& e) { return e.total_welfare; }), 1e-4);
}

void marginal_whitespace_signs() {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> price(0.5, 3.0), cap(0.2, 4.0);
    for (int i = 0; i < 50; ++i) {
        const MarginalWhitespaceReport report =
            marginal_whitespace(linear_scenario(price(rng), cap(rng)), make_linear_latency());
        CHECK(report.welfare_response < 0.0);
        CHECK(report.revenue_response < 0.0);
    }

    // convex open-access latency: welfare falls whenever the stated
    // sign condition holds
    for (int i = 0; i < 25; ++i) {
        const MonopolyScenario s = linear_scenario(price(rng), cap(rng));
        const LatencyCurve l_w = make_power_latency(2.0);
        const MarginalWhitespaceReport report = marginal_whitespace(s, l_w);
        const EquilibriumOutcome eq = solve_monopoly(s);
        const double q = eq.channels[0].quantity;
        const double condition =
            report.entrant_demand + q * s.demand.slope(q) / l_w.slope(report.entrant_demand);
        if (condition >= 0.0) CHECK(report.welfare_response < 0.0);
    }
}

} // namespace

int main() {
    solve_monopoly_values();
    closed_form_values();
    solver_agrees_with_closed_form();
    optimality_properties();
    welfare_monotone_in_capacity();
    sensitivity_values();
    sensitivity_matches_differences_nonlinear();
    whitespace_bounds_values();
    solve_whitespace_values();
    whitespace_matches_closed_forms();
    whitespace_extreme_scenarios();
    whitespace_nonlinear_latency_consistency();
    marginal_whitespace_values();
    marginal_whitespace_signs();
    marginal_whitespace_matches_differences();
    return testkit::summary("monopoly");
}
