#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "smkt/outcome.hpp"
#include "smkt/solver.hpp"

namespace smkt {

/// Block of spectrum on the table: up to `capacity` units at `unit_price`
/// per unit.
struct SpectrumOffer {
    double capacity = 0.0;
    double unit_price = 0.0;
};

struct InvestmentOutcome {
    std::vector<double> purchased;     // c_i*, one entry per buyer
    std::vector<double> net_revenues;  // gross revenue minus purchase cost
    std::vector<bool> cleared;         // bought the entire offer
    EquilibriumOutcome equilibrium;    // post-purchase market equilibrium
    std::string note;                  // set when a guard fires
};

/// Monopolist's optimal purchase against a posted offer (all-linear setting,
/// optionally with an open-access band W the monopolist treats like part of
/// her endowment). A zero unit price makes the problem unbounded below the
/// marginal-value threshold; the guard buys the whole offer and says so.
InvestmentOutcome monopoly_purchase(double endowment, const SpectrumOffer& offer,
                                    double p_max, double whitespace = 0.0);

/// Highest unit price at which the monopolist still buys the entire offer.
double monopoly_clearing_price(double endowment, double offered, double whitespace,
                               double p_max);

/// Duopoly equilibrium revenue of the provider holding `own` capacity.
double duopoly_revenue_in_capacity(double own, double other, double p_max);

/// Two-buyer capacity purchase game, solved by iterated best responses; each
/// best response is a concave scalar problem over [0, offer capacity].
/// whitespace > 0 runs the same loop over the open-access duopoly revenues.
InvestmentOutcome solve_investment_game(double endowment_1, double endowment_2,
                                        const std::array<SpectrumOffer, 2>& offers,
                                        double p_max, double whitespace = 0.0,
                                        SolverSettings settings = {});

/// Unit prices at which each buyer's equilibrium purchase is exactly the
/// planner's target allocation: the marginal equilibrium revenue at the
/// post-purchase capacities.
std::pair<double, double> planner_prices(double endowment_1, double endowment_2,
                                         double target_1, double target_2, double p_max);

} // namespace smkt
