#pragma once

#include "smkt/curves.hpp"
#include "smkt/outcome.hpp"

namespace smkt {

struct MonopolyScenario {
    DemandCurve demand;
    LatencyCurve latency;
    double capacity = 1.0;
};

struct MonopolyWhitespaceScenario {
    DemandCurve demand;
    LatencyCurve provider_latency;
    LatencyCurve whitespace_latency;
    double capacity = 1.0;
    double whitespace = 0.0; // 0 degenerates to the plain monopoly
};

/// Derivatives of the monopoly equilibrium in the provider's capacity.
/// beta is the (positive) denominator shared by the quantity and price
/// responses; beta <= 0 cannot occur for valid curves and trips a guard.
struct MonopolySensitivity {
    double quantity_slope = 0.0; // dq*/dC
    double price_slope = 0.0;    // dp*/dC
    double welfare_slope = 0.0;  // dT/dC
    double beta = 0.0;
};

/// First-order responses of the monopoly equilibrium to a vanishing amount
/// of open-access capacity.
struct MarginalWhitespaceReport {
    double entrant_demand = 0.0;    // open-access demand rate at W -> 0
    double quantity_response = 0.0; // dq_m/dW
    double price_response = 0.0;    // dp/dW
    double revenue_response = 0.0;  // dR/dW
    double surplus_response = 0.0;  // dS/dW
    double welfare_response = 0.0;  // dT/dW
};

/// Feasible open-access quantity window [zero_price_quantity,
/// standalone_quantity]: the lower end is where the provider's price hits
/// zero, the upper end is the open-access band serving everyone alone.
struct WhitespaceBounds {
    double zero_price_quantity = 0.0; // q~
    double standalone_quantity = 0.0; // q^
};

/// Revenue-optimal monopoly equilibrium for general twice-differentiable
/// curves.
EquilibriumOutcome solve_monopoly(const MonopolyScenario& scenario);

/// Linear-curve monopoly equilibrium in closed form.
EquilibriumOutcome monopoly_closed_form_linear(double p_max, double capacity);

MonopolySensitivity monopoly_sensitivity(const MonopolyScenario& scenario);

WhitespaceBounds whitespace_bounds(const MonopolyWhitespaceScenario& scenario);

/// Monopoly equilibrium alongside an open-access band of capacity W. The
/// provider's problem has one degree of freedom (the open-access quantity);
/// the optimum is the root of the revenue's first-order condition on the
/// feasible window.
EquilibriumOutcome solve_monopoly_whitespace(const MonopolyWhitespaceScenario& scenario);

MarginalWhitespaceReport marginal_whitespace(const MonopolyScenario& scenario,
                                             const LatencyCurve& whitespace_latency);

} // namespace smkt
