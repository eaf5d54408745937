#pragma once

#include <optional>
#include <span>

#include "smkt/curves.hpp"
#include "smkt/outcome.hpp"

namespace smkt {

/// Two price-setting providers over a shared linear latency and linear
/// demand with unit q_max; the closed forms only exist in that setting, so
/// anything else is rejected up front.
struct DuopolyScenario {
    double p_max = 1.0;
    double capacity_1 = 0.0;
    double capacity_2 = 0.0;
    double whitespace = 0.0;

    /// Builds from explicit curves, verifying they are the linear unit-q_max
    /// shapes the duopoly analysis assumes; throws UnsupportedConfiguration
    /// otherwise.
    static DuopolyScenario from_curves(const DemandCurve& demand, const LatencyCurve& latency,
                                       double capacity_1, double capacity_2,
                                       double whitespace = 0.0);
};

/// Continuum of atomic providers with aggregate capacity C. The equilibrium
/// load is uniform across the mass, so only the total matters; the
/// efficiency check reintroduces a binned profile to probe the welfare
/// functional.
struct PerfectCompetitionScenario {
    DemandCurve demand;
    LatencyCurve latency;
    double capacity = 1.0;
    double whitespace = 0.0;
    std::optional<LatencyCurve> whitespace_latency; // defaults to the provider latency

    const LatencyCurve& open_latency() const {
        return whitespace_latency ? *whitespace_latency : latency;
    }
};

/// n identical providers, each holding capacity/n.
struct SymmetricNScenario {
    DemandCurve demand;
    LatencyCurve latency;
    double capacity = 1.0;
    long providers = 1;
};

struct PcEquilibrium {
    double load = 0.0;                   // common q(x)/C(x) across the mass
    double welfare_capacity_slope = 0.0; // dT/dC
    EquilibriumOutcome outcome;
};

struct PcwEquilibrium {
    double load = 0.0;
    double whitespace_quantity = 0.0;
    EquilibriumOutcome outcome;
};

struct SymmetricNEquilibrium {
    double per_provider_quantity = 0.0;
    double aggregate_quantity = 0.0;
    EquilibriumOutcome outcome;
};

/// Subgame-perfect duopoly equilibrium (whitespace must be 0).
EquilibriumOutcome solve_duopoly(const DuopolyScenario& scenario);

/// Revenue-maximizing quantity against a rival serving q_other, optionally
/// with open-access capacity soaking up residual demand.
double duopoly_best_response(double q_other, double p_max, double capacity,
                             double whitespace = 0.0);

/// Duopoly equilibrium alongside an open-access band (whitespace must be > 0).
EquilibriumOutcome solve_duopoly_whitespace(const DuopolyScenario& scenario);

PcEquilibrium solve_perfect_competition(const PerfectCompetitionScenario& scenario);

/// Welfare of an explicit 10-bin traffic profile under the scenario's curves;
/// bins share the capacity equally.
double pc_welfare_of_profile(const PerfectCompetitionScenario& scenario,
                             std::span<const double> bin_quantities);

/// Perturbs the equilibrium profile by random feasible directions (both
/// zero-sum and not) and reports the best welfare gain found; at an efficient
/// equilibrium this never exceeds roundoff. Deterministic for fixed inputs.
double pc_efficiency_check(const PerfectCompetitionScenario& scenario, int perturbation_count);

PcwEquilibrium solve_pc_whitespace(const PerfectCompetitionScenario& scenario);

SymmetricNEquilibrium solve_symmetric_n(const SymmetricNScenario& scenario);

} // namespace smkt
