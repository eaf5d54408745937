#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "smkt/config.hpp"

namespace smkt {

/// Rectangular result of a sweep or figure run: named columns, one row per
/// grid point, ordered by sweep value.
struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Evaluates the configured market across the sweep grid. Deterministic;
/// every row is validated against the equilibrium invariants before it is
/// returned.
SweepTable run_sweep(const ScenarioConfig& config);

/// Comparison bundles behind the welfare/revenue/surplus/price plots, all on
/// a 1-unit initial endowment with up to `hi` extra units:
///   1: welfare of all six market structures,
///   2: welfare, incumbent grows vs a fresh competitor holding the new band,
///   3: total revenue for the same pair,
///   4: consumer surplus for the same pair,
///   5: market-clearing unit price, monopoly buyer vs planner-priced duopoly.
SweepTable figure_suite(int figure_id, double p_max, double lo, double hi, long steps);

std::string to_csv(const SweepTable& table);
nlohmann::json table_to_json(const SweepTable& table);

/// Writes the table to `path` in the given format ("csv" or "json").
/// Re-running the same configuration reproduces the file byte for byte.
void emit(const SweepTable& table, const std::string& format, const std::string& path);

/// Solves the configured scenario once and reports it as JSON.
nlohmann::json solve_to_json(const ScenarioConfig& config);

/// Runs the configured investment scenario and reports it as JSON.
nlohmann::json invest_to_json(const ScenarioConfig& config);

} // namespace smkt
