#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "smkt/curves.hpp"

namespace smkt {

using KeyValues = std::map<std::string, std::string>;

/// One scenario, as read from a flat key = value document (or assembled from
/// CLI flags). Markets: monopoly, monopoly-whitespace, duopoly,
/// duopoly-whitespace, perfect-competition, pc-whitespace, symmetric-n,
/// invest-monopoly, invest-duopoly.
struct ScenarioConfig {
    std::string market;

    std::string demand = "linear-demand";
    double p_max = 1.0;
    double q_max = 1.0;
    std::string latency = "linear-latency";
    double latency_exponent = 1.0;
    std::string whitespace_latency; // empty: same as latency
    double whitespace_latency_exponent = 1.0;

    double capacity = 0.0;
    double capacity_1 = 0.0;
    double capacity_2 = 0.0;
    double whitespace = 0.0;
    long providers = 0;

    double offer_capacity = 0.0;
    double offer_price = 0.0;
    double offer_capacity_1 = 0.0;
    double offer_price_1 = 0.0;
    double offer_capacity_2 = 0.0;
    double offer_price_2 = 0.0;

    std::string sweep; // name of the swept parameter
    double sweep_lo = 0.0;
    double sweep_hi = 0.0;
    long sweep_steps = 0;

    std::string output;
    std::string format = "csv";
};

/// Keys a scenario document may contain; the CLI mirrors these as flags.
const std::vector<std::string>& config_keys();

/// Parses `key = value` lines ('#' starts a comment). Unknown keys and
/// repeated keys are errors, reported with their line number.
KeyValues read_key_values(std::istream& in);
KeyValues read_key_values_file(const std::string& path);

/// Typed conversion plus full validation; every failure names the offending
/// field.
ScenarioConfig config_from_pairs(const KeyValues& pairs);

DemandCurve build_demand(const ScenarioConfig& config);
LatencyCurve build_latency(const std::string& kind, double exponent);
LatencyCurve build_whitespace_latency(const ScenarioConfig& config);

} // namespace smkt
