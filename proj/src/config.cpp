#include "smkt/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "smkt/errors.hpp"

namespace smkt {

namespace {

const std::set<std::string> kMarkets = {
    "monopoly",       "monopoly-whitespace", "duopoly",
    "duopoly-whitespace", "perfect-competition", "pc-whitespace",
    "symmetric-n",    "invest-monopoly",     "invest-duopoly",
};

const std::set<std::string> kLatencyKinds = {"linear-latency", "power-latency"};

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

[[noreturn]] void field_error(const std::string& key, const std::string& what) {
    throw DomainError("config field '" + key + "': " + what);
}

double parse_number(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        field_error(key, "not a number: '" + text + "'");
    }
    if (used != text.size()) field_error(key, "trailing characters in '" + text + "'");
    return value;
}

long parse_integer(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    long value = 0;
    try {
        value = std::stol(text, &used);
    } catch (const std::exception&) {
        field_error(key, "not an integer: '" + text + "'");
    }
    if (used != text.size()) field_error(key, "trailing characters in '" + text + "'");
    return value;
}

void require_positive(const std::string& key, double value) {
    if (!(value > 0.0)) field_error(key, "must be positive");
}

void require_nonnegative(const std::string& key, double value) {
    if (value < 0.0) field_error(key, "must be nonnegative");
}

void validate(const ScenarioConfig& c) {
    if (c.market.empty()) field_error("market", "is required");
    if (!kMarkets.count(c.market))
        field_error("market", "unknown market '" + c.market + "'");

    if (c.demand != "linear-demand")
        field_error("demand", "unknown demand kind '" + c.demand + "'");
    require_positive("p_max", c.p_max);
    require_positive("q_max", c.q_max);
    if (!kLatencyKinds.count(c.latency))
        field_error("latency", "unknown latency kind '" + c.latency + "'");
    if (c.latency == "power-latency" && !(c.latency_exponent >= 1.0))
        field_error("latency_exponent", "must be at least 1");
    if (!c.whitespace_latency.empty()) {
        if (!kLatencyKinds.count(c.whitespace_latency))
            field_error("whitespace_latency",
                        "unknown latency kind '" + c.whitespace_latency + "'");
        if (c.whitespace_latency == "power-latency" &&
            !(c.whitespace_latency_exponent >= 1.0))
            field_error("whitespace_latency_exponent", "must be at least 1");
    }

    const bool duopoly_like = c.market == "duopoly" || c.market == "duopoly-whitespace" ||
                              c.market == "invest-duopoly";
    if (duopoly_like || c.market == "invest-monopoly") {
        if (c.latency != "linear-latency")
            field_error("latency", "market '" + c.market + "' supports linear latency only");
        if (!c.whitespace_latency.empty() && c.whitespace_latency != "linear-latency")
            field_error("whitespace_latency",
                        "market '" + c.market + "' supports linear latency only");
        if (std::fabs(c.q_max - 1.0) > 1e-12)
            field_error("q_max", "market '" + c.market + "' requires the unit normalization");
    }

    if (c.market == "monopoly" || c.market == "monopoly-whitespace" ||
        c.market == "perfect-competition" || c.market == "pc-whitespace" ||
        c.market == "symmetric-n" || c.market == "invest-monopoly")
        require_positive("capacity", c.capacity);
    if (duopoly_like) {
        require_positive("capacity_1", c.capacity_1);
        require_positive("capacity_2", c.capacity_2);
    }
    if (c.market == "monopoly-whitespace" || c.market == "duopoly-whitespace" ||
        c.market == "pc-whitespace")
        require_nonnegative("whitespace", c.whitespace);
    if (c.market == "invest-monopoly" || c.market == "invest-duopoly")
        require_nonnegative("whitespace", c.whitespace);
    if (c.market == "symmetric-n" && c.providers < 1)
        field_error("providers", "must be at least 1");
    if (c.market == "invest-monopoly") {
        require_nonnegative("offer_capacity", c.offer_capacity);
        require_nonnegative("offer_price", c.offer_price);
    }
    if (c.market == "invest-duopoly") {
        require_nonnegative("offer_capacity_1", c.offer_capacity_1);
        require_nonnegative("offer_price_1", c.offer_price_1);
        require_nonnegative("offer_capacity_2", c.offer_capacity_2);
        require_nonnegative("offer_price_2", c.offer_price_2);
    }

    if (!c.sweep.empty()) {
        static const std::set<std::string> sweepable = {"capacity", "capacity_1",
                                                        "capacity_2", "whitespace"};
        if (!sweepable.count(c.sweep))
            field_error("sweep", "cannot sweep '" + c.sweep + "'");
        if (c.sweep_steps < 2) field_error("sweep_steps", "needs at least 2 grid points");
        if (!(c.sweep_lo <= c.sweep_hi)) field_error("sweep_lo", "range is empty");
        if (c.sweep == "whitespace") {
            require_nonnegative("sweep_lo", c.sweep_lo);
        } else if (!(c.sweep_lo > 0.0)) {
            field_error("sweep_lo", "capacities must stay positive over the sweep");
        }
    }

    if (c.format != "csv" && c.format != "json")
        field_error("format", "must be 'csv' or 'json'");
}

} // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "market",          "demand",
        "p_max",           "q_max",
        "latency",         "latency_exponent",
        "whitespace_latency", "whitespace_latency_exponent",
        "capacity",        "capacity_1",
        "capacity_2",      "whitespace",
        "providers",       "offer_capacity",
        "offer_price",     "offer_capacity_1",
        "offer_price_1",   "offer_capacity_2",
        "offer_price_2",   "sweep",
        "sweep_lo",        "sweep_hi",
        "sweep_steps",     "output",
        "format",
    };
    return keys;
}

KeyValues read_key_values(std::istream& in) {
    KeyValues pairs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string text = trim(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "config line " << line_no << ": expected 'key = value', got '" << text
                << "'";
            throw DomainError(msg.str());
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        const auto& known = config_keys();
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            std::ostringstream msg;
            msg << "config line " << line_no << ": unknown key '" << key << "'";
            throw DomainError(msg.str());
        }
        if (pairs.count(key)) {
            std::ostringstream msg;
            msg << "config line " << line_no << ": key '" << key << "' repeated";
            throw DomainError(msg.str());
        }
        pairs[key] = value;
    }
    return pairs;
}

KeyValues read_key_values_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read config file '" + path + "'");
    return read_key_values(in);
}

ScenarioConfig config_from_pairs(const KeyValues& pairs) {
    ScenarioConfig c;
    for (const auto& [key, value] : pairs) {
        if (key == "market") c.market = value;
        else if (key == "demand") c.demand = value;
        else if (key == "p_max") c.p_max = parse_number(key, value);
        else if (key == "q_max") c.q_max = parse_number(key, value);
        else if (key == "latency") c.latency = value;
        else if (key == "latency_exponent") c.latency_exponent = parse_number(key, value);
        else if (key == "whitespace_latency") c.whitespace_latency = value;
        else if (key == "whitespace_latency_exponent")
            c.whitespace_latency_exponent = parse_number(key, value);
        else if (key == "capacity") c.capacity = parse_number(key, value);
        else if (key == "capacity_1") c.capacity_1 = parse_number(key, value);
        else if (key == "capacity_2") c.capacity_2 = parse_number(key, value);
        else if (key == "whitespace") c.whitespace = parse_number(key, value);
        else if (key == "providers") c.providers = parse_integer(key, value);
        else if (key == "offer_capacity") c.offer_capacity = parse_number(key, value);
        else if (key == "offer_price") c.offer_price = parse_number(key, value);
        else if (key == "offer_capacity_1") c.offer_capacity_1 = parse_number(key, value);
        else if (key == "offer_price_1") c.offer_price_1 = parse_number(key, value);
        else if (key == "offer_capacity_2") c.offer_capacity_2 = parse_number(key, value);
        else if (key == "offer_price_2") c.offer_price_2 = parse_number(key, value);
        else if (key == "sweep") c.sweep = value;
        else if (key == "sweep_lo") c.sweep_lo = parse_number(key, value);
        else if (key == "sweep_hi") c.sweep_hi = parse_number(key, value);
        else if (key == "sweep_steps") c.sweep_steps = parse_integer(key, value);
        else if (key == "output") c.output = value;
        else if (key == "format") c.format = value;
        else field_error(key, "unknown key");
    }
    validate(c);
    return c;
}

DemandCurve build_demand(const ScenarioConfig& config) {
    return make_linear_demand(config.p_max, config.q_max);
}

LatencyCurve build_latency(const std::string& kind, double exponent) {
    if (kind == "linear-latency") return make_linear_latency();
    if (kind == "power-latency") return make_power_latency(exponent);
    throw DomainError("unknown latency kind '" + kind + "'");
}

LatencyCurve build_whitespace_latency(const ScenarioConfig& config) {
    if (config.whitespace_latency.empty())
        return build_latency(config.latency, config.latency_exponent);
    return build_latency(config.whitespace_latency, config.whitespace_latency_exponent);
}

} // namespace smkt
