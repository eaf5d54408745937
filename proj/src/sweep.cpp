#include "smkt/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "smkt/competition.hpp"
#include "smkt/errors.hpp"
#include "smkt/investment.hpp"
#include "smkt/monopoly.hpp"
#include "smkt/outcome.hpp"

namespace smkt {

namespace {

struct MarketEvaluation {
    EquilibriumOutcome outcome;
    std::vector<std::pair<std::string, double>> extras;
};

// Sweeps over open-access capacity pass through W = 0; pad the outcome with
// an idle whitespace channel there so every row has the same columns.
void pad_whitespace_channel(EquilibriumOutcome& outcome) {
    for (const auto& c : outcome.channels)
        if (c.name == "whitespace") return;
    outcome.channels.push_back({"whitespace", 0.0, 0.0, outcome.delivered_price, 0.0});
}

MarketEvaluation evaluate_market(const ScenarioConfig& c) {
    MarketEvaluation ev;
    if (c.market == "monopoly") {
        const MonopolyScenario s{build_demand(c), build_latency(c.latency, c.latency_exponent),
                                 c.capacity};
        ev.outcome = solve_monopoly(s);
        ev.extras.emplace_back("welfare_capacity_slope",
                               monopoly_sensitivity(s).welfare_slope);
    } else if (c.market == "monopoly-whitespace") {
        const MonopolyWhitespaceScenario s{
            build_demand(c), build_latency(c.latency, c.latency_exponent),
            build_whitespace_latency(c), c.capacity, c.whitespace};
        ev.outcome = solve_monopoly_whitespace(s);
        pad_whitespace_channel(ev.outcome);
    } else if (c.market == "duopoly") {
        ev.outcome = solve_duopoly({c.p_max, c.capacity_1, c.capacity_2, 0.0});
    } else if (c.market == "duopoly-whitespace") {
        const DuopolyScenario s{c.p_max, c.capacity_1, c.capacity_2, c.whitespace};
        ev.outcome = c.whitespace > 0.0 ? solve_duopoly_whitespace(s)
                                        : solve_duopoly({c.p_max, c.capacity_1, c.capacity_2});
        pad_whitespace_channel(ev.outcome);
    } else if (c.market == "perfect-competition") {
        const PerfectCompetitionScenario s{build_demand(c),
                                           build_latency(c.latency, c.latency_exponent),
                                           c.capacity, 0.0, std::nullopt};
        const PcEquilibrium eq = solve_perfect_competition(s);
        ev.outcome = eq.outcome;
        ev.extras.emplace_back("load", eq.load);
        ev.extras.emplace_back("welfare_capacity_slope", eq.welfare_capacity_slope);
    } else if (c.market == "pc-whitespace") {
        PerfectCompetitionScenario s{build_demand(c),
                                     build_latency(c.latency, c.latency_exponent), c.capacity,
                                     c.whitespace, std::nullopt};
        if (!c.whitespace_latency.empty())
            s.whitespace_latency = build_whitespace_latency(c);
        if (c.whitespace > 0.0) {
            const PcwEquilibrium eq = solve_pc_whitespace(s);
            ev.outcome = eq.outcome;
            ev.extras.emplace_back("load", eq.load);
        } else {
            s.whitespace = 0.0;
            const PcEquilibrium eq = solve_perfect_competition(s);
            ev.outcome = eq.outcome;
            ev.extras.emplace_back("load", eq.load);
        }
        pad_whitespace_channel(ev.outcome);
    } else if (c.market == "symmetric-n") {
        const SymmetricNScenario s{build_demand(c),
                                   build_latency(c.latency, c.latency_exponent), c.capacity,
                                   c.providers};
        const SymmetricNEquilibrium eq = solve_symmetric_n(s);
        ev.outcome = eq.outcome;
        ev.extras.emplace_back("per_provider_quantity", eq.per_provider_quantity);
    } else {
        throw DomainError("market '" + c.market + "' cannot be solved as an equilibrium "
                          "scenario");
    }
    require_valid(ev.outcome, c.q_max);
    return ev;
}

std::vector<std::string> row_columns(const std::string& sweep_name,
                                     const MarketEvaluation& ev) {
    std::vector<std::string> cols;
    cols.push_back(sweep_name);
    for (const auto& ch : ev.outcome.channels) {
        cols.push_back("q_" + ch.name);
        cols.push_back("p_" + ch.name);
    }
    cols.push_back("lambda");
    cols.push_back("R_total");
    cols.push_back("S");
    cols.push_back("T");
    for (const auto& [name, _] : ev.extras) cols.push_back(name);
    return cols;
}

std::vector<double> row_values(double sweep_value, const MarketEvaluation& ev) {
    std::vector<double> row;
    row.push_back(sweep_value);
    for (const auto& ch : ev.outcome.channels) {
        row.push_back(ch.quantity);
        row.push_back(ch.price);
    }
    row.push_back(ev.outcome.delivered_price);
    row.push_back(ev.outcome.total_revenue());
    row.push_back(ev.outcome.consumer_surplus);
    row.push_back(ev.outcome.total_welfare);
    for (const auto& [_, value] : ev.extras) row.push_back(value);
    return row;
}

void set_swept_parameter(ScenarioConfig& c, const std::string& name, double value) {
    if (name == "capacity") c.capacity = value;
    else if (name == "capacity_1") c.capacity_1 = value;
    else if (name == "capacity_2") c.capacity_2 = value;
    else if (name == "whitespace") c.whitespace = value;
    else throw DomainError("config field 'sweep': cannot sweep '" + name + "'");
}

const std::set<std::string>& sweepable_for(const std::string& market) {
    static const std::map<std::string, std::set<std::string>> table = {
        {"monopoly", {"capacity"}},
        {"monopoly-whitespace", {"capacity", "whitespace"}},
        {"duopoly", {"capacity_1", "capacity_2"}},
        {"duopoly-whitespace", {"capacity_1", "capacity_2", "whitespace"}},
        {"perfect-competition", {"capacity"}},
        {"pc-whitespace", {"capacity", "whitespace"}},
        {"symmetric-n", {"capacity"}},
    };
    const auto it = table.find(market);
    if (it == table.end())
        throw DomainError("config field 'market': '" + market + "' cannot be swept");
    return it->second;
}

} // namespace

SweepTable run_sweep(const ScenarioConfig& config) {
    if (config.sweep.empty())
        throw DomainError("config field 'sweep': required for a sweep run");
    if (!sweepable_for(config.market).count(config.sweep))
        throw DomainError("config field 'sweep': parameter '" + config.sweep +
                          "' does not apply to market '" + config.market + "'");

    SweepTable table;
    const long steps = config.sweep_steps;
    for (long i = 0; i < steps; ++i) {
        const double value =
            config.sweep_lo + (config.sweep_hi - config.sweep_lo) *
                                  (static_cast<double>(i) / static_cast<double>(steps - 1));
        ScenarioConfig point = config;
        set_swept_parameter(point, config.sweep, value);
        const MarketEvaluation ev = evaluate_market(point);
        if (table.columns.empty()) table.columns = row_columns(config.sweep, ev);
        const std::vector<double> row = row_values(value, ev);
        if (row.size() != table.columns.size())
            throw DegeneracyError("sweep rows changed shape mid-grid");
        table.rows.push_back(row);
    }
    return table;
}

namespace {

double welfare_monopoly(double p_max, double capacity) {
    return monopoly_closed_form_linear(p_max, capacity).total_welfare;
}

EquilibriumOutcome mw_outcome(double p_max, double capacity, double whitespace) {
    const LinearCurves curves = make_linear_curves(p_max);
    return solve_monopoly_whitespace(
        {curves.demand, curves.latency, curves.latency, capacity, whitespace});
}

EquilibriumOutcome duopoly_outcome(double p_max, double c1, double c2, double w) {
    const DuopolyScenario s{p_max, c1, c2, w};
    return w > 0.0 ? solve_duopoly_whitespace(s) : solve_duopoly({p_max, c1, c2});
}

EquilibriumOutcome pc_outcome(double p_max, double capacity, double whitespace) {
    const LinearCurves curves = make_linear_curves(p_max);
    PerfectCompetitionScenario s{curves.demand, curves.latency, capacity, whitespace,
                                 std::nullopt};
    return whitespace > 0.0 ? solve_pc_whitespace(s).outcome
                            : solve_perfect_competition(s).outcome;
}

} // namespace

SweepTable figure_suite(int figure_id, double p_max, double lo, double hi, long steps) {
    if (figure_id < 1 || figure_id > 5)
        throw DomainError("unknown figure id " + std::to_string(figure_id));
    if (!(p_max > 0.0)) throw DomainError("figure suite requires p_max > 0");
    if (steps < 2) throw DomainError("figure suite needs at least 2 grid points");
    if (!(0.0 <= lo && lo <= hi)) throw DomainError("figure suite range must satisfy 0 <= lo <= hi");

    SweepTable table;
    switch (figure_id) {
    case 1:
        table.columns = {"w",         "monopoly_T",          "monopoly_whitespace_T",
                         "duopoly_T", "duopoly_whitespace_T", "pc_T",
                         "pc_whitespace_T"};
        break;
    case 2: table.columns = {"w", "incumbent_T", "entrant_T"}; break;
    case 3: table.columns = {"w", "incumbent_R", "entrant_R"}; break;
    case 4: table.columns = {"w", "incumbent_S", "entrant_S"}; break;
    case 5:
        table.columns = {"w", "monopoly_clearing_price", "planner_price_1",
                         "planner_price_2"};
        break;
    }

    for (long i = 0; i < steps; ++i) {
        const double w = lo + (hi - lo) * (static_cast<double>(i) /
                                           static_cast<double>(steps - 1));
        std::vector<double> row{w};
        switch (figure_id) {
        case 1: {
            row.push_back(welfare_monopoly(p_max, 1.0 + w));
            row.push_back(mw_outcome(p_max, 1.0, w).total_welfare);
            row.push_back(duopoly_outcome(p_max, 0.5 + 0.5 * w, 0.5 + 0.5 * w, 0.0)
                              .total_welfare);
            row.push_back(duopoly_outcome(p_max, 0.5, 0.5, w).total_welfare);
            row.push_back(pc_outcome(p_max, 1.0 + w, 0.0).total_welfare);
            row.push_back(pc_outcome(p_max, 1.0, w).total_welfare);
            break;
        }
        case 2:
        case 3:
        case 4: {
            // A literally zero-capacity entrant is outside the model; the
            // left end of the grid uses a vanishing stand-in instead.
            const double entrant_capacity = w > 0.0 ? w : 1e-8;
            const EquilibriumOutcome incumbent =
                monopoly_closed_form_linear(p_max, 1.0 + w);
            const EquilibriumOutcome entrant =
                duopoly_outcome(p_max, 1.0, entrant_capacity, 0.0);
            if (figure_id == 2) {
                row.push_back(incumbent.total_welfare);
                row.push_back(entrant.total_welfare);
            } else if (figure_id == 3) {
                row.push_back(incumbent.total_revenue());
                row.push_back(entrant.total_revenue());
            } else {
                row.push_back(incumbent.consumer_surplus);
                row.push_back(entrant.consumer_surplus);
            }
            break;
        }
        case 5: {
            row.push_back(monopoly_clearing_price(1.0, w, 0.0, p_max));
            const auto [price_1, price_2] =
                planner_prices(0.5, 0.5, 0.5 * w, 0.5 * w, p_max);
            row.push_back(price_1);
            row.push_back(price_2);
            break;
        }
        }
        table.rows.push_back(row);
    }
    return table;
}

std::string to_csv(const SweepTable& table) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ',';
        out << table.columns[i];
    }
    out << '\n';
    char buffer[64];
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            std::snprintf(buffer, sizeof buffer, "%.12g", row[i]);
            out << buffer;
        }
        out << '\n';
    }
    return out.str();
}

nlohmann::json table_to_json(const SweepTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj;
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = row[i];
        rows.push_back(std::move(obj));
    }
    return rows;
}

void emit(const SweepTable& table, const std::string& format, const std::string& path) {
    std::string payload;
    if (format == "csv") {
        payload = to_csv(table);
    } else if (format == "json") {
        payload = table_to_json(table).dump(2);
        payload.push_back('\n');
    } else {
        throw DomainError("unknown output format '" + format + "'");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << payload;
    if (!out) throw Error("failed writing to '" + path + "'");
}

namespace {

nlohmann::json outcome_to_json(const EquilibriumOutcome& outcome) {
    nlohmann::json channels = nlohmann::json::array();
    for (const auto& c : outcome.channels) {
        channels.push_back({{"name", c.name},
                            {"quantity", c.quantity},
                            {"price", c.price},
                            {"latency", c.latency},
                            {"revenue", c.revenue}});
    }
    return {{"channels", std::move(channels)},
            {"delivered_price", outcome.delivered_price},
            {"total_revenue", outcome.total_revenue()},
            {"consumer_surplus", outcome.consumer_surplus},
            {"total_welfare", outcome.total_welfare}};
}

} // namespace

nlohmann::json solve_to_json(const ScenarioConfig& config) {
    const MarketEvaluation ev = evaluate_market(config);
    nlohmann::json out{{"market", config.market}, {"outcome", outcome_to_json(ev.outcome)}};
    for (const auto& [name, value] : ev.extras) out[name] = value;
    return out;
}

nlohmann::json invest_to_json(const ScenarioConfig& config) {
    nlohmann::json out{{"market", config.market}};
    if (config.market == "invest-monopoly") {
        const SpectrumOffer offer{config.offer_capacity, config.offer_price};
        const InvestmentOutcome result =
            monopoly_purchase(config.capacity, offer, config.p_max, config.whitespace);
        out["purchased"] = result.purchased[0];
        out["net_revenue"] = result.net_revenues[0];
        out["cleared"] = static_cast<bool>(result.cleared[0]);
        out["clearing_price"] = monopoly_clearing_price(
            config.capacity, config.offer_capacity, config.whitespace, config.p_max);
        if (!result.note.empty()) out["note"] = result.note;
        out["equilibrium"] = outcome_to_json(result.equilibrium);
    } else if (config.market == "invest-duopoly") {
        const std::array<SpectrumOffer, 2> offers{
            SpectrumOffer{config.offer_capacity_1, config.offer_price_1},
            SpectrumOffer{config.offer_capacity_2, config.offer_price_2}};
        const InvestmentOutcome result = solve_investment_game(
            config.capacity_1, config.capacity_2, offers, config.p_max, config.whitespace);
        out["purchased"] = result.purchased;
        out["net_revenues"] = result.net_revenues;
        out["cleared"] = {static_cast<bool>(result.cleared[0]),
                          static_cast<bool>(result.cleared[1])};
        const auto [price_1, price_2] =
            planner_prices(config.capacity_1, config.capacity_2, config.offer_capacity_1,
                           config.offer_capacity_2, config.p_max);
        out["planner_prices"] = {price_1, price_2};
        if (!result.note.empty()) out["note"] = result.note;
        out["equilibrium"] = outcome_to_json(result.equilibrium);
    } else {
        throw DomainError("config field 'market': '" + config.market +
                          "' is not an investment scenario");
    }
    return out;
}

} // namespace smkt
