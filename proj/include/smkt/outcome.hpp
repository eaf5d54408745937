#pragma once

#include <string>
#include <vector>

namespace smkt {

/// One spectrum source as the users see it: access price plus congestion
/// delay. Open-access channels carry price 0 and earn no revenue.
struct Channel {
    std::string name;
    double quantity = 0.0;
    double price = 0.0;
    double latency = 0.0;
    double revenue = 0.0;
};

/// Market equilibrium summary. Every utilized channel delivers the same
/// total price (price + latency = delivered_price), and welfare splits as
/// total_welfare = sum of revenues + consumer_surplus.
struct EquilibriumOutcome {
    std::vector<Channel> channels;
    double delivered_price = 0.0;
    double consumer_surplus = 0.0;
    double total_welfare = 0.0;

    double total_revenue() const;
    double total_quantity() const;
};

/// Largest |price + latency - delivered_price| over channels that carry
/// positive quantity.
double max_wardrop_residual(const EquilibriumOutcome& outcome);

/// |total_welfare - (total revenue + consumer surplus)|.
double welfare_identity_residual(const EquilibriumOutcome& outcome);

/// Throws DomainError if the outcome breaks any equilibrium invariant:
/// negative quantities, total served above q_max, Wardrop or welfare
/// residual above tol.
void require_valid(const EquilibriumOutcome& outcome, double q_max, double tol = 1e-9);

} // namespace smkt
