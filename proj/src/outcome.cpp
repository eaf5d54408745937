#include "smkt/outcome.hpp"

#include <cmath>
#include <sstream>

#include "smkt/errors.hpp"

namespace smkt {

double EquilibriumOutcome::total_revenue() const {
    double r = 0.0;
    for (const auto& c : channels) r += c.revenue;
    return r;
}

double EquilibriumOutcome::total_quantity() const {
    double q = 0.0;
    for (const auto& c : channels) q += c.quantity;
    return q;
}

double max_wardrop_residual(const EquilibriumOutcome& outcome) {
    double worst = 0.0;
    for (const auto& c : outcome.channels) {
        if (c.quantity <= 0.0) continue;
        worst = std::max(worst, std::fabs(c.price + c.latency - outcome.delivered_price));
    }
    return worst;
}

double welfare_identity_residual(const EquilibriumOutcome& outcome) {
    return std::fabs(outcome.total_welfare -
                     (outcome.total_revenue() + outcome.consumer_surplus));
}

void require_valid(const EquilibriumOutcome& outcome, double q_max, double tol) {
    for (const auto& c : outcome.channels) {
        if (c.quantity < -tol) {
            std::ostringstream msg;
            msg << "channel " << c.name << " carries negative quantity " << c.quantity;
            throw DomainError(msg.str());
        }
    }
    if (outcome.total_quantity() > q_max + tol) {
        std::ostringstream msg;
        msg << "total served quantity " << outcome.total_quantity() << " exceeds q_max "
            << q_max;
        throw DomainError(msg.str());
    }
    const double wardrop = max_wardrop_residual(outcome);
    if (wardrop > tol) {
        std::ostringstream msg;
        msg << "delivered-price residual " << wardrop << " above tolerance " << tol;
        throw DomainError(msg.str());
    }
    const double welfare = welfare_identity_residual(outcome);
    if (welfare > tol) {
        std::ostringstream msg;
        msg << "welfare does not split into revenue + surplus: residual " << welfare;
        throw DomainError(msg.str());
    }
}

} // namespace smkt
