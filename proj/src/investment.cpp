#include "smkt/investment.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "smkt/competition.hpp"
#include "smkt/errors.hpp"
#include "smkt/monopoly.hpp"

namespace smkt {

namespace {

// Equilibrium revenue of the provider holding c_own, as one rational
// expression so it extends to complex arguments; the whitespace-free case is
// the wp = 0 specialization.
template <typename T>
T own_revenue(T c_own, double c_other, double whitespace, double p) {
    const double wp = whitespace * p;
    const T i1 = 1.0 / c_own;
    const double i2 = 1.0 / c_other;
    const T denom = 3.0 * p * p + 4.0 * p * (i1 + i2) + 4.0 * wp * p * (2.0 + 2.0 * p + i1 + i2) +
                    4.0 * (i1 + wp * (1.0 + p + i1)) * (i2 + wp * (1.0 + p + i2));
    const T q1 = (2.0 * p * i2 + p * p + 2.0 * wp * p * (1.0 + p + i2)) / denom;
    const T q2 = (2.0 * p * i1 + p * p + 2.0 * wp * p * (1.0 + p + i1)) / denom;
    const T q_w = (1.0 - q1 - q2) * (wp / (1.0 + wp));
    const T p1 = p * (1.0 - q_w - q2) - q1 * (p + i1);
    return p1 * q1;
}

// The revenue is rational in c_own, so a complex step gives its derivative
// to machine precision (no subtractive cancellation).
double own_revenue_slope(double c_own, double c_other, double whitespace, double p) {
    constexpr double h = 1e-20;
    const std::complex<double> r =
        own_revenue(std::complex<double>(c_own, h), c_other, whitespace, p);
    return r.imag() / h;
}

void check_offer(const SpectrumOffer& offer) {
    if (offer.capacity < 0.0) throw DomainError("offer capacity must be nonnegative");
    if (offer.unit_price < 0.0) throw DomainError("offer unit price must be nonnegative");
}

bool clears(double bought, double offered) {
    return std::fabs(bought - offered) <= 1e-12 * std::max(1.0, offered);
}

EquilibriumOutcome post_purchase_monopoly(double capacity, double whitespace, double p_max) {
    if (whitespace > 0.0) {
        const LinearCurves curves = make_linear_curves(p_max);
        return solve_monopoly_whitespace(
            {curves.demand, curves.latency, curves.latency, capacity, whitespace});
    }
    return monopoly_closed_form_linear(p_max, capacity);
}

// Best purchase of one buyer given the rival's post-purchase capacity. Net
// revenue is strictly concave in the purchase, so the sign of its slope at
// the interval ends settles boundary cases and bisection does the rest.
double best_purchase(double endowment, double rival_capacity, const SpectrumOffer& offer,
                     double p_max, double whitespace, const SolverSettings& settings) {
    if (offer.capacity == 0.0) return 0.0;
    const auto net_slope = [&](double c) {
        return own_revenue_slope(endowment + c, rival_capacity, whitespace, p_max) -
               offer.unit_price;
    };
    if (net_slope(0.0) <= 0.0) return 0.0;
    if (net_slope(offer.capacity) >= 0.0) return offer.capacity;
    return find_root(net_slope, {0.0, offer.capacity}, settings);
}

} // namespace

InvestmentOutcome monopoly_purchase(double endowment, const SpectrumOffer& offer,
                                    double p_max, double whitespace) {
    if (!(endowment > 0.0)) throw DomainError("monopoly purchase requires endowment > 0");
    if (!(p_max > 0.0)) throw DomainError("monopoly purchase requires p_max > 0");
    if (whitespace < 0.0) throw DomainError("whitespace capacity must be nonnegative");
    check_offer(offer);

    InvestmentOutcome out;
    double bought = 0.0;
    if (offer.unit_price == 0.0) {
        bought = offer.capacity;
        out.note = "unit price 0: marginal value exceeds it at every purchase level, "
                   "buying the full offer";
    } else {
        const double unconstrained =
            0.5 / std::sqrt(offer.unit_price) - 1.0 / p_max - endowment - whitespace;
        bought = std::min(std::max(unconstrained, 0.0), offer.capacity);
    }

    out.purchased = {bought};
    out.equilibrium = post_purchase_monopoly(endowment + bought, whitespace, p_max);
    out.net_revenues = {out.equilibrium.total_revenue() - offer.unit_price * bought};
    out.cleared = {clears(bought, offer.capacity)};
    return out;
}

double monopoly_clearing_price(double endowment, double offered, double whitespace,
                               double p_max) {
    if (!(endowment > 0.0)) throw DomainError("clearing price requires endowment > 0");
    if (offered < 0.0) throw DomainError("offered capacity must be nonnegative");
    if (whitespace < 0.0) throw DomainError("whitespace capacity must be nonnegative");
    if (!(p_max > 0.0)) throw DomainError("clearing price requires p_max > 0");
    const double full = (endowment + offered + whitespace) * p_max + 1.0;
    return p_max * p_max / (4.0 * full * full);
}

double duopoly_revenue_in_capacity(double own, double other, double p_max) {
    const EquilibriumOutcome eq = solve_duopoly({p_max, own, other, 0.0});
    return eq.channels.front().revenue;
}

InvestmentOutcome solve_investment_game(double endowment_1, double endowment_2,
                                        const std::array<SpectrumOffer, 2>& offers,
                                        double p_max, double whitespace,
                                        SolverSettings settings) {
    if (!(endowment_1 > 0.0 && endowment_2 > 0.0))
        throw DomainError("investment game requires positive endowments");
    if (!(p_max > 0.0)) throw DomainError("investment game requires p_max > 0");
    if (whitespace < 0.0) throw DomainError("whitespace capacity must be nonnegative");
    check_offer(offers[0]);
    check_offer(offers[1]);

    const SolverSettings inner{std::min(settings.tolerance, 1e-13), settings.max_iterations};
    double c1 = 0.0, c2 = 0.0;
    bool converged = false;
    for (int it = 0; it < settings.max_iterations; ++it) {
        const double next1 =
            best_purchase(endowment_1, endowment_2 + c2, offers[0], p_max, whitespace, inner);
        const double next2 =
            best_purchase(endowment_2, endowment_1 + next1, offers[1], p_max, whitespace, inner);
        const double shift = std::max(std::fabs(next1 - c1), std::fabs(next2 - c2));
        c1 = next1;
        c2 = next2;
        if (shift <= 1e-12) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        std::ostringstream msg;
        msg << "purchase best responses did not settle within " << settings.max_iterations
            << " rounds; last iterate (" << c1 << ", " << c2 << ")";
        throw ConvergenceError(msg.str());
    }

    DuopolyScenario post{p_max, endowment_1 + c1, endowment_2 + c2, whitespace};
    InvestmentOutcome out;
    out.equilibrium = whitespace > 0.0 ? solve_duopoly_whitespace(post) : solve_duopoly(post);
    out.purchased = {c1, c2};
    out.net_revenues = {
        out.equilibrium.channels[0].revenue - offers[0].unit_price * c1,
        out.equilibrium.channels[1].revenue - offers[1].unit_price * c2,
    };
    out.cleared = {clears(c1, offers[0].capacity), clears(c2, offers[1].capacity)};
    return out;
}

std::pair<double, double> planner_prices(double endowment_1, double endowment_2,
                                         double target_1, double target_2, double p_max) {
    if (!(endowment_1 > 0.0 && endowment_2 > 0.0))
        throw DomainError("planner prices require positive endowments");
    if (target_1 < 0.0 || target_2 < 0.0)
        throw DomainError("planner target allocations must be nonnegative");
    if (!(p_max > 0.0)) throw DomainError("planner prices require p_max > 0");

    // Marginal equilibrium revenue in own capacity, from the rational form
    //   R ~ (u^2/a) * C (aC + bd) / (aC + b)^2
    // with a, b, u functions of the rival's post-purchase capacity and
    // d = (b - p_max)/b.
    const auto slope = [p_max](double own, double rival) {
        const double p = p_max;
        const double a = 3.0 * p * p + 4.0 * p / rival;
        const double b = 4.0 * p + 4.0 / rival;
        const double u = p * p + 2.0 * p / rival;
        const double d = (b - p) / b;
        const double edge = a * own + b;
        return p * (u * u / a) * b * ((2.0 - d) * a * own + b * d) / (edge * edge * edge);
    };
    return {slope(endowment_1 + target_1, endowment_2 + target_2),
            slope(endowment_2 + target_2, endowment_1 + target_1)};
}

} // namespace smkt
