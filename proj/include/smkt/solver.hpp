#pragma once

#include <functional>

namespace smkt {

/// Interval [lo, hi] expected to contain a sign change of the target map.
struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

struct SolverSettings {
    double tolerance = 1e-12; // absolute, on the argument
    int max_iterations = 200;
};

struct MaxResult {
    double argmax = 0.0;
    double value = 0.0;
};

using ScalarFn = std::function<double(double)>;

/// Bisection root of a continuous map over a sign-changing bracket.
/// Deterministic for fixed inputs; throws BracketError if f(lo) and f(hi)
/// have the same (nonzero) sign, ConvergenceError if the iteration budget
/// runs out before the bracket width reaches the tolerance.
double find_root(const ScalarFn& f, Bracket bracket, SolverSettings settings = {});

/// Golden-section maximizer for a concave map on [lo, hi]. Boundary and
/// interior maxima both come out; lo >= hi is a DomainError.
MaxResult maximize_concave(const ScalarFn& f, double lo, double hi, SolverSettings settings = {});

/// (f(x+h) - f(x-h)) / (2h).
double central_difference(const ScalarFn& f, double x, double h);

/// Default finite-difference step: 1e-6 * max(1, |x|).
double fd_step(double x);

/// Composite Gauss-Legendre quadrature of a smooth map over [a, b].
double integrate(const ScalarFn& f, double a, double b);

} // namespace smkt
