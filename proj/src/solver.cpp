#include "smkt/solver.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "smkt/errors.hpp"

namespace smkt {

namespace {

void check_settings(const SolverSettings& s) {
    if (!(s.tolerance > 0.0))
        throw DomainError("solver tolerance must be positive");
    if (s.max_iterations < 1)
        throw DomainError("solver max_iterations must be at least 1");
}

} // namespace

double find_root(const ScalarFn& f, Bracket bracket, SolverSettings settings) {
    check_settings(settings);
    double lo = bracket.lo;
    double hi = bracket.hi;
    if (!(lo <= hi)) {
        std::ostringstream msg;
        msg << "invalid bracket [" << lo << ", " << hi << "]";
        throw BracketError(msg.str());
    }
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) {
        std::ostringstream msg;
        msg << "no sign change over [" << lo << ", " << hi << "]: f(lo)=" << flo
            << ", f(hi)=" << fhi;
        throw BracketError(msg.str());
    }
    for (int it = 0; it < settings.max_iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= settings.tolerance || mid == lo || mid == hi)
            return mid;
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if (flo * fmid < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    std::ostringstream msg;
    msg << "bisection did not reach tolerance " << settings.tolerance << " within "
        << settings.max_iterations << " iterations; last bracket [" << lo << ", " << hi << "]";
    throw ConvergenceError(msg.str());
}

MaxResult maximize_concave(const ScalarFn& f, double lo, double hi, SolverSettings settings) {
    check_settings(settings);
    if (!(lo < hi))
        throw DomainError("maximize_concave requires lo < hi");

    constexpr double inv_phi = 0.6180339887498949; // 1/golden ratio
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < settings.max_iterations && (b - a) > settings.tolerance; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    // Pick the best of the bracket ends and interior probes so a boundary
    // maximum is returned exactly.
    MaxResult best{a, f(a)};
    const double fb = f(b);
    if (fb > best.value) best = {b, fb};
    if (f1 > best.value) best = {x1, f1};
    if (f2 > best.value) best = {x2, f2};
    return best;
}

double central_difference(const ScalarFn& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

double fd_step(double x) {
    return 1e-6 * std::max(1.0, std::fabs(x));
}

namespace {

// Nodes and weights of n-point Gauss-Legendre on [-1, 1], by Newton
// iteration on the Legendre recurrence.
struct GaussTable {
    std::vector<double> node;
    std::vector<double> weight;
};

GaussTable gauss_legendre(int n) {
    GaussTable t;
    t.node.resize(n);
    t.weight.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double deriv = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * z * p1 - j * p2) / (j + 1);
            }
            deriv = n * (z * p0 - p1) / (z * z - 1.0);
            const double step = p0 / deriv;
            z -= step;
            if (std::fabs(step) < 1e-15) break;
        }
        t.node[i] = -z;
        t.node[n - 1 - i] = z;
        t.weight[i] = t.weight[n - 1 - i] = 2.0 / ((1.0 - z * z) * deriv * deriv);
    }
    return t;
}

} // namespace

double integrate(const ScalarFn& f, double a, double b) {
    if (a == b) return 0.0;
    static const GaussTable table = gauss_legendre(32);
    constexpr int panels = 4;
    const double width = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * width;
        const double half = 0.5 * width;
        double acc = 0.0;
        for (std::size_t i = 0; i < table.node.size(); ++i)
            acc += table.weight[i] * f(mid + half * table.node[i]);
        total += acc * half;
    }
    return total;
}

} // namespace smkt
