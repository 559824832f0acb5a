#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace ibf {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;
};

/// Thrown when the evaluation budget runs out; carries the partial result.
class quadrature_failure : public std::runtime_error {
public:
    quadrature_failure(const std::string& what, QuadratureResult partial)
        : std::runtime_error(what), partial(partial) {}
    QuadratureResult partial;
};

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

/// Adaptive Gauss-Kronrod 7-15 on [a, b]. Worst-interval-first refinement,
/// which digs geometrically toward integrable endpoint singularities.
QuadratureResult integrate_finite(const Fn1& f, double a, double b,
                                  double rel_tol = 1e-8, double abs_tol = 0.0,
                                  std::size_t max_intervals = 4000);

/// Integral of f over (lower, inf) via the map x = lower + u/(1-u).
QuadratureResult integrate_semi_infinite(const Fn1& f, double lower,
                                         double rel_tol = 1e-8,
                                         std::size_t max_intervals = 4000);

/// Integral of f2 over the positive quadrant (0,inf)^2, iterated with the
/// same per-axis map. The inner integral runs at a tighter tolerance.
QuadratureResult integrate_quadrant(const Fn2& f2, double rel_tol = 1e-6);

/// Solves cdf(theta) = p for a nondecreasing cdf, to |cdf - p| <= 1e-8.
/// The initial bracket [lo, hi] is expanded outward as needed.
double quantile_solve(const Fn1& cdf, double p, double lo = 0.0, double hi = 1.0);

} // namespace ibf
