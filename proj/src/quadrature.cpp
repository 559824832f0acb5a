#include "ibf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace ibf {

namespace {

// 15-point Kronrod nodes with Kronrod and embedded 7-point Gauss weights.
constexpr int kPoints = 8;
constexpr double kNode[kPoints] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759, 0.991455371120813};
constexpr double kWk[kPoints] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kWg[kPoints] = {
    0.417959183673469, 0.0, 0.381830050505119, 0.0,
    0.279705391489277, 0.0, 0.129484966168870, 0.0};

struct Panel {
    double a, b;
    double value;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk15(const Fn1& f, double a, double b, std::size_t& evals) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double k15 = kWk[0] * f0;
    double g7 = kWg[0] * f0;
    for (int i = 1; i < kPoints; ++i) {
        const double dx = half * kNode[i];
        const double fi = f(mid + dx) + f(mid - dx);
        k15 += kWk[i] * fi;
        g7 += kWg[i] * fi;
    }
    evals += 15;
    k15 *= half;
    g7 *= half;
    return {a, b, k15, std::abs(k15 - g7)};
}

QuadratureResult adapt(const Fn1& f, double a, double b, double rel_tol,
                       double abs_tol, std::size_t max_intervals) {
    std::size_t evals = 0;
    std::size_t intervals = 1;
    std::priority_queue<Panel> heap;
    Panel whole = gk15(f, a, b, evals);
    double total = whole.value;
    double total_err = whole.err;
    heap.push(whole);

    while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) && !heap.empty()) {
        if (intervals >= max_intervals) {
            throw quadrature_failure(
                "quadrature: interval budget exhausted",
                {total, total_err, evals});
        }
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        // set aside panels whose midpoint is no longer representable
        if (!(mid > worst.a && mid < worst.b)) continue;
        Panel left = gk15(f, worst.a, mid, evals);
        Panel right = gk15(f, mid, worst.b, evals);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++intervals;
    }
    if (!std::isfinite(total)) {
        throw quadrature_failure("quadrature: non-finite result",
                                 {total, total_err, evals});
    }
    return {total, total_err, evals};
}

} // namespace

QuadratureResult integrate_finite(const Fn1& f, double a, double b,
                                  double rel_tol, double abs_tol,
                                  std::size_t max_intervals) {
    if (!(b > a)) throw std::invalid_argument("integrate_finite: bad interval");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("integrate_finite: tol must be > 0");
    return adapt(f, a, b, rel_tol, abs_tol, max_intervals);
}

QuadratureResult integrate_semi_infinite(const Fn1& f, double lower,
                                         double rel_tol,
                                         std::size_t max_intervals) {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("integrate_semi_infinite: tol must be > 0");
    auto mapped = [&f, lower](double u) -> double {
        const double om = 1.0 - u;
        const double x = lower + u / om;
        if (!std::isfinite(x)) return 0.0;
        const double fx = f(x);
        if (fx == 0.0) return 0.0;
        return fx / (om * om);
    };
    return adapt(mapped, 0.0, 1.0, rel_tol, 0.0, max_intervals);
}

QuadratureResult integrate_quadrant(const Fn2& f2, double rel_tol) {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("integrate_quadrant: tol must be > 0");
    const double inner_tol = rel_tol * 0.05;
    std::size_t evals = 0;
    auto outer = [&](double t1) -> double {
        QuadratureResult inner = integrate_semi_infinite(
            [&f2, t1](double t2) { return f2(t1, t2); }, 0.0, inner_tol, 8000);
        evals += inner.evaluations;
        return inner.value;
    };
    QuadratureResult out = integrate_semi_infinite(outer, 0.0, rel_tol, 8000);
    out.evaluations = evals;
    out.abs_error_estimate += inner_tol * std::abs(out.value);
    return out;
}

double quantile_solve(const Fn1& cdf, double p, double lo, double hi) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("quantile_solve: p outside [0, 1]");
    if (!(hi > lo)) throw std::invalid_argument("quantile_solve: bad bracket");
    const double tol = 1e-8;

    // expand the bracket until it spans p
    double flo = cdf(lo), fhi = cdf(hi);
    for (int i = 0; i < 1100 && fhi < p; ++i) {
        lo = hi;
        flo = fhi;
        hi = (hi > 0.0) ? hi * 2.0 : 1.0;
        if (!std::isfinite(hi)) break;
        fhi = cdf(hi);
    }
    for (int i = 0; i < 1100 && flo > p && lo > 0.0; ++i) {
        hi = lo;
        fhi = flo;
        lo *= 0.5;
        flo = cdf(lo);
    }
    if (flo > p + tol || fhi < p - tol)
        throw std::domain_error("quantile_solve: p not spanned by cdf");

    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < 400; ++i) {
        mid = 0.5 * (lo + hi);
        const double fm = cdf(mid);
        if (std::abs(fm - p) <= tol) return mid;
        if (fm < p) { lo = mid; } else { hi = mid; }
        if (hi - lo <= std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid)))
            break;
    }
    return mid;
}

} // namespace ibf
