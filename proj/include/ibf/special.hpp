#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

namespace ibf {

/// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
inline double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: x must be > 0");
    return std::lgamma(x);
}

/// ln(sum exp(v_i)), shifted by the maximum for stability.
inline double log_sum_exp(std::span<const double> v) {
    if (v.empty()) throw std::domain_error("log_sum_exp: empty input");
    const double m = *std::max_element(v.begin(), v.end());
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

/// log(a/(1+a)) computed from log(a), stable for very large |log a|.
inline double log_odds_to_log_prob(double log_odds) {
    if (log_odds > 0.0) return -std::log1p(std::exp(-log_odds));
    return log_odds - std::log1p(std::exp(log_odds));
}

} // namespace ibf
