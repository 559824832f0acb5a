#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace ibf {

/// Monte Carlo average with its standard error (sample sd / sqrt(count)).
struct McSummary {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t count = 0;
};

inline McSummary mc_summary(std::span<const double> values) {
    if (values.empty()) throw std::domain_error("mc_summary: empty input");
    const std::size_t n = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(n);
    if (n == 1) return {mean, 0.0, 1};
    double ss = 0.0;
    for (double v : values) {
        const double d = v - mean;
        ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    return {mean, sd / std::sqrt(static_cast<double>(n)), n};
}

} // namespace ibf
