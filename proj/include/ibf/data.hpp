#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace ibf {

enum class Status { observed, censored };

struct CensoredObservation {
    double value = 0.0;   // time, stored exactly as given
    Status status = Status::observed;
};

/// Grouped event times with censoring flags. Immutable after construction.
struct SurvivalDataset {
    std::map<std::string, std::vector<CensoredObservation>> groups;
};

struct GroupStats {
    std::size_t n_uncensored = 0;
    std::size_t n_censored = 0;
    double total_time = 0.0;   // total time on test: sum of every value in the group
};

/// Parses `group,time,status` CSV rows (header optional, status obs/cens,
/// case-insensitive). Throws std::runtime_error with the line number on bad input.
SurvivalDataset parse_survival_csv(const std::string& text);

/// Inverse of parse_survival_csv; row order follows the stored group order.
std::string to_csv(const SurvivalDataset& dataset);

std::map<std::string, GroupStats> group_stats(const SurvivalDataset& dataset);

/// Remission times (weeks) for the Gehan (1965) leukemia trial, two groups
/// of 21 patients; the treated group has 12 right-censored times.
const SurvivalDataset& gehan_dataset();

struct BernoulliSummary {
    std::size_t n = 0;
    std::size_t ones = 0;
    std::size_t zeros() const { return n - ones; }
    /// A minimal training sample needs one 1 and one 0.
    bool has_mts() const { return ones >= 1 && ones + 1 <= n; }
};

BernoulliSummary bernoulli_summary(const std::vector<int>& bits);

struct PoissonObservation {
    std::size_t count = 0;   // events observed
    double exposure = 0.0;   // observation period, > 0
};

} // namespace ibf
