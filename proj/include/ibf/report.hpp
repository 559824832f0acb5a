#pragma once

#include "ibf/linear.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ibf {

/// Machine-readable run report. Serialization is canonical: fixed field
/// order, shortest-round-trip numbers, no locale dependence, so identical
/// inputs (including the seed) produce byte-identical output.
struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;  // key -> rendered JSON value
    double log_bf10 = 0.0;
    double mc_std_error = 0.0;
    double posterior_prob_m1 = 0.5;
    std::string scheme = "none";
    std::size_t draws = 0;  // L
    std::uint64_t seed = 0;
    std::size_t skipped_samples = 0;
    std::vector<std::string> warnings;

    void param_num(const std::string& key, double value);
    void param_int(const std::string& key, long long value);
    void param_str(const std::string& key, const std::string& value);
};

std::string json_escape(const std::string& s);

/// bf10 in the report clamps to 1e+-300; log_bf10 always carries the exact value.
std::string to_json(const Report& report);

std::string study_csv(const std::vector<StudyRow>& rows);

} // namespace ibf
