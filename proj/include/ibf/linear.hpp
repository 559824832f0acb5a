#pragma once

#include "ibf/linalg.hpp"
#include "ibf/rng.hpp"
#include "ibf/selection.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ibf {

/// A nested design comparison on a shared response.
struct LinearComparison {
    std::vector<double> y;
    Matrix x_simple;   // n x k_i
    Matrix x_complex;  // n x k_j, k_j > k_i
    std::optional<double> known_variance;  // fixed unit variance in the Findley case
};

enum class Weighting { uniform, information };

/// Per-subset pieces of the training-sample sum.
struct TrainingTerm {
    std::vector<std::size_t> indices;
    double det_simple = 0.0, det_complex = 0.0;
    double rss_simple = 0.0, rss_complex = 0.0;
};

struct LinearIbfResult {
    BayesFactorEstimate estimate;
    double log_front = 0.0;         // full-data factor of the scheme's expression
    double log_training_avg = 0.0;  // averaged training-sample factor, C included
    std::size_t samples_used = 0;
    std::size_t samples_skipped = 0;    // zero simple-model residual in a denominator
    std::size_t singular_skipped = 0;   // moment matrix under the determinant floor
    double det_threshold = 0.0;
};

/// Arithmetic IBF over all size-(k_j + 1) training samples, uniformly or
/// information weighted (the weighted form absorbs the Binet-Cauchy normalizer).
LinearIbfResult linear_ibf_exhaustive(const LinearComparison& cmp, Weighting weighting);

/// Same estimand from L random training samples (repeats allowed).
LinearIbfResult linear_ibf_sampled(const LinearComparison& cmp, Weighting weighting,
                                   std::size_t L, const RngStream& rng);

/// Closed-form arithmetic IBF for the known-variance single-covariate test,
/// with uniform or information (d_i^2-proportional) training-sample weights.
BayesFactorEstimate findley_ibf(std::span<const double> x, std::span<const double> d,
                                Weighting weighting);

/// Exact mixture moments of the weighted expected-posterior prior.
struct EpPriorStats {
    double total_mass = 0.0;
    double mean = 0.0;
    double variance = 0.0;
};
EpPriorStats findley_ep_prior_stats(std::span<const double> x, std::span<const double> d,
                                    Weighting weighting);

/// g-prior Bayes factor of the simpler model as labeled in the two-column
/// slope test: (g+1)^{-(k_j-k_i)/2} * (Q_complex)^{-n/2} / (Q_simple)^{-n/2}
/// with Q_m = y'y - g/(g+1) y'P_m y. Returned on the log scale.
double gprior_log_bf(const LinearComparison& cmp, double g);

/// The near-collinear two-column design: second column is m zeros, m deltas
/// and a single 1; n = 2m + 1 rows.
Matrix near_collinear_design(std::size_t m, double delta);

enum class StudyKind { findley, gprior, near_collinear };

struct StudyConfig {
    std::vector<std::size_t> grid;  // n (findley, gprior) or m (near_collinear)
    double theta = 0.0;             // data-generating parameter
    std::size_t n_seeds = 10;
    std::uint64_t base_seed = 1;
    Weighting weighting = Weighting::uniform;
    double delta = 1e-6;
    double g = -1.0;                // g-prior scale; g = n when negative
    std::size_t truncate_top = 0;   // keep only the most informative training samples
};

struct StudyRow {
    double n_or_m = 0.0;
    double param = 0.0;
    double median_log_bf = 0.0;
    double slope_to_here = 0.0;  // fitted slope of median log BF vs ln n, rows so far
    std::size_t seeds = 0;
};

struct StudyResult {
    std::vector<StudyRow> rows;
    std::vector<std::vector<double>> log_bf_by_seed;  // [seed][grid index]
};

StudyResult consistency_study(StudyKind kind, const StudyConfig& config);

/// Least-squares slope of values against ln(grid).
double fitted_slope(std::span<const std::size_t> grid, std::span<const double> values);

} // namespace ibf
