#pragma once

#include "ibf/data.hpp"
#include "ibf/linalg.hpp"
#include "ibf/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ibf {

enum class BernoulliTsKind { none, zeros_then_one, ones_then_zero, mts_pair };

/// One training sample. Which fields are meaningful depends on the family:
/// censored-exponential samples carry per-group index lists and accumulated
/// times, Bernoulli samples carry run counts, imaginary samples carry x*.
struct TrainingSample {
    std::vector<std::vector<std::size_t>> indices;  // per group, in draw order
    std::vector<double> accumulated_time;           // per group: censored prefix + terminal value
    BernoulliTsKind bern_kind = BernoulliTsKind::none;
    std::size_t bern_count = 0;                     // N0 or N1
    double imaginary_value = 0.0;
};

struct WeightedSampleSet {
    std::vector<TrainingSample> samples;
    std::vector<double> probabilities;
};

enum class SchemeVariant {
    exhaustive_mts,
    random_mts,
    smts,
    info_weighted_exhaustive,
    info_weighted_random,
    imaginary,
};

struct SchemeSpec {
    SchemeVariant variant = SchemeVariant::smts;
    std::size_t draws = 0;  // L; >= 1 for the random variants
};

const char* scheme_name(SchemeVariant v);

struct MtsEnumeration {
    std::vector<TrainingSample> samples;
    bool no_mts = false;  // set when the family admits no proper training sample
};

/// All minimal training samples of a (1- or 2-group) censored-exponential
/// dataset: one uncensored observation per group.
MtsEnumeration enumerate_mts_censored_exp(const SurvivalDataset& dataset);

/// All minimal training samples of a Bernoulli sequence: one 0 paired with one 1.
MtsEnumeration enumerate_mts_bernoulli(const std::vector<int>& bits);

/// Index subsets of the given size whose moment matrices are nonsingular under
/// the complex design. The relative determinant floor is recorded per sample set.
struct LinearMtsEnumeration {
    std::vector<std::vector<std::size_t>> subsets;
    std::vector<double> det_complex;  // |X_j(l)'X_j(l)| for kept subsets
    std::size_t singular_skipped = 0;
    double det_threshold = 0.0;
};
LinearMtsEnumeration enumerate_mts_linear(const Matrix& design_complex, std::size_t subset_size);

/// Sequential minimal training sample for one censored-exponential group:
/// indices drawn without replacement until the first uncensored observation.
TrainingSample draw_smts_one_group(const std::vector<CensoredObservation>& group, RngStream& rng);

/// Per-group independent SMTS for a two-group dataset.
TrainingSample draw_smts_two_group(const SurvivalDataset& dataset, RngStream& rng);

/// SMTS from a finite Bernoulli sequence: draw without replacement until both
/// a 0 and a 1 are present. The result is a run of one symbol plus a terminator.
TrainingSample draw_smts_bernoulli(const std::vector<int>& bits, RngStream& rng);

/// Exact without-replacement SMTS distribution for one censored-exponential
/// group. Guarded to group size <= 25; larger inputs should use draw_smts.
WeightedSampleSet smts_exact_distribution_one_group(const std::vector<CensoredObservation>& group);

/// Exact SMTS distribution for exchangeable Bernoulli data given (n, #ones).
WeightedSampleSet smts_exact_distribution_bernoulli(const BernoulliSummary& summary);

/// Information weights over all size-`subset_size` row subsets of a design:
/// p(l) = |X(l)'X(l)| / (C(n-k, s-k) |X'X|). Singular subsets get weight 0.
WeightedSampleSet binet_cauchy_weights(const Matrix& design, std::size_t subset_size);

/// Surrogate normal sample with the exact requested mean and sum of squared
/// deviations (s2), built from standard normal draws.
std::vector<double> normal_surrogate(double xbar, double s2, std::size_t n, RngStream& rng);

/// Inverse-transform value T(1 - u^(1/X)) of the latent inter-arrival density.
double poisson_imaginary_quantile(const PoissonObservation& obs, double u);

/// Single imaginary training sample for a Poisson count, in (0, T).
double poisson_imaginary_draw(const PoissonObservation& obs, RngStream& rng);

} // namespace ibf
