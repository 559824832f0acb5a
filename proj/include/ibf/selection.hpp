#pragma once

#include "ibf/data.hpp"
#include "ibf/quadrature.hpp"
#include "ibf/rng.hpp"
#include "ibf/training.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ibf {

enum class Combiner { arithmetic, geometric, median, ep, intrinsic_prior };

const char* combiner_name(Combiner c);

struct BayesFactorEstimate {
    double log_bf10 = 0.0;
    /// Standard error of the Monte Carlo training-sample average
    /// (0 for exhaustive schemes and for the intrinsic-prior route).
    double mc_std_error = 0.0;
    std::size_t draws = 0;  // L
    SchemeSpec scheme;
    std::uint64_t seed = 0;
    Combiner combiner = Combiner::arithmetic;
};

/// Corrects a full-data log Bayes factor by a weighted average of
/// training-sample factors: arithmetic averages the b01 values, geometric
/// averages their logs, median takes the weighted lower median (midpoint at
/// an exact half-mass split). Weights must sum to 1.
BayesFactorEstimate combine(Combiner mode, double log_bf10_full,
                            std::span<const double> b01_values,
                            std::span<const double> weights);

double weighted_median(std::span<const double> values, std::span<const double> weights);

enum class OhaganScheme { mts, smts_exact };

/// Arithmetic IBF for the all-but-one-zeros Bernoulli sequence (S = 1) against
/// a point null theta0, with exhaustive-MTS or exact-SMTS training averages.
double ohagan_ibf(std::size_t n, double theta0, OhaganScheme scheme);

/// One SMTS accumulated-time pair per draw, both groups sampled independently.
struct SmtsPairDraw { double t1 = 0.0, t2 = 0.0; };
std::vector<SmtsPairDraw> draw_smts_pairs(const SurvivalDataset& dataset, std::size_t L,
                                          const RngStream& rng);

/// Two-group exponential arithmetic IBF from L SMTS pair draws.
BayesFactorEstimate gehan_arithmetic_ibf(const SurvivalDataset& dataset, std::size_t L,
                                         const RngStream& rng);

/// Expected-posterior-prior Bayes factor from the same draw scheme.
BayesFactorEstimate gehan_ep_bf(const SurvivalDataset& dataset, std::size_t L,
                                const RngStream& rng);

/// Two-group exponential Bayes factor under the closed-form intrinsic prior,
/// evaluated by 2-D quadrature. Returns the log value.
double twoexp_intrinsic_log_bf(const GroupStats& s1, const GroupStats& s2,
                               double rel_tol = 1e-6);

/// Bernoulli Bayes factor under the SMTS intrinsic prior (quadrature numerator).
double bernoulli_intrinsic_bf(const BernoulliSummary& summary, double theta0,
                              double rel_tol = 1e-8);

/// prior_odds * bf10 / (1 + prior_odds * bf10).
double posterior_prob_m1(double bf10, double prior_odds = 1.0);

/// Same, from the log Bayes factor; safe for extreme magnitudes.
double posterior_prob_m1_log(double log_bf10, double prior_odds = 1.0);

} // namespace ibf
