#pragma once

#include "ibf/data.hpp"
#include "ibf/training.hpp"

#include <cstddef>

namespace ibf {

enum class ModelFamily { exp_one_sample, exp_two_sample, bernoulli, poisson };

/// A pairwise nested comparison: the simple model pins theta at theta0
/// (or equates the two group rates), the alternative leaves it free.
struct ModelPair {
    ModelFamily family = ModelFamily::exp_one_sample;
    double theta0 = 0.0;          // unused for exp_two_sample (null is theta1 = theta2)
    double censoring_bound = 0.0; // r, where applicable
};

/// Throws std::domain_error when theta0 leaves the family's parameter space.
/// A Bernoulli theta0 on {0, 1} is allowed only when limit_mode is set (the
/// caller substitutes an epsilon) and returns a warning string.
std::vector<std::string> validate(const ModelPair& pair, bool limit_mode = false);

// Full-data formal Bayes factors are returned on the log scale (the Gehan
// magnitudes overflow linear doubles); training-sample factors are bounded
// and returned on the linear scale.

/// ln[ Gamma(n_u) (T theta0)^{-n_u} e^{T theta0} ] for a censored-exponential group.
double log_bf10_exp(const GroupStats& stats, double theta0);

/// theta0 * T_l * exp(-theta0 T_l), T_l = censored prefix plus terminal value.
double ts_bf01_exp(double t_l, double theta0);

/// Front factor of the two-group comparison:
/// ln[ Gamma(n1u)Gamma(n2u)/Gamma(n1u+n2u) * (T1+T2)^(n1u+n2u) / (T1^n1u T2^n2u) ].
double log_bf10_two_exp(const GroupStats& s1, const GroupStats& s2);

/// T1l T2l / (T1l + T2l)^2; always <= 1/4, scale invariant.
double ts_bf01_two_exp(double t1l, double t2l);

/// ln[ Gamma(S)Gamma(n-S) / (Gamma(n) theta0^S (1-theta0)^(n-S)) ], Haldane prior.
double log_bf10_bernoulli(const BernoulliSummary& summary, double theta0);

/// N0 theta0 (1-theta0)^N0, N1 (1-theta0) theta0^N1, or theta0(1-theta0).
double ts_bf01_bernoulli(BernoulliTsKind kind, std::size_t count, double theta0);

/// ln[ Gamma(X+1/2) / (T^(X+1/2) theta0^X e^(-T theta0)) ], Jeffreys prior.
double log_bf10_poisson(const PoissonObservation& obs, double theta0);

/// theta0 / Gamma(3/2) * x*^(3/2) * exp(-theta0 x*).
double ts_bf01_poisson(double x_star, double theta0);

} // namespace ibf
