#include "ibf/selection.hpp"

#include "ibf/marginals.hpp"
#include "ibf/special.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ibf {

const char* combiner_name(Combiner c) {
    switch (c) {
        case Combiner::arithmetic: return "arithmetic";
        case Combiner::geometric: return "geometric";
        case Combiner::median: return "median";
        case Combiner::ep: return "ep";
        case Combiner::intrinsic_prior: return "intrinsic-prior";
    }
    return "?";
}

double weighted_median(std::span<const double> values, std::span<const double> weights) {
    if (values.empty() || values.size() != weights.size())
        throw std::invalid_argument("weighted_median: bad input");
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    double cum = 0.0;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        cum += weights[order[pos]];
        if (cum >= 0.5 - 1e-12) {
            // exact half mass: midpoint between this value and the next
            if (std::abs(cum - 0.5) <= 1e-12 && pos + 1 < order.size())
                return 0.5 * (values[order[pos]] + values[order[pos + 1]]);
            return values[order[pos]];
        }
    }
    return values[order.back()];
}

BayesFactorEstimate combine(Combiner mode, double log_bf10_full,
                            std::span<const double> b01_values,
                            std::span<const double> weights) {
    if (b01_values.empty() || b01_values.size() != weights.size())
        throw std::invalid_argument("combine: bad input sizes");
    double wsum = 0.0;
    for (double w : weights) wsum += w;
    if (std::abs(wsum - 1.0) > 1e-8) throw std::invalid_argument("combine: weights must sum to 1");

    BayesFactorEstimate est;
    est.combiner = mode;
    est.draws = b01_values.size();
    const std::size_t n = b01_values.size();
    switch (mode) {
        case Combiner::arithmetic: {
            double avg = 0.0;
            for (std::size_t i = 0; i < n; ++i) avg += weights[i] * b01_values[i];
            double var = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = b01_values[i] - avg;
                var += weights[i] * weights[i] * d * d;
            }
            est.log_bf10 = log_bf10_full + std::log(avg);
            est.mc_std_error = std::sqrt(var);
            break;
        }
        case Combiner::geometric: {
            double avg = 0.0;
            std::vector<double> logs(n);
            for (std::size_t i = 0; i < n; ++i) {
                if (b01_values[i] <= 0.0)
                    throw std::domain_error("combine: geometric average hit a zero training-sample factor");
                logs[i] = std::log(b01_values[i]);
                avg += weights[i] * logs[i];
            }
            double var = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = logs[i] - avg;
                var += weights[i] * weights[i] * d * d;
            }
            est.log_bf10 = log_bf10_full + avg;
            est.mc_std_error = std::sqrt(var);
            break;
        }
        case Combiner::median: {
            const double med = weighted_median(b01_values, weights);
            if (med <= 0.0)
                throw std::domain_error("combine: median training-sample factor is zero");
            est.log_bf10 = log_bf10_full + std::log(med);
            // normal-theory median error from the mean's, for reporting only
            double avg = 0.0, var = 0.0;
            for (std::size_t i = 0; i < n; ++i) avg += weights[i] * b01_values[i];
            for (std::size_t i = 0; i < n; ++i) {
                const double d = b01_values[i] - avg;
                var += weights[i] * weights[i] * d * d;
            }
            est.mc_std_error = 1.2533141373155003 * std::sqrt(var);
            break;
        }
        default:
            throw std::invalid_argument("combine: mode must be arithmetic, geometric or median");
    }
    return est;
}

double ohagan_ibf(std::size_t n, double theta0, OhaganScheme scheme) {
    if (n < 2) throw std::domain_error("ohagan_ibf: need n >= 2");
    const BernoulliSummary data{n, 1};
    const double log_full = log_bf10_bernoulli(data, theta0);
    if (scheme == OhaganScheme::mts) {
        // every MTS pair contributes the same factor
        const double b01 = ts_bf01_bernoulli(BernoulliTsKind::mts_pair, 1, theta0);
        return std::exp(log_full + std::log(b01));
    }
    const WeightedSampleSet dist = smts_exact_distribution_bernoulli(data);
    double avg = 0.0;
    for (std::size_t i = 0; i < dist.samples.size(); ++i) {
        avg += dist.probabilities[i] *
               ts_bf01_bernoulli(dist.samples[i].bern_kind, dist.samples[i].bern_count, theta0);
    }
    return std::exp(log_full + std::log(avg));
}

namespace {

struct TwoGroupView {
    const std::vector<CensoredObservation>* g1;
    const std::vector<CensoredObservation>* g2;
    GroupStats s1, s2;
};

TwoGroupView two_group_view(const SurvivalDataset& dataset) {
    if (dataset.groups.size() != 2)
        throw std::invalid_argument("two-group pipeline: need exactly 2 groups");
    auto stats = group_stats(dataset);
    auto it = dataset.groups.begin();
    TwoGroupView v;
    v.g1 = &it->second;
    v.s1 = stats.at(it->first);
    ++it;
    v.g2 = &it->second;
    v.s2 = stats.at(it->first);
    if (v.s1.n_uncensored < 1 || v.s2.n_uncensored < 1)
        throw std::domain_error("two-group pipeline: a group has no uncensored observation");
    return v;
}

} // namespace

std::vector<SmtsPairDraw> draw_smts_pairs(const SurvivalDataset& dataset, std::size_t L,
                                          const RngStream& rng) {
    if (L < 1) throw std::invalid_argument("draw_smts_pairs: L must be >= 1");
    const TwoGroupView v = two_group_view(dataset);
    std::vector<SmtsPairDraw> draws(L);
    for (std::size_t l = 0; l < L; ++l) {
        RngStream sub = rng.substream(l);
        draws[l].t1 = draw_smts_one_group(*v.g1, sub).accumulated_time[0];
        draws[l].t2 = draw_smts_one_group(*v.g2, sub).accumulated_time[0];
    }
    return draws;
}

BayesFactorEstimate gehan_arithmetic_ibf(const SurvivalDataset& dataset, std::size_t L,
                                         const RngStream& rng) {
    const TwoGroupView v = two_group_view(dataset);
    const auto draws = draw_smts_pairs(dataset, L, rng);
    std::vector<double> b01(L), w(L, 1.0 / static_cast<double>(L));
    for (std::size_t l = 0; l < L; ++l) b01[l] = ts_bf01_two_exp(draws[l].t1, draws[l].t2);
    BayesFactorEstimate est = combine(Combiner::arithmetic, log_bf10_two_exp(v.s1, v.s2), b01, w);
    est.scheme = {SchemeVariant::smts, L};
    est.seed = rng.seed();
    return est;
}

BayesFactorEstimate gehan_ep_bf(const SurvivalDataset& dataset, std::size_t L,
                                const RngStream& rng) {
    const TwoGroupView v = two_group_view(dataset);
    const auto draws = draw_smts_pairs(dataset, L, rng);
    const double n1 = static_cast<double>(v.s1.n_uncensored);
    const double n2 = static_cast<double>(v.s2.n_uncensored);
    const double t1 = v.s1.total_time, t2 = v.s2.total_time;

    std::vector<double> log_num(L), log_den(L);
    for (std::size_t l = 0; l < L; ++l) {
        const double a = draws[l].t1, b = draws[l].t2;
        log_num[l] = std::log(a) + std::log(b) -
                     (n1 + 1.0) * std::log(t1 + a) - (n2 + 1.0) * std::log(t2 + b);
        log_den[l] = 2.0 * std::log(a + b) -
                     (n1 + n2 + 2.0) * std::log(t1 + t2 + a + b);
    }
    const double lse_num = log_sum_exp(log_num);
    const double lse_den = log_sum_exp(log_den);

    BayesFactorEstimate est;
    est.combiner = Combiner::ep;
    est.draws = L;
    est.scheme = {SchemeVariant::smts, L};
    est.seed = rng.seed();
    est.log_bf10 = log_gamma(n1 + 1.0) + log_gamma(n2 + 1.0) - log_gamma(n1 + n2 + 2.0) +
                   lse_num - lse_den;

    // delta-method error of the log ratio, on max-shifted linear terms
    double mean_a = 0.0, mean_b = 0.0;
    std::vector<double> as(L), bs(L);
    for (std::size_t l = 0; l < L; ++l) {
        as[l] = std::exp(log_num[l] - lse_num);
        bs[l] = std::exp(log_den[l] - lse_den);
        mean_a += as[l];
        mean_b += bs[l];
    }
    mean_a /= static_cast<double>(L);
    mean_b /= static_cast<double>(L);
    double vaa = 0.0, vbb = 0.0, vab = 0.0;
    for (std::size_t l = 0; l < L; ++l) {
        vaa += (as[l] - mean_a) * (as[l] - mean_a);
        vbb += (bs[l] - mean_b) * (bs[l] - mean_b);
        vab += (as[l] - mean_a) * (bs[l] - mean_b);
    }
    if (L > 1) {
        const double Ld = static_cast<double>(L);
        est.mc_std_error = std::sqrt(std::max(
            0.0, (vaa / (mean_a * mean_a) + vbb / (mean_b * mean_b) -
                  2.0 * vab / (mean_a * mean_b)) / (Ld * (Ld - 1.0))));
    }
    return est;
}

double twoexp_intrinsic_log_bf(const GroupStats& s1, const GroupStats& s2, double rel_tol) {
    if (s1.n_uncensored < 1 || s2.n_uncensored < 1)
        throw std::domain_error("twoexp_intrinsic_log_bf: a group has no uncensored observation");
    const double n1 = static_cast<double>(s1.n_uncensored);
    const double n2 = static_cast<double>(s2.n_uncensored);
    const double t1 = s1.total_time, t2 = s2.total_time;
    const double log_front = log_gamma(n1 + 1.0) + log_gamma(n2 + 1.0) - log_gamma(n1 + n2) +
                             (n1 + n2) * std::log(t1 + t2);
    // fold the front constant into the integrand so it stays O(1)
    auto f = [=](double a, double b) {
        return std::exp(log_front + std::log(a) + std::log(b) - 2.0 * std::log(a + b) -
                        (n1 + 1.0) * std::log(t1 + a) - (n2 + 1.0) * std::log(t2 + b));
    };
    const QuadratureResult q = integrate_quadrant(f, rel_tol);
    return std::log(q.value);
}

double bernoulli_intrinsic_bf(const BernoulliSummary& summary, double theta0, double rel_tol) {
    if (!summary.has_mts())
        throw std::domain_error("bernoulli_intrinsic_bf: S must be in [1, n-1]");
    if (!(theta0 > 0.0 && theta0 < 1.0))
        throw std::domain_error("bernoulli_intrinsic_bf: theta0 must be inside (0, 1)");
    const double s = static_cast<double>(summary.ones);
    const double n = static_cast<double>(summary.n);
    auto f = [=](double th) {
        const double u = 1.0 - (1.0 - th) * (1.0 - theta0);
        const double v = 1.0 - th * theta0;
        return std::pow(th, s) * std::pow(1.0 - th, n - s) * (1.0 / (u * u) + 1.0 / (v * v));
    };
    const QuadratureResult num = integrate_finite(f, 0.0, 1.0, rel_tol);
    const double log_den = (s - 1.0) * std::log(theta0) + (n - s - 1.0) * std::log1p(-theta0);
    return std::exp(std::log(num.value) - log_den);
}

double posterior_prob_m1(double bf10, double prior_odds) {
    if (!(bf10 >= 0.0)) throw std::domain_error("posterior_prob_m1: bf10 must be >= 0");
    if (!(prior_odds > 0.0)) throw std::domain_error("posterior_prob_m1: prior odds must be > 0");
    const double q = prior_odds * bf10;
    return q / (1.0 + q);
}

double posterior_prob_m1_log(double log_bf10, double prior_odds) {
    if (!(prior_odds > 0.0)) throw std::domain_error("posterior_prob_m1: prior odds must be > 0");
    return std::exp(log_odds_to_log_prob(log_bf10 + std::log(prior_odds)));
}

} // namespace ibf
