#include "ibf/training.hpp"

#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>
#include <cmath>
#include <map>

using namespace ibf;

TEST_CASE("minimal training samples for the two-group remission data") {
    const MtsEnumeration mts = enumerate_mts_censored_exp(gehan_dataset());
    CHECK_FALSE(mts.no_mts);
    CHECK(mts.samples.size() == 21 * 9);
    for (const auto& s : mts.samples) {
        REQUIRE(s.indices.size() == 2);
        CHECK(s.indices[0].size() == 1);
        CHECK(s.indices[1].size() == 1);
    }
}

TEST_CASE("a fully censored group admits no minimal training sample") {
    const SurvivalDataset ds = parse_survival_csv("g,3,cens\ng,7,cens\n");
    const MtsEnumeration mts = enumerate_mts_censored_exp(ds);
    CHECK(mts.no_mts);
    CHECK(mts.samples.empty());
}

TEST_CASE("bernoulli minimal training samples pair each 0 with each 1") {
    std::vector<int> bits(10, 0);
    bits[4] = 1;
    const MtsEnumeration mts = enumerate_mts_bernoulli(bits);
    CHECK(mts.samples.size() == 9);
    CHECK_FALSE(mts.no_mts);

    const MtsEnumeration none = enumerate_mts_bernoulli({1, 1, 1});
    CHECK(none.no_mts);
}

TEST_CASE("smts draw from an uncensored group is a single observation") {
    const SurvivalDataset ds = parse_survival_csv("g,1,obs\ng,2,obs\ng,3,obs\n");
    RngStream rng(7, 0);
    for (int i = 0; i < 50; ++i) {
        const TrainingSample s = draw_smts_one_group(ds.groups.at("g"), rng);
        CHECK(s.indices[0].size() == 1);
    }
}

TEST_CASE("smts draw frequencies match the exact two-element distribution") {
    const std::vector<CensoredObservation> group{{5.0, Status::censored},
                                                 {2.0, Status::observed}};
    const WeightedSampleSet exact = smts_exact_distribution_one_group(group);
    REQUIRE(exact.samples.size() == 2);
    std::map<double, double> p;  // accumulated time -> probability
    for (std::size_t i = 0; i < exact.samples.size(); ++i)
        p[exact.samples[i].accumulated_time[0]] = exact.probabilities[i];
    CHECK(p.at(2.0) == doctest::Approx(0.5));
    CHECK(p.at(7.0) == doctest::Approx(0.5));

    RngStream rng(123, 0);
    int only_uncensored = 0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        RngStream sub = rng.substream(static_cast<std::uint64_t>(i));
        only_uncensored += (draw_smts_one_group(group, sub).indices[0].size() == 1);
    }
    CHECK(std::abs(only_uncensored / double(draws) - 0.5) < 0.02);
}

TEST_CASE("smts draws need a proper subset") {
    const std::vector<CensoredObservation> group{{5.0, Status::censored}};
    RngStream rng(1, 0);
    CHECK_THROWS_AS(draw_smts_one_group(group, rng), std::domain_error);
}

TEST_CASE("exact bernoulli smts distribution collapses to 1/n in the one-1 case") {
    const WeightedSampleSet dist = smts_exact_distribution_bernoulli({10, 1});
    double total = 0.0;
    std::size_t n0_outcomes = 0;
    for (std::size_t i = 0; i < dist.samples.size(); ++i) {
        total += dist.probabilities[i];
        CHECK(dist.probabilities[i] == doctest::Approx(0.1).epsilon(1e-12));
        if (dist.samples[i].bern_kind == BernoulliTsKind::zeros_then_one) ++n0_outcomes;
    }
    CHECK(n0_outcomes == 9);
    CHECK(dist.samples.size() == 10);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact smts distribution sums to 1 on the treated remission group") {
    const auto& treated = gehan_dataset().groups.at("treated");
    const WeightedSampleSet dist = smts_exact_distribution_one_group(treated);
    CHECK(dist.samples.size() == (1u << 12) * 9);
    double total = 0.0, mean_t = 0.0;
    for (std::size_t i = 0; i < dist.samples.size(); ++i) {
        total += dist.probabilities[i];
        mean_t += dist.probabilities[i] * dist.samples[i].accumulated_time[0];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    // E[sum of censored prefix] = 250/10, E[terminal uncensored] = 109/9
    CHECK(mean_t == doctest::Approx(334.0 / 9.0).epsilon(1e-10));
}

TEST_CASE("the exact-enumeration guard rejects large groups") {
    std::vector<CensoredObservation> big(26, {1.0, Status::observed});
    CHECK_THROWS_AS(smts_exact_distribution_one_group(big), std::length_error);
}

TEST_CASE("bernoulli smts draws have the run-then-terminator shape") {
    std::vector<int> bits{0, 0, 0, 1, 1};
    RngStream rng(77, 0);
    for (int i = 0; i < 200; ++i) {
        RngStream sub = rng.substream(static_cast<std::uint64_t>(i));
        const TrainingSample s = draw_smts_bernoulli(bits, sub);
        CHECK(s.bern_count >= 1);
        CHECK((s.bern_kind == BernoulliTsKind::zeros_then_one ||
               s.bern_kind == BernoulliTsKind::ones_then_zero));
        CHECK(s.indices[0].size() == s.bern_count + 1);
    }
}

namespace {

Matrix column_design(const std::vector<double>& d) {
    Matrix x(d.size(), 1);
    for (std::size_t i = 0; i < d.size(); ++i) x(i, 0) = d[i];
    return x;
}

Matrix random_design(std::size_t n, std::size_t k, std::uint64_t seed) {
    RngStream rng(seed, 0);
    Matrix x(n, k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) x(i, j) = rng.normal();
    return x;
}

} // namespace

TEST_CASE("information weights on singletons reduce to squared-covariate shares") {
    const Matrix x = column_design({1.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(3.0)});
    const WeightedSampleSet w = binet_cauchy_weights(x, 1);
    REQUIRE(w.probabilities.size() == 3);
    CHECK(w.probabilities[0] == doctest::Approx(6.0 / 11.0).epsilon(1e-12));
    CHECK(w.probabilities[1] == doctest::Approx(3.0 / 11.0).epsilon(1e-12));
    CHECK(w.probabilities[2] == doctest::Approx(2.0 / 11.0).epsilon(1e-12));
}

TEST_CASE("information weights sum to 1 over exhaustive subsets") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        for (std::size_t k : {1u, 2u, 3u}) {
            const Matrix x = random_design(10, k, seed * 10 + k);
            const WeightedSampleSet w = binet_cauchy_weights(x, k + 1);
            double total = 0.0;
            for (double p : w.probabilities) total += p;
            CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("degenerate-block subsets carry zero information weight") {
    const std::size_t m = 4;
    Matrix x(2 * m + 1, 2);
    for (std::size_t i = 0; i < 2 * m + 1; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = (i + 1 == 2 * m + 1) ? 1.0 : 0.0;  // delta = 0
    }
    const WeightedSampleSet w = binet_cauchy_weights(x, 3);
    for (std::size_t s = 0; s < w.samples.size(); ++s) {
        const auto& idx = w.samples[s].indices[0];
        const bool touches_last = idx.back() == 2 * m;
        if (!touches_last) CHECK(w.probabilities[s] == 0.0);
    }
}

TEST_CASE("rank-deficient designs are rejected") {
    Matrix x(4, 2);
    for (std::size_t i = 0; i < 4; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = 2.0;  // second column proportional to the first
    }
    CHECK_THROWS_AS(binet_cauchy_weights(x, 3), std::domain_error);
}

TEST_CASE("surrogate normal data hits the requested moments exactly") {
    for (std::uint64_t seed : {1u, 2u, 9u}) {
        RngStream rng(seed, 0);
        const double xbar = 3.7, s2 = 11.25;
        const std::vector<double> x = normal_surrogate(xbar, s2, 8, rng);
        double mean = 0.0;
        for (double v : x) mean += v;
        mean /= 8.0;
        double ss = 0.0;
        for (double v : x) ss += (v - mean) * (v - mean);
        CHECK(mean == doctest::Approx(xbar).epsilon(1e-12));
        CHECK(ss == doctest::Approx(s2).epsilon(1e-12));
    }
    RngStream a(5, 1), b(5, 2);
    const auto xa = normal_surrogate(0.0, 1.0, 5, a);
    const auto xb = normal_surrogate(0.0, 1.0, 5, b);
    CHECK(xa != xb);
    RngStream c(5, 3);
    CHECK_THROWS_AS(normal_surrogate(0.0, 1.0, 2, c), std::invalid_argument);
}

TEST_CASE("imaginary inter-arrival draws follow the inverse transform") {
    CHECK(poisson_imaginary_quantile({1, 10.0}, 0.5) == doctest::Approx(5.0));
    CHECK(poisson_imaginary_quantile({3, 10.0}, 1.0 - 1e-12) ==
          doctest::Approx(0.0).epsilon(1e-3));
    CHECK_THROWS_AS(poisson_imaginary_quantile({0, 10.0}, 0.5), std::domain_error);

    // empirical cdf against 1 - (1 - x/T)^X
    const PoissonObservation obs{4, 2.0};
    RngStream rng(31, 0);
    const int n = 100000;
    std::vector<double> xs(n);
    for (auto& v : xs) v = poisson_imaginary_draw(obs, rng);
    std::sort(xs.begin(), xs.end());
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = xs[i];
        const double cdf = 1.0 - std::pow(1.0 - x / obs.exposure, double(obs.count));
        worst = std::max(worst, std::abs((i + 1.0) / n - cdf));
    }
    CHECK(worst <= 0.01);
}
