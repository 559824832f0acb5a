#include "ibf/selection.hpp"

#include "ibf/marginals.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace ibf;

TEST_CASE("combine: constant factors collapse to the same correction in every mode") {
    const std::vector<double> b01{0.07, 0.07, 0.07};
    const std::vector<double> w{0.2, 0.5, 0.3};
    for (Combiner mode : {Combiner::arithmetic, Combiner::geometric, Combiner::median}) {
        const BayesFactorEstimate est = combine(mode, 2.0, b01, w);
        CHECK(est.log_bf10 == doctest::Approx(2.0 + std::log(0.07)).epsilon(1e-13));
    }
}

TEST_CASE("combine: median ignores the outlier") {
    const std::vector<double> b01{1.0, 1.0, 100.0};
    const std::vector<double> w{1.0 / 3, 1.0 / 3, 1.0 / 3};
    CHECK(combine(Combiner::median, 0.5, b01, w).log_bf10 == doctest::Approx(0.5));
}

TEST_CASE("combine: geometric is the log average") {
    const std::vector<double> b01{0.04, 0.09};
    const std::vector<double> w{0.5, 0.5};
    CHECK(combine(Combiner::geometric, 1.0, b01, w).log_bf10 ==
          doctest::Approx(1.0 + 0.5 * std::log(0.04 * 0.09)).epsilon(1e-13));
    const std::vector<double> with_zero{0.0, 0.09};
    CHECK_THROWS_AS(combine(Combiner::geometric, 1.0, with_zero, w), std::domain_error);
}

TEST_CASE("combine: arithmetic averaging is linear in the weights") {
    const std::vector<double> b01{0.01, 0.2, 0.11, 0.07};
    const std::vector<double> w1{0.1, 0.2, 0.3, 0.4};
    const std::vector<double> w2{0.25, 0.25, 0.25, 0.25};
    const double lambda = 0.3;
    std::vector<double> mix(4);
    for (int i = 0; i < 4; ++i) mix[i] = lambda * w1[i] + (1 - lambda) * w2[i];
    const double avg1 = std::exp(combine(Combiner::arithmetic, 0.0, b01, w1).log_bf10);
    const double avg2 = std::exp(combine(Combiner::arithmetic, 0.0, b01, w2).log_bf10);
    const double avgm = std::exp(combine(Combiner::arithmetic, 0.0, b01, mix).log_bf10);
    CHECK(avgm == doctest::Approx(lambda * avg1 + (1 - lambda) * avg2).epsilon(1e-12));
}

TEST_CASE("combine rejects bad weights") {
    const std::vector<double> b01{0.5, 0.5};
    const std::vector<double> w{0.5, 0.6};
    CHECK_THROWS_AS(combine(Combiner::arithmetic, 0.0, b01, w), std::invalid_argument);
}

TEST_CASE("weighted median: lower quantile with midpoint at an exact half split") {
    const std::vector<double> v{1.0, 2.0};
    const std::vector<double> w{0.5, 0.5};
    CHECK(weighted_median(v, w) == doctest::Approx(1.5));
    const std::vector<double> v2{3.0, 1.0, 2.0};
    const std::vector<double> w2{0.5, 0.25, 0.25};
    CHECK(weighted_median(v2, w2) == doctest::Approx(2.5));  // cum hits 0.5 exactly at 2
    const std::vector<double> w3{0.6, 0.2, 0.2};
    CHECK(weighted_median(v2, w3) == doctest::Approx(3.0));
}

TEST_CASE("the one-1 limit case: exact training averages") {
    for (std::size_t n : {5u, 10u, 20u}) {
        const double theta0 = 1e-8;
        const double nd = double(n);
        const double smts = ohagan_ibf(n, theta0, OhaganScheme::smts_exact);
        const double limit = (nd * nd - nd + 2.0) / (2.0 * nd * (nd - 1.0));
        CHECK(std::abs(smts - limit) / limit < 1e-4);

        const double mts = ohagan_ibf(n, theta0, OhaganScheme::mts);
        const double mts_exact = std::pow(1.0 - theta0, 2.0 - nd) / (nd - 1.0);
        CHECK(std::abs(mts - mts_exact) / mts_exact < 1e-12);
    }
    CHECK(ohagan_ibf(10, 1e-8, OhaganScheme::smts_exact) ==
          doctest::Approx(92.0 / 180.0).epsilon(1e-4));
    CHECK(ohagan_ibf(2, 1e-8, OhaganScheme::mts) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK_THROWS_AS(ohagan_ibf(1, 1e-8, OhaganScheme::mts), std::domain_error);
}

TEST_CASE("full data as the training sample gives log BF 0 for every combiner") {
    const double theta0 = 0.9;
    const double x = 2.4;
    const std::vector<double> b01{ts_bf01_exp(x, theta0)};
    const std::vector<double> w{1.0};
    for (Combiner mode : {Combiner::arithmetic, Combiner::geometric, Combiner::median}) {
        CHECK(combine(mode, log_bf10_exp({1, 0, x}, theta0), b01, w).log_bf10 ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("remission-data arithmetic IBF is reproducible and in band") {
    const SurvivalDataset& ds = gehan_dataset();
    const BayesFactorEstimate a = gehan_arithmetic_ibf(ds, 210, RngStream(7, 0));
    const BayesFactorEstimate b = gehan_arithmetic_ibf(ds, 210, RngStream(7, 0));
    CHECK(a.log_bf10 == b.log_bf10);
    CHECK(a.mc_std_error == b.mc_std_error);
    const double bf = std::exp(a.log_bf10);
    CHECK(bf > 440.0);
    CHECK(bf < 660.0);
}

TEST_CASE("a single draw reduces to the one-term product") {
    const SurvivalDataset& ds = gehan_dataset();
    const auto stats = group_stats(ds);
    const RngStream rng(3, 0);
    const auto draws = draw_smts_pairs(ds, 1, rng);
    const BayesFactorEstimate est = gehan_arithmetic_ibf(ds, 1, rng);
    const double expected = log_bf10_two_exp(stats.at("control"), stats.at("treated")) +
                            std::log(ts_bf01_two_exp(draws[0].t1, draws[0].t2));
    CHECK(est.log_bf10 == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("reported Monte Carlo error shrinks like the square root of L") {
    const SurvivalDataset& ds = gehan_dataset();
    double se_small = 0.0, se_big = 0.0;
    int reps = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        se_small += gehan_arithmetic_ibf(ds, 42, RngStream(seed, 0)).mc_std_error;
        se_big += gehan_arithmetic_ibf(ds, 672, RngStream(seed, 0)).mc_std_error;
        ++reps;
    }
    const double ratio = (se_small / reps) / (se_big / reps);
    CHECK(ratio > 2.8);   // ideal ratio is 4
    CHECK(ratio < 5.7);
}

TEST_CASE("expected-posterior-prior factor: band, reproducibility, one-draw collapse") {
    const SurvivalDataset& ds = gehan_dataset();
    const BayesFactorEstimate ep = gehan_ep_bf(ds, 210, RngStream(7, 0));
    const double bf = std::exp(ep.log_bf10);
    CHECK(bf > 640.0);
    CHECK(bf < 820.0);
    CHECK(gehan_ep_bf(ds, 210, RngStream(7, 0)).log_bf10 == ep.log_bf10);

    const auto stats = group_stats(ds);
    const double n1 = double(stats.at("control").n_uncensored);
    const double n2 = double(stats.at("treated").n_uncensored);
    const double t1 = stats.at("control").total_time;
    const double t2 = stats.at("treated").total_time;
    const RngStream rng(11, 0);
    const auto draws = draw_smts_pairs(ds, 1, rng);
    const double a = draws[0].t1, b = draws[0].t2;
    const double expected = std::lgamma(n1 + 1.0) + std::lgamma(n2 + 1.0) -
                            std::lgamma(n1 + n2 + 2.0) + std::log(a) + std::log(b) -
                            (n1 + 1.0) * std::log(t1 + a) - (n2 + 1.0) * std::log(t2 + b) -
                            2.0 * std::log(a + b) + (n1 + n2 + 2.0) * std::log(t1 + t2 + a + b);
    CHECK(gehan_ep_bf(ds, 1, rng).log_bf10 == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("intrinsic-prior Bayes factor for the remission data") {
    const auto stats = group_stats(gehan_dataset());
    const double log_bf = twoexp_intrinsic_log_bf(stats.at("control"), stats.at("treated"), 1e-6);
    // frozen against an independent double-quadrature oracle
    CHECK(std::exp(log_bf) == doctest::Approx(500.3585436745948).epsilon(1e-3));

    const GroupStats s1{3, 0, 12.0}, s2{5, 2, 40.0};
    CHECK(twoexp_intrinsic_log_bf(s1, s2, 1e-6) ==
          doctest::Approx(twoexp_intrinsic_log_bf(s2, s1, 1e-6)).epsilon(1e-6));
    // tightening the tolerance does not move the value beyond its own scale
    CHECK(twoexp_intrinsic_log_bf(s1, s2, 1e-6) ==
          doctest::Approx(twoexp_intrinsic_log_bf(s1, s2, 5e-7)).epsilon(1e-5));
}

TEST_CASE("bernoulli intrinsic-prior Bayes factor") {
    const BernoulliSummary data{5, 1};
    const double b2 = bernoulli_intrinsic_bf(data, 1e-2);
    const double b4 = bernoulli_intrinsic_bf(data, 1e-4);
    const double b6 = bernoulli_intrinsic_bf(data, 1e-6);
    CHECK(b2 < b4);
    CHECK(b4 < b6);
    CHECK(b6 > 10.0);  // the divergence as theta0 -> 0 is logarithmic

    // midpoint-rule oracle
    auto oracle = [](const BernoulliSummary& s, double theta0) {
        const double S = double(s.ones), n = double(s.n);
        const long steps = 2000000;
        double sum = 0.0;
        for (long i = 0; i < steps; ++i) {
            const double th = (i + 0.5) / double(steps);
            const double u = 1.0 - (1.0 - th) * (1.0 - theta0);
            const double v = 1.0 - th * theta0;
            sum += std::pow(th, S) * std::pow(1.0 - th, n - S) *
                   (1.0 / (u * u) + 1.0 / (v * v));
        }
        sum /= double(steps);
        return sum / (std::pow(theta0, S - 1.0) * std::pow(1.0 - theta0, n - S - 1.0));
    };
    CHECK(b2 == doctest::Approx(oracle(data, 1e-2)).epsilon(1e-6));

    // at theta0 = 1/2 the intrinsic density is symmetric under theta -> 1-theta
    CHECK(bernoulli_intrinsic_bf({5, 1}, 0.5) ==
          doctest::Approx(bernoulli_intrinsic_bf({5, 4}, 0.5)).epsilon(1e-9));
    CHECK_THROWS_AS(bernoulli_intrinsic_bf({5, 0}, 0.5), std::domain_error);
    CHECK_THROWS_AS(bernoulli_intrinsic_bf({5, 2}, 0.0), std::domain_error);
}

TEST_CASE("posterior probability of the alternative") {
    CHECK(posterior_prob_m1(1.0, 1.0) == doctest::Approx(0.5));
    CHECK(posterior_prob_m1(544.0, 1.0) == doctest::Approx(544.0 / 545.0).epsilon(1e-14));
    CHECK(posterior_prob_m1(0.0, 1.0) == 0.0);
    CHECK(posterior_prob_m1_log(std::log(544.0), 1.0) ==
          doctest::Approx(544.0 / 545.0).epsilon(1e-12));
    CHECK(posterior_prob_m1_log(5000.0, 1.0) == doctest::Approx(1.0));
    double prev = -1.0;
    for (double bf : {0.0, 0.5, 1.0, 3.0, 10.0, 1e6}) {
        const double p = posterior_prob_m1(bf, 1.0);
        CHECK(p > prev);
        prev = p;
    }
}
