#include "ibf/marginals.hpp"

#include "ibf/special.hpp"

#include <doctest.h>

#include <stdexcept>
#include <cmath>

using namespace ibf;

TEST_CASE("one-group exponential Bayes factor") {
    CHECK(log_bf10_exp({1, 0, 1.0}, 1.0) == doctest::Approx(1.0).epsilon(1e-14));  // BF = e
    // direct arithmetic: Gamma(2) * 1.5^-2 * e^1.5
    CHECK(std::exp(log_bf10_exp({2, 1, 3.0}, 0.5)) ==
          doctest::Approx(std::exp(1.5) / 2.25).epsilon(1e-13));
    CHECK_THROWS_AS(log_bf10_exp({2, 0, 3.0}, 0.0), std::domain_error);
    CHECK_THROWS_AS(log_bf10_exp({0, 4, 3.0}, 1.0), std::domain_error);
}

TEST_CASE("one-group training-sample factor peaks at T = 1/theta0") {
    CHECK(ts_bf01_exp(2.0, 0.5) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    const double peak = ts_bf01_exp(1.0 / 0.7, 0.7);
    for (double t : {0.2, 0.9, 3.0, 9.0}) CHECK(ts_bf01_exp(t, 0.7) <= peak + 1e-15);
    CHECK(ts_bf01_exp(1e4, 0.5) < 1e-100);
    CHECK_THROWS_AS(ts_bf01_exp(0.0, 0.5), std::domain_error);
}

TEST_CASE("two-group front factor") {
    CHECK(std::exp(log_bf10_two_exp({1, 0, 1.0}, {1, 0, 1.0})) ==
          doctest::Approx(4.0).epsilon(1e-13));

    // independent route: sums of logs of exact integers
    const GroupStats control{21, 0, 182.0};
    const GroupStats treated{9, 12, 359.0};
    auto log_factorial = [](int n) {
        double s = 0.0;
        for (int k = 2; k <= n; ++k) s += std::log(double(k));
        return s;
    };
    const double oracle = log_factorial(20) + log_factorial(8) - log_factorial(29) +
                          30.0 * std::log(541.0) - 21.0 * std::log(182.0) - 9.0 * std::log(359.0);
    CHECK(log_bf10_two_exp(control, treated) == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(log_bf10_two_exp(treated, control) ==
          doctest::Approx(log_bf10_two_exp(control, treated)).epsilon(1e-14));
    CHECK_THROWS_AS(log_bf10_two_exp({0, 3, 10.0}, treated), std::domain_error);
}

TEST_CASE("two-group training-sample factor") {
    CHECK(ts_bf01_two_exp(5.0, 5.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(ts_bf01_two_exp(1.0, 3.0) == doctest::Approx(3.0 / 16.0).epsilon(1e-15));
    RngStream rng(3, 0);
    for (int i = 0; i < 500; ++i) {
        const double a = rng.exponential(0.1), b = rng.exponential(0.05);
        const double v = ts_bf01_two_exp(a, b);
        CHECK(v <= 0.25);
        CHECK(ts_bf01_two_exp(7.0 * a, 7.0 * b) == doctest::Approx(v).epsilon(1e-12));
    }
}

TEST_CASE("bernoulli Bayes factor under the Haldane prior") {
    CHECK(std::exp(log_bf10_bernoulli({2, 1}, 0.5)) == doctest::Approx(4.0).epsilon(1e-13));
    const double direct = 1.0 / (9.0 * 1e-6 * std::pow(1.0 - 1e-6, 9.0));
    CHECK(std::exp(log_bf10_bernoulli({10, 1}, 1e-6)) == doctest::Approx(direct).epsilon(1e-12));
    CHECK_THROWS_AS(log_bf10_bernoulli({5, 0}, 0.5), std::domain_error);
    CHECK_THROWS_AS(log_bf10_bernoulli({5, 5}, 0.5), std::domain_error);
    CHECK_THROWS_AS(log_bf10_bernoulli({5, 2}, 0.0), std::domain_error);
}

TEST_CASE("bernoulli training-sample factors") {
    CHECK(ts_bf01_bernoulli(BernoulliTsKind::zeros_then_one, 1, 0.5) == doctest::Approx(0.25));
    CHECK(ts_bf01_bernoulli(BernoulliTsKind::ones_then_zero, 2, 0.5) == doctest::Approx(0.25));
    CHECK(ts_bf01_bernoulli(BernoulliTsKind::mts_pair, 1, 0.3) ==
          doctest::Approx(0.21).epsilon(1e-15));
    CHECK_THROWS_AS(ts_bf01_bernoulli(BernoulliTsKind::zeros_then_one, 0, 0.5), std::domain_error);
}

TEST_CASE("poisson Bayes factor under the Jeffreys prior") {
    CHECK(std::exp(log_bf10_poisson({0, 1.0}, 1.0)) ==
          doctest::Approx(std::sqrt(M_PI) * std::exp(1.0)).epsilon(1e-13));
    const double direct = std::tgamma(1.5) / (std::pow(2.0, 1.5) * 0.5 * std::exp(-1.0));
    CHECK(std::exp(log_bf10_poisson({1, 2.0}, 0.5)) == doctest::Approx(direct).epsilon(1e-13));
    CHECK_THROWS_AS(log_bf10_poisson({1, 2.0}, 0.0), std::domain_error);
    CHECK_THROWS_AS(log_bf10_poisson({1, 0.0}, 1.0), std::domain_error);
}

TEST_CASE("poisson training-sample factor") {
    CHECK(ts_bf01_poisson(1e-12, 1.0) < 1e-15);
    const double peak = ts_bf01_poisson(1.5 / 0.8, 0.8);
    for (double x : {0.3, 1.0, 3.0, 8.0}) CHECK(ts_bf01_poisson(x, 0.8) <= peak + 1e-15);
    CHECK(ts_bf01_poisson(1.0, 1.0) ==
          doctest::Approx(std::exp(-1.0) / std::tgamma(1.5)).epsilon(1e-13));
}

TEST_CASE("training sample as full data: factors are exact reciprocals") {
    // one-group exponential singleton
    for (double x : {0.5, 2.0, 9.0}) {
        const double log_b10 = log_bf10_exp({1, 0, x}, 0.7);
        CHECK(log_b10 + std::log(ts_bf01_exp(x, 0.7)) == doctest::Approx(0.0).epsilon(1e-12));
    }
    // two-group pair
    const double l2 = log_bf10_two_exp({1, 0, 3.0}, {1, 0, 11.0});
    CHECK(l2 + std::log(ts_bf01_two_exp(3.0, 11.0)) == doctest::Approx(0.0).epsilon(1e-12));
    // bernoulli {0, 1}
    const double lb = log_bf10_bernoulli({2, 1}, 0.3);
    CHECK(lb + std::log(ts_bf01_bernoulli(BernoulliTsKind::mts_pair, 1, 0.3)) ==
          doctest::Approx(0.0).epsilon(1e-12));
    // single imaginary exponential observation under the Jeffreys prior
    const double x_star = 1.7, theta0 = 0.6;
    const double log_full =
        log_gamma(1.5) - 1.5 * std::log(x_star) - std::log(theta0) + theta0 * x_star;
    CHECK(log_full + std::log(ts_bf01_poisson(x_star, theta0)) ==
          doctest::Approx(0.0).epsilon(1e-12));
}
