#include "ibf/marginals.hpp"

#include "ibf/special.hpp"

#include <cmath>
#include <stdexcept>

namespace ibf {

std::vector<std::string> validate(const ModelPair& pair, bool limit_mode) {
    std::vector<std::string> warnings;
    switch (pair.family) {
        case ModelFamily::exp_one_sample:
        case ModelFamily::poisson:
            if (!(pair.theta0 > 0.0))
                throw std::domain_error("model pair: theta0 must be > 0");
            break;
        case ModelFamily::exp_two_sample:
            break;  // shared-rate null, no theta0
        case ModelFamily::bernoulli:
            if (pair.theta0 < 0.0 || pair.theta0 > 1.0)
                throw std::domain_error("model pair: theta0 must be in [0, 1]");
            if (pair.theta0 == 0.0 || pair.theta0 == 1.0) {
                if (!limit_mode)
                    throw std::domain_error(
                        "model pair: boundary theta0 violates the proper-training-sample "
                        "assumption; rerun in limit mode with an epsilon");
                warnings.push_back("limit study: boundary theta0 replaced by epsilon");
            }
            break;
    }
    if (pair.censoring_bound < 0.0)
        throw std::domain_error("model pair: censoring bound must be >= 0");
    return warnings;
}

double log_bf10_exp(const GroupStats& stats, double theta0) {
    if (stats.n_uncensored < 1)
        throw std::domain_error("log_bf10_exp: improper marginal (no uncensored observation)");
    if (!(stats.total_time > 0.0)) throw std::domain_error("log_bf10_exp: T must be > 0");
    if (!(theta0 > 0.0)) throw std::domain_error("log_bf10_exp: theta0 must be > 0");
    const double nu = static_cast<double>(stats.n_uncensored);
    return log_gamma(nu) - nu * std::log(stats.total_time * theta0) + stats.total_time * theta0;
}

double ts_bf01_exp(double t_l, double theta0) {
    if (!(t_l > 0.0)) throw std::domain_error("ts_bf01_exp: T_l must be > 0");
    return theta0 * t_l * std::exp(-theta0 * t_l);
}

double log_bf10_two_exp(const GroupStats& s1, const GroupStats& s2) {
    if (s1.n_uncensored < 1 || s2.n_uncensored < 1)
        throw std::domain_error("log_bf10_two_exp: improper marginal (a group has no uncensored observation)");
    const double n1 = static_cast<double>(s1.n_uncensored);
    const double n2 = static_cast<double>(s2.n_uncensored);
    const double t1 = s1.total_time, t2 = s2.total_time;
    return log_gamma(n1) + log_gamma(n2) - log_gamma(n1 + n2) +
           (n1 + n2) * std::log(t1 + t2) - n1 * std::log(t1) - n2 * std::log(t2);
}

double ts_bf01_two_exp(double t1l, double t2l) {
    if (!(t1l > 0.0 && t2l > 0.0)) throw std::domain_error("ts_bf01_two_exp: times must be > 0");
    const double s = t1l + t2l;
    return t1l * t2l / (s * s);
}

double log_bf10_bernoulli(const BernoulliSummary& summary, double theta0) {
    if (!summary.has_mts())
        throw std::domain_error("log_bf10_bernoulli: improper marginal (S must be in [1, n-1])");
    if (!(theta0 > 0.0 && theta0 < 1.0))
        throw std::domain_error("log_bf10_bernoulli: theta0 must be inside (0, 1)");
    const double s = static_cast<double>(summary.ones);
    const double n = static_cast<double>(summary.n);
    return log_gamma(s) + log_gamma(n - s) - log_gamma(n) -
           s * std::log(theta0) - (n - s) * std::log1p(-theta0);
}

double ts_bf01_bernoulli(BernoulliTsKind kind, std::size_t count, double theta0) {
    const double c = static_cast<double>(count);
    switch (kind) {
        case BernoulliTsKind::zeros_then_one:
            if (count < 1) throw std::domain_error("ts_bf01_bernoulli: count must be >= 1");
            return c * theta0 * std::pow(1.0 - theta0, c);
        case BernoulliTsKind::ones_then_zero:
            if (count < 1) throw std::domain_error("ts_bf01_bernoulli: count must be >= 1");
            return c * (1.0 - theta0) * std::pow(theta0, c);
        case BernoulliTsKind::mts_pair:
            return theta0 * (1.0 - theta0);
        case BernoulliTsKind::none:
            break;
    }
    throw std::invalid_argument("ts_bf01_bernoulli: not a Bernoulli training sample");
}

double log_bf10_poisson(const PoissonObservation& obs, double theta0) {
    if (!(obs.exposure > 0.0)) throw std::domain_error("log_bf10_poisson: T must be > 0");
    if (!(theta0 > 0.0)) throw std::domain_error("log_bf10_poisson: theta0 must be > 0");
    const double x = static_cast<double>(obs.count);
    const double t = obs.exposure;
    return log_gamma(x + 0.5) - (x + 0.5) * std::log(t) - x * std::log(theta0) + t * theta0;
}

double ts_bf01_poisson(double x_star, double theta0) {
    if (!(x_star > 0.0)) throw std::domain_error("ts_bf01_poisson: x* must be > 0");
    static const double gamma_3_2 = std::tgamma(1.5);
    return theta0 / gamma_3_2 * std::pow(x_star, 1.5) * std::exp(-theta0 * x_star);
}

} // namespace ibf
