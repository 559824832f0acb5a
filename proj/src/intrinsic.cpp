#include "ibf/intrinsic.hpp"

#include "ibf/marginals.hpp"
#include "ibf/training.hpp"

#include <cmath>
#include <stdexcept>

namespace ibf {

const char* intrinsic_family_name(IntrinsicFamily f) {
    switch (f) {
        case IntrinsicFamily::exp_smts: return "exp-smts";
        case IntrinsicFamily::exp_mts_improper: return "exp-mts-improper";
        case IntrinsicFamily::bernoulli_haldane_mts: return "bernoulli-haldane-mts";
        case IntrinsicFamily::bernoulli_smts: return "bernoulli-smts";
        case IntrinsicFamily::poisson_imaginary: return "poisson-imaginary";
    }
    return "?";
}

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw std::domain_error(std::string(what) + " must be > 0");
}

void require_unit_open(double v, const char* what) {
    if (!(v > 0.0 && v < 1.0))
        throw std::domain_error(std::string(what) + " must be inside (0, 1)");
}

} // namespace

double exp_smts_intrinsic_density(double theta, double theta0) {
    require_positive(theta, "theta");
    require_positive(theta0, "theta0");
    const double s = theta + theta0;
    return theta0 / (s * s);
}

double exp_smts_intrinsic_cdf(double theta, double theta0) {
    require_positive(theta0, "theta0");
    if (theta <= 0.0) return 0.0;
    return theta / (theta + theta0);
}

double exp_smts_intrinsic_quantile(double p, double theta0) {
    require_positive(theta0, "theta0");
    if (!(p >= 0.0 && p < 1.0)) throw std::domain_error("quantile: p must be in [0, 1)");
    return p * theta0 / (1.0 - p);
}

double exp_mts_improper_density(double theta, double theta0, double r) {
    require_positive(theta, "theta");
    require_positive(theta0, "theta0");
    require_positive(r, "r");
    const double s = theta + theta0;
    const double bracket = 1.0 / (s * s) - std::exp(-s * r) * (r / s + 1.0 / (s * s));
    return theta0 / (-std::expm1(-r * theta)) * bracket;
}

double bernoulli_haldane_mts_intrinsic(double theta, double theta0) {
    require_unit_open(theta, "theta");
    return theta0 * (1.0 - theta0) / (theta * (1.0 - theta));
}

double bernoulli_smts_intrinsic(double theta, double theta0) {
    require_unit_open(theta, "theta");
    require_unit_open(theta0, "theta0");
    const double u = 1.0 - (1.0 - theta) * (1.0 - theta0);
    const double v = 1.0 - theta * theta0;
    return theta0 * (1.0 - theta0) * (1.0 / (u * u) + 1.0 / (v * v));
}

double bernoulli_smts_intrinsic_cdf(double theta, double theta0, double rel_tol) {
    require_unit_open(theta0, "theta0");
    if (theta <= 0.0) return 0.0;
    if (theta >= 1.0) return 1.0;
    return integrate_finite([theta0](double t) { return bernoulli_smts_intrinsic(t, theta0); },
                            0.0, theta, rel_tol).value;
}

double poisson_intrinsic_density(double theta, double theta0) {
    require_positive(theta, "theta");
    require_positive(theta0, "theta0");
    return 1.5 * theta0 * std::sqrt(theta) / std::pow(theta + theta0, 2.5);
}

double poisson_intrinsic_quantile(double p, double theta0, double rel_tol) {
    require_positive(theta0, "theta0");
    auto cdf = [theta0, rel_tol](double t) {
        if (t <= 0.0) return 0.0;
        return integrate_finite([theta0](double u) { return poisson_intrinsic_density(u, theta0); },
                                0.0, t, rel_tol).value;
    };
    return quantile_solve(cdf, p, 1e-3 * theta0, 10.0 * theta0);
}

double IntrinsicPriorSpec::density(double theta) const {
    switch (family) {
        case IntrinsicFamily::exp_smts: return exp_smts_intrinsic_density(theta, theta0);
        case IntrinsicFamily::exp_mts_improper: return exp_mts_improper_density(theta, theta0, r);
        case IntrinsicFamily::bernoulli_haldane_mts: return bernoulli_haldane_mts_intrinsic(theta, theta0);
        case IntrinsicFamily::bernoulli_smts: return bernoulli_smts_intrinsic(theta, theta0);
        case IntrinsicFamily::poisson_imaginary: return poisson_intrinsic_density(theta, theta0);
    }
    throw std::invalid_argument("density: unknown family");
}

bool IntrinsicPriorSpec::proper_closed_form() const {
    return family == IntrinsicFamily::exp_smts || family == IntrinsicFamily::bernoulli_smts ||
           family == IntrinsicFamily::poisson_imaginary;
}

double IntrinsicPriorSpec::cdf(double theta) const {
    switch (family) {
        case IntrinsicFamily::exp_smts: return exp_smts_intrinsic_cdf(theta, theta0);
        case IntrinsicFamily::bernoulli_smts: return bernoulli_smts_intrinsic_cdf(theta, theta0);
        case IntrinsicFamily::poisson_imaginary:
            if (theta <= 0.0) return 0.0;
            return integrate_finite(
                       [this](double t) { return poisson_intrinsic_density(t, theta0); }, 0.0,
                       theta, 1e-10)
                .value;
        default:
            throw std::domain_error("cdf: prior is improper");
    }
}

double IntrinsicPriorSpec::quantile(double p) const {
    switch (family) {
        case IntrinsicFamily::exp_smts: return exp_smts_intrinsic_quantile(p, theta0);
        case IntrinsicFamily::bernoulli_smts:
            return quantile_solve([this](double t) { return bernoulli_smts_intrinsic_cdf(t, theta0); },
                                  p, 1e-9, 1.0 - 1e-9);
        case IntrinsicFamily::poisson_imaginary: return poisson_intrinsic_quantile(p, theta0);
        default:
            throw std::domain_error("quantile: prior is improper");
    }
}

TruncatedMassReport truncated_mass_test(const IntrinsicPriorSpec& spec) {
    const bool unit_domain = spec.family == IntrinsicFamily::bernoulli_haldane_mts ||
                             spec.family == IntrinsicFamily::bernoulli_smts;
    auto f = [&spec](double t) { return spec.density(t); };
    double mass[3];
    for (int k = 0; k < 3; ++k) {
        const double eps = std::pow(10.0, -2.0 * (k + 1));
        double lo, hi;
        if (unit_domain) {
            lo = eps;
            hi = 1.0 - eps;
        } else {
            lo = eps * spec.theta0;
            hi = spec.theta0 / eps;
        }
        mass[k] = integrate_finite(f, lo, hi, 1e-7, 0.0, 20000).value;
    }
    TruncatedMassReport rep;
    rep.widest_mass = mass[2];
    const double d1 = mass[1] - mass[0];
    const double d2 = mass[2] - mass[1];
    rep.increment_ratio = d2 / std::max(d1, 1e-300);
    rep.improper = d1 > 1e-9 && rep.increment_ratio > 0.5;
    return rep;
}

std::vector<McSummary> mc_intrinsic_estimate(IntrinsicFamily family,
                                             std::span<const double> thetas, double theta0,
                                             double r, std::size_t L, const RngStream& rng) {
    if (L < 1000) throw std::invalid_argument("mc_intrinsic_estimate: L must be >= 1000");
    std::vector<McSummary> out;
    out.reserve(thetas.size());
    std::vector<double> values(L);
    for (std::size_t gi = 0; gi < thetas.size(); ++gi) {
        const double theta = thetas[gi];
        require_positive(theta, "theta");
        RngStream stream = rng.substream(gi);
        switch (family) {
            case IntrinsicFamily::exp_smts: {
                require_positive(r, "r");
                const double p_cens = std::exp(-theta * r);
                const double prior = 1.0 / theta;
                for (std::size_t l = 0; l < L; ++l) {
                    // censored run length is geometric; terminal value is a truncated exponential
                    const std::size_t n_cens =
                        p_cens == 0.0 ? 0
                                      : static_cast<std::size_t>(std::floor(
                                            std::log(stream.uniform()) / std::log(p_cens)));
                    const double v = stream.uniform();
                    const double x = -std::log1p(v * std::expm1(-theta * r)) / theta;
                    values[l] = prior * ts_bf01_exp(static_cast<double>(n_cens) * r + x, theta0);
                }
                break;
            }
            case IntrinsicFamily::bernoulli_smts: {
                require_unit_open(theta, "theta");
                const double prior = 1.0 / (theta * (1.0 - theta));
                for (std::size_t l = 0; l < L; ++l) {
                    const bool first_is_one = stream.uniform() < theta;
                    const double cont = first_is_one ? theta : 1.0 - theta;
                    const std::size_t run =
                        1 + static_cast<std::size_t>(
                                std::floor(std::log(stream.uniform()) / std::log(cont)));
                    values[l] = prior * ts_bf01_bernoulli(first_is_one
                                                              ? BernoulliTsKind::ones_then_zero
                                                              : BernoulliTsKind::zeros_then_one,
                                                          run, theta0);
                }
                break;
            }
            case IntrinsicFamily::poisson_imaginary: {
                // finite stand-in for the large-exposure limit
                const PoissonObservation obs{200, 200.0 / theta};
                const double prior = 1.0 / std::sqrt(theta);
                for (std::size_t l = 0; l < L; ++l)
                    values[l] = prior * ts_bf01_poisson(poisson_imaginary_draw(obs, stream), theta0);
                break;
            }
            default:
                throw std::invalid_argument(
                    "mc_intrinsic_estimate: family has no simulable training-sample space");
        }
        out.push_back(mc_summary(values));
    }
    return out;
}

double assumption0_probability(SamplingFamily family, TrainingScheme scheme, double theta,
                               double r) {
    require_positive(theta, "theta");
    if (family == SamplingFamily::censored_exp && scheme == TrainingScheme::mts) {
        require_positive(r, "r");
        return -std::expm1(-r * theta);
    }
    if (family == SamplingFamily::censored_exp && scheme == TrainingScheme::smts) return 1.0;
    if (family == SamplingFamily::bernoulli && scheme == TrainingScheme::mts) {
        require_unit_open(theta, "theta");
        return 2.0 * theta * (1.0 - theta);
    }
    if (family == SamplingFamily::bernoulli && scheme == TrainingScheme::smts) {
        require_unit_open(theta, "theta");
        return 1.0;
    }
    if (family == SamplingFamily::poisson && scheme == TrainingScheme::imaginary) return 1.0;
    throw std::invalid_argument("assumption0_probability: unsupported family/scheme pair");
}

namespace {

double jeffreys_normal_integrand(double y) {
    return std::sqrt(-std::expm1(-y)) * std::exp(-y) / y;
}

} // namespace

JeffreysMedianStudy jeffreys_censored_median_study(double rel_tol) {
    JeffreysMedianStudy study;
    const double full =
        integrate_semi_infinite(jeffreys_normal_integrand, 0.0, rel_tol, 20000).value;
    const double head =
        integrate_finite(jeffreys_normal_integrand, 0.0, study.cutoff, rel_tol, 0.0, 20000).value;
    study.normalizer_exact = full;
    study.normalizer_published = full - head;

    auto cdf_from = [&](double lo, double denom) {
        return [lo, denom, rel_tol](double c) {
            if (c <= lo) return 0.0;
            return integrate_finite(jeffreys_normal_integrand, lo, c, rel_tol, 0.0, 20000).value /
                   denom;
        };
    };
    study.median_constant_exact = quantile_solve(cdf_from(0.0, full), 0.5, 1e-3, 1.0);
    study.median_constant_published =
        quantile_solve(cdf_from(study.cutoff, study.normalizer_published), 0.5, 1e-3, 1.0);
    return study;
}

double jeffreys_first_term_mass(double r, double theta0, double rel_tol) {
    require_positive(r, "r");
    require_positive(theta0, "theta0");

    // fixed composite GK15 nodes over (0, r) for the inner average; the
    // integrand there is smooth once the 1/m(x) factor kills the 1/x pole
    constexpr int kP = 8;
    constexpr double node[kP] = {0.000000000000000, 0.207784955007898, 0.405845151377397,
                                 0.586087235467691, 0.741531185599394, 0.864864423359769,
                                 0.949107912342759, 0.991455371120813};
    constexpr double wk[kP] = {0.209482141084728, 0.204432940075298, 0.190350578064785,
                               0.169004726639267, 0.140653259715525, 0.104790010322250,
                               0.063092092629979, 0.022935322010529};
    const int panels = 4;
    std::vector<double> xs, ws;
    for (int p = 0; p < panels; ++p) {
        const double a = r * p / panels, b = r * (p + 1) / panels;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        xs.push_back(mid);
        ws.push_back(half * wk[0]);
        for (int i = 1; i < kP; ++i) {
            xs.push_back(mid + half * node[i]);
            ws.push_back(half * wk[i]);
            xs.push_back(mid - half * node[i]);
            ws.push_back(half * wk[i]);
        }
    }

    // m(x) = integral over theta of the Jeffreys prior times theta e^(-theta x)
    std::vector<double> m(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        m[i] = integrate_semi_infinite(
                   [x, r](double th) { return std::sqrt(-std::expm1(-r * th)) * std::exp(-th * x); },
                   0.0, rel_tol * 0.1, 20000)
                   .value;
    }

    auto outer = [&](double th) {
        double inner = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            inner += ws[i] * theta0 * std::exp(-theta0 * xs[i]) * std::exp(-th * xs[i]) / m[i];
        return std::sqrt(-std::expm1(-r * th)) * inner;
    };
    return integrate_semi_infinite(outer, 0.0, rel_tol, 20000).value;
}

} // namespace ibf
