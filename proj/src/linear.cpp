#include "ibf/linear.hpp"

#include "ibf/mc.hpp"
#include "ibf/special.hpp"
#include "ibf/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ibf {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // ln(2*pi)/2

struct CmpDims {
    std::size_t n, ki, kj, subset_size;
};

CmpDims check_cmp(const LinearComparison& cmp) {
    const std::size_t n = cmp.y.size();
    if (cmp.x_simple.rows != n || cmp.x_complex.rows != n)
        throw std::invalid_argument("linear comparison: designs must share the response length");
    if (cmp.x_complex.cols <= cmp.x_simple.cols)
        throw std::invalid_argument("linear comparison: complex design must have more columns");
    return {n, cmp.x_simple.cols, cmp.x_complex.cols, cmp.x_complex.cols + 1};
}

double log_c_constant(std::size_t n, std::size_t ki, std::size_t kj) {
    const double nd = static_cast<double>(n);
    const double kid = static_cast<double>(ki), kjd = static_cast<double>(kj);
    return log_gamma((nd - kjd) / 2.0) + log_gamma((kjd - kid + 1.0) / 2.0) -
           log_gamma((nd - kid) / 2.0) - log_gamma(0.5);
}

struct TermScan {
    std::vector<TrainingTerm> terms;
    std::size_t skipped = 0;
    std::size_t singular = 0;
    double det_threshold = 0.0;
};

TermScan scan_terms(const LinearComparison& cmp) {
    const CmpDims d = check_cmp(cmp);
    TermScan scan;
    LinearMtsEnumeration mts = enumerate_mts_linear(cmp.x_complex, d.subset_size);
    scan.singular = mts.singular_skipped;
    scan.det_threshold = mts.det_threshold;
    const double simple_det_floor =
        1e-12 * std::pow(gram_det(cmp.x_simple),
                         static_cast<double>(d.subset_size) / static_cast<double>(d.n));
    scan.terms.reserve(mts.subsets.size());
    for (std::size_t s = 0; s < mts.subsets.size(); ++s) {
        const auto& idx = mts.subsets[s];
        std::vector<double> ys(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) ys[i] = cmp.y[idx[i]];
        const Matrix xs = cmp.x_simple.select_rows(idx);
        const Matrix xc = cmp.x_complex.select_rows(idx);
        const LsqSummary ls = least_squares(xs, ys);
        if (ls.det_gram <= simple_det_floor) {
            ++scan.singular;  // the subset must keep every model's moment matrix nonsingular
            continue;
        }
        const LsqSummary lc = least_squares(xc, ys);
        double ssq = 0.0;
        for (double v : ys) ssq += v * v;
        if (ls.rss <= 1e-13 * std::max(ssq, 1e-300)) {
            ++scan.skipped;  // simple-model residual vanishes in a denominator
            continue;
        }
        TrainingTerm t;
        t.indices = idx;
        t.det_simple = ls.det_gram;
        t.det_complex = mts.det_complex[s];
        t.rss_simple = ls.rss;
        t.rss_complex = lc.rss;
        scan.terms.push_back(std::move(t));
    }
    return scan;
}

// log of one training-sample summand, before any det_complex weighting
double log_term(const TrainingTerm& t, std::size_t ki, std::size_t kj) {
    const double e = (static_cast<double>(kj) - static_cast<double>(ki) + 1.0) / 2.0;
    const double log_rj = t.rss_complex > 0.0 ? std::log(t.rss_complex)
                                              : -std::numeric_limits<double>::infinity();
    return 0.5 * std::log(t.det_complex) + 0.5 * log_rj -
           0.5 * std::log(t.det_simple) - e * std::log(t.rss_simple);
}

double log_front_full(const LinearComparison& cmp, const CmpDims& d, Weighting weighting) {
    const double ri = rss(cmp.x_simple, cmp.y);
    const double rj = rss(cmp.x_complex, cmp.y);
    const double det_i = gram_det(cmp.x_simple);
    const double det_j = gram_det(cmp.x_complex);
    const double nd = static_cast<double>(d.n);
    const double complex_pow = (weighting == Weighting::information) ? 1.5 : 0.5;
    return 0.5 * std::log(det_i) + (nd - static_cast<double>(d.ki)) / 2.0 * std::log(ri) -
           complex_pow * std::log(det_j) - (nd - static_cast<double>(d.kj)) / 2.0 * std::log(rj);
}

} // namespace

LinearIbfResult linear_ibf_exhaustive(const LinearComparison& cmp, Weighting weighting) {
    const CmpDims d = check_cmp(cmp);
    const TermScan scan = scan_terms(cmp);
    if (scan.terms.empty())
        throw std::domain_error("linear_ibf: no usable training samples");
    const double log_c = log_c_constant(d.n, d.ki, d.kj);

    std::vector<double> logs(scan.terms.size());
    for (std::size_t i = 0; i < scan.terms.size(); ++i) {
        const TrainingTerm& t = scan.terms[i];
        double lt = log_term(t, d.ki, d.kj);
        if (weighting == Weighting::information) lt += std::log(t.det_complex);
        logs[i] = lt;
    }
    const double denom = (weighting == Weighting::information)
                             ? static_cast<double>(d.n - d.kj)
                             : static_cast<double>(scan.terms.size() + scan.skipped);
    const double log_avg = log_c + log_sum_exp(logs) - std::log(denom);

    LinearIbfResult out;
    out.log_front = log_front_full(cmp, d, weighting);
    out.log_training_avg = log_avg;
    out.samples_used = scan.terms.size();
    out.samples_skipped = scan.skipped;
    out.singular_skipped = scan.singular;
    out.det_threshold = scan.det_threshold;
    out.estimate.log_bf10 = out.log_front + out.log_training_avg;
    out.estimate.mc_std_error = 0.0;
    out.estimate.draws = scan.terms.size();
    out.estimate.scheme = {weighting == Weighting::information
                               ? SchemeVariant::info_weighted_exhaustive
                               : SchemeVariant::exhaustive_mts,
                           scan.terms.size()};
    out.estimate.combiner = Combiner::arithmetic;
    return out;
}

LinearIbfResult linear_ibf_sampled(const LinearComparison& cmp, Weighting weighting,
                                   std::size_t L, const RngStream& rng) {
    if (L < 1) throw std::invalid_argument("linear_ibf_sampled: L must be >= 1");
    const CmpDims d = check_cmp(cmp);
    const TermScan scan = scan_terms(cmp);
    if (scan.terms.empty())
        throw std::domain_error("linear_ibf: no usable training samples");
    const double log_c = log_c_constant(d.n, d.ki, d.kj);

    // cumulative draw distribution: uniform over samples, or det-proportional
    std::vector<double> cum(scan.terms.size());
    double total = 0.0;
    for (std::size_t i = 0; i < scan.terms.size(); ++i) {
        total += (weighting == Weighting::information) ? scan.terms[i].det_complex : 1.0;
        cum[i] = total;
    }

    RngStream stream = rng;
    std::vector<double> values(L);
    for (std::size_t l = 0; l < L; ++l) {
        const double u = stream.uniform() * total;
        const std::size_t pick =
            static_cast<std::size_t>(std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
        values[l] = std::exp(log_c + log_term(scan.terms[std::min(pick, cum.size() - 1)], d.ki, d.kj));
    }
    const McSummary ms = mc_summary(values);
    // degenerate and singular subsets contribute zero to the exhaustive
    // average; rescale so the sampled estimand matches it
    const double keep_fraction =
        (weighting == Weighting::information)
            ? total / (static_cast<double>(d.n - d.kj) * gram_det(cmp.x_complex))
            : static_cast<double>(scan.terms.size()) /
                  static_cast<double>(scan.terms.size() + scan.skipped);

    LinearIbfResult out;
    // sampled mode always corrects the plain (uniform) full-data factor
    out.log_front = log_front_full(cmp, d, Weighting::uniform);
    out.log_training_avg = std::log(ms.mean * keep_fraction);
    out.samples_used = L;
    out.samples_skipped = scan.skipped;
    out.singular_skipped = scan.singular;
    out.det_threshold = scan.det_threshold;
    out.estimate.log_bf10 = out.log_front + out.log_training_avg;
    out.estimate.mc_std_error = ms.std_error * keep_fraction;
    out.estimate.draws = L;
    out.estimate.scheme = {weighting == Weighting::information
                               ? SchemeVariant::info_weighted_random
                               : SchemeVariant::random_mts,
                           L};
    out.estimate.combiner = Combiner::arithmetic;
    out.estimate.seed = rng.seed();
    return out;
}

BayesFactorEstimate findley_ibf(std::span<const double> x, std::span<const double> d,
                                Weighting weighting) {
    if (x.size() != d.size() || x.empty())
        throw std::invalid_argument("findley_ibf: x and d must be nonempty and equal length");
    double d2 = 0.0, xd = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        d2 += d[i] * d[i];
        xd += x[i] * d[i];
    }
    if (!(d2 > 0.0)) throw std::domain_error("findley_ibf: all covariates are zero");
    const double n = static_cast<double>(x.size());

    double avg = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double w = (weighting == Weighting::information) ? d[i] * d[i] / d2 : 1.0 / n;
        avg += w * std::abs(d[i]) * std::exp(-0.5 * x[i] * x[i] - kHalfLog2Pi);
    }

    BayesFactorEstimate est;
    est.log_bf10 = kHalfLog2Pi - 0.5 * std::log(d2) + xd * xd / (2.0 * d2) + std::log(avg);
    est.draws = x.size();
    est.scheme = {weighting == Weighting::information ? SchemeVariant::info_weighted_exhaustive
                                                      : SchemeVariant::exhaustive_mts,
                  x.size()};
    est.combiner = Combiner::arithmetic;
    return est;
}

EpPriorStats findley_ep_prior_stats(std::span<const double> x, std::span<const double> d,
                                    Weighting weighting) {
    if (x.size() != d.size() || x.empty())
        throw std::invalid_argument("findley_ep_prior_stats: bad input");
    double d2 = 0.0;
    for (double di : d) d2 += di * di;
    if (!(d2 > 0.0)) throw std::domain_error("findley_ep_prior_stats: all covariates are zero");
    const double n = static_cast<double>(x.size());

    EpPriorStats s;
    double second = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (d[i] == 0.0) continue;
        const double w = (weighting == Weighting::information) ? d[i] * d[i] / d2 : 1.0 / n;
        const double mu = x[i] / d[i];
        const double var = 1.0 / (d[i] * d[i]);
        s.total_mass += w * (d[i] > 0.0 ? 1.0 : -1.0);
        s.mean += w * mu;
        second += w * (var + mu * mu);
    }
    s.variance = second - s.mean * s.mean;
    return s;
}

double gprior_log_bf(const LinearComparison& cmp, double g) {
    const CmpDims d = check_cmp(cmp);
    if (!(g >= 0.0)) throw std::domain_error("gprior_log_bf: g must be >= 0");
    double yy = 0.0;
    for (double v : cmp.y) yy += v * v;
    auto q_of = [&](const Matrix& x) {
        const LsqSummary ls = least_squares(x, cmp.y);
        if (ls.min_abs_pivot <= 1e-12 * ls.max_abs_pivot)
            throw std::domain_error("gprior_log_bf: rank-deficient design");
        return yy - g / (g + 1.0) * ls.fitted_sq;
    };
    const double nd = static_cast<double>(d.n);
    const double kdiff = static_cast<double>(d.kj - d.ki);
    return -0.5 * kdiff * std::log1p(g) - 0.5 * nd * std::log(q_of(cmp.x_complex)) +
           0.5 * nd * std::log(q_of(cmp.x_simple));
}

Matrix near_collinear_design(std::size_t m, double delta) {
    if (m < 1) throw std::invalid_argument("near_collinear_design: m must be >= 1");
    const std::size_t n = 2 * m + 1;
    Matrix x(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = (i < m) ? 0.0 : (i < 2 * m ? delta : 1.0);
    }
    return x;
}

double fitted_slope(std::span<const std::size_t> grid, std::span<const double> values) {
    if (grid.size() != values.size() || grid.size() < 2)
        throw std::invalid_argument("fitted_slope: need >= 2 points");
    const double n = static_cast<double>(grid.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double lx = std::log(static_cast<double>(grid[i]));
        sx += lx;
        sy += values[i];
        sxx += lx * lx;
        sxy += lx * values[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

double findley_study_log_bf(std::span<const double> x_all, std::size_t n, Weighting weighting,
                            std::size_t truncate_top) {
    std::vector<double> d(n), x(x_all.begin(), x_all.begin() + static_cast<std::ptrdiff_t>(n));
    for (std::size_t i = 0; i < n; ++i) d[i] = 1.0 / std::sqrt(static_cast<double>(i + 1));
    if (truncate_top > 0 && truncate_top < n) {
        // d is decreasing, so the most informative samples come first
        std::vector<double> xt(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(truncate_top));
        std::vector<double> dt(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(truncate_top));
        double d2_full = 0.0, xd_full = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d2_full += d[i] * d[i];
            xd_full += x[i] * d[i];
        }
        // full-data factor keeps every observation; only the average is truncated
        double d2t = 0.0;
        for (double v : dt) d2t += v * v;
        double avg = 0.0;
        for (std::size_t i = 0; i < truncate_top; ++i) {
            const double w = (weighting == Weighting::information) ? dt[i] * dt[i] / d2t
                                                                   : 1.0 / static_cast<double>(truncate_top);
            avg += w * std::abs(dt[i]) * std::exp(-0.5 * xt[i] * xt[i] - kHalfLog2Pi);
        }
        return kHalfLog2Pi - 0.5 * std::log(d2_full) + xd_full * xd_full / (2.0 * d2_full) +
               std::log(avg);
    }
    return findley_ibf(x, d, weighting).log_bf10;
}

} // namespace

StudyResult consistency_study(StudyKind kind, const StudyConfig& config) {
    if (config.grid.size() < 2) throw std::invalid_argument("consistency_study: need a grid");
    if (config.n_seeds < 1) throw std::invalid_argument("consistency_study: need seeds");
    StudyResult res;
    res.log_bf_by_seed.assign(config.n_seeds, std::vector<double>(config.grid.size(), 0.0));

    for (std::size_t s = 0; s < config.n_seeds; ++s) {
        RngStream rng(config.base_seed + s, 0);
        switch (kind) {
            case StudyKind::findley: {
                const std::size_t n_max = *std::max_element(config.grid.begin(), config.grid.end());
                std::vector<double> x(n_max);
                for (std::size_t i = 0; i < n_max; ++i)
                    x[i] = config.theta / std::sqrt(static_cast<double>(i + 1)) + rng.normal();
                for (std::size_t gi = 0; gi < config.grid.size(); ++gi)
                    res.log_bf_by_seed[s][gi] = findley_study_log_bf(
                        x, config.grid[gi], config.weighting, config.truncate_top);
                break;
            }
            case StudyKind::gprior: {
                for (std::size_t gi = 0; gi < config.grid.size(); ++gi) {
                    const std::size_t n = config.grid[gi];
                    if (n % 2 == 0 || n < 3)
                        throw std::invalid_argument("gprior study: grid entries must be odd >= 3");
                    const std::size_t m = (n - 1) / 2;
                    LinearComparison cmp;
                    cmp.x_complex = near_collinear_design(m, config.delta);
                    cmp.x_simple = Matrix(n, 1);
                    for (std::size_t i = 0; i < n; ++i) cmp.x_simple(i, 0) = 1.0;
                    cmp.y.resize(n);
                    RngStream sub = rng.substream(gi);
                    for (std::size_t i = 0; i < n; ++i)
                        cmp.y[i] = config.theta * cmp.x_complex(i, 1) + sub.normal();
                    const double g = config.g >= 0.0 ? config.g : static_cast<double>(n);
                    res.log_bf_by_seed[s][gi] = gprior_log_bf(cmp, g);
                }
                break;
            }
            case StudyKind::near_collinear: {
                for (std::size_t gi = 0; gi < config.grid.size(); ++gi) {
                    const std::size_t m = config.grid[gi];
                    const std::size_t n = 2 * m + 1;
                    LinearComparison cmp;
                    cmp.x_complex = near_collinear_design(m, config.delta);
                    cmp.x_simple = Matrix(n, 1);
                    for (std::size_t i = 0; i < n; ++i) cmp.x_simple(i, 0) = 1.0;
                    cmp.y.resize(n);
                    RngStream sub = rng.substream(gi);
                    for (std::size_t i = 0; i < n; ++i)
                        cmp.y[i] = config.theta * cmp.x_complex(i, 1) + sub.normal();
                    const LinearIbfResult unif = linear_ibf_exhaustive(cmp, Weighting::uniform);
                    const LinearIbfResult info = linear_ibf_exhaustive(cmp, Weighting::information);
                    res.log_bf_by_seed[s][gi] = unif.log_training_avg - info.log_training_avg;
                }
                break;
            }
        }
    }

    for (std::size_t gi = 0; gi < config.grid.size(); ++gi) {
        std::vector<double> col(config.n_seeds);
        for (std::size_t s = 0; s < config.n_seeds; ++s) col[s] = res.log_bf_by_seed[s][gi];
        std::sort(col.begin(), col.end());
        const double med = (config.n_seeds % 2 == 1)
                               ? col[config.n_seeds / 2]
                               : 0.5 * (col[config.n_seeds / 2 - 1] + col[config.n_seeds / 2]);
        StudyRow row;
        row.n_or_m = static_cast<double>(config.grid[gi]);
        row.param = config.theta;
        row.median_log_bf = med;
        row.seeds = config.n_seeds;
        res.rows.push_back(row);
    }
    for (std::size_t gi = 1; gi < res.rows.size(); ++gi) {
        std::vector<std::size_t> g(config.grid.begin(), config.grid.begin() + gi + 1);
        std::vector<double> v(gi + 1);
        for (std::size_t i = 0; i <= gi; ++i) v[i] = res.rows[i].median_log_bf;
        res.rows[gi].slope_to_here = fitted_slope(g, v);
    }
    return res;
}

} // namespace ibf
