#include "ibf/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ibf {

const char* scheme_name(SchemeVariant v) {
    switch (v) {
        case SchemeVariant::exhaustive_mts: return "mts";
        case SchemeVariant::random_mts: return "random-mts";
        case SchemeVariant::smts: return "smts";
        case SchemeVariant::info_weighted_exhaustive: return "info-weighted";
        case SchemeVariant::info_weighted_random: return "info-weighted-random";
        case SchemeVariant::imaginary: return "imaginary";
    }
    return "?";
}

MtsEnumeration enumerate_mts_censored_exp(const SurvivalDataset& dataset) {
    if (dataset.groups.empty() || dataset.groups.size() > 2)
        throw std::invalid_argument("enumerate_mts: need 1 or 2 groups");
    std::vector<std::vector<std::size_t>> uncensored;
    for (const auto& [name, obs] : dataset.groups) {
        std::vector<std::size_t> u;
        for (std::size_t i = 0; i < obs.size(); ++i)
            if (obs[i].status == Status::observed) u.push_back(i);
        uncensored.push_back(std::move(u));
    }
    MtsEnumeration out;
    for (const auto& u : uncensored) {
        if (u.empty()) {  // a fully censored group admits no proper training sample
            out.no_mts = true;
            return out;
        }
    }
    auto group_it = dataset.groups.begin();
    if (dataset.groups.size() == 1) {
        const auto& obs = group_it->second;
        for (std::size_t i : uncensored[0]) {
            TrainingSample s;
            s.indices = {{i}};
            s.accumulated_time = {obs[i].value};
            out.samples.push_back(std::move(s));
        }
    } else {
        const auto& obs1 = group_it->second;
        const auto& obs2 = std::next(group_it)->second;
        for (std::size_t i : uncensored[0]) {
            for (std::size_t j : uncensored[1]) {
                TrainingSample s;
                s.indices = {{i}, {j}};
                s.accumulated_time = {obs1[i].value, obs2[j].value};
                out.samples.push_back(std::move(s));
            }
        }
    }
    return out;
}

MtsEnumeration enumerate_mts_bernoulli(const std::vector<int>& bits) {
    MtsEnumeration out;
    std::vector<std::size_t> zeros, ones;
    for (std::size_t i = 0; i < bits.size(); ++i) (bits[i] ? ones : zeros).push_back(i);
    if (zeros.empty() || ones.empty()) {
        out.no_mts = true;
        return out;
    }
    for (std::size_t z : zeros) {
        for (std::size_t o : ones) {
            TrainingSample s;
            s.indices = {{z, o}};
            s.bern_kind = BernoulliTsKind::mts_pair;
            s.bern_count = 1;
            out.samples.push_back(std::move(s));
        }
    }
    return out;
}

LinearMtsEnumeration enumerate_mts_linear(const Matrix& design_complex, std::size_t subset_size) {
    const std::size_t n = design_complex.rows, k = design_complex.cols;
    if (subset_size < k || subset_size > n)
        throw std::invalid_argument("enumerate_mts_linear: bad subset size");
    const LsqSummary full = gram_summary(design_complex);
    const double full_det = full.det_gram;
    if (full.min_abs_pivot <= 1e-12 * full.max_abs_pivot)
        throw std::domain_error("enumerate_mts_linear: full design is rank deficient");

    LinearMtsEnumeration out;
    // relative floor: tiny fraction of the full determinant scaled to subset size
    out.det_threshold =
        1e-12 * std::pow(full_det, static_cast<double>(subset_size) / static_cast<double>(n));

    std::vector<std::size_t> idx(subset_size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        const Matrix sub = design_complex.select_rows(idx);
        const double det = gram_det(sub);
        if (det > out.det_threshold) {
            out.subsets.push_back(idx);
            out.det_complex.push_back(det);
        } else {
            ++out.singular_skipped;
        }
        // next combination
        std::size_t i = subset_size;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - subset_size) break;
            if (i == 0) return out;
        }
        ++idx[i];
        for (std::size_t j = i + 1; j < subset_size; ++j) idx[j] = idx[j - 1] + 1;
    }
}

TrainingSample draw_smts_one_group(const std::vector<CensoredObservation>& group, RngStream& rng) {
    bool any_uncensored = false;
    for (const auto& o : group) any_uncensored |= (o.status == Status::observed);
    if (!any_uncensored)
        throw std::domain_error("draw_smts: no proper subset (group fully censored)");

    std::vector<std::size_t> remaining(group.size());
    std::iota(remaining.begin(), remaining.end(), 0);
    TrainingSample s;
    s.indices.resize(1);
    double total = 0.0;
    while (true) {
        const std::size_t pick = rng.uniform_below(remaining.size());
        const std::size_t i = remaining[pick];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
        s.indices[0].push_back(i);
        total += group[i].value;
        if (group[i].status == Status::observed) break;
    }
    s.accumulated_time = {total};
    return s;
}

TrainingSample draw_smts_two_group(const SurvivalDataset& dataset, RngStream& rng) {
    if (dataset.groups.size() != 2)
        throw std::invalid_argument("draw_smts_two_group: need exactly 2 groups");
    auto it = dataset.groups.begin();
    TrainingSample a = draw_smts_one_group(it->second, rng);
    TrainingSample b = draw_smts_one_group(std::next(it)->second, rng);
    TrainingSample s;
    s.indices = {a.indices[0], b.indices[0]};
    s.accumulated_time = {a.accumulated_time[0], b.accumulated_time[0]};
    return s;
}

TrainingSample draw_smts_bernoulli(const std::vector<int>& bits, RngStream& rng) {
    const BernoulliSummary sum = bernoulli_summary(bits);
    if (!sum.has_mts())
        throw std::domain_error("draw_smts: no proper subset (all bits equal)");
    std::vector<std::size_t> remaining(bits.size());
    std::iota(remaining.begin(), remaining.end(), 0);
    TrainingSample s;
    s.indices.resize(1);
    bool seen[2] = {false, false};
    std::size_t run = 0;
    int first = -1;
    while (true) {
        const std::size_t pick = rng.uniform_below(remaining.size());
        const std::size_t i = remaining[pick];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
        s.indices[0].push_back(i);
        const int b = bits[i];
        if (first < 0) first = b;
        seen[b] = true;
        if (b == first) ++run;
        if (seen[0] && seen[1]) break;
    }
    s.bern_kind = (first == 0) ? BernoulliTsKind::zeros_then_one : BernoulliTsKind::ones_then_zero;
    s.bern_count = run;
    return s;
}

WeightedSampleSet smts_exact_distribution_one_group(const std::vector<CensoredObservation>& group) {
    const std::size_t n = group.size();
    if (n > 25)
        throw std::length_error(
            "smts_exact_distribution: group too large for exact enumeration; use draw_smts");
    std::vector<std::size_t> censored, uncensored;
    for (std::size_t i = 0; i < n; ++i)
        (group[i].status == Status::censored ? censored : uncensored).push_back(i);
    if (uncensored.empty())
        throw std::domain_error("smts_exact_distribution: no proper subset exists");

    WeightedSampleSet out;
    const std::size_t nc = censored.size();
    // every censored subset C (any order) followed by one uncensored terminator;
    // P = |C|! / (n * (n-1) * ... * (n-|C|))
    for (std::size_t mask = 0; mask < (std::size_t{1} << nc); ++mask) {
        std::vector<std::size_t> prefix;
        double csum = 0.0;
        for (std::size_t b = 0; b < nc; ++b) {
            if (mask & (std::size_t{1} << b)) {
                prefix.push_back(censored[b]);
                csum += group[censored[b]].value;
            }
        }
        double prob = 1.0;
        for (std::size_t t = 0; t <= prefix.size(); ++t)
            prob /= static_cast<double>(n - t);
        for (std::size_t t = 2; t <= prefix.size(); ++t) prob *= static_cast<double>(t);
        for (std::size_t u : uncensored) {
            TrainingSample s;
            s.indices.resize(1);
            s.indices[0] = prefix;
            s.indices[0].push_back(u);
            s.accumulated_time = {csum + group[u].value};
            out.samples.push_back(std::move(s));
            out.probabilities.push_back(prob);
        }
    }
    return out;
}

WeightedSampleSet smts_exact_distribution_bernoulli(const BernoulliSummary& summary) {
    if (summary.n > 25)
        throw std::length_error(
            "smts_exact_distribution: sequence too large for exact enumeration; use draw_smts");
    if (!summary.has_mts())
        throw std::domain_error("smts_exact_distribution: no proper subset exists");
    const double n = static_cast<double>(summary.n);
    const double n0 = static_cast<double>(summary.zeros());
    const double n1 = static_cast<double>(summary.ones);

    WeightedSampleSet out;
    auto add = [&out](BernoulliTsKind kind, std::size_t count, double prob) {
        if (prob <= 0.0) return;
        TrainingSample s;
        s.bern_kind = kind;
        s.bern_count = count;
        out.samples.push_back(std::move(s));
        out.probabilities.push_back(prob);
    };
    // j same symbols then the first opposite one
    for (std::size_t j = 1; j <= summary.zeros(); ++j) {
        double p = n1 / (n - static_cast<double>(j));
        for (std::size_t t = 0; t < j; ++t)
            p *= (n0 - static_cast<double>(t)) / (n - static_cast<double>(t));
        add(BernoulliTsKind::zeros_then_one, j, p);
    }
    for (std::size_t j = 1; j <= summary.ones; ++j) {
        double p = n0 / (n - static_cast<double>(j));
        for (std::size_t t = 0; t < j; ++t)
            p *= (n1 - static_cast<double>(t)) / (n - static_cast<double>(t));
        add(BernoulliTsKind::ones_then_zero, j, p);
    }
    return out;
}

WeightedSampleSet binet_cauchy_weights(const Matrix& design, std::size_t subset_size) {
    const std::size_t n = design.rows, k = design.cols;
    if (subset_size < k || subset_size > n)
        throw std::invalid_argument("binet_cauchy_weights: subset size must be in [k, n]");
    const LsqSummary full = gram_summary(design);
    const double full_det = full.det_gram;
    if (full.min_abs_pivot <= 1e-12 * full.max_abs_pivot)
        throw std::domain_error("binet_cauchy_weights: design is rank deficient");

    // C(n-k, s-k) copies of each k-subset determinant make up the full one
    double norm = full_det;
    for (std::size_t t = 0; t < subset_size - k; ++t)
        norm *= static_cast<double>(n - k - t) / static_cast<double>(t + 1);

    WeightedSampleSet out;
    std::vector<std::size_t> idx(subset_size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        const double det = gram_det(design.select_rows(idx));
        TrainingSample s;
        s.indices = {idx};
        out.samples.push_back(std::move(s));
        out.probabilities.push_back(det / norm);
        std::size_t i = subset_size;
        bool done = false;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - subset_size) break;
            if (i == 0) done = true;
        }
        if (done) break;
        ++idx[i];
        for (std::size_t j = i + 1; j < subset_size; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

std::vector<double> normal_surrogate(double xbar, double s2, std::size_t n, RngStream& rng) {
    if (n < 3) throw std::invalid_argument("normal_surrogate: need n >= 3");
    if (!(s2 > 0.0)) throw std::invalid_argument("normal_surrogate: s2 must be > 0");
    std::vector<double> z(n);
    for (int attempt = 0; attempt < 64; ++attempt) {
        double mean = 0.0;
        for (auto& zi : z) {
            zi = rng.normal();
            mean += zi;
        }
        mean /= static_cast<double>(n);
        double sz2 = 0.0;
        for (double zi : z) sz2 += (zi - mean) * (zi - mean);
        if (sz2 == 0.0) continue;  // degenerate draw; try again
        const double scale = std::sqrt(s2 / sz2);
        for (auto& zi : z) zi = (zi - mean) * scale + xbar;
        return z;
    }
    throw std::runtime_error("normal_surrogate: repeated degenerate draws");
}

double poisson_imaginary_quantile(const PoissonObservation& obs, double u) {
    if (obs.count < 1) throw std::domain_error("poisson imaginary sample needs X >= 1");
    if (!(obs.exposure > 0.0)) throw std::domain_error("poisson imaginary sample needs T > 0");
    return obs.exposure * (1.0 - std::pow(u, 1.0 / static_cast<double>(obs.count)));
}

double poisson_imaginary_draw(const PoissonObservation& obs, RngStream& rng) {
    return poisson_imaginary_quantile(obs, rng.uniform());
}

} // namespace ibf
