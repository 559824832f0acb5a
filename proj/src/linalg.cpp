#include "ibf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ibf {

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
    Matrix out(idx.size(), cols);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) out(i, j) = (*this)(idx[i], j);
    return out;
}

namespace {

// Householder QR on the augmented block [X | y] when with_y is set.
LsqSummary qr_summary(const Matrix& x, std::span<const double> y, bool with_y) {
    const std::size_t n = x.rows, k = x.cols;
    if (k == 0 || n < k) throw std::invalid_argument("least_squares: need rows >= cols >= 1");
    if (with_y && y.size() != n) throw std::invalid_argument("least_squares: y size mismatch");

    const std::size_t m = k + (with_y ? 1 : 0);
    Matrix w(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) w(i, j) = x(i, j);
        if (with_y) w(i, k) = y[i];
    }

    LsqSummary s;
    s.det_gram = 1.0;
    s.min_abs_pivot = std::numeric_limits<double>::infinity();
    s.max_abs_pivot = 0.0;
    std::vector<double> v(n);
    for (std::size_t j = 0; j < k; ++j) {
        double norm_sq = 0.0;
        for (std::size_t i = j; i < n; ++i) norm_sq += w(i, j) * w(i, j);
        const double norm = std::sqrt(norm_sq);
        s.det_gram *= norm_sq;
        s.min_abs_pivot = std::min(s.min_abs_pivot, norm);
        s.max_abs_pivot = std::max(s.max_abs_pivot, norm);
        if (norm == 0.0) continue;  // exactly dependent column

        const double alpha = (w(j, j) >= 0.0) ? -norm : norm;
        v[j] = w(j, j) - alpha;
        double vnorm_sq = v[j] * v[j];
        for (std::size_t i = j + 1; i < n; ++i) {
            v[i] = w(i, j);
            vnorm_sq += v[i] * v[i];
        }
        w(j, j) = alpha;
        if (vnorm_sq == 0.0) continue;
        for (std::size_t c = j + 1; c < m; ++c) {
            double dot = 0.0;
            for (std::size_t i = j; i < n; ++i) dot += v[i] * w(i, c);
            const double f = 2.0 * dot / vnorm_sq;
            for (std::size_t i = j; i < n; ++i) w(i, c) -= f * v[i];
        }
    }

    if (with_y) {
        for (std::size_t i = 0; i < k; ++i) s.fitted_sq += w(i, k) * w(i, k);
        for (std::size_t i = k; i < n; ++i) s.rss += w(i, k) * w(i, k);
    }
    return s;
}

} // namespace

LsqSummary least_squares(const Matrix& x, std::span<const double> y) {
    return qr_summary(x, y, true);
}

double gram_det(const Matrix& x) {
    return qr_summary(x, {}, false).det_gram;
}

LsqSummary gram_summary(const Matrix& x) {
    return qr_summary(x, {}, false);
}

double rss(const Matrix& x, std::span<const double> y) {
    LsqSummary s = least_squares(x, y);
    if (s.min_abs_pivot <= 1e-12 * s.max_abs_pivot)
        throw std::domain_error("rss: design is rank deficient");
    return s.rss;
}

} // namespace ibf
