#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ibf {

/// Dense row-major matrix, sized for tall-thin regression designs.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    /// Rows selected by index, in order.
    Matrix select_rows(std::span<const std::size_t> idx) const;
};

/// Least-squares summary of y on X via Householder QR.
struct LsqSummary {
    double rss = 0.0;        // squared residual norm
    double fitted_sq = 0.0;  // y' X (X'X)^{-1} X' y
    double det_gram = 0.0;   // |X'X| as the product of squared R diagonals
    double min_abs_pivot = 0.0;
    double max_abs_pivot = 0.0;
};

LsqSummary least_squares(const Matrix& x, std::span<const double> y);

/// |X'X| alone (same factorization, no response).
double gram_det(const Matrix& x);

/// Factorization summary without a response (rss/fitted_sq are zero).
LsqSummary gram_summary(const Matrix& x);

/// Squared residual norm of y on a full-column-rank X.
/// Throws std::domain_error when X is numerically rank deficient.
double rss(const Matrix& x, std::span<const double> y);

} // namespace ibf
