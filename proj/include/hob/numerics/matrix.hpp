#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace hob {

/// Dense square matrix, row-major. Sized for the handful of expiry dates a
/// contract carries, not for general linear algebra.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t dim, double fill = 0.0);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * dim_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * dim_ + j]; }

    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;

    /// Largest absolute entrywise difference.
    double max_abs_diff(const Matrix& other) const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

/// Lower-triangular Cholesky factor L with L * L^T = m.
/// Throws NotPositiveDefinite when a squared pivot falls to `pivot_tolerance` or below.
Matrix cholesky(const Matrix& m, double pivot_tolerance = 1e-15);

/// Symmetric positive-definite matrix with unit diagonal. The Cholesky factor
/// is computed once on construction, so an instance is always a valid
/// correlation matrix.
class CorrelationMatrix {
public:
    /// Throws ValidationError (asymmetric, non-unit diagonal, non-finite) or
    /// NotPositiveDefinite.
    explicit CorrelationMatrix(Matrix entries);

    static CorrelationMatrix identity(std::size_t dim);

    std::size_t dim() const noexcept { return entries_.dim(); }
    double operator()(std::size_t i, std::size_t j) const noexcept { return entries_(i, j); }
    const Matrix& entries() const noexcept { return entries_; }
    const Matrix& cholesky_factor() const noexcept { return factor_; }

    /// Principal submatrix over `indices` (in the given order).
    CorrelationMatrix select(const std::vector<std::size_t>& indices) const;

private:
    Matrix entries_;
    Matrix factor_;
};

Matrix cholesky(const CorrelationMatrix& m);

}  // namespace hob
