#include "hob/numerics/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hob/errors.hpp"

namespace hob {

Matrix::Matrix(std::size_t dim, double fill) : dim_(dim), data_(dim * dim, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : dim_(rows.size()), data_() {
    data_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
        if (row.size() != dim_) throw DimensionMismatch("Matrix: rows must form a square matrix");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (rhs.dim_ != dim_) throw DimensionMismatch("Matrix product: dimension mismatch");
    Matrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t k = 0; k < dim_; ++k) {
            const double a = (*this)(i, k);
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < dim_; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

double Matrix::max_abs_diff(const Matrix& other) const {
    if (other.dim_ != dim_) throw DimensionMismatch("max_abs_diff: dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i)
        worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
    return worst;
}

Matrix cholesky(const Matrix& m, double pivot_tolerance) {
    const std::size_t n = m.dim();
    Matrix l(n);
    for (std::size_t j = 0; j < n; ++j) {
        double pivot = m(j, j);
        for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
        if (!(pivot > pivot_tolerance)) {
            throw NotPositiveDefinite("cholesky: pivot " + std::to_string(j) + " is " +
                                      std::to_string(pivot) + ", matrix is not positive definite");
        }
        const double ljj = std::sqrt(pivot);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = m(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / ljj;
        }
    }
    return l;
}

CorrelationMatrix::CorrelationMatrix(Matrix entries) : entries_(std::move(entries)) {
    const std::size_t n = entries_.dim();
    if (n == 0) throw ValidationError("CorrelationMatrix: dimension must be positive", "dim");
    for (std::size_t i = 0; i < n; ++i) {
        if (entries_(i, i) != 1.0)
            throw ValidationError("CorrelationMatrix: diagonal entries must equal 1", "entries");
        for (std::size_t j = 0; j < i; ++j) {
            const double a = entries_(i, j);
            if (!std::isfinite(a))
                throw ValidationError("CorrelationMatrix: non-finite entry", "entries");
            if (std::abs(a - entries_(j, i)) > 1e-14)
                throw ValidationError("CorrelationMatrix: matrix is not symmetric", "entries");
            entries_(j, i) = a;
            if (!(std::abs(a) < 1.0))
                throw NotPositiveDefinite("CorrelationMatrix: off-diagonal entry outside (-1, 1)");
        }
    }
    factor_ = cholesky(entries_);
}

CorrelationMatrix CorrelationMatrix::identity(std::size_t dim) {
    return CorrelationMatrix(Matrix::identity(dim));
}

CorrelationMatrix CorrelationMatrix::select(const std::vector<std::size_t>& indices) const {
    Matrix sub(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i)
        for (std::size_t j = 0; j < indices.size(); ++j)
            sub(i, j) = entries_(indices.at(i), indices.at(j));
    return CorrelationMatrix(std::move(sub));
}

Matrix cholesky(const CorrelationMatrix& m) { return m.cholesky_factor(); }

}  // namespace hob
