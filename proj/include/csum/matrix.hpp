/*
 * Copyright 2026 The csum Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CSUM_MATRIX_HPP
#define CSUM_MATRIX_HPP

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "csum/errors.hpp"
#include "csum/exact.hpp"

namespace csum {

/**
 * @brief Dense row-major matrix with 1-based element access.
 *
 * Rows and columns are always positive; `data().size() == rows() * cols()`.
 * Entry (1,1) is the top-left corner.
 */
template <Scalar S>
class Matrix {
 public:
  using value_type = S;

  Matrix(std::size_t rows, std::size_t cols, S fill = S{}) : rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0) {
      throw DimensionError("matrix dimensions must be positive, got " + std::to_string(rows) + "x" +
                           std::to_string(cols));
    }
    data_.assign(rows * cols, fill);
  }

  /// Build from equal-length rows; throws DimensionError on empty or ragged input.
  static Matrix from_rows(const std::vector<std::vector<S>>& rows) {
    if (rows.empty() || rows.front().empty()) throw DimensionError("from_rows needs at least one non-empty row");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) {
        throw DimensionError("from_rows: row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                             " entries, expected " + std::to_string(m.cols_));
      }
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * m.cols_));
    }
    return m;
  }

  /// n×1 column vector.
  static Matrix column(const std::vector<S>& values) {
    if (values.empty()) throw DimensionError("column vector must be non-empty");
    Matrix m(values.size(), 1);
    std::copy(values.begin(), values.end(), m.data_.begin());
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = S{1};
    return m;
  }

  static Matrix ones(std::size_t rows, std::size_t cols) { return Matrix(rows, cols, S{1}); }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }

  S& operator()(std::size_t i, std::size_t j) noexcept {
    assert(i >= 1 && i <= rows_ && j >= 1 && j <= cols_);
    return data_[(i - 1) * cols_ + (j - 1)];
  }
  const S& operator()(std::size_t i, std::size_t j) const noexcept {
    assert(i >= 1 && i <= rows_ && j >= 1 && j <= cols_);
    return data_[(i - 1) * cols_ + (j - 1)];
  }

  /// Bounds-checked 1-based access.
  [[nodiscard]] const S& at(std::size_t i, std::size_t j) const {
    if (i < 1 || i > rows_ || j < 1 || j > cols_) {
      throw DimensionError("index (" + std::to_string(i) + "," + std::to_string(j) + ") outside " +
                           std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix");
    }
    return (*this)(i, j);
  }

  [[nodiscard]] std::span<S> data() noexcept { return data_; }
  [[nodiscard]] std::span<const S> data() const noexcept { return data_; }

  /// Zero-based row view.
  [[nodiscard]] std::span<const S> row_span(std::size_t i) const noexcept {
    return std::span<const S>(data_).subspan((i - 1) * cols_, cols_);
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 1; i <= m.rows_; ++i) {
      os << (i == 1 ? "[" : ",[");
      for (std::size_t j = 1; j <= m.cols_; ++j) os << (j == 1 ? "" : ",") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<S> data_;
};

namespace detail {

inline std::string shape_str(std::size_t r, std::size_t c) { return std::to_string(r) + "x" + std::to_string(c); }

template <Scalar S>
void require_same_shape(const Matrix<S>& a, const Matrix<S>& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + shape_str(a.rows(), a.cols()) + " vs " +
                         shape_str(b.rows(), b.cols()));
  }
}

}  // namespace detail

template <Scalar S>
Matrix<S> add(const Matrix<S>& a, const Matrix<S>& b) {
  detail::require_same_shape(a, b, "add");
  Matrix<S> out(a.rows(), a.cols());
  auto o = out.data();
  auto x = a.data();
  auto y = b.data();
  for (std::size_t k = 0; k < o.size(); ++k) o[k] = x[k] + y[k];
  return out;
}

template <Scalar S>
Matrix<S> subtract(const Matrix<S>& a, const Matrix<S>& b) {
  detail::require_same_shape(a, b, "subtract");
  Matrix<S> out(a.rows(), a.cols());
  auto o = out.data();
  auto x = a.data();
  auto y = b.data();
  for (std::size_t k = 0; k < o.size(); ++k) o[k] = x[k] - y[k];
  return out;
}

template <Scalar S>
Matrix<S> scale(S c, const Matrix<S>& a) {
  Matrix<S> out(a.rows(), a.cols());
  auto o = out.data();
  auto x = a.data();
  for (std::size_t k = 0; k < o.size(); ++k) o[k] = c * x[k];
  return out;
}

template <Scalar S>
Matrix<S> transpose(const Matrix<S>& a) {
  Matrix<S> out(a.cols(), a.rows());
  for (std::size_t i = 1; i <= a.rows(); ++i)
    for (std::size_t j = 1; j <= a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

template <Scalar S>
Matrix<S> multiply(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("multiply: inner dimensions differ, " + detail::shape_str(a.rows(), a.cols()) + " * " +
                         detail::shape_str(b.rows(), b.cols()));
  }
  Matrix<S> out(a.rows(), b.cols());
  for (std::size_t i = 1; i <= a.rows(); ++i) {
    for (std::size_t k = 1; k <= a.cols(); ++k) {
      const S aik = a(i, k);
      if (aik == S{}) continue;
      for (std::size_t j = 1; j <= b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

/// Copy of the height×width submatrix whose top-left entry is (top, left).
template <Scalar S>
Matrix<S> block(const Matrix<S>& a, std::size_t top, std::size_t left, std::size_t height, std::size_t width) {
  if (top < 1 || left < 1 || height < 1 || width < 1 || top + height - 1 > a.rows() || left + width - 1 > a.cols()) {
    throw DimensionError("block (" + std::to_string(top) + "," + std::to_string(left) + ") of size " +
                         detail::shape_str(height, width) + " does not fit in " +
                         detail::shape_str(a.rows(), a.cols()));
  }
  Matrix<S> out(height, width);
  for (std::size_t i = 1; i <= height; ++i)
    for (std::size_t j = 1; j <= width; ++j) out(i, j) = a(top + i - 1, left + j - 1);
  return out;
}

template <Scalar S>
double max_abs_difference(const Matrix<S>& a, const Matrix<S>& b) {
  detail::require_same_shape(a, b, "max_abs_difference");
  double worst = 0.0;
  auto x = a.data();
  auto y = b.data();
  for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, abs_diff(x[k], y[k]));
  return worst;
}

/// True iff the largest entrywise difference is at most tol; tol == 0 demands equality.
template <Scalar S>
bool approx_equal(const Matrix<S>& a, const Matrix<S>& b, double tol) {
  if (tol < 0) throw DomainError("approx_equal: tolerance must be nonnegative");
  detail::require_same_shape(a, b, "approx_equal");
  if (tol == 0) return a == b;
  return max_abs_difference(a, b) <= tol;
}

template <Scalar S>
S sum_entries(const Matrix<S>& a) {
  S total{};
  for (const S& v : a.data()) total += v;
  return total;
}

/// Entrywise conversion between scalar modes. Exact → double is lossless below 2^53.
template <Scalar To, Scalar From>
Matrix<To> matrix_cast(const Matrix<From>& a) {
  if constexpr (std::same_as<To, From>) {
    return a;
  } else {
    Matrix<To> out(a.rows(), a.cols());
    auto o = out.data();
    auto x = a.data();
    for (std::size_t k = 0; k < o.size(); ++k) {
      if constexpr (is_exact_v<To>) {
        if (x[k] != std::trunc(x[k]) || std::abs(x[k]) > 9.0e18) {
          throw DomainError("matrix_cast: value is not an integer representable in exact mode");
        }
        o[k] = Exact(static_cast<long long>(x[k]));
      } else {
        o[k] = to_double(x[k]);
      }
    }
    return out;
  }
}

}  // namespace csum

#endif  // CSUM_MATRIX_HPP
