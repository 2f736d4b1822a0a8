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

#ifndef CSUM_STRUCTURED_HPP
#define CSUM_STRUCTURED_HPP

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "csum/errors.hpp"
#include "csum/exact.hpp"
#include "csum/matrix.hpp"

namespace csum {

namespace detail {

/// Pascal's triangle, grown on demand. Entries that leave the 128-bit range are
/// stored as nullopt and only raise when requested.
class PascalTable {
 public:
  static PascalTable& instance() {
    static PascalTable table;
    return table;
  }

  Exact get(std::size_t n, std::size_t r) {
    {
      std::shared_lock lock(mutex_);
      if (n < rows_.size()) return unwrap(rows_[n][r], n, r);
    }
    std::unique_lock lock(mutex_);
    while (rows_.size() <= n) {
      const auto& prev = rows_.back();
      std::vector<std::optional<Exact>> next(prev.size() + 1);
      next.front() = Exact{1};
      next.back() = Exact{1};
      for (std::size_t k = 1; k + 1 < next.size(); ++k) {
        if (prev[k - 1] && prev[k]) {
          const auto lo = prev[k - 1]->value();
          const auto hi = prev[k]->value();
          Exact::rep sum;
          if (!__builtin_add_overflow(lo, hi, &sum)) next[k] = Exact::from_rep(sum);
        }
      }
      rows_.push_back(std::move(next));
    }
    return unwrap(rows_[n][r], n, r);
  }

 private:
  PascalTable() { rows_.push_back({Exact{1}}); }

  static Exact unwrap(const std::optional<Exact>& v, std::size_t n, std::size_t r) {
    if (!v) throw OverflowError("binomial(" + std::to_string(n) + "," + std::to_string(r) + ") exceeds exact range");
    return *v;
  }

  std::shared_mutex mutex_;
  std::vector<std::vector<std::optional<Exact>>> rows_;
};

}  // namespace detail

/// Exact binomial coefficient; zero when r < 0 or r > n.
inline Exact binomial(std::int64_t n, std::int64_t r) {
  if (n < 0) throw DomainError("binomial: n must be nonnegative, got " + std::to_string(n));
  if (r < 0 || r > n) return Exact{0};
  return detail::PascalTable::instance().get(static_cast<std::size_t>(n), static_cast<std::size_t>(r));
}

/// (m-1)×m band with ones on the diagonal and superdiagonal; R_m * A == collapse_down(A).
inline Matrix<Exact> r_matrix(std::size_t m) {
  if (m < 2) throw DomainError("r_matrix: m must be at least 2, got " + std::to_string(m));
  Matrix<Exact> r(m - 1, m);
  for (std::size_t i = 1; i < m; ++i) {
    r(i, i) = Exact{1};
    r(i, i + 1) = Exact{1};
  }
  return r;
}

/// Falling power R_{m-k+1} ... R_m, materialized from its closed form binomial(k, j-i).
inline Matrix<Exact> r_falling(std::size_t m, std::size_t k) {
  if (k >= m) throw DomainError("r_falling: k=" + std::to_string(k) + " must be below m=" + std::to_string(m));
  Matrix<Exact> r(m - k, m);
  for (std::size_t i = 1; i <= m - k; ++i)
    for (std::size_t j = i; j <= i + k; ++j)
      r(i, j) = binomial(static_cast<std::int64_t>(k), static_cast<std::int64_t>(j - i));
  return r;
}

/// (m-k+1)×m band whose p-th row holds phi_1..phi_k in columns p..p+k-1.
template <Scalar S>
Matrix<S> r_phi(std::size_t m, const Matrix<S>& phi) {
  if (phi.cols() != 1) throw DimensionError("r_phi: phi must be a column vector");
  const std::size_t k = phi.rows();
  if (k > m) throw DimensionError("r_phi: phi length " + std::to_string(k) + " exceeds m=" + std::to_string(m));
  Matrix<S> r(m - k + 1, m);
  for (std::size_t p = 1; p <= m - k + 1; ++p)
    for (std::size_t i = 0; i < k; ++i) r(p, p + i) = phi(i + 1, 1);
  return r;
}

/// Product R^phi_{m-(s-1)(k-1)} ... R^phi_m of s factors; s = 0 gives I_m.
template <Scalar S>
Matrix<S> r_phi_falling(std::size_t m, const Matrix<S>& phi, std::size_t s) {
  if (phi.cols() != 1) throw DimensionError("r_phi_falling: phi must be a column vector");
  const std::size_t k = phi.rows();
  if (s * (k - 1) >= m) {
    throw DimensionError("r_phi_falling: " + std::to_string(s) + " factors of band width " + std::to_string(k) +
                         " exhaust m=" + std::to_string(m));
  }
  Matrix<S> out = Matrix<S>::identity(m);
  for (std::size_t t = 0; t < s; ++t) out = multiply(r_phi(out.rows(), phi), out);
  return out;
}

/// alpha = A^T e: per-column sums as a cols×1 vector.
template <Scalar S>
Matrix<S> column_sum_vector(const Matrix<S>& a) {
  Matrix<S> alpha(a.cols(), 1);
  for (std::size_t i = 1; i <= a.rows(); ++i)
    for (std::size_t j = 1; j <= a.cols(); ++j) alpha(j, 1) += a(i, j);
  return alpha;
}

/// beta = A e: per-row sums as a rows×1 vector.
template <Scalar S>
Matrix<S> row_sum_vector(const Matrix<S>& a) {
  Matrix<S> beta(a.rows(), 1);
  for (std::size_t i = 1; i <= a.rows(); ++i)
    for (std::size_t j = 1; j <= a.cols(); ++j) beta(i, 1) += a(i, j);
  return beta;
}

namespace detail {
inline void check_coefficient_params(std::size_t m, std::size_t n, std::size_t a, std::size_t b) {
  if (a >= m || b >= n) {
    throw DomainError("coefficient matrix needs a < m and b < n, got m=" + std::to_string(m) + " n=" +
                      std::to_string(n) + " a=" + std::to_string(a) + " b=" + std::to_string(b));
  }
}
}  // namespace detail

/**
 * @brief m×n matrix whose (i,j) entry counts how often a(i,j) contributes to the
 * total of collapse_down_power(collapse_right_power(A, b), a).
 *
 * Built as the outer product of the column sum vectors of r_falling(m, a) and
 * r_falling(n, b).
 */
inline Matrix<Exact> coefficient_matrix(std::size_t m, std::size_t n, std::size_t a, std::size_t b) {
  detail::check_coefficient_params(m, n, a, b);
  const Matrix<Exact> alpha = column_sum_vector(r_falling(m, a));
  const Matrix<Exact> beta = column_sum_vector(r_falling(n, b));
  return multiply(alpha, transpose(beta));
}

/// 2^(a+b) (m-a)(n-b).
inline Exact coefficient_matrix_entry_sum(std::size_t m, std::size_t n, std::size_t a, std::size_t b) {
  detail::check_coefficient_params(m, n, a, b);
  return pow(Exact{2}, static_cast<unsigned>(a + b)) * Exact(m - a) * Exact(n - b);
}

/**
 * @brief Toeplitz matrix description: values a_{-(cols-1)}, ..., a_{rows-1} in order,
 * so entry (i,j) is values[(i - j) + cols - 1].
 */
template <Scalar S>
struct ToeplitzSpec {
  std::vector<S> values;
  std::size_t rows = 0;
  std::size_t cols = 0;

  void validate() const {
    if (rows == 0 || cols == 0) throw DimensionError("ToeplitzSpec: dimensions must be positive");
    if (values.size() != rows + cols - 1) {
      throw DimensionError("ToeplitzSpec: expected " + std::to_string(rows + cols - 1) + " values for " +
                           detail::shape_str(rows, cols) + ", got " + std::to_string(values.size()));
    }
  }

  /// a_k for k in [-(cols-1), rows-1].
  [[nodiscard]] const S& diagonal(std::ptrdiff_t k) const {
    return values.at(static_cast<std::size_t>(k + static_cast<std::ptrdiff_t>(cols) - 1));
  }
};

template <Scalar S>
Matrix<S> toeplitz(const ToeplitzSpec<S>& spec) {
  spec.validate();
  Matrix<S> out(spec.rows, spec.cols);
  for (std::size_t i = 1; i <= spec.rows; ++i)
    for (std::size_t j = 1; j <= spec.cols; ++j)
      out(i, j) = spec.diagonal(static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(j));
  return out;
}

/// Single entry of the fully collapsed Toeplitz matrix: sum_k binomial(m+n, n+k) a_k
/// for an (m+1)×(n+1) matrix.
template <Scalar S>
S toeplitz_full_collapse(const ToeplitzSpec<S>& spec) {
  spec.validate();
  const auto total = static_cast<std::int64_t>(spec.rows + spec.cols - 2);
  S acc{};
  for (std::size_t t = 0; t < spec.values.size(); ++t)
    acc += from_exact<S>(binomial(total, static_cast<std::int64_t>(t))) * spec.values[t];
  return acc;
}

/// binomial(2n, n)^2, the fully collapsed value of coefficient_matrix(n+1, n+1, n, n).
inline Exact collapsed_coefficient_square(std::size_t n) {
  const Exact c = binomial(static_cast<std::int64_t>(2 * n), static_cast<std::int64_t>(n));
  return c * c;
}

}  // namespace csum

#endif  // CSUM_STRUCTURED_HPP
