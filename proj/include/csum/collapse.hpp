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

#ifndef CSUM_COLLAPSE_HPP
#define CSUM_COLLAPSE_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "csum/errors.hpp"
#include "csum/matrix.hpp"

namespace csum {

// Collapsing sums. collapse_down adds each row to the one below it, collapse_right
// adds each column to the one on its right, and collapse does both; every power is
// evaluated by repeated application.

template <Scalar S>
Matrix<S> collapse_down(const Matrix<S>& a) {
  if (a.rows() < 2) throw DimensionError("collapse_down needs at least 2 rows, got " + std::to_string(a.rows()));
  const std::size_t n = a.cols();
  Matrix<S> out(a.rows() - 1, n);
  auto src = a.data();
  auto dst = out.data();
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = src[k] + src[k + n];
  return out;
}

template <Scalar S>
Matrix<S> collapse_right(const Matrix<S>& a) {
  if (a.cols() < 2) throw DimensionError("collapse_right needs at least 2 columns, got " + std::to_string(a.cols()));
  const std::size_t n = a.cols();
  Matrix<S> out(a.rows(), n - 1);
  auto src = a.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const S* row = src.data() + i * n;
    S* orow = dst.data() + i * (n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) orow[j] = row[j] + row[j + 1];
  }
  return out;
}

template <Scalar S>
Matrix<S> collapse(const Matrix<S>& a) {
  if (a.rows() < 2 || a.cols() < 2) {
    throw DimensionError("collapse needs at least 2x2, got " + detail::shape_str(a.rows(), a.cols()));
  }
  return collapse_down(collapse_right(a));
}

template <Scalar S>
Matrix<S> collapse_power(const Matrix<S>& a, std::size_t s) {
  if (s >= std::min(a.rows(), a.cols())) {
    throw DimensionError("collapse_power: s=" + std::to_string(s) + " must be below min dimension of " +
                         detail::shape_str(a.rows(), a.cols()));
  }
  Matrix<S> out = a;
  for (std::size_t t = 0; t < s; ++t) out = collapse(out);
  return out;
}

template <Scalar S>
Matrix<S> collapse_down_power(const Matrix<S>& a, std::size_t s) {
  if (s >= a.rows()) {
    throw DimensionError("collapse_down_power: s=" + std::to_string(s) + " must be below " + std::to_string(a.rows()));
  }
  Matrix<S> out = a;
  for (std::size_t t = 0; t < s; ++t) out = collapse_down(out);
  return out;
}

template <Scalar S>
Matrix<S> collapse_right_power(const Matrix<S>& a, std::size_t s) {
  if (s >= a.cols()) {
    throw DimensionError("collapse_right_power: s=" + std::to_string(s) + " must be below " + std::to_string(a.cols()));
  }
  Matrix<S> out = a;
  for (std::size_t t = 0; t < s; ++t) out = collapse_right(out);
  return out;
}

/**
 * @brief Weight matrix of a generalized collapsing sum, optionally stored with a
 * rank-1 factorization weights = rho * phi^T.
 */
template <Scalar S>
class GammaSpec {
 public:
  explicit GammaSpec(Matrix<S> weights) : weights_(std::move(weights)) {}

  /// Builds weights from the factors; rho is b1×1 and phi is b2×1.
  static GammaSpec rank_one(Matrix<S> rho, Matrix<S> phi) {
    if (rho.cols() != 1 || phi.cols() != 1) throw DimensionError("rank_one: rho and phi must be column vectors");
    GammaSpec g(multiply(rho, transpose(phi)));
    g.factors_.emplace(std::move(rho), std::move(phi));
    return g;
  }

  /// Attaches a factorization to explicit weights; throws DomainError unless rho*phi^T reproduces them.
  static GammaSpec with_factors(Matrix<S> weights, Matrix<S> rho, Matrix<S> phi) {
    if (rho.cols() != 1 || phi.cols() != 1) throw DimensionError("with_factors: rho and phi must be column vectors");
    const Matrix<S> product = multiply(rho, transpose(phi));
    if (product.rows() != weights.rows() || product.cols() != weights.cols() || !(product == weights)) {
      throw DomainError("with_factors: rho * phi^T does not reproduce the weights");
    }
    GammaSpec g(std::move(weights));
    g.factors_.emplace(std::move(rho), std::move(phi));
    return g;
  }

  [[nodiscard]] const Matrix<S>& weights() const noexcept { return weights_; }
  [[nodiscard]] std::size_t rows() const noexcept { return weights_.rows(); }
  [[nodiscard]] std::size_t cols() const noexcept { return weights_.cols(); }
  [[nodiscard]] bool has_factorization() const noexcept { return factors_.has_value(); }
  [[nodiscard]] const Matrix<S>& rho() const { return factors_.value().first; }
  [[nodiscard]] const Matrix<S>& phi() const { return factors_.value().second; }

 private:
  Matrix<S> weights_;
  std::optional<std::pair<Matrix<S>, Matrix<S>>> factors_;
};

/// Sliding weighted sum out(p,q) = sum gamma(i+1,j+1) * a(p+i, q+j), no kernel flip.
/// Output is (rows-b1+1)x(cols-b2+1).
template <Scalar S>
Matrix<S> generalized_collapse(const Matrix<S>& a, const GammaSpec<S>& gamma) {
  const std::size_t b1 = gamma.rows();
  const std::size_t b2 = gamma.cols();
  if (a.rows() < b1 || a.cols() < b2) {
    throw DimensionError("generalized_collapse: weights " + detail::shape_str(b1, b2) + " exceed matrix " +
                         detail::shape_str(a.rows(), a.cols()));
  }
  const Matrix<S>& w = gamma.weights();
  Matrix<S> out(a.rows() - b1 + 1, a.cols() - b2 + 1);
  for (std::size_t p = 1; p <= out.rows(); ++p) {
    for (std::size_t q = 1; q <= out.cols(); ++q) {
      S acc{};
      for (std::size_t i = 0; i < b1; ++i)
        for (std::size_t j = 0; j < b2; ++j) acc += w(i + 1, j + 1) * a(p + i, q + j);
      out(p, q) = acc;
    }
  }
  return out;
}

template <Scalar S>
Matrix<S> generalized_collapse_power(const Matrix<S>& a, const GammaSpec<S>& gamma, std::size_t s) {
  // Each application removes b1-1 rows and b2-1 columns.
  const std::size_t dr = gamma.rows() - 1;
  const std::size_t dc = gamma.cols() - 1;
  if (s * dr >= a.rows() || s * dc >= a.cols()) {
    throw DimensionError("generalized_collapse_power: " + std::to_string(s) + " applications of " +
                         detail::shape_str(gamma.rows(), gamma.cols()) + " weights exhaust " +
                         detail::shape_str(a.rows(), a.cols()));
  }
  Matrix<S> out = a;
  for (std::size_t t = 0; t < s; ++t) out = generalized_collapse(out, gamma);
  return out;
}

/// Row-major n-dimensional array with up to kMaxAxes axes; indices are 1-based.
template <Scalar S>
class NdArray {
 public:
  static constexpr std::size_t kMaxAxes = 8;

  explicit NdArray(std::vector<std::size_t> shape, S fill = S{}) : shape_(std::move(shape)) {
    if (shape_.empty() || shape_.size() > kMaxAxes) {
      throw DimensionError("NdArray supports 1.." + std::to_string(kMaxAxes) + " axes, got " +
                           std::to_string(shape_.size()));
    }
    for (std::size_t e : shape_)
      if (e == 0) throw DimensionError("NdArray extents must be positive");
    data_.assign(std::accumulate(shape_.begin(), shape_.end(), std::size_t{1}, std::multiplies<>()), fill);
  }

  static NdArray from_matrix(const Matrix<S>& m) {
    NdArray arr({m.rows(), m.cols()});
    std::copy(m.data().begin(), m.data().end(), arr.data_.begin());
    return arr;
  }

  /// Requires exactly two axes.
  [[nodiscard]] Matrix<S> to_matrix() const {
    if (shape_.size() != 2) throw DimensionError("to_matrix needs a 2-axis array");
    Matrix<S> m(shape_[0], shape_[1]);
    std::copy(data_.begin(), data_.end(), m.data().begin());
    return m;
  }

  [[nodiscard]] const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  [[nodiscard]] std::size_t axes() const noexcept { return shape_.size(); }
  [[nodiscard]] std::span<S> data() noexcept { return data_; }
  [[nodiscard]] std::span<const S> data() const noexcept { return data_; }

  S& operator()(std::span<const std::size_t> index) { return data_[offset(index)]; }
  const S& operator()(std::span<const std::size_t> index) const { return data_[offset(index)]; }

  friend bool operator==(const NdArray&, const NdArray&) = default;

 private:
  std::size_t offset(std::span<const std::size_t> index) const {
    if (index.size() != shape_.size()) throw DimensionError("NdArray index rank mismatch");
    std::size_t off = 0;
    for (std::size_t k = 0; k < index.size(); ++k) {
      if (index[k] < 1 || index[k] > shape_[k]) throw DimensionError("NdArray index out of range");
      off = off * shape_[k] + (index[k] - 1);
    }
    return off;
  }

  std::vector<std::size_t> shape_;
  std::vector<S> data_;
};

/// Sums adjacent pairs along `axis` (1-based; axis 1 of a matrix is the row direction).
template <Scalar S>
NdArray<S> collapse_axis(const NdArray<S>& arr, std::size_t axis) {
  const auto& shape = arr.shape();
  if (axis < 1 || axis > shape.size()) {
    throw DimensionError("collapse_axis: axis " + std::to_string(axis) + " outside 1.." + std::to_string(shape.size()));
  }
  const std::size_t extent = shape[axis - 1];
  if (extent < 2) throw DimensionError("collapse_axis: axis " + std::to_string(axis) + " has extent < 2");

  std::size_t outer = 1;
  for (std::size_t k = 0; k + 1 < axis; ++k) outer *= shape[k];
  std::size_t inner = 1;
  for (std::size_t k = axis; k < shape.size(); ++k) inner *= shape[k];

  std::vector<std::size_t> out_shape = shape;
  out_shape[axis - 1] = extent - 1;
  NdArray<S> out(out_shape);
  auto src = arr.data();
  auto dst = out.data();
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t e = 0; e + 1 < extent; ++e) {
      const S* lo = src.data() + (o * extent + e) * inner;
      const S* hi = lo + inner;
      S* d = dst.data() + (o * (extent - 1) + e) * inner;
      for (std::size_t i = 0; i < inner; ++i) d[i] = lo[i] + hi[i];
    }
  }
  return out;
}

/// One collapse along each listed axis, applied in the given order.
template <Scalar S>
NdArray<S> collapse_axes(const NdArray<S>& arr, std::span<const std::size_t> order) {
  NdArray<S> out = arr;
  for (std::size_t axis : order) out = collapse_axis(out, axis);
  return out;
}

/// One collapse along every axis; the result does not depend on axis order.
template <Scalar S>
NdArray<S> collapse_all(const NdArray<S>& arr) {
  for (std::size_t e : arr.shape())
    if (e < 2) throw DimensionError("collapse_all: every extent must be at least 2");
  std::vector<std::size_t> order(arr.axes());
  std::iota(order.begin(), order.end(), std::size_t{1});
  return collapse_axes(arr, order);
}

}  // namespace csum

#endif  // CSUM_COLLAPSE_HPP
