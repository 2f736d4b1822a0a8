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

#ifndef CSUM_KERNELS_HPP
#define CSUM_KERNELS_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "csum/errors.hpp"
#include "csum/matrix.hpp"
#include "csum/structured.hpp"

namespace csum {

/// 1-based position of the kernel entry that multiplies a(p,q) when producing output (p,q).
struct Anchor {
  std::size_t row = 1;
  std::size_t col = 1;
  friend bool operator==(const Anchor&, const Anchor&) = default;
};

/**
 * @brief Convolution kernel stored as weights over a divisor.
 *
 * Exact kernels keep integer weights and defer the division; float kernels carry
 * already-normalized weights with divisor 1.
 */
template <Scalar S>
struct Kernel {
  Matrix<S> weights;
  S divisor{1};
  Anchor anchor;
  std::optional<std::size_t> radius;

  [[nodiscard]] std::size_t rows() const noexcept { return weights.rows(); }
  [[nodiscard]] std::size_t cols() const noexcept { return weights.cols(); }
};

/// Weights sum to the divisor: exactly for exact kernels, to 1e-12 relative for floats.
template <Scalar S>
bool is_normalized(const Kernel<S>& k) {
  const S total = sum_entries(k.weights);
  if constexpr (is_exact_v<S>) {
    return total == k.divisor;
  } else {
    return std::abs(total / k.divisor - 1.0) <= 1e-12;
  }
}

template <Scalar To, Scalar From>
Kernel<To> kernel_cast(const Kernel<From>& k) {
  if constexpr (std::same_as<To, From>) {
    return k;
  } else {
    static_assert(is_exact_v<From>, "only exact -> float kernel conversion is supported");
    return Kernel<To>{matrix_cast<To>(k.weights), to_double(k.divisor), k.anchor, k.radius};
  }
}

enum class EdgeMode { Crop, ExtendReplicate, ExtendMirror, ExtendZero };

inline std::string_view to_string(EdgeMode e) {
  switch (e) {
    case EdgeMode::Crop: return "crop";
    case EdgeMode::ExtendReplicate: return "replicate";
    case EdgeMode::ExtendMirror: return "mirror";
    case EdgeMode::ExtendZero: return "zero";
  }
  return "?";
}

inline std::optional<EdgeMode> parse_edge_mode(std::string_view s) {
  if (s == "crop") return EdgeMode::Crop;
  if (s == "replicate") return EdgeMode::ExtendReplicate;
  if (s == "mirror") return EdgeMode::ExtendMirror;
  if (s == "zero") return EdgeMode::ExtendZero;
  return std::nullopt;
}

namespace detail {

inline Anchor centered_anchor(std::size_t rows, std::size_t cols) { return {(rows + 1) / 2, (cols + 1) / 2}; }

/// Row vector of binomial(n, 0..n).
inline Matrix<Exact> binomial_row(std::size_t n) {
  Matrix<Exact> row(1, n + 1);
  for (std::size_t j = 0; j <= n; ++j)
    row(1, j + 1) = binomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(j));
  return row;
}

}  // namespace detail

inline Kernel<Exact> box_kernel(std::size_t r) {
  const std::size_t d = 2 * r + 1;
  return Kernel<Exact>{Matrix<Exact>::ones(d, d), Exact(d * d), {r + 1, r + 1}, r};
}

/// Binomial Gaussian: weights binomial(2r, i+r) binomial(2r, j+r) over 4^(2r).
inline Kernel<Exact> gaussian_kernel(std::size_t r) {
  const Matrix<Exact> row = detail::binomial_row(2 * r);
  return Kernel<Exact>{multiply(transpose(row), row), pow(Exact{4}, static_cast<unsigned>(2 * r)), {r + 1, r + 1}, r};
}

/// a×b binomial kernel over 2^(a+b-2), anchored at (ceil(a/2), ceil(b/2)).
inline Kernel<Exact> gaussian_kernel_rect(std::size_t a, std::size_t b) {
  if (a < 1 || b < 1) throw DomainError("gaussian_kernel_rect: dimensions must be positive");
  const Matrix<Exact> col = transpose(detail::binomial_row(a - 1));
  const Matrix<Exact> row = detail::binomial_row(b - 1);
  std::optional<std::size_t> radius;
  if (a == b && a % 2 == 1) radius = a / 2;
  return Kernel<Exact>{multiply(col, row), pow(Exact{2}, static_cast<unsigned>(a + b - 2)),
                       detail::centered_anchor(a, b), radius};
}

/// Samples the 2-D normal density with standard deviation s at integer offsets, normalized to sum 1.
inline Kernel<double> gaussian_kernel_sampled(std::size_t r, double s) {
  if (!(s > 0)) throw DomainError("gaussian_kernel_sampled: standard deviation must be positive");
  const std::size_t d = 2 * r + 1;
  Matrix<double> w(d, d);
  const auto ir = static_cast<double>(r);
  double total = 0;
  for (std::size_t i = 1; i <= d; ++i) {
    for (std::size_t j = 1; j <= d; ++j) {
      const double x = static_cast<double>(i) - 1 - ir;
      const double y = static_cast<double>(j) - 1 - ir;
      w(i, j) = std::exp(-(x * x + y * y) / (2 * s * s)) / (2 * M_PI * s * s);
      total += w(i, j);
    }
  }
  for (double& v : w.data()) v /= total;
  return Kernel<double>{std::move(w), 1.0, {r + 1, r + 1}, r};
}

/// coefficient_matrix(2r+1, 2r+1, s, s) over its entry sum; s = 0 is the box kernel, s = 2r the Gaussian.
inline Kernel<Exact> interpolation_kernel(std::size_t r, std::size_t s) {
  if (s > 2 * r) throw DomainError("interpolation_kernel: s=" + std::to_string(s) + " exceeds 2r=" + std::to_string(2 * r));
  const std::size_t d = 2 * r + 1;
  return Kernel<Exact>{coefficient_matrix(d, d, s, s), coefficient_matrix_entry_sum(d, d, s, s), {r + 1, r + 1}, r};
}

/// Rows/columns added on each side by an extension edge mode.
struct Padding {
  std::size_t top = 0;
  std::size_t bottom = 0;
  std::size_t left = 0;
  std::size_t right = 0;

  static Padding uniform(std::size_t r) { return {r, r, r, r}; }

  /// Padding that lets an anchored kernel produce an output the size of its input.
  template <Scalar S>
  static Padding for_kernel(const Kernel<S>& k) {
    return {k.rows() - k.anchor.row, k.anchor.row - 1, k.cols() - k.anchor.col, k.anchor.col - 1};
  }
};

namespace detail {

/// Maps a 1-based (possibly out-of-range) coordinate onto the source extent, or 0 for zero fill.
inline std::size_t source_index(std::ptrdiff_t i, std::size_t extent, EdgeMode mode) {
  const auto n = static_cast<std::ptrdiff_t>(extent);
  if (i >= 1 && i <= n) return static_cast<std::size_t>(i);
  switch (mode) {
    case EdgeMode::ExtendReplicate: return i < 1 ? 1 : extent;
    case EdgeMode::ExtendMirror: return static_cast<std::size_t>(i < 1 ? 2 - i : 2 * n - i);
    case EdgeMode::ExtendZero: return 0;
    case EdgeMode::Crop: break;
  }
  throw DomainError("source_index: crop has no extension");
}

}  // namespace detail

/// Enlarges A by the given padding. Mirror reflects without repeating the edge (abc -> cb|abc|ba).
template <Scalar S>
Matrix<S> extend(const Matrix<S>& a, const Padding& pad, EdgeMode mode) {
  if (mode == EdgeMode::Crop) throw DomainError("extend: crop is not an extension mode");
  if (mode == EdgeMode::ExtendMirror &&
      (std::max(pad.top, pad.bottom) >= a.rows() || std::max(pad.left, pad.right) >= a.cols())) {
    throw DomainError("extend: mirror padding must be smaller than the matrix extent");
  }
  Matrix<S> out(a.rows() + pad.top + pad.bottom, a.cols() + pad.left + pad.right);
  for (std::size_t i = 1; i <= out.rows(); ++i) {
    const std::size_t si =
        detail::source_index(static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(pad.top), a.rows(), mode);
    for (std::size_t j = 1; j <= out.cols(); ++j) {
      const std::size_t sj = detail::source_index(
          static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(pad.left), a.cols(), mode);
      out(i, j) = (si == 0 || sj == 0) ? S{} : a(si, sj);
    }
  }
  return out;
}

/// Enlarges an m×n matrix to (m+2r)×(n+2r) with A as the central block.
template <Scalar S>
Matrix<S> extend(const Matrix<S>& a, std::size_t r, EdgeMode mode) {
  return extend(a, Padding::uniform(r), mode);
}

/**
 * @brief Integer-friendly result: numerator matrix over a common divisor.
 *
 * The division happens only when a caller asks for it, so exact pipelines can be
 * compared bit for bit.
 */
template <Scalar S>
struct Scaled {
  Matrix<S> numerator;
  S divisor{1};

  [[nodiscard]] Matrix<double> value() const {
    Matrix<double> out(numerator.rows(), numerator.cols());
    const double d = to_double(divisor);
    auto src = numerator.data();
    auto dst = out.data();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = to_double(src[k]) / d;
    return out;
  }

  /// Entrywise quotient; exact mode throws DivisibilityError on any remainder.
  [[nodiscard]] Matrix<S> quotient() const {
    Matrix<S> out(numerator.rows(), numerator.cols());
    auto src = numerator.data();
    auto dst = out.data();
    for (std::size_t k = 0; k < dst.size(); ++k) {
      if constexpr (is_exact_v<S>) {
        if (src[k] % divisor != Exact{0}) {
          throw DivisibilityError(src[k].to_string() + " is not divisible by " + divisor.to_string());
        }
      }
      dst[k] = src[k] / divisor;
    }
    return out;
  }

  friend bool operator==(const Scaled&, const Scaled&) = default;
};

/**
 * Valid-region convolution with kernel flip: out(p,q) = sum k(i,j) a(p-i, q-j), offsets
 * relative to the anchor. Output is (m-kh+1)×(n-kw+1).
 */
template <Scalar S>
Scaled<S> convolve_crop(const Kernel<S>& k, const Matrix<S>& a) {
  const std::size_t kh = k.rows();
  const std::size_t kw = k.cols();
  if (a.rows() < kh || a.cols() < kw) {
    throw DimensionError("convolve_crop: matrix " + detail::shape_str(a.rows(), a.cols()) + " smaller than kernel " +
                         detail::shape_str(kh, kw));
  }
  Matrix<S> out(a.rows() - kh + 1, a.cols() - kw + 1);
  for (std::size_t p = 1; p <= out.rows(); ++p) {
    for (std::size_t q = 1; q <= out.cols(); ++q) {
      S acc{};
      for (std::size_t i = 1; i <= kh; ++i) {
        const std::span<const S> src = a.row_span(p + kh - i);
        for (std::size_t j = 1; j <= kw; ++j) acc += k.weights(i, j) * src[q + kw - j - 1];
      }
      out(p, q) = acc;
    }
  }
  return {std::move(out), k.divisor};
}

/// Crop shrinks the output; extension modes pad per the kernel anchor and keep the input size.
template <Scalar S>
Scaled<S> convolve(const Kernel<S>& k, const Matrix<S>& a, EdgeMode mode) {
  if (mode == EdgeMode::Crop) return convolve_crop(k, a);
  return convolve_crop(k, extend(a, Padding::for_kernel(k), mode));
}

/// Row pass then column pass; the divisor is the product of both kernel divisors.
template <Scalar S>
Scaled<S> separable_convolve(const Kernel<S>& row_kernel, const Kernel<S>& col_kernel, const Matrix<S>& a,
                             EdgeMode mode) {
  if (row_kernel.rows() != 1 || col_kernel.cols() != 1) {
    throw DimensionError("separable_convolve: expected a 1×n row kernel and an n×1 column kernel");
  }
  Scaled<S> rows = convolve(row_kernel, a, mode);
  Scaled<S> both = convolve(col_kernel, rows.numerator, mode);
  return {std::move(both.numerator), rows.divisor * both.divisor};
}

/// Binomial factor kernels of the radius-r Gaussian: 1×(2r+1) and (2r+1)×1 with divisor 4^r each.
inline std::pair<Kernel<Exact>, Kernel<Exact>> gaussian_factors(std::size_t r) {
  const Matrix<Exact> row = detail::binomial_row(2 * r);
  const Exact d = pow(Exact{4}, static_cast<unsigned>(r));
  return {Kernel<Exact>{row, d, {1, r + 1}, std::nullopt}, Kernel<Exact>{transpose(row), d, {r + 1, 1}, std::nullopt}};
}

template <Scalar S>
Scaled<S> separable_convolve(std::size_t r, const Matrix<S>& a, EdgeMode mode) {
  auto [row, col] = gaussian_factors(r);
  return separable_convolve(kernel_cast<S>(row), kernel_cast<S>(col), a, mode);
}

}  // namespace csum

#endif  // CSUM_KERNELS_HPP
