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

#ifndef CSUM_PIPELINE_HPP
#define CSUM_PIPELINE_HPP

#include <algorithm>
#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "csum/collapse.hpp"
#include "csum/errors.hpp"
#include "csum/kernels.hpp"
#include "csum/matrix.hpp"
#include "csum/structured.hpp"

namespace csum {

enum class Method { Direct, Separable, Collapse };

inline constexpr std::array<Method, 3> kAllMethods = {Method::Direct, Method::Separable, Method::Collapse};

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::Direct: return "direct";
    case Method::Separable: return "separable";
    case Method::Collapse: return "collapse";
  }
  return "?";
}

inline std::optional<Method> parse_method(std::string_view s) {
  if (s == "direct") return Method::Direct;
  if (s == "separable") return Method::Separable;
  if (s == "collapse") return Method::Collapse;
  return std::nullopt;
}

/// Square binomial Gaussian of the given radius.
struct GaussianShape {
  std::size_t radius = 0;
};
/// rows×cols binomial Gaussian.
struct RectShape {
  std::size_t rows = 1;
  std::size_t cols = 1;
};
struct BoxShape {
  std::size_t radius = 0;
};
/// Coefficient-matrix kernel: `collapses` = 0 is the box blur, 2·radius the Gaussian.
struct InterpShape {
  std::size_t radius = 0;
  std::size_t collapses = 0;
};

using FilterShape = std::variant<GaussianShape, RectShape, BoxShape, InterpShape>;

struct BlurRequest {
  FilterShape shape = GaussianShape{};
  Method method = Method::Collapse;
  EdgeMode edge = EdgeMode::ExtendReplicate;
};

/// Entry operations: one per scalar addition or multiply-accumulate that feeds an output entry.
struct OpCounter {
  std::uint64_t entry_ops = 0;
};

/**
 * @brief Everything the three strategies need for one filter.
 *
 * The kernel equals (row factor ⊗ column factor), and also equals `down`/`right`
 * directional collapses followed by a window-sum of size window_rows×window_cols.
 */
struct FilterPlan {
  Kernel<Exact> kernel;
  Kernel<Exact> row_factor;
  Kernel<Exact> col_factor;
  std::size_t down = 0;
  std::size_t right = 0;
  std::size_t window_rows = 1;
  std::size_t window_cols = 1;
};

namespace detail {

inline Kernel<Exact> row_kernel(Matrix<Exact> weights, Exact divisor) {
  const std::size_t w = weights.cols();
  return Kernel<Exact>{std::move(weights), divisor, {1, (w + 1) / 2}, std::nullopt};
}

inline Kernel<Exact> col_kernel(const Matrix<Exact>& weights_row, Exact divisor) {
  const std::size_t h = weights_row.cols();
  return Kernel<Exact>{transpose(weights_row), divisor, {(h + 1) / 2, 1}, std::nullopt};
}

}  // namespace detail

inline FilterPlan make_plan(const FilterShape& shape) {
  struct Visitor {
    FilterPlan operator()(const GaussianShape& g) const {
      auto [row, col] = gaussian_factors(g.radius);
      return {gaussian_kernel(g.radius), std::move(row), std::move(col), 2 * g.radius, 2 * g.radius, 1, 1};
    }
    FilterPlan operator()(const RectShape& r) const {
      if (r.rows < 1 || r.cols < 1) throw DomainError("rect blur dimensions must be positive");
      const Exact dr = pow(Exact{2}, static_cast<unsigned>(r.rows - 1));
      const Exact dc = pow(Exact{2}, static_cast<unsigned>(r.cols - 1));
      return {gaussian_kernel_rect(r.rows, r.cols), detail::row_kernel(detail::binomial_row(r.cols - 1), dc),
              detail::col_kernel(detail::binomial_row(r.rows - 1), dr), r.rows - 1, r.cols - 1, 1, 1};
    }
    FilterPlan operator()(const BoxShape& b) const {
      const std::size_t d = 2 * b.radius + 1;
      return {box_kernel(b.radius), detail::row_kernel(Matrix<Exact>::ones(1, d), Exact(d)),
              detail::col_kernel(Matrix<Exact>::ones(1, d), Exact(d)), 0, 0, d, d};
    }
    FilterPlan operator()(const InterpShape& s) const {
      Kernel<Exact> kernel = interpolation_kernel(s.radius, s.collapses);
      const std::size_t d = 2 * s.radius + 1;
      const Matrix<Exact> alpha = transpose(column_sum_vector(r_falling(d, s.collapses)));
      const Exact factor = pow(Exact{2}, static_cast<unsigned>(s.collapses)) * Exact(d - s.collapses);
      return {std::move(kernel), detail::row_kernel(alpha, factor), detail::col_kernel(alpha, factor), s.collapses,
              s.collapses, d - s.collapses, d - s.collapses};
    }
  };
  return std::visit(Visitor{}, shape);
}

namespace detail {

template <Scalar S>
Scaled<S> run_direct(const Matrix<S>& a, const FilterPlan& plan, EdgeMode edge, OpCounter* ops) {
  const Kernel<S> k = kernel_cast<S>(plan.kernel);
  Scaled<S> out = convolve(k, a, edge);
  if (ops) ops->entry_ops += out.numerator.size() * k.weights.size();
  return out;
}

template <Scalar S>
Scaled<S> run_separable(const Matrix<S>& a, const FilterPlan& plan, EdgeMode edge, OpCounter* ops) {
  const Kernel<S> row = kernel_cast<S>(plan.row_factor);
  const Kernel<S> col = kernel_cast<S>(plan.col_factor);
  Scaled<S> first = convolve(row, a, edge);
  Scaled<S> second = convolve(col, first.numerator, edge);
  if (ops) ops->entry_ops += first.numerator.size() * row.weights.size() + second.numerator.size() * col.weights.size();
  return {std::move(second.numerator), first.divisor * second.divisor};
}

template <Scalar S>
Scaled<S> run_collapse(const Matrix<S>& a, const FilterPlan& plan, EdgeMode edge, OpCounter* ops) {
  Matrix<S> work = edge == EdgeMode::Crop ? a : extend(a, Padding::for_kernel(plan.kernel), edge);
  auto count = [&](const Matrix<S>& m, std::size_t per_entry) {
    if (ops) ops->entry_ops += m.size() * per_entry;
  };
  // Square part: full collapses, each one right pass and one down pass.
  const std::size_t both = std::min(plan.down, plan.right);
  for (std::size_t t = 0; t < both; ++t) {
    work = collapse_right(work);
    count(work, 1);
    work = collapse_down(work);
    count(work, 1);
  }
  for (std::size_t t = both; t < plan.right; ++t) {
    work = collapse_right(work);
    count(work, 1);
  }
  for (std::size_t t = both; t < plan.down; ++t) {
    work = collapse_down(work);
    count(work, 1);
  }
  if (plan.window_rows > 1 || plan.window_cols > 1) {
    work = generalized_collapse(work, GammaSpec<S>(Matrix<S>::ones(plan.window_rows, plan.window_cols)));
    count(work, plan.window_rows * plan.window_cols);
  }
  return {std::move(work), from_exact<S>(plan.kernel.divisor)};
}

template <Scalar S>
void check_request(const Matrix<S>& a, const FilterPlan& plan, EdgeMode edge) {
  if (edge == EdgeMode::Crop && (a.rows() < plan.kernel.rows() || a.cols() < plan.kernel.cols())) {
    throw DimensionError("blur: crop needs an image at least as large as the " +
                         shape_str(plan.kernel.rows(), plan.kernel.cols()) + " kernel, got " +
                         shape_str(a.rows(), a.cols()));
  }
}

}  // namespace detail

/**
 * @brief Blurs A with the requested filter and strategy.
 *
 * Direct convolves with the full kernel, Separable with its row and column factors,
 * Collapse applies collapsing sums to the extended image. All three return the same
 * numerator and divisor in exact mode.
 */
template <Scalar S>
Scaled<S> blur(const Matrix<S>& a, const BlurRequest& req, OpCounter* ops = nullptr) {
  const FilterPlan plan = make_plan(req.shape);
  detail::check_request(a, plan, req.edge);
  switch (req.method) {
    case Method::Direct: return detail::run_direct(a, plan, req.edge, ops);
    case Method::Separable: return detail::run_separable(a, plan, req.edge, ops);
    case Method::Collapse: return detail::run_collapse(a, plan, req.edge, ops);
  }
  throw DomainError("blur: unknown method");
}

/// 2^-(a+b-2) collapse_down^(a-1) collapse_right^(b-1) of the extended image.
template <Scalar S>
Scaled<S> rect_blur(const Matrix<S>& a, std::size_t rows, std::size_t cols, EdgeMode edge) {
  return blur(a, BlurRequest{RectShape{rows, cols}, Method::Collapse, edge});
}

struct EquivalenceReport {
  ScalarMode mode = ScalarMode::ExactInt;
  double max_deviation = 0;
  double tolerance = 0;
  /// Exact mode only: every strategy produced the same numerator and divisor.
  bool bit_exact = false;
  bool passed = false;
};

/// Runs all three strategies for the radius-r Gaussian and compares them pairwise.
template <Scalar S>
EquivalenceReport equivalence_report(const Matrix<S>& a, std::size_t r, EdgeMode edge) {
  std::array<Scaled<S>, 3> results = {
      blur(a, BlurRequest{GaussianShape{r}, Method::Direct, edge}),
      blur(a, BlurRequest{GaussianShape{r}, Method::Separable, edge}),
      blur(a, BlurRequest{GaussianShape{r}, Method::Collapse, edge}),
  };
  EquivalenceReport rep;
  rep.mode = mode_of_v<S>;
  rep.tolerance = is_exact_v<S> ? 0.0 : 1e-9;
  const std::array<Matrix<double>, 3> values = {results[0].value(), results[1].value(), results[2].value()};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) rep.max_deviation = std::max(rep.max_deviation, max_abs_difference(values[i], values[j]));
  rep.bit_exact = is_exact_v<S> && results[0] == results[1] && results[1] == results[2];
  rep.passed = is_exact_v<S> ? rep.bit_exact : rep.max_deviation <= rep.tolerance;
  return rep;
}

/// Deterministic test image: std::minstd_rand seeded with `seed`, samples in [0, 255].
template <Scalar S>
Matrix<S> lcg_image(std::size_t rows, std::size_t cols, std::uint32_t seed = 0x5EED) {
  std::minstd_rand engine(seed);
  Matrix<S> m(rows, cols);
  for (S& v : m.data()) v = from_exact<S>(Exact(engine() % 256));
  return m;
}

struct BenchRow {
  std::size_t size = 0;
  std::size_t radius = 0;
  Method method = Method::Direct;
  std::uint64_t median_ns = 0;
  std::uint64_t entry_ops = 0;
  double max_deviation = 0;
};

struct BenchReport {
  /// Concurrency contract of the harness, printed ahead of the table by the CLI.
  std::string header =
      "timed sections run sequentially on one thread; images from minstd_rand seed 0x5EED";
  ScalarMode mode = ScalarMode::Float64;
  EdgeMode edge = EdgeMode::ExtendReplicate;
  std::vector<BenchRow> rows;

  /// Deviations within 1e-9 (float) or exactly 0 (exact) for every row.
  [[nodiscard]] bool deviations_pass() const {
    const double tol = mode == ScalarMode::ExactInt ? 0.0 : 1e-9;
    return std::all_of(rows.begin(), rows.end(), [&](const BenchRow& r) { return r.max_deviation <= tol; });
  }

  [[nodiscard]] std::string to_csv() const {
    std::string out = "size,radius,method,median_ns,entry_ops,max_deviation\n";
    char dev[32];
    for (const BenchRow& r : rows) {
      std::snprintf(dev, sizeof dev, "%.2e", r.max_deviation);
      out += std::to_string(r.size) + ',' + std::to_string(r.radius) + ',' + std::string(to_string(r.method)) + ',' +
             std::to_string(r.median_ns) + ',' + std::to_string(r.entry_ops) + ',' + dev + '\n';
    }
    return out;
  }
};

/**
 * Times each strategy on a size×size seeded image for every radius. Rows appear in
 * (size, radius, method) order; deviations are measured against Direct.
 */
template <Scalar S>
BenchReport benchmark(std::span<const std::size_t> sizes, std::span<const std::size_t> radii, std::size_t repetitions,
                      EdgeMode edge = EdgeMode::ExtendReplicate) {
  if (repetitions < 1) throw DomainError("benchmark: repetitions must be at least 1");
  BenchReport report;
  report.mode = mode_of_v<S>;
  report.edge = edge;
  using clock = std::chrono::steady_clock;
  for (std::size_t size : sizes) {
    const Matrix<S> image = lcg_image<S>(size, size);
    for (std::size_t r : radii) {
      std::optional<Matrix<double>> reference;
      for (Method m : kAllMethods) {
        const BlurRequest req{GaussianShape{r}, m, edge};
        std::vector<std::uint64_t> times;
        OpCounter ops;
        std::optional<Scaled<S>> result;
        for (std::size_t rep = 0; rep < repetitions; ++rep) {
          OpCounter run_ops;
          const auto t0 = clock::now();
          result = blur(image, req, &run_ops);
          const auto t1 = clock::now();
          times.push_back(static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()));
          ops = run_ops;
        }
        std::sort(times.begin(), times.end());
        const Matrix<double> value = result->value();
        if (!reference) reference = value;
        report.rows.push_back({size, r, m, times[times.size() / 2], ops.entry_ops, max_abs_difference(*reference, value)});
      }
    }
  }
  return report;
}

}  // namespace csum

#endif  // CSUM_PIPELINE_HPP
