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

#include <thread>

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace csum;
using csum::testkit::XMatrix;

namespace {

/// Coefficient of each x(p,q) in the total of collapse_down^a collapse_right^b(X), via basis matrices.
XMatrix coefficient_oracle(std::size_t m, std::size_t n, std::size_t a, std::size_t b) {
  XMatrix c(m, n);
  for (std::size_t p = 1; p <= m; ++p)
    for (std::size_t q = 1; q <= n; ++q)
      c(p, q) = sum_entries(collapse_down_power(collapse_right_power(testkit::basis(m, n, p, q), b), a));
  return c;
}

/// Double-sum entry formula for coefficient matrices.
Exact coefficient_entry_formula(std::size_t m, std::size_t n, std::size_t a, std::size_t b, std::size_t i,
                                std::size_t j) {
  using I = std::int64_t;
  I left = 0;
  for (I l = 1; l <= static_cast<I>(m - a); ++l) left += testkit::binom_oracle(static_cast<I>(a), static_cast<I>(i) - l);
  I right = 0;
  for (I l = 1; l <= static_cast<I>(n - b); ++l) right += testkit::binom_oracle(static_cast<I>(b), static_cast<I>(j) - l);
  return Exact(left) * Exact(right);
}

}  // namespace

TEST(Binomial, ValuesAndConvention) {
  EXPECT_EQ(binomial(4, 2), Exact{6});
  EXPECT_EQ(binomial(4, -1), Exact{0});
  EXPECT_EQ(binomial(4, 5), Exact{0});
  EXPECT_EQ(binomial(0, 0), Exact{1});
  EXPECT_EQ(binomial(20, 10), Exact{testkit::binom_oracle(20, 10)});
  EXPECT_EQ(binomial(20, 10), Exact{184756});
  EXPECT_THROW(binomial(-1, 0), DomainError);
}

TEST(Binomial, MatchesMultiplicativeOracle) {
  for (std::int64_t n = 0; n <= 60; ++n)
    for (std::int64_t r = -1; r <= n + 1; ++r) ASSERT_EQ(binomial(n, r), Exact{testkit::binom_oracle(n, r)}) << n << " " << r;
}

TEST(Binomial, LargeRowsOverflowOnlyWhereTheValueDoes) {
  EXPECT_EQ(binomial(200, 1), Exact{200});
  EXPECT_THROW(binomial(200, 100), OverflowError);
}

TEST(Binomial, ConcurrentReadersAgree) {
  std::vector<std::thread> threads;
  std::vector<Exact> results(8);
  for (std::size_t t = 0; t < results.size(); ++t)
    threads.emplace_back([&results, t] { results[t] = binomial(90 + static_cast<std::int64_t>(t), 7); });
  for (auto& th : threads) th.join();
  for (std::size_t t = 0; t < results.size(); ++t)
    EXPECT_EQ(results[t], Exact{testkit::binom_oracle(90 + static_cast<std::int64_t>(t), 7)});
}

TEST(RMatrix, Band) {
  EXPECT_EQ(r_matrix(4), XMatrix::from_rows({{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}}));
  EXPECT_EQ(r_matrix(2), XMatrix::from_rows({{1, 1}}));
  const XMatrix beta = row_sum_vector(r_matrix(7));
  for (const Exact& v : beta.data()) EXPECT_EQ(v, Exact{2});
  EXPECT_THROW(r_matrix(1), DomainError);
}

TEST(RFalling, ClosedForm) {
  EXPECT_EQ(r_falling(4, 2), XMatrix::from_rows({{1, 2, 1, 0}, {0, 1, 2, 1}}));
  for (std::size_t m = 1; m <= 6; ++m) EXPECT_EQ(r_falling(m, 0), XMatrix::identity(m));
  EXPECT_EQ(r_falling(5, 3), testkit::r_product_chain(5, 3));
  EXPECT_EQ(r_falling(5, 3), multiply(r_matrix(3), multiply(r_matrix(4), r_matrix(5))));
  EXPECT_THROW(r_falling(4, 4), DomainError);
}

TEST(RPhi, Band) {
  EXPECT_EQ(r_phi(5, XMatrix::column({1, 1})), r_matrix(5));
  EXPECT_EQ(r_phi(4, XMatrix::column({1})), XMatrix::identity(4));
  EXPECT_EQ(r_phi(4, XMatrix::column({1, 2, 1})), XMatrix::from_rows({{1, 2, 1, 0}, {0, 1, 2, 1}}));
  EXPECT_THROW(r_phi(2, XMatrix::column({1, 2, 1})), DimensionError);
  EXPECT_THROW(r_phi(4, XMatrix::ones(2, 2)), DimensionError);
}

TEST(RPhiFalling, Chains) {
  const auto phi = XMatrix::column({2, -1, 3});
  EXPECT_EQ(r_phi_falling(6, phi, 1), r_phi(6, phi));
  EXPECT_EQ(r_phi_falling(6, phi, 0), XMatrix::identity(6));
  EXPECT_EQ(r_phi_falling(6, phi, 2), multiply(r_phi(4, phi), r_phi(6, phi)));
  EXPECT_EQ(r_phi_falling(4, XMatrix::column({1, 1}), 2), r_falling(4, 2));
  EXPECT_EQ(r_phi_falling(7, phi, 3).rows(), 1u);
  EXPECT_THROW(r_phi_falling(6, phi, 3), DimensionError);
}

TEST(SumVectors, ColumnsAndRows) {
  EXPECT_EQ(column_sum_vector(r_matrix(3)), XMatrix::column({1, 2, 1}));
  EXPECT_EQ(row_sum_vector(XMatrix::ones(2, 3)), XMatrix::column({3, 3}));
  std::mt19937_64 rng(30);
  const auto a = testkit::random_exact(rng, 4, 6);
  EXPECT_EQ(column_sum_vector(a), row_sum_vector(transpose(a)));
}

TEST(CoefficientMatrix, SmallCases) {
  const XMatrix expected = XMatrix::from_rows({{1, 2, 1}, {2, 4, 2}, {1, 2, 1}});
  EXPECT_EQ(coefficient_oracle(3, 3, 1, 1), expected);
  EXPECT_EQ(coefficient_matrix(3, 3, 1, 1), expected);
  EXPECT_EQ(coefficient_matrix(5, 5, 4, 4), XMatrix::from_rows({{1, 4, 6, 4, 1},
                                                                {4, 16, 24, 16, 4},
                                                                {6, 24, 36, 24, 6},
                                                                {4, 16, 24, 16, 4},
                                                                {1, 4, 6, 4, 1}}));
  EXPECT_EQ(coefficient_matrix(3, 4, 0, 0), XMatrix::ones(3, 4));
  EXPECT_THROW(coefficient_matrix(3, 3, 3, 0), DomainError);
}

TEST(CoefficientMatrix, EntrySum) {
  EXPECT_EQ(sum_entries(XMatrix::from_rows({{1, 2, 1}, {2, 4, 2}, {1, 2, 1}})), Exact{16});
  EXPECT_EQ(coefficient_matrix_entry_sum(3, 3, 1, 1), Exact{16});
  EXPECT_EQ(coefficient_matrix_entry_sum(4, 7, 0, 0), Exact{28});
  EXPECT_EQ(coefficient_matrix_entry_sum(5, 5, 4, 4), Exact{256});
  EXPECT_THROW(coefficient_matrix_entry_sum(2, 2, 0, 2), DomainError);
}

TEST(CoefficientMatrix, MatchesDoubleSumFormula) {
  for (std::size_t m = 1; m <= 7; ++m)
    for (std::size_t n = 1; n <= 7; ++n)
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          const XMatrix c = coefficient_matrix(m, n, a, b);
          for (std::size_t i = 1; i <= m; ++i)
            for (std::size_t j = 1; j <= n; ++j) ASSERT_EQ(c(i, j), coefficient_entry_formula(m, n, a, b, i, j));
        }
}

TEST(Toeplitz, Construction) {
  // toep(a_-4..a_3) for a 4×5 matrix: encode a_k as 10 + k.
  ToeplitzSpec<Exact> spec{{6, 7, 8, 9, 10, 11, 12, 13}, 4, 5};
  const XMatrix t = toeplitz(spec);
  EXPECT_EQ(t, XMatrix::from_rows({{10, 9, 8, 7, 6}, {11, 10, 9, 8, 7}, {12, 11, 10, 9, 8}, {13, 12, 11, 10, 9}}));
  EXPECT_EQ(toeplitz(ToeplitzSpec<Exact>{{0, 1, 0}, 2, 2}), XMatrix::identity(2));
  EXPECT_EQ(toeplitz(ToeplitzSpec<Exact>{{4, 4, 4, 4}, 2, 3}), XMatrix(2, 3, Exact{4}));
  EXPECT_THROW(toeplitz(ToeplitzSpec<Exact>{{1, 2}, 2, 2}), DimensionError);
}

TEST(Toeplitz, FullCollapseClosedForm) {
  ToeplitzSpec<Exact> identity4{{0, 0, 0, 1, 0, 0, 0}, 4, 4};
  EXPECT_EQ(testkit::full_collapse_oracle(toeplitz(identity4)), Exact{20});
  EXPECT_EQ(toeplitz_full_collapse(identity4), Exact{20});

  for (std::size_t a = 0; a <= 5; ++a)
    for (std::size_t b = 0; b <= 5; ++b) {
      ToeplitzSpec<Exact> ones{std::vector<Exact>(a + b + 1, Exact{1}), a + 1, b + 1};
      EXPECT_EQ(toeplitz_full_collapse(ones), pow(Exact{2}, static_cast<unsigned>(a + b)));
    }

  ToeplitzSpec<Exact> seq{{1, 2, 3, 4, 5, 6}, 3, 4};
  const XMatrix t = toeplitz(seq);
  EXPECT_EQ(toeplitz_full_collapse(seq), testkit::full_collapse_oracle(t));
  EXPECT_EQ(toeplitz_full_collapse(seq), collapse_down_power(collapse_right_power(t, 3), 2)(1, 1));
}

TEST(Toeplitz, RandomSpecsMatchBruteForce) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = testkit::pick(rng, 1, 10);
    const std::size_t cols = testkit::pick(rng, 1, 12 - rows);
    ToeplitzSpec<Exact> spec{{}, rows, cols};
    for (std::size_t k = 0; k + 1 < rows + cols; ++k) spec.values.push_back(Exact(std::uniform_int_distribution<int>(-99, 99)(rng)));
    const XMatrix t = toeplitz(spec);
    ASSERT_EQ(toeplitz_full_collapse(spec), collapse_down_power(collapse_right_power(t, cols - 1), rows - 1)(1, 1));
  }
}

TEST(CollapsedCoefficientSquare, Values) {
  EXPECT_EQ(collapsed_coefficient_square(0), Exact{1});
  EXPECT_EQ(collapsed_coefficient_square(1), Exact{4});
  EXPECT_EQ(collapsed_coefficient_square(2), Exact{36});
  EXPECT_EQ(collapse_power(XMatrix::from_rows({{1, 2, 1}, {2, 4, 2}, {1, 2, 1}}), 2)(1, 1), Exact{36});
  for (std::size_t n = 0; n <= 6; ++n)
    EXPECT_EQ(collapse_power(coefficient_matrix(n + 1, n + 1, n, n), n)(1, 1), collapsed_coefficient_square(n));
}

TEST(StructuredProperties, OperatorMatrixDuality) {
  std::mt19937_64 rng(32);
  for (std::size_t m = 2; m <= 8; ++m)
    for (std::size_t n = 2; n <= 8; ++n) {
      const auto a = testkit::random_exact(rng, m, n);
      for (std::size_t s = 0; s < m; ++s) ASSERT_EQ(collapse_down_power(a, s), multiply(r_falling(m, s), a));
      for (std::size_t s = 0; s < n; ++s) ASSERT_EQ(collapse_right_power(a, s), multiply(a, transpose(r_falling(n, s))));
      for (std::size_t s = 0; s < std::min(m, n); ++s)
        ASSERT_EQ(collapse_power(a, s), multiply(multiply(r_falling(m, s), a), transpose(r_falling(n, s))));
    }
}

TEST(StructuredProperties, CoefficientMatrixDefiningProperty) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = testkit::pick(rng, 1, 7), n = testkit::pick(rng, 1, 7);
    const std::size_t a = testkit::pick(rng, 0, m - 1), b = testkit::pick(rng, 0, n - 1);
    const auto x = testkit::random_exact(rng, m, n);
    const XMatrix c = coefficient_matrix(m, n, a, b);
    Exact weighted{0};
    for (std::size_t i = 1; i <= m; ++i)
      for (std::size_t j = 1; j <= n; ++j) weighted += c(i, j) * x(i, j);
    ASSERT_EQ(sum_entries(collapse_down_power(collapse_right_power(x, b), a)), weighted);
    ASSERT_EQ(c, coefficient_oracle(m, n, a, b));
  }
}

TEST(StructuredProperties, FullyCollapsedValue) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = testkit::pick(rng, 1, 8), n = testkit::pick(rng, 1, 8);
    const auto a = testkit::random_exact(rng, m, n);
    ASSERT_EQ(collapse_down_power(collapse_right_power(a, n - 1), m - 1)(1, 1), testkit::full_collapse_oracle(a));
  }
}

TEST(StructuredProperties, GeneralizedFactorization) {
  std::mt19937_64 rng(35);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Exact> rho(testkit::pick(rng, 1, 3)), phi(testkit::pick(rng, 1, 3));
    for (auto& v : rho) v = Exact(coef(rng));
    for (auto& v : phi) v = Exact(coef(rng));
    const auto g = GammaSpec<Exact>::rank_one(XMatrix::column(rho), XMatrix::column(phi));
    const std::size_t m = testkit::pick(rng, rho.size(), 10), n = testkit::pick(rng, phi.size(), 10);
    const auto a = testkit::random_exact(rng, m, n, -9, 9);
    for (std::size_t s = 0; s * (rho.size() - 1) < m && s * (phi.size() - 1) < n && s <= 6; ++s) {
      const XMatrix via_bands = multiply(multiply(r_phi_falling(m, g.rho(), s), a), transpose(r_phi_falling(n, g.phi(), s)));
      ASSERT_EQ(generalized_collapse_power(a, g, s), via_bands);
    }
  }
}
