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

#include <gtest/gtest.h>

#include "csum/exact.hpp"

using csum::Exact;

TEST(Exact, ArithmeticMatchesBuiltinIntegers) {
  EXPECT_EQ(Exact{7} + Exact{5}, Exact{12});
  EXPECT_EQ(Exact{7} - Exact{9}, Exact{-2});
  EXPECT_EQ(Exact{-6} * Exact{7}, Exact{-42});
  EXPECT_EQ(Exact{-7} / Exact{2}, Exact{-3});
  EXPECT_EQ(Exact{-7} % Exact{2}, Exact{-1});
}

TEST(Exact, OverflowIsAnErrorNotWraparound) {
  EXPECT_THROW(Exact::max() + Exact{1}, csum::OverflowError);
  EXPECT_THROW(Exact::min() - Exact{1}, csum::OverflowError);
  EXPECT_THROW(Exact::max() * Exact{2}, csum::OverflowError);
  EXPECT_THROW(-Exact::min(), csum::OverflowError);
  EXPECT_THROW(Exact::min() / Exact{-1}, csum::OverflowError);
  EXPECT_THROW(csum::pow(Exact{2}, 127), csum::OverflowError);
  EXPECT_NO_THROW(csum::pow(Exact{2}, 126));
}

TEST(Exact, DivisionByZeroThrows) { EXPECT_THROW(Exact{1} / Exact{0}, csum::DomainError); }

TEST(Exact, ToStringCoversFullRange) {
  EXPECT_EQ(Exact{0}.to_string(), "0");
  EXPECT_EQ(Exact{-1234}.to_string(), "-1234");
  EXPECT_EQ(Exact::max().to_string(), "170141183460469231731687303715884105727");
  EXPECT_EQ(Exact::min().to_string(), "-170141183460469231731687303715884105728");
}

TEST(Exact, NarrowingChecksRange) {
  EXPECT_EQ(Exact{255}.to<std::uint8_t>(), 255);
  EXPECT_THROW((void)Exact{256}.to<std::uint8_t>(), csum::OverflowError);
  EXPECT_THROW((void)Exact{-1}.to<std::uint32_t>(), csum::OverflowError);
}

TEST(Exact, RoundDivTiesAwayFromZero) {
  EXPECT_EQ(csum::round_div(Exact{5}, Exact{2}), Exact{3});
  EXPECT_EQ(csum::round_div(Exact{-5}, Exact{2}), Exact{-3});
  EXPECT_EQ(csum::round_div(Exact{7}, Exact{4}), Exact{2});
  EXPECT_EQ(csum::round_div(Exact{5}, Exact{4}), Exact{1});
  EXPECT_EQ(csum::round_div(Exact{80}, Exact{16}), Exact{5});
  EXPECT_THROW(csum::round_div(Exact{1}, Exact{0}), csum::DomainError);
}
