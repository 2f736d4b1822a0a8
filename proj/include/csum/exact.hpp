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

#ifndef CSUM_EXACT_HPP
#define CSUM_EXACT_HPP

#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <type_traits>

#include "csum/errors.hpp"

namespace csum {

/**
 * @brief Overflow-checked 128-bit signed integer.
 *
 * Every arithmetic operator throws OverflowError instead of wrapping, so an
 * identity that holds in Exact arithmetic holds over the integers.
 */
class Exact {
 public:
  using rep = __int128;

  constexpr Exact() noexcept = default;

  template <std::integral I>
  constexpr Exact(I v) noexcept : v_(static_cast<rep>(v)) {}  // NOLINT(google-explicit-constructor)

  static constexpr Exact from_rep(rep v) noexcept {
    Exact e;
    e.v_ = v;
    return e;
  }

  static constexpr Exact max() noexcept { return from_rep(std::numeric_limits<rep>::max()); }
  static constexpr Exact min() noexcept { return from_rep(std::numeric_limits<rep>::min()); }

  [[nodiscard]] constexpr rep value() const noexcept { return v_; }

  [[nodiscard]] double to_double() const noexcept { return static_cast<double>(v_); }

  /// Narrowing conversion; throws OverflowError when the value does not fit.
  template <std::integral I>
  [[nodiscard]] I to() const {
    if (v_ < static_cast<rep>(std::numeric_limits<I>::min()) ||
        v_ > static_cast<rep>(std::numeric_limits<I>::max())) {
      throw OverflowError("exact value " + to_string() + " does not fit the target integer type");
    }
    return static_cast<I>(v_);
  }

  [[nodiscard]] std::string to_string() const {
    if (v_ == 0) return "0";
    std::string out;
    // Accumulate digits of the negated magnitude so INT128_MIN needs no special case.
    rep n = v_ < 0 ? v_ : -v_;
    while (n != 0) {
      out.insert(out.begin(), static_cast<char>('0' - static_cast<int>(n % 10)));
      n /= 10;
    }
    if (v_ < 0) out.insert(out.begin(), '-');
    return out;
  }

  friend Exact operator+(Exact a, Exact b) {
    rep r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) throw OverflowError("exact addition overflow");
    return from_rep(r);
  }
  friend Exact operator-(Exact a, Exact b) {
    rep r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw OverflowError("exact subtraction overflow");
    return from_rep(r);
  }
  friend Exact operator*(Exact a, Exact b) {
    rep r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw OverflowError("exact multiplication overflow");
    return from_rep(r);
  }
  /// Truncating division.
  friend Exact operator/(Exact a, Exact b) {
    check_division(a, b);
    return from_rep(a.v_ / b.v_);
  }
  friend Exact operator%(Exact a, Exact b) {
    check_division(a, b);
    return from_rep(a.v_ % b.v_);
  }
  Exact operator-() const {
    if (v_ == std::numeric_limits<rep>::min()) throw OverflowError("exact negation overflow");
    return from_rep(-v_);
  }

  Exact& operator+=(Exact o) { return *this = *this + o; }
  Exact& operator-=(Exact o) { return *this = *this - o; }
  Exact& operator*=(Exact o) { return *this = *this * o; }
  Exact& operator/=(Exact o) { return *this = *this / o; }

  friend constexpr bool operator==(Exact a, Exact b) noexcept = default;
  friend constexpr std::strong_ordering operator<=>(Exact a, Exact b) noexcept { return a.v_ <=> b.v_; }

  friend std::ostream& operator<<(std::ostream& os, Exact e) { return os << e.to_string(); }

 private:
  static void check_division(Exact a, Exact b) {
    if (b.v_ == 0) throw DomainError("exact division by zero");
    if (b.v_ == -1 && a.v_ == std::numeric_limits<rep>::min()) throw OverflowError("exact division overflow");
  }

  rep v_ = 0;
};

inline Exact abs(Exact e) { return e < Exact{0} ? -e : e; }

/// base^exponent with overflow checking.
inline Exact pow(Exact base, unsigned exponent) {
  Exact result{1};
  while (exponent-- > 0) result *= base;
  return result;
}

/// n/d rounded to the nearest integer, ties away from zero. d must be positive.
inline Exact round_div(Exact n, Exact d) {
  if (d <= Exact{0}) throw DomainError("round_div requires a positive divisor");
  const Exact mag = abs(n);
  Exact q = mag / d;
  const Exact rem = mag - q * d;
  if (rem * Exact{2} >= d) q += Exact{1};
  return n < Exact{0} ? -q : q;
}

/// The two scalar modes every matrix operation is instantiated for.
template <class S>
concept Scalar = std::same_as<S, Exact> || std::same_as<S, double>;

enum class ScalarMode { ExactInt, Float64 };

template <Scalar S>
inline constexpr bool is_exact_v = std::same_as<S, Exact>;

template <Scalar S>
inline constexpr ScalarMode mode_of_v = is_exact_v<S> ? ScalarMode::ExactInt : ScalarMode::Float64;

inline double to_double(Exact e) noexcept { return e.to_double(); }
inline double to_double(double d) noexcept { return d; }

/// Convert an exact value into scalar mode S.
template <Scalar S>
S from_exact(Exact e) {
  if constexpr (is_exact_v<S>) {
    return e;
  } else {
    return e.to_double();
  }
}

inline double abs_diff(Exact a, Exact b) { return to_double(a > b ? a - b : b - a); }
inline double abs_diff(double a, double b) {
  const double d = a - b;
  return d < 0 ? -d : d;
}

}  // namespace csum

#endif  // CSUM_EXACT_HPP
