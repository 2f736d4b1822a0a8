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

#ifndef CSUM_ERRORS_HPP
#define CSUM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace csum {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes are incompatible with the requested operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Exact-mode arithmetic left the 128-bit signed range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A parameter is outside the operation's domain (negative radius, bad edge mode, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An exact quotient was requested but the numerator is not divisible.
class DivisibilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace csum

#endif  // CSUM_ERRORS_HPP
