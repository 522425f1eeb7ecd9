/* Copyright (C) 2026 The chebmod Authors
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License. See accompanying LICENSE file.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace chebmod {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of a function (e.g. |x| > 1 for T_n).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Gram matrix of a fitting system is singular or too ill-conditioned.
class RankDeficientError : public Error {
 public:
  using Error::Error;
};

// A produced artifact would break one of its invariants.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// A ciphertext has no multiplicative level left.
class LevelExhaustedError : public Error {
 public:
  using Error::Error;
};

// Vector lengths or stage shapes do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// An input value is outside the range a packing layer can hold.
class RangeError : public Error {
 public:
  using Error::Error;
};

// A structural guard (addition chain length, packed magnitude) was hit.
class GuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace chebmod
