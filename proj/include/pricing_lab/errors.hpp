// Copyright 2026 The Pricing Lab Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRICING_LAB_ERRORS_HPP
#define PRICING_LAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace plab {

// Every failure raised by the library derives from Error; the concrete type
// names the failure class so callers (and the CLI) can map it to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A closed-form quantity is undefined for the given arguments, e.g. the
// rejection-bound constant when the penalization is too short.
class ConditionViolated : public Error {
 public:
  using Error::Error;
};

// Argument outside the documented domain of an operation.
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class ConvergenceNotReached : public Error {
 public:
  using Error::Error;
};

class NotConcave : public Error {
 public:
  using Error::Error;
};

// Phase index or exponent beyond what fits in 64-bit counters.
class Overflow : public Error {
 public:
  using Error::Error;
};

class HorizonTooLarge : public Error {
 public:
  using Error::Error;
};

class MemoryBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NoDoubleDecreaseFound : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace plab

#endif  // PRICING_LAB_ERRORS_HPP
