// Copyright 2026 The cvrpcut Authors
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

#ifndef CVRPCUT_COMMON_H_
#define CVRPCUT_COMMON_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cvrpcut {

// Numerical tolerances shared by the LP engine and the separation routines.
namespace tol {
inline constexpr double kFeasibility = 1e-7;
inline constexpr double kOptimality = 1e-7;
inline constexpr double kIntegrality = 1e-6;
// Strictness inside separation routines.
inline constexpr double kSeparation = 1e-6;
// Minimum violation for a cut to enter the pool.
inline constexpr double kPoolViolation = 1e-4;
// Edges with a smaller LP value are not part of the support graph.
inline constexpr double kSupportEdge = 1e-9;
}  // namespace tol

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (instance files, solution files, oracle files).
class ParseError : public Error {
 public:
  using Error::Error;
};

class UnsupportedFormatError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Well-formed input that violates a domain precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed (e.g. the LP became infeasible after
// adding cuts that are supposed to be valid).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// Integer ceiling division for non-negative numerators and positive divisors.
constexpr int64_t ceil_div(int64_t num, int64_t den) {
  return num / den + (num % den != 0 ? 1 : 0);
}

}  // namespace cvrpcut

#ifdef NDEBUG
#define CVRPCUT_DCHECK(cond, msg) ((void)0)
#else
#define CVRPCUT_DCHECK(cond, msg)                                       \
  do {                                                                  \
    if (!(cond)) throw ::cvrpcut::InvariantViolation(std::string(msg)); \
  } while (0)
#endif

#endif  // CVRPCUT_COMMON_H_
