// Copyright 2026 The steplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STEPLAB_ERROR_HPP
#define STEPLAB_ERROR_HPP

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace steplab {

enum class ErrorCode {
  NotPrime,
  InversionOfZero,
  ModulusMismatch,
  GcdOfZeros,
  DegreeTooSmall,
  ZeroPolynomial,
  BudgetExceeded,
  InvalidOrder,
  DegenerateCase,
  UnsupportedFamily,
  Infeasible,
  NonvanishingFailure,
  SingularCurve,
  IoError,
  ParseError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::InversionOfZero: return "InversionOfZero";
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::GcdOfZeros: return "GcdOfZeros";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::DegenerateCase: return "DegenerateCase";
    case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NonvanishingFailure: return "NonvanishingFailure";
    case ErrorCode::SingularCurve: return "SingularCurve";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Upper bound on the number of coefficients any single operation may
// materialize (dense polynomial length, matrix entries, evaluation grid).
struct WorkBudget {
  std::uint64_t max_coeffs = 20'000'000;

  void require(std::uint64_t needed, const char* what) const {
    if (needed > max_coeffs) {
      throw Error(ErrorCode::BudgetExceeded,
                  std::string(what) + " needs " + std::to_string(needed) +
                      " coefficients, budget is " +
                      std::to_string(max_coeffs));
    }
  }

  // STEPLAB_BUDGET overrides the default when it parses as a positive integer.
  static WorkBudget from_env() {
    WorkBudget b;
    if (const char* env = std::getenv("STEPLAB_BUDGET")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) b.max_coeffs = v;
    }
    return b;
  }
};

}  // namespace steplab

#endif  // STEPLAB_ERROR_HPP
