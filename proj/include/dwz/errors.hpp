/* Copyright 2026 The dwz Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dwz {

enum class ErrorKind {
  // input / validation
  kNotPrime,
  kReducible,
  kParseError,
  kVariableOutOfRange,
  kInvalidArgument,
  kDivisionByZero,
  kNotAUnit,
  kIndexOutOfRange,
  kCtxMismatch,
  kNoSolution,
  kNotACurveZeta,
  // resource caps
  kSizeCapExceeded,
  kCapExceeded,
  // internal consistency
  kNoIrreducibleFound,
  kPrecisionLoss,
  kInexactDivision,
  kNonIntegerTrace,
};

/// Coarse grouping used by the command-line front end to pick an exit code.
enum class ErrorCategory { kValidation, kCap, kInternal };

std::string_view to_string(ErrorKind kind) noexcept;
ErrorCategory category(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return dwz::category(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace dwz
