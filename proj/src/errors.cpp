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

#include "dwz/errors.hpp"

namespace dwz {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kNotPrime: return "NotPrime";
    case ErrorKind::kReducible: return "Reducible";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kVariableOutOfRange: return "VariableOutOfRange";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kDivisionByZero: return "DivisionByZero";
    case ErrorKind::kNotAUnit: return "NotAUnit";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kCtxMismatch: return "CtxMismatch";
    case ErrorKind::kNoSolution: return "NoSolution";
    case ErrorKind::kNotACurveZeta: return "NotACurveZeta";
    case ErrorKind::kSizeCapExceeded: return "SizeCapExceeded";
    case ErrorKind::kCapExceeded: return "CapExceeded";
    case ErrorKind::kNoIrreducibleFound: return "NoIrreducibleFound";
    case ErrorKind::kPrecisionLoss: return "PrecisionLoss";
    case ErrorKind::kInexactDivision: return "InexactDivision";
    case ErrorKind::kNonIntegerTrace: return "NonIntegerTrace";
  }
  return "Unknown";
}

ErrorCategory category(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kSizeCapExceeded:
    case ErrorKind::kCapExceeded:
      return ErrorCategory::kCap;
    case ErrorKind::kNoIrreducibleFound:
    case ErrorKind::kPrecisionLoss:
    case ErrorKind::kInexactDivision:
    case ErrorKind::kNonIntegerTrace:
      return ErrorCategory::kInternal;
    default:
      return ErrorCategory::kValidation;
  }
}

}  // namespace dwz
