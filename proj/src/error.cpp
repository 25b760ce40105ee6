// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgp/error.hpp"

namespace lgp {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kCapacity: return "capacity";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kData: return "data";
    case ErrorCode::kLiftFailure: return "lift-failure";
    case ErrorCode::kNonSeparable: return "non-separable";
    case ErrorCode::kSingularConjugator: return "singular-conjugator";
    case ErrorCode::kReduction: return "reduction";
    case ErrorCode::kStructure: return "structure";
    case ErrorCode::kContract: return "contract";
    case ErrorCode::kNotPotentiallyExceptional: return "not-potentially-exceptional";
    case ErrorCode::kLevel: return "level";
    case ErrorCode::kBadReduction: return "bad-reduction";
    case ErrorCode::kInternal: return "internal";
    case ErrorCode::kVerificationFailed: return "verification-failed";
  }
  return "unknown";
}

}  // namespace lgp
