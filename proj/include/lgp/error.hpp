// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace lgp {

// Failure categories. The numeric values are shared with the C API status
// codes in lgp.h, so never renumber an existing entry.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kCapacity = 2,
  kParse = 3,
  kData = 4,
  kLiftFailure = 5,
  kNonSeparable = 6,
  kSingularConjugator = 7,
  kReduction = 8,
  kStructure = 9,
  kContract = 10,
  kNotPotentiallyExceptional = 11,
  kLevel = 12,
  kBadReduction = 13,
  kInternal = 14,
  kVerificationFailed = 15,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace lgp
