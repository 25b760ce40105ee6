// Copyright 2026 The isogeny-lgp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

namespace lgp {

struct CheckResult {
  std::string module;
  std::string name;
  bool passed = false;
  // Known disagreement with a published closed form; reported, not counted.
  bool informational = false;
  std::string detail;
};

struct VerifyOptions {
  unsigned threads = 1;
  bool long_checks = false;  // adds the n = 6 search
  std::string table_path = "table1.json";
  std::string fixture_dir;  // empty: the default lookup
  std::function<void(const CheckResult&)> on_result;
};

std::vector<CheckResult> run_verification(const VerifyOptions& options = {});
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace lgp
