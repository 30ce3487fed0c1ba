// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dirpe {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  /// Wall-clock budget; 0 means none. Exceeding it fails the check.
  double limit_seconds = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 2022;
  /// Worker count compared against a single-threaded run in check 14.
  std::size_t jobs = 8;
  /// Scratch space for dataset files; a fresh temp directory if empty.
  std::string scratch_dir;
};

/// Source of the F1 score function used by check 11.
extern const std::string_view kF1ScoreSource;

inline constexpr int kCheckCount = 14;

/// Runs the invariant suite; `only` selects check ids (all when empty).
/// Exceptions inside a check are reported as failures.
std::vector<CheckResult> run_checks(const VerifyOptions& options, const std::vector<int>& only = {});

/// "PASS [ 1] name (0.01 s) detail"
std::string format_result(const CheckResult& r);

}  // namespace dirpe
