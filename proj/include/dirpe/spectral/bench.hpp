// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace dirpe {

struct BenchConfig {
  std::vector<std::size_t> sizes;
  std::vector<double> q_values{0.0, 0.25};
  /// Eigenpairs requested from the iterative solver.
  std::size_t sparse_k = 25;
  /// Largest n for which the dense solver is timed.
  std::size_t dense_max = 2048;
  int trials = 5;
  double avg_degree = 5.0;
  std::uint64_t seed = 0;
};

struct BenchRow {
  std::size_t n = 0;
  double q = 0.0;
  std::string method;  // "dense" or "sparse"
  std::size_t k = 0;
  int trials = 0;
  double median_seconds = 0.0;
};

/// Times eig_smallest on Erdős–Rényi graphs, one row per (n, q, method).
/// Throws InvalidArgument unless sizes are ascending and trials >= 5.
std::vector<BenchRow> bench_eig(const BenchConfig& config);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace dirpe
