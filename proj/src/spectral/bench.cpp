// SPDX-License-Identifier: Apache-2.0
#include "dirpe/spectral/bench.hpp"

#include <algorithm>
#include <chrono>

#include "dirpe/core/error.hpp"
#include "dirpe/core/format.hpp"
#include "dirpe/core/generators.hpp"
#include "dirpe/core/rng.hpp"
#include "dirpe/spectral/eigen.hpp"
#include "dirpe/spectral/laplacian.hpp"

namespace dirpe {

std::vector<BenchRow> bench_eig(const BenchConfig& config) {
  if (config.sizes.empty() || !std::is_sorted(config.sizes.begin(), config.sizes.end())) {
    throw InvalidArgument("benchmark sizes must be nonempty and ascending");
  }
  if (config.trials < 5) throw InvalidArgument("benchmark needs at least 5 trials per cell");
  std::vector<BenchRow> rows;
  std::uint64_t stream = 0;
  for (std::size_t n : config.sizes) {
    if (n < 2) throw InvalidArgument("benchmark sizes must be >= 2");
    for (double q : config.q_values) {
      for (const char* method : {"dense", "sparse"}) {
        const bool dense = method[0] == 'd';
        if (dense && n > config.dense_max) continue;
        const std::size_t k = dense ? n : std::min(config.sparse_k, n);
        EigOptions opt;
        opt.dense_threshold = dense ? n + 1 : 0;
        std::vector<double> times;
        for (int t = 0; t < config.trials; ++t) {
          Rng rng(derive_seed(config.seed, stream++));
          const auto g = erdos_renyi(n, config.avg_degree, false, rng);
          const auto lap = magnetic_laplacian(g, q, false);
          const auto start = std::chrono::steady_clock::now();
          const auto es = eig_smallest(lap, k, opt);
          const auto stop = std::chrono::steady_clock::now();
          (void)es;
          times.push_back(std::chrono::duration<double>(stop - start).count());
        }
        std::sort(times.begin(), times.end());
        const double median = times.size() % 2 == 1
                                  ? times[times.size() / 2]
                                  : 0.5 * (times[times.size() / 2 - 1] + times[times.size() / 2]);
        rows.push_back({n, q, method, k, config.trials, median});
      }
    }
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "n,q,method,k,trials,median_seconds\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_double(r.q) << ',' << r.method << ',' << r.k << ',' << r.trials << ','
        << format_double(r.median_seconds) << '\n';
  }
}

}  // namespace dirpe
