// SPDX-License-Identifier: Apache-2.0
#include "dirpe/verify/checks.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "dirpe/core/canonical.hpp"
#include "dirpe/core/error.hpp"
#include "dirpe/core/format.hpp"
#include "dirpe/core/generators.hpp"
#include "dirpe/core/rng.hpp"
#include "dirpe/core/text_output.hpp"
#include "dirpe/core/topo_sort.hpp"
#include "dirpe/dataflow/flow_graph.hpp"
#include "dirpe/dataflow/parser.hpp"
#include "dirpe/dataflow/reorder.hpp"
#include "dirpe/oracle/playground.hpp"
#include "dirpe/randwalk/random_walk.hpp"
#include "dirpe/sortnet/dataset.hpp"
#include "dirpe/sortnet/network.hpp"
#include "dirpe/spectral/baselines.hpp"
#include "dirpe/spectral/eigen.hpp"
#include "dirpe/spectral/export.hpp"
#include "dirpe/spectral/laplacian.hpp"
#include "dirpe/spectral/reorder.hpp"

namespace dirpe {

const std::string_view kF1ScoreSource = R"(def f1_score(pred, label):
  correct = pred == label
  tp = (correct & label).sum()
  fn = (~correct & pred).sum()
  fp = (~correct & ~pred).sum()
  precision = tp / (tp + fp)
  recall = tp / (tp + fn)
  return (
    2 * (recall * precision) /
    (recall + precision)
  )
)";

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
constexpr Complex kI(0.0, 1.0);

struct Outcome {
  bool passed = false;
  std::string detail;
};

Eigen::VectorXcd random_vector(std::size_t n, Rng& rng) {
  Eigen::VectorXcd x(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = Complex(rng.normal(), rng.normal());
  return x;
}

DirectedGraph random_directed_tree(std::size_t n, Rng& rng) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) {
    const auto parent = static_cast<NodeId>(rng.uniform_below(v));
    if (rng.bernoulli(0.5)) {
      edges.push_back({parent, static_cast<NodeId>(v), 1.0});
    } else {
      edges.push_back({static_cast<NodeId>(v), parent, 1.0});
    }
  }
  return DirectedGraph(n, std::move(edges));
}

std::uint64_t brute_force_linear_extensions(const DirectedGraph& g) {
  std::vector<std::size_t> order(g.num_nodes());
  std::iota(order.begin(), order.end(), 0);
  std::uint64_t count = 0;
  std::vector<std::size_t> pos(order.size());
  do {
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    count += std::all_of(g.edges().begin(), g.edges().end(),
                         [&](const Edge& e) { return e.src == e.dst || pos[e.src] < pos[e.dst]; });
  } while (std::next_permutation(order.begin(), order.end()));
  return count;
}

Outcome check_eq5() {
  const auto g = make_topology(TopologyName::sequence, 5);
  const double diag[] = {1, 2, 2, 2, 1};
  Eigen::MatrixXcd l0 = Eigen::MatrixXcd::Zero(5, 5);
  Eigen::MatrixXcd l14 = Eigen::MatrixXcd::Zero(5, 5);
  for (int i = 0; i < 5; ++i) {
    l0(i, i) = l14(i, i) = diag[i];
    if (i + 1 < 5) {
      l0(i, i + 1) = l0(i + 1, i) = -1.0;
      l14(i, i + 1) = -kI;
      l14(i + 1, i) = kI;
    }
  }
  const auto a = magnetic_laplacian(g, 0.0, false).dense();
  const auto b = magnetic_laplacian(g, 0.25, false).dense();
  const double da = (a - l0).cwiseAbs().maxCoeff();
  const double db = (b - l14).cwiseAbs().maxCoeff();
  return {a == l0 && b == l14, "max deviation q=0: " + format_double(da) + ", q=1/4: " + format_double(db)};
}

Outcome check_closed_form() {
  double worst = 1.0;
  std::string where;
  for (std::size_t n = 2; n <= 32; ++n) {
    const auto g = make_topology(TopologyName::sequence, n);
    for (double q : {0.0, 0.25 / static_cast<double>(n - 1)}) {
      const auto es = eig_smallest(magnetic_laplacian(g, q, false), n);
      for (std::size_t j = 0; j < n; ++j) {
        Eigen::VectorXcd c(static_cast<Eigen::Index>(n));
        for (std::size_t v = 0; v < n; ++v) {
          const double vd = static_cast<double>(v);
          c(static_cast<Eigen::Index>(v)) = std::exp(-kI * (2 * std::numbers::pi * q * vd)) *
                                            std::cos((vd + 0.5) * static_cast<double>(j) * std::numbers::pi /
                                                     static_cast<double>(n));
        }
        c.normalize();
        const double overlap = std::abs(es.eigenvectors.col(static_cast<Eigen::Index>(j)).dot(c));
        if (overlap < worst) {
          worst = overlap;
          where = "n=" + std::to_string(n) + " j=" + std::to_string(j);
        }
      }
    }
  }
  return {worst >= 1 - 1e-6, "min |<gamma, closed form>| = " + format_double(worst) + " at " + where};
}

Outcome check_trees(std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const auto g = random_directed_tree(2 + rng.uniform_below(49), rng);
    for (double q_rel : {0.1, 0.25}) {
      const auto es = eig_smallest(magnetic_laplacian(g, relative_potential(g, q_rel), false), 1);
      worst = std::max(worst, std::abs(es.eigenvalues(0)));
    }
  }
  return {worst <= 1e-8, "max lambda_0 = " + format_double(worst) + " over 200 trees x 2 potentials"};
}

Outcome check_quadratic_form(std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    auto g = erdos_renyi(2 + rng.uniform_below(30), 0.5 + rng.uniform01() * 3, false, rng);
    if (t % 2 == 1) {
      std::vector<Edge> edges(g.edges().begin(), g.edges().end());
      for (Edge& e : edges) e.weight = 0.1 + 2 * rng.uniform01();
      g = DirectedGraph(g.num_nodes(), std::move(edges));
    }
    const double q = rng.uniform01() * 0.5;
    const auto x = random_vector(g.num_nodes(), rng);
    // Sum over unordered pairs of w_s |x_u - exp(iθ_uv) x_v|^2.
    double oracle = 0.0;
    for (const Edge& e : g.edges()) {
      if (e.src == e.dst) continue;
      const bool back = g.has_edge(e.dst, e.src);
      if (back && e.src > e.dst) continue;
      double ws = 1.0;
      if (g.is_weighted()) {
        double w_back = 0.0;
        for (const Edge& f : g.edges()) {
          if (f.src == e.dst && f.dst == e.src) w_back = f.weight;
        }
        ws = 0.5 * (e.weight + w_back);
      }
      const double theta = 2 * std::numbers::pi * q * (back ? 0.0 : 1.0);
      oracle += ws * std::norm(x(e.src) - std::exp(kI * theta) * x(e.dst));
    }
    const auto lap = magnetic_laplacian(g, q, false);
    const Complex value = x.dot(lap.matrix * x);
    const double err = std::abs(value - oracle) / std::max(1e-300, std::abs(oracle));
    if (oracle > 0 || std::abs(value) > 1e-12) worst = std::max(worst, err);
  }
  return {worst <= 1e-8, "max relative error = " + format_double(worst)};
}

Outcome check_reordering(std::uint64_t seed) {
  Rng rng(seed);
  int sequences = 0, trees = 0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 4 + rng.uniform_below(13);
    const auto perm = rng.permutation(n);
    sequences += reorder_by_phase(make_topology(TopologyName::sequence, n).permuted(perm)) == perm;
  }
  for (int t = 0; t < 20; ++t) {
    const auto perm = rng.permutation(9);
    std::vector<std::size_t> original(9);
    for (std::size_t v = 0; v < 9; ++v) original[perm[v]] = v;
    int last = -1;
    bool ok = true;
    for (std::size_t node : reorder_by_phase(make_topology(TopologyName::binary_tree, 9).permuted(perm))) {
      const int depth = static_cast<int>(std::bit_width(original[node] + 1)) - 1;
      ok = ok && depth >= last;
      last = depth;
    }
    trees += ok;
  }
  return {sequences == 20 && trees == 20,
          std::to_string(sequences) + "/20 sequences exact, " + std::to_string(trees) + "/20 trees by depth"};
}

Outcome check_ppr(std::uint64_t seed) {
  Rng rng(seed);
  constexpr double p_r = 0.05;
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto g = erdos_renyi(2 + rng.uniform_below(63), 0.5 + rng.uniform01() * 3, t % 2 == 0, rng);
    const auto tp = transition_pair(g);
    for (const Eigen::MatrixXd* m : {&tp.forward, &tp.reverse}) {
      const Eigen::MatrixXd closed = personalized_pagerank(*m, p_r);
      Eigen::MatrixXd term = p_r * Eigen::MatrixXd::Identity(m->rows(), m->cols());
      Eigen::MatrixXd series = term;
      for (int s = 0; s < 5000 && term.cwiseAbs().maxCoeff() > 1e-16; ++s) {
        term = (1 - p_r) * (*m) * term;
        series += term;
      }
      worst = std::max(worst, (closed - series).cwiseAbs().maxCoeff());
    }
  }
  return {worst <= 1e-6, "max |closed form - series| = " + format_double(worst)};
}

Outcome check_walk_distances(std::uint64_t seed) {
  Rng rng(seed);
  constexpr int k = 12;
  std::size_t pairs = 0, mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const auto g = erdos_renyi(2 + rng.uniform_below(11), 0.5 + rng.uniform01() * 2, t % 3 == 0, rng);
    const std::size_t n = g.num_nodes();
    const Eigen::MatrixXd tm = transition_pair(g).forward;
    // first[u][v]: smallest j with (T^j)(u, v) > 0.
    std::vector<std::vector<int>> first(n, std::vector<int>(n, -1));
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (int j = 0; j <= k; ++j) {
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          if (first[u][v] < 0 && power(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) > 0) {
            first[u][v] = j;
          }
        }
      }
      power = tm * power;
    }
    for (std::size_t v = 0; v < n; ++v) {
      // BFS from v along edge direction.
      std::vector<int> dist(n, -1);
      std::queue<std::size_t> queue;
      dist[v] = 0;
      queue.push(v);
      while (!queue.empty()) {
        const std::size_t a = queue.front();
        queue.pop();
        for (const Edge& e : g.edges()) {
          if (e.src == a && dist[e.dst] < 0) {
            dist[e.dst] = dist[a] + 1;
            queue.push(e.dst);
          }
        }
      }
      for (std::size_t u = 0; u < n; ++u) {
        const int expected = dist[u] >= 0 && dist[u] <= k ? dist[u] : -1;
        ++pairs;
        mismatches += first[u][v] != expected;
      }
    }
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches over " + std::to_string(pairs) + " pairs"};
}

Outcome check_sortnet_examples() {
  const auto net = make_network(3, {{0, 2}, {0, 1}, {1, 2}});
  const auto rev = reversed(net);
  const bool correct = is_correct(net);
  const bool rev_correct = is_correct(rev);
  const auto g = network_to_graph(net);
  const auto h = network_to_graph(rev);
  const bool sym_iso = isomorphic(symmetrize(g), symmetrize(h));
  const bool dir_iso = isomorphic(g, h);
  return {correct && !rev_correct && sym_iso && !dir_iso,
          std::string("correct=") + (correct ? "1" : "0") + " reversed=" + (rev_correct ? "1" : "0") +
              " symmetrized isomorphic=" + (sym_iso ? "1" : "0") + " directed isomorphic=" + (dir_iso ? "1" : "0")};
}

Outcome check_batcher() {
  bool small_ok = true;
  for (std::size_t p = 2; p <= 5; ++p) {
    const auto graph = network_to_graph(batcher(p));
    small_ok = small_ok && count_topological_sorts(graph) == BigCount(brute_force_linear_extensions(graph));
  }
  const BigCount count = count_topological_sorts(network_to_graph(batcher(8)));
  return {small_ok && count > BigCount(1000000),
          "batcher(8): " + count.str() + " topological sorts; brute force p<=5 " + (small_ok ? "agrees" : "differs")};
}

Outcome check_dataset_ratios(std::uint64_t seed, const fs::path& dir) {
  std::ostringstream detail;
  bool ok = true;
  for (Split split : {Split::train, Split::val, Split::test}) {
    const SortnetConfig config{split, seed, Scale::desk, std::nullopt, std::nullopt};
    const ShardOptions options{dir.string(), std::string("ratio-") + std::string(split_name(split)), 1000, false, 1};
    const auto manifest = make_sortnet_dataset(config, options);
    std::size_t total = 0, positives = 0, relabeled = 0;
    for (const auto& shard : manifest["shards"]) {
      std::istringstream in(read_text_file((dir / shard["file"].get<std::string>()).string()));
      for (std::string line; std::getline(in, line);) {
        const auto j = nlohmann::json::parse(line);
        std::vector<Comparator> comps;
        for (const auto& c : j["comparators"]) comps.emplace_back(c[0].get<std::uint32_t>(), c[1].get<std::uint32_t>());
        const bool label = j["label"].get<bool>();
        relabeled += label != is_correct(make_network(j["p"].get<std::size_t>(), comps));
        positives += label;
        ++total;
      }
    }
    const std::size_t group = split == Split::train ? 2 : 3;
    ok = ok && total > 0 && positives * group == total && relabeled == 0;
    detail << split_name(split) << " " << positives << "/" << total << " ";
  }
  detail << "correct; all labels re-verified";
  return {ok, detail.str()};
}

Outcome check_dataflow() {
  const auto program = parse(kF1ScoreSource);
  const BigCount orders = count_reorderings(program, false);
  const auto variants = enumerate_reorderings(program, {true, 10000});
  std::set<std::string> texts, digests;
  for (const auto& v : variants.programs) {
    texts.insert(to_source(v));
    digests.insert(flow_digest(build_graph(v)));
  }
  const bool ok = orders == 16 && variants.count == 4096 && variants.programs.size() == 4096 && texts.size() == 4096 &&
                  digests.size() == 1;
  return {ok, orders.str() + " statement orders, " + variants.count.str() + " variants (" +
                  std::to_string(texts.size()) + " distinct sources), " + std::to_string(digests.size()) +
                  " distinct digest(s)"};
}

Outcome check_svd() {
  const auto rec = svd_encodings(make_topology(TopologyName::sequence, 5), 2).reconstruct();
  const bool ok = std::abs(rec(0, 1)) < 1e-9 && std::abs(rec(3, 4)) < 1e-9 && std::abs(rec(1, 2) - 1) <= 1e-9 &&
                  std::abs(rec(2, 3) - 1) <= 1e-9;
  return {ok, "(0,1)=" + format_double(rec(0, 1)) + " (3,4)=" + format_double(rec(3, 4)) +
                  " (1,2)=" + format_double(rec(1, 2)) + " (2,3)=" + format_double(rec(2, 3))};
}

Outcome check_topo_dp(std::uint64_t seed) {
  Rng rng(seed);
  int agree = 0;
  for (int t = 0; t < 100; ++t) {
    const auto g = erdos_renyi(1 + rng.uniform_below(9), 0.3 + rng.uniform01() * 2.5, true, rng);
    agree += count_topological_sorts(g) == BigCount(brute_force_linear_extensions(g));
  }
  return {agree == 100, std::to_string(agree) + "/100 DAGs agree with permutation enumeration"};
}

/// Every file under `dir`, relative path -> contents.
std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) {
      out[fs::relative(entry.path(), dir).string()] = read_text_file(entry.path().string());
    }
  }
  return out;
}

void emit_everything(std::uint64_t seed, std::size_t jobs, const fs::path& dir) {
  fs::create_directories(dir);
  for (bool dag : {false, true}) {
    PlaygroundConfig pc{Task::directed_distance, Split::val, dag, seed, Scale::desk, 2};
    make_playground_dataset(pc, {dir.string(), dag ? "play-dag" : "play", 7, true, jobs});
  }
  SortnetConfig sc{Split::test, seed, Scale::desk, 30, std::nullopt};
  make_sortnet_dataset(sc, {dir.string(), "sortnet", 7, false, jobs});

  Rng rng(seed);
  const auto g = sample_graph_with_size(20, std::vector<double>{1.5}, false, rng.next_u64());
  const double q = relative_potential(g, 0.25);
  const auto es = normalize_eigvecs(eig_smallest(magnetic_laplacian(g, q, false), 6));
  {
    TextOutput csv((dir / "maglap.csv").string(), false);
    std::ostringstream s;
    write_encoding_csv(s, es);
    csv.write(s.str());
    csv.close();
    TextOutput side((dir / "maglap.json").string(), false);
    side.write(encoding_sidecar(es, q, 0.25, false).dump(2) + "\n");
    side.close();
  }
  std::ostringstream bin;
  write_tensor_binary(bin, rw_features(g));
  TextOutput rw((dir / "rw.bin").string(), false);
  rw.write(bin.str());
  rw.close();
}

Outcome check_determinism(std::uint64_t seed, std::size_t jobs, const fs::path& dir) {
  emit_everything(seed, 1, dir / "a");
  emit_everything(seed, jobs, dir / "b");
  emit_everything(seed, jobs, dir / "c");
  const auto a = snapshot(dir / "a");
  const auto b = snapshot(dir / "b");
  const auto c = snapshot(dir / "c");
  return {!a.empty() && a == b && b == c, std::to_string(a.size()) + " files compared across jobs=1, jobs=" +
                                              std::to_string(jobs) + " and a repeat"};
}

}  // namespace

std::vector<CheckResult> run_checks(const VerifyOptions& options, const std::vector<int>& only) {
  fs::path scratch = options.scratch_dir.empty()
                         ? fs::temp_directory_path() / ("dirpe-verify-" + std::to_string(options.seed))
                         : fs::path(options.scratch_dir);
  fs::remove_all(scratch);
  fs::create_directories(scratch);
  const std::uint64_t s = options.seed;

  struct Check {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Check> checks = {
      {1, "five-node sequence Laplacian is exact", 1.0, [] { return check_eq5(); }},
      {2, "sequence eigenvectors match the closed form", 10.0, [] { return check_closed_form(); }},
      {3, "directed trees have lambda_0 = 0", 30.0, [&] { return check_trees(derive_seed(s, 3)); }},
      {4, "quadratic form identity", 0.0, [&] { return check_quadratic_form(derive_seed(s, 4)); }},
      {5, "phase reordering recovers order", 10.0, [&] { return check_reordering(derive_seed(s, 5)); }},
      {6, "PPR closed form matches the series", 0.0, [&] { return check_ppr(derive_seed(s, 6)); }},
      {7, "walk support matches BFS distance", 0.0, [&] { return check_walk_distances(derive_seed(s, 7)); }},
      {8, "three-wire network and its reversal", 0.0, [] { return check_sortnet_examples(); }},
      {9, "batcher(8) has over a million sequentializations", 60.0, [] { return check_batcher(); }},
      {10, "sortnet dataset label ratios", 0.0,
       [&] { return check_dataset_ratios(derive_seed(s, 10), scratch / "ratios"); }},
      {11, "f1_score reorderings share one graph", 120.0, [] { return check_dataflow(); }},
      {12, "rank-2 SVD of the five-node sequence", 0.0, [] { return check_svd(); }},
      {13, "topological sort DP matches brute force", 0.0, [&] { return check_topo_dp(derive_seed(s, 13)); }},
      {14, "outputs are byte-identical across runs and jobs", 0.0,
       [&] { return check_determinism(s, options.jobs, scratch / "determinism"); }},
  };

  std::vector<CheckResult> results;
  for (const Check& check : checks) {
    if (!only.empty() && std::find(only.begin(), only.end(), check.id) == only.end()) continue;
    CheckResult r{check.id, check.name, false, "", 0.0, check.limit};
    const auto start = Clock::now();
    try {
      const Outcome o = check.run();
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (r.limit_seconds > 0 && r.seconds >= r.limit_seconds) {
      r.passed = false;
      r.detail += "; exceeded " + format_double(r.limit_seconds) + " s";
    }
    results.push_back(std::move(r));
  }
  fs::remove_all(scratch);
  return results;
}

std::string format_result(const CheckResult& r) {
  char id[8];
  std::snprintf(id, sizeof id, "%2d", r.id);
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
  return std::string(r.passed ? "PASS" : "FAIL") + " [" + id + "] " + r.name + " (" + secs + " s) " + r.detail;
}

}  // namespace dirpe
