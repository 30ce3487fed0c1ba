// SPDX-License-Identifier: Apache-2.0
// Command-line entry point. Exit 0 on success, 1 on invalid input, 2 when a
// computation fails; errors go to stderr as one JSON object.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dirpe/core/error.hpp"
#include "dirpe/core/format.hpp"
#include "dirpe/core/generators.hpp"
#include "dirpe/core/graph_io.hpp"
#include "dirpe/core/provenance.hpp"
#include "dirpe/core/rng.hpp"
#include "dirpe/core/text_output.hpp"
#include "dirpe/dataflow/flow_graph.hpp"
#include "dirpe/dataflow/interpret.hpp"
#include "dirpe/dataflow/parser.hpp"
#include "dirpe/dataflow/reorder.hpp"
#include "dirpe/oracle/labels.hpp"
#include "dirpe/oracle/playground.hpp"
#include "dirpe/randwalk/random_walk.hpp"
#include "dirpe/sortnet/dataset.hpp"
#include "dirpe/spectral/baselines.hpp"
#include "dirpe/spectral/bench.hpp"
#include "dirpe/spectral/eigen.hpp"
#include "dirpe/spectral/export.hpp"
#include "dirpe/spectral/reorder.hpp"
#include "dirpe/verify/checks.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace dirpe {
namespace {

/// Failures of a computation on valid input; everything else exits 1.
bool is_compute_error(const std::string& kind) {
  return kind == "SolverError" || kind == "NumericalError" || kind == "GenerationFailed" || kind == "ComputeError";
}

class ComputeError : public Error {
 public:
  explicit ComputeError(const std::string& message) : Error("ComputeError", message) {}
};

std::uint64_t default_seed() {
  const char* env = std::getenv("DIRPE_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used, 0);
    if (used == std::string(env).size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidArgument(std::string("DIRPE_SEED is not an unsigned integer: ") + env);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void require_readable(const std::string& path) {
  if (!fs::is_regular_file(path)) throw InvalidArgument("input file not found: " + path);
}

/// The parent directory of an output file must already exist.
void require_writable(const std::string& path) {
  if (path.empty() || path == "-") return;
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    throw InvalidArgument("output directory does not exist: " + parent.string());
  }
  if (fs::is_directory(path)) throw InvalidArgument("output path is a directory: " + path);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  TextOutput out(path, false);
  out.write(text);
  out.close();
}

/// foo.csv -> foo.json, anything else -> <path>.json
std::string sidecar_path(const std::string& path) {
  fs::path p(path);
  if (p.extension() == ".csv" || p.extension() == ".bin") return p.replace_extension(".json").string();
  return path + ".json";
}

/// Applies the first allowed format when --format was not given.
void require_format(std::string& format, std::initializer_list<std::string_view> allowed) {
  if (format.empty()) format = *allowed.begin();
  for (auto a : allowed) {
    if (format == a) return;
  }
  std::string list;
  for (auto a : allowed) list += (list.empty() ? "" : "|") + std::string(a);
  throw InvalidArgument("--format must be one of " + list + " here, got " + format);
}

json complex_rows(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(m(r, c).real());
      row.push_back(m(r, c).imag());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json real_rows(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_real_csv(std::ostream& out, const std::vector<std::string>& columns, const Eigen::MatrixXd& m) {
  out << "node";
  for (const auto& c : columns) out << ',' << c;
  out << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << r;
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << ',' << format_double(m(r, c));
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Graph input shared by encode, oracle and reorder.

struct GraphSource {
  std::string graph_file;
  std::string topology;
  std::size_t n = 0;
  bool permute = false;

  void add(CLI::App* app) {
    app->add_option("--graph", graph_file, "graph JSON file (a bare graph or an object with a \"graph\" key)");
    app->add_option("--topology", topology, "named example topology instead of --graph");
    app->add_option("--n", n, "node count for --topology");
    app->add_flag("--permute", permute, "relabel the nodes with a random permutation drawn from --seed");
  }

  void validate() const {
    if (graph_file.empty() == topology.empty()) throw InvalidArgument("give exactly one of --graph and --topology");
    if (!topology.empty()) {
      parse_topology(topology);
      if (n == 0) throw InvalidArgument("--topology needs --n");
    } else {
      require_readable(graph_file);
      if (n != 0) throw InvalidArgument("--n only applies to --topology");
    }
  }

  DirectedGraph load(std::uint64_t seed) const {
    DirectedGraph g = topology.empty() ? DirectedGraph(0, {}) : make_topology(parse_topology(topology), n);
    if (!graph_file.empty()) {
      json j;
      try {
        j = json::parse(read_file(graph_file));
      } catch (const json::parse_error& e) {
        throw InvalidGraph(graph_file + ": " + e.what());
      }
      g = graph_from_json(j.contains("graph") ? j["graph"] : j);
    }
    if (permute) {
      Rng rng(seed);
      g = g.permuted(rng.permutation(g.num_nodes()));
    }
    return g;
  }

  json params() const {
    json p;
    if (!graph_file.empty()) p["graph"] = graph_file;
    if (!topology.empty()) {
      p["topology"] = topology;
      p["n"] = n;
    }
    if (permute) p["permute"] = true;
    return p;
  }
};

// ---------------------------------------------------------------------------

struct Globals {
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string format;
  std::string out;
};

void add_out(CLI::App* app, Globals& g, const std::string& formats) {
  app->add_option("--out,-o", g.out, "output path (stdout when omitted, json only)");
  app->add_option("--format", g.format, formats + ", first is the default");
}

/// JSON output: the body plus a "provenance" key.
void emit_json(const Globals& gl, const std::string& command, const json& params, json body) {
  json out = {{"provenance", provenance(command, params)}};
  for (auto& [key, value] : body.items()) out[key] = std::move(value);
  write_text(gl.out, out.dump(2) + "\n");
}

/// Table output to --out plus a provenance sidecar next to it.
void emit_with_sidecar(const Globals& gl, const std::string& command, const json& params, const std::string& data,
                       json meta) {
  if (gl.out.empty() || gl.out == "-") throw InvalidArgument("--format " + gl.format + " needs --out");
  write_text(gl.out, data);
  json side = {{"provenance", provenance(command, params)}, {"data", fs::path(gl.out).filename().string()}};
  for (auto& [key, value] : meta.items()) side[key] = std::move(value);
  write_text(sidecar_path(gl.out), side.dump(2) + "\n");
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
  CLI::App app{"Direction-aware positional encodings for directed graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", library_version());
  Globals gl;
  gl.seed = default_seed();

  auto add_seed = [&](CLI::App* a) { a->add_option("--seed", gl.seed, "random seed (default: $DIRPE_SEED or 0)"); };
  auto add_jobs = [&](CLI::App* a) { a->add_option("--jobs,-j", gl.jobs, "worker threads")->check(CLI::Range(1, 1024)); };

  // gen
  auto* gen = app.add_subcommand("gen", "generate graphs")->require_subcommand(1);
  auto* gen_graph = gen->add_subcommand("graph", "Erdős–Rényi graph, largest weak component");
  std::size_t gen_n = 0, gen_n_min = 0, gen_n_max = 0;
  std::vector<double> gen_degrees{1.0, 1.5, 2.0};
  bool gen_dag = false;
  gen_graph->add_option("--n", gen_n, "exact node count of the kept component");
  gen_graph->add_option("--n-min", gen_n_min, "lower end of the pre-extraction size range");
  gen_graph->add_option("--n-max", gen_n_max, "upper end of the pre-extraction size range");
  gen_graph->add_option("--degree", gen_degrees, "average out-degrees to draw from")->delimiter(',')->capture_default_str();
  gen_graph->add_flag("--dag", gen_dag, "sample a DAG");
  add_seed(gen_graph);
  add_out(gen_graph, gl, "json");
  auto* gen_topo = gen->add_subcommand("topology", "named example topology");
  std::string topo_name;
  std::size_t topo_n = 0;
  bool topo_list = false;
  gen_topo->add_option("--name", topo_name, "topology name");
  gen_topo->add_option("--n", topo_n, "node count");
  gen_topo->add_flag("--list", topo_list, "print the available names");
  add_out(gen_topo, gl, "json");

  // encode
  auto* enc = app.add_subcommand("encode", "positional encodings")->require_subcommand(1);
  GraphSource src;
  std::optional<double> q_rel, q_abs;
  std::size_t k = 0;
  bool normalized = false;
  std::string anchor = "foremost-source";
  std::size_t anchor_root = 0;
  auto* enc_mag = enc->add_subcommand("maglap", "Magnetic Laplacian eigenvectors");
  src.add(enc_mag);
  enc_mag->add_option("--q-rel", q_rel, "relative potential, q = q_rel / max(min(m_dir, n), 1)");
  enc_mag->add_option("--q-abs", q_abs, "absolute potential q");
  enc_mag->add_option("--k", k, "number of eigenvectors")->required();
  enc_mag->add_flag("--normalized", normalized, "degree-normalized Laplacian");
  enc_mag->add_option("--anchor", anchor, "foremost-source|root|none")->capture_default_str();
  enc_mag->add_option("--root", anchor_root, "anchor node for --anchor root");
  add_seed(enc_mag);
  add_out(enc_mag, gl, "csv|json");

  std::size_t rw_k = kDefaultWalkSteps;
  double p_r = kDefaultRestart;
  auto* enc_rw = enc->add_subcommand("rw", "random-walk and PPR landing probabilities");
  src.add(enc_rw);
  enc_rw->add_option("--k", rw_k, "walk steps")->capture_default_str();
  enc_rw->add_option("--p-r", p_r, "restart probability")->capture_default_str();
  add_seed(enc_rw);
  add_out(enc_rw, gl, "bin (pairwise tensor)|csv (node encodings)|json");

  std::size_t rank = 0;
  auto* enc_svd = enc->add_subcommand("svd", "truncated SVD of the adjacency matrix");
  src.add(enc_svd);
  enc_svd->add_option("--rank", rank, "number of singular triplets")->required();
  add_seed(enc_svd);
  add_out(enc_svd, gl, "csv|json");

  std::size_t d_model = 0;
  std::size_t sin_n = 0;
  auto* enc_sin = enc->add_subcommand("sin", "sinusoidal encodings of node indices");
  enc_sin->add_option("--n", sin_n, "number of positions")->required();
  enc_sin->add_option("--d-model", d_model, "encoding width (even)")->required();
  add_out(enc_sin, gl, "csv|json");

  // oracle
  auto* orc = app.add_subcommand("oracle", "pairwise reachability, adjacency and distance labels");
  std::string task = "directed_distance";
  src.add(orc);
  orc->add_option("--task", task, "reachability|adjacency|undirected_distance|directed_distance")
      ->capture_default_str();
  add_seed(orc);
  add_out(orc, gl, "json");

  // dataset
  auto* ds = app.add_subcommand("dataset", "emit JSONL dataset shards")->require_subcommand(1);
  std::string split = "train", scale = "desk", out_dir, prefix;
  std::optional<std::size_t> count;
  std::size_t shard_size = 1000;
  bool gzip = false;
  auto add_dataset_common = [&](CLI::App* a) {
    a->add_option("--split", split, "train|val|test")->capture_default_str();
    a->add_option("--scale", scale, "paper|desk")->capture_default_str();
    a->add_option("--count", count, "override the record count");
    a->add_option("--out-dir", out_dir, "output directory (created)")->required();
    a->add_option("--prefix", prefix, "shard file prefix");
    a->add_option("--shard-size", shard_size, "records per shard")->capture_default_str();
    a->add_flag("--gzip", gzip, "gzip the shards");
    add_seed(a);
    add_jobs(a);
  };
  auto* ds_play = ds->add_subcommand("playground", "random graphs with pairwise labels");
  bool ds_dag = false;
  std::string ds_task = "reachability";
  add_dataset_common(ds_play);
  ds_play->add_option("--task", ds_task, "reachability|adjacency|undirected_distance|directed_distance")
      ->capture_default_str();
  ds_play->add_flag("--dag", ds_dag, "sample DAGs");
  auto* ds_sort = ds->add_subcommand("sortnet", "sorting networks labelled by correctness");
  std::vector<std::size_t> lengths;
  add_dataset_common(ds_sort);
  ds_sort->add_option("--lengths", lengths, "wire count range LO HI")->expected(2);

  // reorder
  auto* reo = app.add_subcommand("reorder", "order nodes by the phase of the first eigenvector");
  src.add(reo);
  double reo_q = 0.25;
  reo->add_option("--q-rel", reo_q, "relative potential")->capture_default_str();
  add_seed(reo);
  add_out(reo, gl, "json");

  // dataflow
  auto* df = app.add_subcommand("dataflow", "mini-language data-flow graphs")->require_subcommand(1);
  auto* df_build = df->add_subcommand("build", "graph JSON and digest of a .mini file");
  std::string df_file;
  bool df_no_mask = false;
  df_build->add_option("file", df_file, ".mini source")->required();
  df_build->add_flag("--no-mask", df_no_mask, "keep the function name");
  add_out(df_build, gl, "json");
  auto* df_fuzz = df->add_subcommand("fuzz", "check every reordering of each file for digest and value equality");
  std::vector<std::string> df_files;
  std::size_t df_limit = 20000;
  int df_trials = 5;
  df_fuzz->add_option("files", df_files, ".mini sources")->required();
  df_fuzz->add_option("--limit", df_limit, "maximum variants per file")->capture_default_str();
  df_fuzz->add_option("--trials", df_trials, "random inputs per file")->capture_default_str();
  add_seed(df_fuzz);

  // bench
  auto* bench = app.add_subcommand("bench", "timing")->require_subcommand(1);
  auto* bench_eig_cmd = bench->add_subcommand("eig", "dense vs iterative eigensolver timings");
  BenchConfig bc;
  bc.sizes = {64, 128, 256, 512};
  bench_eig_cmd->add_option("--sizes", bc.sizes, "node counts (ascending)")->delimiter(',')->capture_default_str();
  bench_eig_cmd->add_option("--q", bc.q_values, "potentials")->delimiter(',')->capture_default_str();
  bench_eig_cmd->add_option("--trials", bc.trials, "trials per cell")->capture_default_str();
  bench_eig_cmd->add_option("--sparse-k", bc.sparse_k, "eigenpairs for the iterative solver")->capture_default_str();
  bench_eig_cmd->add_option("--dense-max", bc.dense_max, "largest n timed densely")->capture_default_str();
  add_seed(bench_eig_cmd);
  add_out(bench_eig_cmd, gl, "csv");

  // verify
  auto* ver = app.add_subcommand("verify", "run the invariant suite");
  std::vector<int> only;
  std::string scratch;
  ver->add_option("--only", only, "check ids")->delimiter(',');
  ver->add_option("--scratch", scratch, "scratch directory");
  add_seed(ver);
  std::size_t verify_jobs = 8;
  ver->add_option("--jobs,-j", verify_jobs, "workers compared against one in the determinism check")
      ->capture_default_str()
      ->check(CLI::Range(1, 1024));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    throw InvalidArgument(e.what());
  }

  // ----- gen
  if (gen_graph->parsed()) {
    require_format(gl.format, {"json"});
    require_writable(gl.out);
    if (gen_degrees.empty()) throw InvalidArgument("--degree needs at least one value");
    json params = {{"seed", gl.seed}, {"degrees", gen_degrees}, {"dag", gen_dag}};
    DirectedGraph g(0, {});
    if (gen_n != 0) {
      if (gen_n_min != 0 || gen_n_max != 0) throw InvalidArgument("give --n or --n-min/--n-max, not both");
      params["n"] = gen_n;
      g = sample_graph_with_size(gen_n, gen_degrees, gen_dag, gl.seed);
    } else {
      if (gen_n_min == 0 || gen_n_max < gen_n_min) throw InvalidArgument("need --n or 0 < --n-min <= --n-max");
      params["n_range"] = {gen_n_min, gen_n_max};
      g = sample_graph({gen_n_min, gen_n_max}, gen_degrees, gen_dag, gl.seed);
    }
    emit_json(gl, "gen graph", params, {{"graph", graph_to_json(g)}});
    return 0;
  }
  if (gen_topo->parsed()) {
    if (topo_list) {
      for (auto t : all_topologies()) std::cout << topology_name(t) << '\n';
      return 0;
    }
    require_format(gl.format, {"json"});
    require_writable(gl.out);
    if (topo_name.empty() || topo_n == 0) throw InvalidArgument("gen topology needs --name and --n");
    const auto g = make_topology(parse_topology(topo_name), topo_n);
    emit_json(gl, "gen topology", {{"name", topo_name}, {"n", topo_n}}, {{"graph", graph_to_json(g)}});
    return 0;
  }

  // ----- encode
  if (enc_mag->parsed()) {
    require_format(gl.format, {"csv", "json"});
    src.validate();
    require_writable(gl.out);
    if (q_rel.has_value() == q_abs.has_value()) throw InvalidArgument("give exactly one of --q-rel and --q-abs");
    if (k == 0) throw InvalidArgument("--k must be positive");
    Anchor a = Anchor::foremost_source();
    if (anchor == "none") {
      a = Anchor::none();
    } else if (anchor == "root") {
      a = Anchor::at_root(anchor_root);
    } else if (anchor != "foremost-source") {
      throw InvalidArgument("--anchor must be foremost-source, root or none");
    }
    const auto g = src.load(gl.seed);
    if (a.kind == Anchor::Kind::root && anchor_root >= g.num_nodes()) throw InvalidArgument("--root out of range");
    const double q = q_rel ? relative_potential(g, *q_rel) : *q_abs;
    const auto es = normalize_eigvecs(eig_smallest(magnetic_laplacian(g, q, normalized), k), a);
    json params = src.params();
    params.update({{"seed", gl.seed}, {"k", k}, {"normalized", normalized}, {"anchor", anchor}});
    params[q_rel ? "q_rel" : "q_abs"] = q_rel ? *q_rel : *q_abs;
    json meta = encoding_sidecar(es, q, q_rel, normalized);
    if (gl.format == "csv") {
      std::ostringstream s;
      write_encoding_csv(s, es);
      emit_with_sidecar(gl, "encode maglap", params, s.str(), meta);
    } else {
      meta["eigenvectors"] = complex_rows(es.eigenvectors);
      emit_json(gl, "encode maglap", params, meta);
    }
    return 0;
  }
  if (enc_rw->parsed()) {
    require_format(gl.format, {"bin", "csv", "json"});
    src.validate();
    require_writable(gl.out);
    const auto f = rw_features(src.load(gl.seed), rw_k, p_r);
    json params = src.params();
    params.update({{"seed", gl.seed}, {"k", rw_k}, {"p_r", p_r}});
    if (gl.format == "bin") {
      std::ostringstream s;
      write_tensor_binary(s, f);
      emit_with_sidecar(gl, "encode rw", params, s.str(), {{"header", tensor_header(f)}});
    } else if (gl.format == "csv") {
      std::ostringstream s;
      write_real_csv(s, channel_names(rw_k), node_encodings(f));
      emit_with_sidecar(gl, "encode rw", params, s.str(), {{"channels", channel_names(rw_k)}});
    } else {
      emit_json(gl, "encode rw", params,
                {{"header", tensor_header(f)},
                 {"node_encodings", real_rows(node_encodings(f))},
                 {"relative", relative_features(f)}});
    }
    return 0;
  }
  if (enc_svd->parsed()) {
    require_format(gl.format, {"csv", "json"});
    src.validate();
    require_writable(gl.out);
    const auto e = svd_encodings(src.load(gl.seed), rank);
    json params = src.params();
    params.update({{"seed", gl.seed}, {"rank", rank}});
    std::vector<double> sv(e.singular_values.data(), e.singular_values.data() + e.singular_values.size());
    if (gl.format == "csv") {
      Eigen::MatrixXd both(e.u.rows(), 2 * e.u.cols());
      both << e.left(), e.right();
      std::vector<std::string> cols;
      for (std::size_t j = 0; j < static_cast<std::size_t>(e.u.cols()); ++j) cols.push_back("left_" + std::to_string(j));
      for (std::size_t j = 0; j < static_cast<std::size_t>(e.u.cols()); ++j) cols.push_back("right_" + std::to_string(j));
      std::ostringstream s;
      write_real_csv(s, cols, both);
      emit_with_sidecar(gl, "encode svd", params, s.str(), {{"rank", rank}, {"singular_values", sv}});
    } else {
      emit_json(gl, "encode svd", params,
                {{"rank", rank}, {"singular_values", sv}, {"left", real_rows(e.left())}, {"right", real_rows(e.right())}});
    }
    return 0;
  }
  if (enc_sin->parsed()) {
    require_format(gl.format, {"csv", "json"});
    require_writable(gl.out);
    const auto pe = sinusoidal_pe(sin_n, d_model);
    json params = {{"n", sin_n}, {"d_model", d_model}};
    if (gl.format == "csv") {
      std::vector<std::string> cols;
      for (std::size_t j = 0; j < d_model; ++j) cols.push_back("pe_" + std::to_string(j));
      std::ostringstream s;
      write_real_csv(s, cols, pe);
      emit_with_sidecar(gl, "encode sin", params, s.str(), {{"d_model", d_model}});
    } else {
      emit_json(gl, "encode sin", params, {{"encodings", real_rows(pe)}});
    }
    return 0;
  }

  // ----- oracle
  if (orc->parsed()) {
    require_format(gl.format, {"json"});
    src.validate();
    require_writable(gl.out);
    const Task t = parse_task(task);
    const auto g = src.load(gl.seed);
    const auto l = labels(g, t);
    json params = src.params();
    params.update({{"seed", gl.seed}, {"task", task}});
    emit_json(gl, "oracle", params,
              {{"task", task}, {"n", l.n}, {"values", labels_values_json(l)}, {"mask", labels_mask_json(l)}});
    return 0;
  }

  // ----- dataset
  if (ds_play->parsed() || ds_sort->parsed()) {
    if (shard_size == 0) throw InvalidArgument("--shard-size must be positive");
    const bool play = ds_play->parsed();
    const Split sp = parse_split(split);
    const Scale sc = parse_scale(scale);
    if (prefix.empty()) prefix = std::string(play ? ds_task : "sortnet") + "-" + std::string(split_name(sp));
    if (prefix.find('/') != std::string::npos) throw InvalidArgument("--prefix must be a plain file name");
    fs::create_directories(out_dir);
    const ShardOptions options{out_dir, prefix, shard_size, gzip, gl.jobs};
    json manifest;
    if (play) {
      manifest = make_playground_dataset({parse_task(ds_task), sp, ds_dag, gl.seed, sc, count}, options);
    } else {
      std::optional<NodeRange> range;
      if (!lengths.empty()) range = NodeRange{lengths[0], lengths[1]};
      manifest = make_sortnet_dataset({sp, gl.seed, sc, count, range}, options);
    }
    std::cout << (fs::path(out_dir) / (prefix + "-manifest.json")).string() << '\n';
    return 0;
  }

  // ----- reorder
  if (reo->parsed()) {
    require_format(gl.format, {"json"});
    src.validate();
    require_writable(gl.out);
    const auto order = reorder_by_phase(src.load(gl.seed), reo_q);
    json params = src.params();
    params.update({{"seed", gl.seed}, {"q_rel", reo_q}});
    emit_json(gl, "reorder", params, {{"order", order}});
    return 0;
  }

  // ----- dataflow
  if (df_build->parsed()) {
    require_format(gl.format, {"json"});
    require_readable(df_file);
    require_writable(gl.out);
    const auto fg = build_graph(parse(read_file(df_file)), !df_no_mask);
    const std::string digest = flow_digest(fg);
    if (!gl.out.empty() && gl.out != "-") {
      emit_json(gl, "dataflow build", {{"file", df_file}, {"mask_name", !df_no_mask}},
                {{"digest", digest}, {"graph", graph_to_json(fg.graph)}});
    }
    std::cout << "sha256:" << digest << "  " << df_file << '\n';
    return 0;
  }
  if (df_fuzz->parsed()) {
    for (const auto& f : df_files) require_readable(f);
    bool all_ok = true;
    for (const auto& f : df_files) {
      std::string detail;
      bool ok = true;
      try {
        const auto program = parse(read_file(f));
        const auto variants = enumerate_reorderings(program, {true, df_limit});
        if (variants.truncated) throw TooLarge(variants.count.str() + " variants exceed --limit");
        std::set<std::string> digests;
        for (const auto& v : variants.programs) digests.insert(flow_digest(build_graph(v)));
        ok = digests.size() == 1;
        detail = variants.count.str() + " variants, " + std::to_string(digests.size()) + " digest(s)";

        Rng rng(derive_seed(gl.seed, std::hash<std::string>{}(fs::path(f).filename().string())));
        int evaluated = 0, mismatched = 0;
        for (int t = 0; t < df_trials; ++t) {
          std::vector<MiniValue> args;
          for (std::size_t a = 0; a < program.params.size(); ++a) {
            // Small integers keep comparisons and bit operations meaningful.
            args.push_back({static_cast<double>(rng.uniform_int(-3, 3))});
          }
          MiniValue expected;
          try {
            expected = interpret(program, args);
          } catch (const Error&) {
            continue;
          }
          ++evaluated;
          for (const auto& v : variants.programs) mismatched += !same_value(interpret(v, args), expected);
        }
        ok = ok && mismatched == 0;
        detail += ", " + std::to_string(evaluated) + " input(s) evaluated, " + std::to_string(mismatched) + " mismatch(es)";
      } catch (const Error& e) {
        ok = false;
        detail = e.kind() + ": " + e.what();
      }
      all_ok = all_ok && ok;
      std::cout << (ok ? "PASS " : "FAIL ") << f << ": " << detail << '\n';
    }
    if (!all_ok) throw ComputeError("dataflow fuzz found failures");
    return 0;
  }

  // ----- bench
  if (bench_eig_cmd->parsed()) {
    require_format(gl.format, {"csv"});
    require_writable(gl.out);
    bc.seed = gl.seed;
    const auto rows = bench_eig(bc);
    std::ostringstream s;
    write_bench_csv(s, rows);
    emit_with_sidecar(gl, "bench eig", {{"sizes", bc.sizes}, {"q", bc.q_values}, {"trials", bc.trials},
                                        {"sparse_k", bc.sparse_k}, {"dense_max", bc.dense_max}, {"seed", gl.seed}},
                      s.str(), json::object());
    return 0;
  }

  // ----- verify
  if (ver->parsed()) {
    for (int id : only) {
      if (id < 1 || id > kCheckCount) throw InvalidArgument("--only ids must be within 1.." + std::to_string(kCheckCount));
    }
    const auto results = run_checks({gl.seed, verify_jobs, scratch}, only);
    bool all = true;
    for (const auto& r : results) {
      std::cout << format_result(r) << '\n';
      all = all && r.passed;
    }
    if (!all) throw ComputeError("invariant suite failed");
    return 0;
  }
  return 0;
}

}  // namespace
}  // namespace dirpe

int main(int argc, char** argv) {
  auto report = [](const std::string& kind, const std::string& message, int code, json extra = json::object()) {
    json j = {{"error", kind}, {"message", message}, {"exit_code", code}};
    j.update(extra);
    std::cerr << j.dump() << std::endl;
    return code;
  };
  try {
    return dirpe::run(argc, argv);
  } catch (const dirpe::SyntaxError& e) {
    return report(e.kind(), e.what(), 1, {{"line", e.line()}, {"column", e.column()}});
  } catch (const dirpe::SolverError& e) {
    return report(e.kind(), e.what(), 2, {{"max_residual", e.max_residual()}, {"iterations", e.iterations()}});
  } catch (const dirpe::Error& e) {
    return report(e.kind(), e.what(), dirpe::is_compute_error(e.kind()) ? 2 : 1);
  } catch (const std::filesystem::filesystem_error& e) {
    return report("IOError", e.what(), 1);
  } catch (const std::exception& e) {
    return report("InternalError", e.what(), 2);
  }
}
