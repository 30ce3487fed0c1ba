// SPDX-License-Identifier: Apache-2.0
// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
//
//   acceptance [--cli PATH] [--scratch DIR] [--seed N] [--jobs N]
//
// With --cli, criterion 14 also runs every dataset and encode command of the
// binary three times (jobs 1, jobs N, jobs N again) and compares the bytes.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dirpe/verify/checks.hpp"

namespace fs = std::filesystem;

namespace {

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    out[fs::relative(entry.path(), dir).string()] = s.str();
  }
  return out;
}

struct CliRun {
  bool ok = true;
  std::string detail;
};

CliRun cli_determinism(const std::string& cli, const fs::path& root, std::size_t jobs) {
  fs::remove_all(root);
  fs::create_directories(root);
  CliRun result;
  auto sh = [&](const std::string& args) {
    const std::string cmd = quote(cli) + " " + args + " > /dev/null 2>> " + quote((root / "stderr.log").string());
    if (std::system(cmd.c_str()) != 0) {
      result.ok = false;
      result.detail += "command failed: " + args + "; ";
    }
  };
  const std::string graph = quote((root / "input.json").string());
  sh("gen graph --n 24 --seed 11 --out " + graph);

  const std::vector<std::pair<std::string, std::size_t>> runs = {{"a", 1}, {"b", jobs}, {"c", jobs}};
  for (const auto& [tag, j] : runs) {
    const fs::path d = root / tag;
    fs::create_directories(d);
    const std::string J = " --jobs " + std::to_string(j) + " --seed 5 ";
    auto out = [&](const std::string& name) { return quote((d / name).string()); };
    sh("dataset sortnet --split train --count 40 --shard-size 9 --out-dir " + out("sortnet-train") + J);
    sh("dataset sortnet --split test --count 30 --shard-size 7 --out-dir " + out("sortnet-test") + J);
    sh("dataset playground --task directed_distance --split val --count 2 --gzip --out-dir " + out("play") + J);
    sh("dataset playground --task reachability --dag --count 30 --shard-size 8 --out-dir " + out("play-dag") + J);
    sh("gen graph --n 30 --dag --seed 5 --out " + out("gen.json"));
    sh("gen topology --name trumpet_dag --n 12 --out " + out("topology.json"));
    sh("encode maglap --topology sequence --n 9 --q-rel 0.25 --k 4 --out " + out("maglap-seq.csv"));
    sh("encode maglap --graph " + graph + " --q-abs 0.05 --k 6 --normalized --out " + out("maglap.csv"));
    sh("encode maglap --graph " + graph + " --q-rel 0.25 --k 3 --format json --out " + out("maglap.json"));
    sh("encode rw --graph " + graph + " --k 3 --out " + out("rw.bin"));
    sh("encode rw --graph " + graph + " --format csv --out " + out("rw.csv"));
    sh("encode svd --graph " + graph + " --rank 4 --out " + out("svd.csv"));
    sh("encode sin --n 16 --d-model 8 --out " + out("sin.csv"));
    sh("oracle --graph " + graph + " --task undirected_distance --out " + out("oracle.json"));
    sh("reorder --topology binary_tree --n 9 --permute --seed 5 --out " + out("reorder.json"));
  }
  const auto a = snapshot(root / "a");
  const auto b = snapshot(root / "b");
  const auto c = snapshot(root / "c");
  std::size_t differing = 0;
  for (const auto& [name, bytes] : a) {
    const auto ib = b.find(name);
    const auto ic = c.find(name);
    if (ib == b.end() || ic == c.end() || ib->second != bytes || ic->second != bytes) {
      ++differing;
      result.detail += "differs: " + name + "; ";
    }
  }
  result.ok = result.ok && !a.empty() && a.size() == b.size() && b.size() == c.size() && differing == 0;
  result.detail += "CLI: " + std::to_string(a.size()) + " files from 15 commands identical across jobs=1, jobs=" +
                   std::to_string(jobs) + " and a repeat";
  if (result.ok) fs::remove_all(root);
  return result;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  std::string scratch = (fs::temp_directory_path() / "dirpe-acceptance").string();
  dirpe::VerifyOptions options;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    const std::string value = argv[i + 1];
    if (flag == "--cli") {
      cli = value;
    } else if (flag == "--scratch") {
      scratch = value;
    } else if (flag == "--seed") {
      options.seed = std::stoull(value);
    } else if (flag == "--jobs") {
      options.jobs = std::stoull(value);
    } else {
      std::cerr << "unknown flag " << flag << '\n';
      return 2;
    }
  }
  options.scratch_dir = (fs::path(scratch) / "checks").string();

  auto results = dirpe::run_checks(options);
  if (!cli.empty()) {
    for (auto& r : results) {
      if (r.id != 14) continue;
      const auto run = cli_determinism(cli, fs::path(scratch) / "cli", options.jobs);
      r.passed = r.passed && run.ok;
      r.detail += "; " + run.detail;
    }
  }
  int failed = 0;
  for (const auto& r : results) {
    std::cout << dirpe::format_result(r) << std::endl;
    failed += !r.passed;
  }
  std::cout << (results.size() - static_cast<std::size_t>(failed)) << "/" << results.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
