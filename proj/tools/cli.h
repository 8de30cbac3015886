// Copyright 2026 The phylocompat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PHYLOCOMPAT_TOOLS_CLI_H_
#define PHYLOCOMPAT_TOOLS_CLI_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "phylocompat/gen.h"
#include "phylocompat/phylo.h"

namespace phylocompat::cli {

// Exit codes.
inline constexpr int kExitCompatible = 0;
inline constexpr int kExitIncompatible = 1;
inline constexpr int kExitError = 2;

// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err);

// ---- bench ---------------------------------------------------------------

struct BenchConfig {
  std::uint64_t seed = 1;
  unsigned min_exp = 15;  // ladder M_P = 2^min_exp .. 2^max_exp
  unsigned max_exp = 21;
  std::size_t repeats = 3;  // fastest of this many runs is reported
  std::vector<Shape> shapes{Shape::kBinary, Shape::kStarHeavy};
  std::size_t trees = 8;
  double coverage = 0.5;
};

struct BenchRow {
  unsigned exp = 0;
  Shape shape = Shape::kBinary;
  std::size_t m_p = 0;
  std::size_t species = 0;
  double seconds = 0;
  double normalized = 0;  // seconds / (M log2^2 M), in nanoseconds
  std::size_t scans = 0;
  bool compatible = false;
  bool sound = false;  // output displays every input tree
};

// Compatible profile whose M_P lands close to `target_m`.
Profile bench_profile(std::size_t target_m, Shape shape, std::uint64_t seed,
                      std::size_t trees = 8, double coverage = 0.5);

std::vector<BenchRow> run_bench(const BenchConfig& cfg,
                                const std::function<void(const BenchRow&)>& progress = {});
void write_bench_table(const std::vector<BenchRow>& rows, std::ostream& out);
void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);

// ---- selftest ------------------------------------------------------------

// Random profile with at most `max_species` species and `max_trees` trees;
// odd draws are perturbed, so both verdicts occur.
Profile fuzz_profile(std::uint64_t seed, std::size_t max_species, std::size_t max_trees);

// Random insert/delete/query workload on n vertices checked against the BFS
// oracle. Returns the number of disagreeing answers.
std::size_t dynconn_stress(std::uint64_t seed, std::size_t n, std::size_t ops);

using Solver = std::function<bool(const Profile&)>;

struct SelftestConfig {
  std::uint64_t seed = 1;
  std::size_t profiles = 500;  // per oracle
  std::size_t dyn_seeds = 50;
  std::size_t dyn_ops = 10000;
  std::size_t dyn_vertices = 256;
};

struct SelftestReport {
  std::size_t tiny_runs = 0, tiny_failures = 0;
  std::size_t small_runs = 0, small_failures = 0;
  std::size_t dyn_runs = 0, dyn_failures = 0;
  std::vector<std::string> failures;  // first few offending inputs
  bool ok() const { return tiny_failures + small_failures + dyn_failures == 0; }
};

// Tiny profiles against exhaustive search, small ones against classic BUILD,
// then the connectivity stress. `solver` defaults to the fast checker.
SelftestReport selftest(const SelftestConfig& cfg, const Solver& solver = {});

}  // namespace phylocompat::cli

#endif  // PHYLOCOMPAT_TOOLS_CLI_H_
