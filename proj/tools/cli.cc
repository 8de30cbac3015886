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

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <CLI11.hpp>

#include "phylocompat/buildg.h"
#include "phylocompat/dynconn.h"
#include "phylocompat/newick.h"
#include "phylocompat/oracle.h"

namespace phylocompat::cli {
namespace {

bool displays_all(const PhyloTree& t, const Profile& p) {
  return std::all_of(p.trees().begin(), p.trees().end(),
                     [&](const PhyloTree& ti) { return displays(t, ti); });
}

double log2sq(double m) {
  double l = std::log2(m);
  return l * l;
}

// Rough M_P contributed per covered species and tree, used to size a first
// draw before correcting against the measured value.
double m_per_species(Shape shape) {
  switch (shape) {
    case Shape::kBinary: return 4.0;
    case Shape::kStarHeavy: return 2.1;
    case Shape::kMixed: return 3.6;
  }
  return 4.0;
}

}  // namespace

// ---- bench ---------------------------------------------------------------

Profile bench_profile(std::size_t target_m, Shape shape, std::uint64_t seed, std::size_t trees,
                      double coverage) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.k_trees = trees;
  cfg.coverage = coverage;
  cfg.shape = shape;
  double per = m_per_species(shape) * static_cast<double>(trees) * coverage;
  cfg.n_species = std::max<std::size_t>(4, static_cast<std::size_t>(target_m / per));
  Profile p = gen_compatible(cfg);
  double ratio = static_cast<double>(target_m) / static_cast<double>(p.m_p());
  if (std::abs(ratio - 1) > 0.02) {
    cfg.n_species = std::max<std::size_t>(
        4, static_cast<std::size_t>(static_cast<double>(cfg.n_species) * ratio));
    p = gen_compatible(cfg);
  }
  return p;
}

std::vector<BenchRow> run_bench(const BenchConfig& cfg,
                                const std::function<void(const BenchRow&)>& progress) {
  if (cfg.min_exp > cfg.max_exp || cfg.max_exp > 30 || cfg.min_exp < 4) {
    throw std::invalid_argument("bench: ladder exponents must satisfy 4 <= min <= max <= 30");
  }
  std::vector<BenchRow> rows;
  for (unsigned e = cfg.min_exp; e <= cfg.max_exp; ++e) {
    for (Shape shape : cfg.shapes) {
      Profile p = bench_profile(std::size_t{1} << e, shape, cfg.seed + e, cfg.trees, cfg.coverage);
      BenchRow row;
      row.exp = e;
      row.shape = shape;
      row.m_p = p.m_p();
      row.species = p.species().size();
      row.seconds = INFINITY;
      for (std::size_t r = 0; r < std::max<std::size_t>(1, cfg.repeats); ++r) {
        auto start = std::chrono::steady_clock::now();
        SupertreeResult result = buildg(p);
        std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
        row.seconds = std::min(row.seconds, took.count());
        if (r == 0) {
          row.scans = result.stats.scans;
          row.compatible = result.compatible;
          row.sound = result.compatible && displays_all(*result.tree, p);
        }
      }
      double m = static_cast<double>(row.m_p);
      row.normalized = row.seconds * 1e9 / (m * log2sq(m));
      if (progress) progress(row);
      rows.push_back(row);
    }
  }
  return rows;
}

void write_bench_table(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << std::left << std::setw(8) << "shape" << std::right << std::setw(10) << "M_P"
      << std::setw(10) << "species" << std::setw(12) << "seconds" << std::setw(16)
      << "ns/(M lg^2 M)" << std::setw(12) << "scans" << std::setw(8) << "ok" << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(8) << to_string(r.shape) << std::right << std::setw(10) << r.m_p
        << std::setw(10) << r.species << std::setw(12) << std::fixed << std::setprecision(4)
        << r.seconds << std::setw(16) << std::setprecision(3) << r.normalized << std::setw(12)
        << r.scans << std::setw(8) << (r.sound ? "yes" : "NO") << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << "shape,m_p,species,seconds,normalized_ns,scans,sound\n";
  for (const auto& r : rows) {
    out << to_string(r.shape) << ',' << r.m_p << ',' << r.species << ',' << std::setprecision(9)
        << r.seconds << ',' << r.normalized << ',' << r.scans << ',' << (r.sound ? 1 : 0) << '\n';
  }
}

// ---- selftest ------------------------------------------------------------

Profile fuzz_profile(std::uint64_t seed, std::size_t max_species, std::size_t max_trees) {
  std::mt19937_64 rng(seed);
  GenConfig cfg;
  cfg.seed = rng();
  cfg.n_species = 3 + rng() % (max_species - 2);
  cfg.k_trees = 1 + rng() % max_trees;
  // at least two species per tree
  double lo = std::min(1.0, 2.0 / static_cast<double>(cfg.n_species));
  cfg.coverage = lo + (1 - lo) * static_cast<double>(rng() % 1000) / 999.0;
  cfg.shape = static_cast<Shape>(rng() % 3);
  cfg.perturb = seed % 2 ? 1 + rng() % 2 : 0;
  return gen_perturbed(cfg);
}

std::size_t dynconn_stress(std::uint64_t seed, std::size_t n, std::size_t ops) {
  std::mt19937_64 rng(seed);
  DynGraph g(n);
  NaiveGraph naive(n);
  std::vector<std::pair<Vertex, Vertex>> present;
  std::size_t bad = 0;
  for (std::size_t step = 0; step < ops; ++step) {
    auto r = rng() % 10;
    if (r < 4 || present.empty()) {
      auto u = static_cast<Vertex>(rng() % n), v = static_cast<Vertex>(rng() % n);
      if (u == v || naive.has_edge(u, v)) continue;
      bool merged = g.insert_edge(u, v);
      bad += merged != !naive.connected(u, v);
      naive.insert(u, v);
      present.emplace_back(u, v);
    } else if (r < 7) {
      std::size_t j = rng() % present.size();
      auto [u, v] = present[j];
      present[j] = present.back();
      present.pop_back();
      auto split = g.delete_edge(u, v);
      naive.erase(u, v);
      auto cu = naive.component(u);
      bool apart = !std::binary_search(cu.begin(), cu.end(), v);
      bad += split.has_value() != apart;
      if (split && apart) {
        std::size_t small = std::min(cu.size(), naive.component_size(v));
        bad += split->smaller_size != small;
      }
    } else {
      auto u = static_cast<Vertex>(rng() % n), v = static_cast<Vertex>(rng() % n);
      auto cu = naive.component(u);
      bad += g.connected(u, v) != std::binary_search(cu.begin(), cu.end(), v);
      bad += g.component_size(u) != cu.size();
    }
  }
  try {
    g.check_invariants();
  } catch (const std::logic_error&) {
    ++bad;
  }
  return bad;
}

SelftestReport selftest(const SelftestConfig& cfg, const Solver& solver) {
  Solver solve = solver ? solver : Solver(check_only);
  SelftestReport report;
  auto note = [&](const char* what, const Profile& p) {
    if (report.failures.size() < 5) report.failures.push_back(what + (": " + write_profile(p)));
  };
  for (std::size_t j = 0; j < cfg.profiles; ++j) {
    Profile p = fuzz_profile(cfg.seed * 1000003 + j, 5, 4);
    ++report.tiny_runs;
    if (solve(p) != brute_force_compatible(p)) {
      ++report.tiny_failures;
      note("exhaustive", p);
    }
  }
  for (std::size_t j = 0; j < cfg.profiles; ++j) {
    Profile p = fuzz_profile(cfg.seed * 2000003 + j, 12, 5);
    ++report.small_runs;
    if (solve(p) != build_classic(p).has_value()) {
      ++report.small_failures;
      note("classic", p);
    }
  }
  for (std::size_t s = 0; s < cfg.dyn_seeds; ++s) {
    ++report.dyn_runs;
    if (dynconn_stress(cfg.seed * 3000017 + s, cfg.dyn_vertices, cfg.dyn_ops) != 0) {
      ++report.dyn_failures;
      if (report.failures.size() < 5) {
        report.failures.push_back("dynconn seed " + std::to_string(cfg.seed * 3000017 + s));
      }
    }
  }
  return report;
}

// ---- command line --------------------------------------------------------

namespace {

struct Options {
  std::string input = "-";
  std::string output;
  std::string csv;
  bool verify = false;
  bool quiet = false;
  std::uint64_t seed = 1;
  std::size_t species = 8;
  std::size_t trees = 3;
  std::size_t bench_trees = BenchConfig{}.trees;
  double coverage = 0.5;
  std::size_t perturb = 0;
  std::string shape = "binary";
  unsigned min_exp = 15;
  unsigned max_exp = 21;
  std::size_t repeats = 3;
  std::size_t profiles = 500;
  std::size_t dyn_seeds = 50;
};

std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), {}};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open input '" + path + "'");
  return {std::istreambuf_iterator<char>(f), {}};
}

// Writes to --output when given, else to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out) : stream_(&out) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot open output '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

Shape shape_flag(const std::string& s) {
  auto shape = parse_shape(s);
  if (!shape) throw std::invalid_argument("unknown shape '" + s + "'");
  return *shape;
}

void print_stats(const BuildStats& s, std::ostream& err) {
  err << "M_P=" << s.m_p << " rounds=" << s.rounds << " expansions=" << s.expansions
      << " splits=" << s.splits << " scans=" << s.scans << '\n';
}

int cmd_check(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  Profile p = parse_profile(read_input(o.input, in));
  BuildOptions options;
  options.build_tree = false;
  SupertreeResult r = buildg(p, options);
  out << (r.compatible ? "COMPATIBLE" : "INCOMPATIBLE") << '\n';
  if (!o.quiet) print_stats(r.stats, err);
  return r.compatible ? kExitCompatible : kExitIncompatible;
}

int cmd_supertree(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  Profile p = parse_profile(read_input(o.input, in));
  SupertreeResult r = buildg(p);
  if (!o.quiet) print_stats(r.stats, err);
  if (!r.compatible) {
    out << "INCOMPATIBLE\n";
    return kExitIncompatible;
  }
  if (o.verify) {
    for (std::size_t i = 0; i < p.k(); ++i) {
      if (!displays(*r.tree, p.tree(i))) {
        err << "error: supertree does not display input tree " << i << '\n';
        return kExitError;
      }
    }
  }
  Sink sink(o.output, out);
  sink.get() << write_tree(*r.tree, p.taxa()) << '\n';
  return kExitCompatible;
}

int cmd_gen(const Options& o, std::ostream& out) {
  GenConfig cfg;
  cfg.seed = o.seed;
  cfg.n_species = o.species;
  cfg.k_trees = o.trees;
  cfg.coverage = o.coverage;
  cfg.shape = shape_flag(o.shape);
  cfg.perturb = o.perturb;
  Sink sink(o.output, out);
  sink.get() << write_profile(gen_perturbed(cfg));
  return 0;
}

int cmd_bench(const Options& o, bool shape_given, std::ostream& out, std::ostream& err) {
  BenchConfig cfg;
  cfg.seed = o.seed;
  cfg.min_exp = o.min_exp;
  cfg.max_exp = o.max_exp;
  cfg.repeats = o.repeats;
  cfg.trees = o.bench_trees;
  cfg.coverage = o.coverage;
  if (shape_given) cfg.shapes = {shape_flag(o.shape)};
  auto rows = run_bench(cfg, [&](const BenchRow& r) {
    if (!o.quiet) {
      err << "2^" << r.exp << ' ' << to_string(r.shape) << ": " << r.seconds << " s\n";
    }
  });
  Sink sink(o.output, out);
  write_bench_table(rows, sink.get());
  if (!o.csv.empty()) {
    std::ofstream f(o.csv);
    if (!f) throw std::runtime_error("cannot open csv '" + o.csv + "'");
    write_bench_csv(rows, f);
  }
  bool sound = std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.sound; });
  return sound ? 0 : kExitError;
}

int cmd_selftest(const Options& o, std::ostream& out) {
  SelftestConfig cfg;
  cfg.seed = o.seed;
  cfg.profiles = o.profiles;
  cfg.dyn_seeds = o.dyn_seeds;
  SelftestReport r = selftest(cfg);
  auto line = [&](const char* name, std::size_t runs, std::size_t failures) {
    out << (failures ? "FAIL " : "ok   ") << name << ": " << runs - failures << '/' << runs << '\n';
  };
  line("buildg vs exhaustive search", r.tiny_runs, r.tiny_failures);
  line("buildg vs classic BUILD", r.small_runs, r.small_failures);
  line("dynconn vs BFS", r.dyn_runs, r.dyn_failures);
  for (const auto& f : r.failures) out << "  " << f << '\n';
  return r.ok() ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Compatibility and supertrees for rooted phylogenetic trees", "phylocompat"};
  app.require_subcommand(1, 1);

  auto add_input = [&](CLI::App* c) {
    c->add_option("--input", o.input, "Newick profile, '-' for stdin")->capture_default_str();
  };
  auto add_quiet = [&](CLI::App* c) { c->add_flag("--quiet", o.quiet, "Less chatter on stderr"); };

  CLI::App* check = app.add_subcommand("check", "Print COMPATIBLE or INCOMPATIBLE");
  add_input(check);
  add_quiet(check);

  CLI::App* supertree = app.add_subcommand("supertree", "Print a supertree in Newick");
  add_input(supertree);
  supertree->add_option("--output", o.output, "Write the tree here instead of stdout");
  supertree->add_flag("--verify", o.verify, "Check the display relation before writing");
  add_quiet(supertree);

  CLI::App* gen = app.add_subcommand("gen", "Generate a random profile");
  gen->add_option("--seed", o.seed)->capture_default_str();
  gen->add_option("--species", o.species)->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--trees", o.trees)->capture_default_str()->check(CLI::PositiveNumber);
  gen->add_option("--coverage", o.coverage)->capture_default_str()->check(CLI::Range(0.0, 1.0));
  gen->add_option("--perturb", o.perturb, "Leaf-label swaps in one tree")->capture_default_str();
  gen->add_option("--shape", o.shape, "binary | star | mixed")->capture_default_str();
  gen->add_option("--output", o.output);

  CLI::App* bench = app.add_subcommand("bench", "Time buildg over a doubling ladder of M_P");
  bench->add_option("--seed", o.seed)->capture_default_str();
  bench->add_option("--min-exp", o.min_exp, "Smallest M_P is 2^min-exp")->capture_default_str();
  bench->add_option("--max-exp", o.max_exp, "Largest M_P is 2^max-exp")->capture_default_str();
  bench->add_option("--repeats", o.repeats, "Report the fastest of N runs")->capture_default_str();
  bench->add_option("--trees", o.bench_trees)->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--coverage", o.coverage)->capture_default_str()->check(CLI::Range(0.0, 1.0));
  CLI::Option* shape_opt = bench->add_option("--shape", o.shape, "Only this shape");
  bench->add_option("--csv", o.csv, "Also write rows as CSV");
  bench->add_option("--output", o.output);
  add_quiet(bench);

  CLI::App* self = app.add_subcommand("selftest", "Fuzz against the slow oracles");
  self->add_option("--seed", o.seed)->capture_default_str();
  self->add_option("--profiles", o.profiles, "Profiles per oracle")->capture_default_str();
  self->add_option("--dyn-seeds", o.dyn_seeds, "Connectivity stress runs")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (check->parsed()) return cmd_check(o, in, out, err);
    if (supertree->parsed()) return cmd_supertree(o, in, out, err);
    if (gen->parsed()) return cmd_gen(o, out);
    if (bench->parsed()) return cmd_bench(o, shape_opt->count() > 0, out, err);
    if (self->parsed()) return cmd_selftest(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace phylocompat::cli
