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

#include "phylocompat/oracle.h"

#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "phylocompat/gen.h"
#include "phylocompat/newick.h"

namespace phylocompat {
namespace {

std::vector<TaxonId> first_taxa(std::size_t n) {
  std::vector<TaxonId> out(n);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

TEST(EnumerateTrees, CountsMatchKnownSeries) {
  const std::size_t expected[] = {1, 1, 4, 26, 236};
  for (std::size_t n = 1; n <= 5; ++n) {
    EXPECT_EQ(enumerate_trees(first_taxa(n)).size(), expected[n - 1]) << n << " leaves";
  }
}

TEST(EnumerateTrees, TreesAreDistinctAndWellFormed) {
  auto leaves = first_taxa(4);
  auto trees = enumerate_trees(leaves);
  std::set<std::set<Cluster>> seen;
  for (const auto& t : trees) {
    EXPECT_EQ(t.taxa(), leaves);
    for (NodeIndex v = 0; v < t.size(); ++v) EXPECT_NE(t.degree(v), 1u);
    EXPECT_TRUE(seen.insert(cluster_set(t)).second);
  }
  EXPECT_THROW(enumerate_trees(first_taxa(7)), std::invalid_argument);
}

TEST(BuildClassic, Examples) {
  Profile one = parse_profile("((a,b),c);");
  auto t = build_classic(one);
  ASSERT_TRUE(t);
  EXPECT_TRUE(displays(*t, one.tree(0)));

  EXPECT_FALSE(build_classic(parse_profile("((a,b),c);((b,c),a);")));

  Profile two = parse_profile("((a,b),c);((c,d),b);");
  auto u = build_classic(two);
  ASSERT_TRUE(u);
  EXPECT_TRUE(displays(*u, two.tree(0)));
  EXPECT_TRUE(displays(*u, two.tree(1)));
}

TEST(BruteForce, Examples) {
  EXPECT_TRUE(brute_force_compatible(parse_profile("(a,b);")));
  EXPECT_FALSE(brute_force_compatible(parse_profile("((a,b),c);((b,c),a);")));
  EXPECT_TRUE(brute_force_compatible(parse_profile("((a,b),c);((a,b),d);")));
  EXPECT_THROW(brute_force_compatible(parse_profile("(a,b,c,d,e,f,g);")), std::invalid_argument);
}

TEST(BuildClassic, AgreesWithBruteForce) {
  int incompatible = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.n_species = 3 + seed % 3;
    cfg.k_trees = 1 + seed % 4;
    cfg.coverage = 0.6 + 0.1 * static_cast<double>(seed % 5);
    cfg.shape = seed % 2 ? Shape::kBinary : Shape::kMixed;
    cfg.perturb = seed % 2;
    Profile p = gen_perturbed(cfg);
    bool classic = build_classic(p).has_value();
    ASSERT_EQ(classic, brute_force_compatible(p)) << write_profile(p);
    incompatible += !classic;
  }
  EXPECT_GT(incompatible, 20);  // the fuzz actually hits both verdicts
}

TEST(BuildClassic, OutputDisplaysInputs) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.n_species = 12;
    cfg.k_trees = 4;
    cfg.shape = Shape::kMixed;
    Profile p = gen_compatible(cfg);
    auto t = build_classic(p);
    ASSERT_TRUE(t);
    for (const auto& ti : p.trees()) ASSERT_TRUE(displays(*t, ti));
  }
}

TEST(NaiveGraph, PathAndTriangle) {
  NaiveGraph g(3);
  g.insert(0, 1);
  g.insert(1, 2);
  EXPECT_TRUE(g.connected(0, 2));
  g.erase(0, 1);
  EXPECT_FALSE(g.connected(0, 2));
  g.insert(0, 2);
  g.insert(0, 1);
  g.erase(0, 1);
  EXPECT_TRUE(g.connected(0, 1));
  EXPECT_EQ(g.component(0), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(g.edge_count(), 2u);
}

TEST(NaiveGraph, OneShotQueryMatchesIncremental) {
  std::mt19937_64 rng(17);
  const std::size_t n = 20;
  NaiveGraph g(n);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (int step = 0; step < 200; ++step) {
    std::size_t u = rng() % n, v = rng() % n;
    if (u == v || g.has_edge(u, v)) continue;
    g.insert(u, v);
    edges.emplace_back(u, v);
    std::size_t a = rng() % n, b = rng() % n;
    ASSERT_EQ(naive_connectivity(n, edges, a, b), g.connected(a, b));
  }
}

}  // namespace
}  // namespace phylocompat
