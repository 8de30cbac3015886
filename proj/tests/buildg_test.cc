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

#include "phylocompat/buildg.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "phylocompat/gen.h"
#include "phylocompat/newick.h"
#include "phylocompat/oracle.h"

namespace phylocompat {
namespace {

TaxonId id(const Profile& p, const char* s) { return *p.taxa().find(s); }

TEST(DisplayGraph, TwoOverlappingCherries) {
  Profile p = parse_profile("(a,b);(b,c);");
  DisplayGraph h(p);
  EXPECT_EQ(h.vertex_count(), 9u);
  auto live = h.live_components();
  ASSERT_EQ(live.size(), 1u);
  EXPECT_EQ(h.info(live[0]).count, 3u);
  auto semi = h.semi(live[0]);
  std::sort(semi.begin(), semi.end());
  EXPECT_EQ(semi, (std::vector<TreeIndex>{0, 1}));
  EXPECT_EQ(h.list(live[0], 0), (std::vector<Vertex>{h.tree_vertex(0, 0)}));
  EXPECT_EQ(h.graph().component_count(), 1u);
}

TEST(DisplayGraph, SingleCherry) {
  Profile p = parse_profile("(a,b);");
  DisplayGraph h(p);
  auto live = h.live_components();
  ASSERT_EQ(live.size(), 1u);
  EXPECT_EQ(h.info(live[0]).count, 2u);
  EXPECT_EQ(h.semi(live[0]), (std::vector<TreeIndex>{0}));
  EXPECT_EQ(h.list(live[0], 0), (std::vector<Vertex>{h.tree_vertex(0, 0)}));
}

TEST(DisplayGraph, SpeciesDisjointTreesGiveTwoComponents) {
  Profile p = parse_profile("(a,b);(c,d);");
  DisplayGraph h(p);
  EXPECT_EQ(h.live_components().size(), 2u);
  EXPECT_FALSE(h.graph().connected(h.species_vertex(id(p, "a")), h.species_vertex(id(p, "c"))));
}

TEST(DisplayGraph, ExpandRootSplitsOffLeaf) {
  Profile p = parse_profile("((a,b),c);");
  DisplayGraph h(p);
  const PhyloTree& t = p.tree(0);
  NodeIndex ab = t.children(0)[0];
  NodeIndex c = t.leaf_of(id(p, "c"));
  auto created = h.expand(h.tree_vertex(0, 0));
  ASSERT_EQ(created.size(), 1u);
  EXPECT_FALSE(h.marked(h.tree_vertex(0, 0)));
  EXPECT_TRUE(h.marked(h.tree_vertex(0, ab)));
  EXPECT_TRUE(h.marked(h.tree_vertex(0, c)));

  auto live = h.live_components();
  ASSERT_EQ(live.size(), 2u);
  std::set<std::vector<TaxonId>> species;
  for (InfoId y : live) {
    EXPECT_EQ(h.semi(y), (std::vector<TreeIndex>{0}));
    species.insert(h.component_species(h.info(y).representative));
  }
  EXPECT_EQ(species, (std::set<std::vector<TaxonId>>{{id(p, "a"), id(p, "b")}, {id(p, "c")}}));
  EXPECT_EQ(h.owner(h.tree_vertex(0, c)), h.owner(h.species_vertex(id(p, "c"))));
  EXPECT_NE(h.owner(h.tree_vertex(0, c)), h.owner(h.tree_vertex(0, ab)));
}

TEST(DisplayGraph, ExpandWithoutSplitKeepsOneComponent) {
  // a and b stay joined through the second tree.
  Profile p = parse_profile("(a,b);((a,b),c);");
  DisplayGraph h(p);
  auto created = h.expand(h.tree_vertex(0, 0));
  EXPECT_TRUE(created.empty());
  auto live = h.live_components();
  ASSERT_EQ(live.size(), 1u);
  EXPECT_EQ(h.info(live[0]).count, 3u);
  // LIST[0] now holds both leaves, so tree 0 left SEMI.
  EXPECT_EQ(h.list_size(live[0], 0), 2u);
  EXPECT_EQ(h.semi(live[0]), (std::vector<TreeIndex>{1}));
}

TEST(DisplayGraph, ExpandRejectsBadVertices) {
  Profile p = parse_profile("((a,b),c);");
  DisplayGraph h(p);
  EXPECT_THROW(h.expand(h.tree_vertex(0, 1)), std::logic_error);  // unmarked
  EXPECT_THROW(h.expand(h.species_vertex(id(p, "a"))), std::logic_error);
  h.expand(h.tree_vertex(0, 0));
  Vertex c = h.tree_vertex(0, p.tree(0).leaf_of(id(p, "c")));
  EXPECT_THROW(h.expand(c), std::logic_error);  // marked leaf
}

TEST(DisplayGraph, SplitOffUnmarkedLeafAndSpecies) {
  Profile p = parse_profile("((a,b),c);");
  DisplayGraph h(p);
  TaxonId c = id(p, "c");
  Vertex leaf = h.tree_vertex(0, p.tree(0).leaf_of(c));
  auto split = h.graph().delete_edge(h.tree_vertex(0, 0), leaf);
  ASSERT_TRUE(split);
  EXPECT_EQ(split->smaller_size, 2u);
  InfoId y = h.rebalance(*split);
  EXPECT_EQ(h.info(y).count, 1u);
  EXPECT_TRUE(h.semi(y).empty());
  EXPECT_EQ(h.list_size(y, 0), 0u);
  EXPECT_EQ(h.owner(h.species_vertex(c)), y);
  EXPECT_EQ(h.info(h.owner(h.tree_vertex(0, 0))).count, 2u);
}

TEST(DisplayGraph, RebalanceOfSpeciesFreeSide) {
  Profile p = parse_profile("((a,b),c);");
  DisplayGraph h(p);
  TaxonId c = id(p, "c");
  Vertex leaf = h.tree_vertex(0, p.tree(0).leaf_of(c));
  h.rebalance(*h.graph().delete_edge(leaf, h.species_vertex(c)));
  // The leaf no longer reaches a species; cutting it off leaves a dead side.
  auto again = h.graph().delete_edge(h.tree_vertex(0, 0), leaf);
  ASSERT_TRUE(again);
  EXPECT_EQ(again->smaller_vertex, leaf);
  InfoId dead = h.rebalance(*again);
  EXPECT_EQ(h.info(dead).count, 0u);
  EXPECT_FALSE(h.info(dead).alive);
}

TEST(DisplayGraph, SplittingTwoElementListGivesBothSidesSemi) {
  Profile p = parse_profile("(a,b);");
  DisplayGraph h(p);
  auto created = h.expand(h.tree_vertex(0, 0));
  ASSERT_EQ(created.size(), 1u);
  for (InfoId y : h.live_components()) {
    EXPECT_EQ(h.semi(y), (std::vector<TreeIndex>{0}));
    EXPECT_EQ(h.list_size(y, 0), 1u);
  }
}

bool displays_all(const PhyloTree& t, const Profile& p) {
  return std::all_of(p.trees().begin(), p.trees().end(),
                     [&](const PhyloTree& ti) { return displays(t, ti); });
}

TEST(BuildG, CompatibleTwoTrees) {
  Profile p = parse_profile("((a,b),c);((c,d),b);");
  auto r = buildg(p);
  ASSERT_TRUE(r.compatible);
  ASSERT_TRUE(r.tree);
  EXPECT_TRUE(displays_all(*r.tree, p));
  EXPECT_EQ(write_tree(*r.tree, p.taxa()), "((a,b),(c,d));");
}

TEST(BuildG, IncompatibleTriples) {
  Profile p = parse_profile("((a,b),c);((b,c),a);");
  auto r = buildg(p);
  EXPECT_FALSE(r.compatible);
  EXPECT_FALSE(r.tree);
  EXPECT_FALSE(check_only(p));
}

TEST(BuildG, SingleTreeReproducesIt) {
  for (const char* text : {"((a,b),c);", "(((a,b),(c,d)),e);", "a;", "(a,b);", "(a,(b,c),d);"}) {
    Profile p = parse_profile(text);
    auto r = buildg(p);
    ASSERT_TRUE(r.compatible) << text;
    EXPECT_TRUE(same_clusters(*r.tree, p.tree(0))) << text;
  }
}

TEST(BuildG, DisjointTreesJoinUnderFreshRoot) {
  Profile p = parse_profile("((a,b),c);(d,e);");
  auto r = buildg(p);
  ASSERT_TRUE(r.compatible);
  EXPECT_EQ(write_tree(*r.tree, p.taxa()), "(((a,b),c),(d,e));");
}

TEST(BuildG, SingletonLeafInSemiIsNotExpanded) {
  // Reaches a valid set holding leaf c of tree 0 together with (c,d,e).
  Profile p = parse_profile("((a,b),c);((c,d,e),f);");
  auto r = buildg(p);
  ASSERT_TRUE(r.compatible);
  EXPECT_TRUE(displays_all(*r.tree, p));
  EXPECT_TRUE(build_classic(p).has_value());
}

TEST(BuildG, EmptyProfileThrows) {
  TaxonTable taxa;
  EXPECT_THROW(buildg(Profile(taxa, {})), std::invalid_argument);
}

TEST(BuildG, CheckOnlyAgreesWithBuild) {
  for (const char* text : {"((a,b),c);((c,d),b);", "((a,b),c);((b,c),a);", "(a,b);(b,c);"}) {
    Profile p = parse_profile(text);
    EXPECT_EQ(check_only(p), buildg(p).compatible) << text;
  }
}

TEST(BuildG, MarkedSetsStayValid) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.n_species = 4 + seed % 7;
    cfg.k_trees = 2 + seed % 3;
    cfg.coverage = 0.7;
    cfg.shape = seed % 2 ? Shape::kMixed : Shape::kBinary;
    cfg.perturb = seed % 3 == 0 ? 1 : 0;
    Profile p = gen_perturbed(cfg);
    BuildOptions options;
    options.observer = [&](const RoundObservation& obs) {
      for (const auto& part : obs.parts) ASSERT_TRUE(is_valid_set(p, part));
    };
    buildg(p, options);
  }
}

TEST(BuildG, IsValidSet) {
  Profile p = parse_profile("((a,b),c);((b,c),d);");
  std::vector<TreeNode> roots{{0, 0}, {1, 0}};
  EXPECT_TRUE(is_valid_set(p, roots));
  const PhyloTree& t0 = p.tree(0);
  // (a,b) of tree 0 with tree 1's root: tree 1 covers c,d outside L(U)∩L(T1)
  std::vector<TreeNode> bad{{0, t0.children(0)[0]}, {1, 0}};
  EXPECT_FALSE(is_valid_set(p, bad));
  // leaves a and c of tree 0 are not siblings
  std::vector<TreeNode> not_siblings{{0, t0.leaf_of(id(p, "a"))}, {0, t0.leaf_of(id(p, "c"))}};
  EXPECT_FALSE(is_valid_set(p, not_siblings));
}

TEST(BuildG, StatsAndScanBound) {
  GenConfig cfg;
  cfg.seed = 3;
  cfg.n_species = 2000;
  cfg.k_trees = 8;
  cfg.coverage = 0.5;
  Profile p = gen_compatible(cfg);
  auto r = buildg(p);
  ASSERT_TRUE(r.compatible);
  EXPECT_EQ(r.stats.m_p, p.m_p());
  EXPECT_GT(r.stats.rounds, 0u);
  EXPECT_GE(r.stats.expansions, r.stats.rounds);
  double m = static_cast<double>(p.m_p());
  EXPECT_LE(static_cast<double>(r.stats.scans), 4 * m * std::log2(m));
  EXPECT_TRUE(displays_all(*r.tree, p));
}

TEST(BuildG, OutputChildrenSortedByMinTaxon) {
  Profile p = parse_profile("((e,d),(c,(b,a)));");
  auto r = buildg(p);
  const PhyloTree& t = *r.tree;
  std::vector<TaxonId> key(t.size(), kNoTaxon);
  for (NodeIndex v = static_cast<NodeIndex>(t.size()); v-- > 0;) {
    if (t.is_leaf(v)) key[v] = t.taxon(v);
    if (v != 0) key[t.parent(v)] = std::min(key[t.parent(v)], key[v]);
  }
  for (NodeIndex v = 0; v < t.size(); ++v) {
    auto ch = t.children(v);
    for (std::size_t j = 1; j < ch.size(); ++j) EXPECT_LT(key[ch[j - 1]], key[ch[j]]);
  }
}

TEST(BuildG, BinaryInputsAreReproducedExactly) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    TaxonTable taxa;
    std::size_t n = 2 + rng() % 40;
    for (std::size_t s = 0; s < n; ++s) taxa.intern("s" + std::to_string(s));
    Profile p(taxa, {random_tree(n, Shape::kBinary, rng)});
    auto r = buildg(p);
    ASSERT_TRUE(r.compatible);
    ASSERT_TRUE(same_clusters(*r.tree, p.tree(0)));
  }
}

}  // namespace
}  // namespace phylocompat
