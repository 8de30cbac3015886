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

#include "phylocompat/phylo.h"

#include <algorithm>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "phylocompat/gen.h"
#include "phylocompat/newick.h"

namespace phylocompat {
namespace {

class PhyloTest : public ::testing::Test {
 protected:
  void SetUp() override {
    for (const char* s : {"a", "b", "c", "d", "e"}) taxa_.intern(s);
  }
  PhyloTree tree(const char* text) { return parse_tree(text, taxa_); }
  TaxonId id(const char* s) { return *taxa_.find(s); }
  Cluster cluster(std::initializer_list<const char*> names) {
    Cluster c;
    for (const char* s : names) c.push_back(id(s));
    std::sort(c.begin(), c.end());
    return c;
  }

  TaxonTable taxa_;
};

TEST_F(PhyloTest, ClusterOf) {
  PhyloTree t = tree("((a,b),c);");
  NodeIndex ab = t.children(t.root())[0];
  EXPECT_EQ(cluster_of(t, ab), cluster({"a", "b"}));
  EXPECT_EQ(cluster_of(t, t.root()), cluster({"a", "b", "c"}));
  EXPECT_EQ(cluster_of(t, t.leaf_of(id("a"))), cluster({"a"}));
  EXPECT_THROW(cluster_of(t, 99), std::out_of_range);
}

TEST_F(PhyloTest, Restrict) {
  Cluster ac = cluster({"a", "c"});
  EXPECT_TRUE(same_clusters(restrict_to(tree("((a,b),c);"), ac), tree("(a,c);")));

  // {a,b},{c,d},{a,b,c,d} intersected with {a,b,c}: {a,b},{c},{a,b,c}
  Cluster abc = cluster({"a", "b", "c"});
  PhyloTree r = restrict_to(tree("((a,b),(c,d));"), abc);
  EXPECT_EQ(cluster_set(r), (std::set<Cluster>{cluster({"a"}), cluster({"b"}), cluster({"c"}),
                                                cluster({"a", "b"}), abc}));
  EXPECT_TRUE(same_clusters(restrict_to(tree("((a,b),c);"), abc), tree("((a,b),c);")));
  Cluster e = cluster({"e"});
  EXPECT_THROW(restrict_to(tree("((a,b),c);"), e), std::invalid_argument);
}

TEST_F(PhyloTest, Displays) {
  EXPECT_TRUE(displays(tree("((a,b),c);"), tree("(a,b);")));
  EXPECT_FALSE(displays(tree("((a,b),c);"), tree("((a,c),b);")));
  EXPECT_TRUE(displays(tree("((a,b),(c,d));"), tree("(a,c,d);")));
  EXPECT_TRUE(displays(tree("((a,b),(c,d));"), tree("(a,(c,d));")));
  EXPECT_FALSE(displays(tree("(a,b,c);"), tree("((a,b),c);")));
  EXPECT_THROW(displays(tree("(a,b);"), tree("(a,e);")), std::invalid_argument);
}

TEST_F(PhyloTest, StarIsDisplayedByAnything) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    PhyloTree t = random_tree(5, Shape::kBinary, rng);
    std::vector<TaxonId> all = t.taxa();
    std::size_t m = 1 + rng() % all.size();
    TreeBuilder b;
    if (m == 1) {
      b.add_leaf(kNoNode, all[0]);
    } else {
      NodeIndex r = b.add_node(kNoNode);
      for (std::size_t j = 0; j < m; ++j) b.add_leaf(r, all[j]);
    }
    EXPECT_TRUE(displays(t, b.build()));
  }
}

TEST_F(PhyloTest, TriplesOf) {
  EXPECT_EQ(triples_of(tree("((a,b),c);")),
            (std::vector<RootedTriple>{RootedTriple::make(id("a"), id("b"), id("c"))}));
  EXPECT_TRUE(triples_of(tree("(a,b,c);")).empty());
  auto tr = triples_of(tree("((a,b),(c,d));"));
  std::vector<RootedTriple> expected{
      RootedTriple::make(id("a"), id("b"), id("c")), RootedTriple::make(id("a"), id("b"), id("d")),
      RootedTriple::make(id("c"), id("d"), id("a")), RootedTriple::make(id("c"), id("d"), id("b"))};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(tr, expected);
}

TEST_F(PhyloTest, TripletGraph) {
  Profile one(taxa_, {tree("((a,b),c);")});
  auto g = triplet_graph(one, cluster({"a", "b", "c"}));
  EXPECT_EQ(g.edges, (std::set<std::pair<TaxonId, TaxonId>>{{id("a"), id("b")}}));

  Profile star(taxa_, {tree("(a,b,c);")});
  EXPECT_TRUE(triplet_graph(star, cluster({"a", "b", "c"})).edges.empty());

  Profile two(taxa_, {tree("((a,b),c);"), tree("((b,c),d);")});
  auto g2 = triplet_graph(two, cluster({"a", "b", "c", "d"}));
  EXPECT_EQ(g2.edges, (std::set<std::pair<TaxonId, TaxonId>>{{id("a"), id("b")},
                                                              {id("b"), id("c")}}));
  EXPECT_EQ(g2.components().size(), 2u);  // {a,b,c} and {d}
}

TEST(PhyloProperties, DisplayEquivalentToTripleInclusion) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 3 + rng() % 6;
    PhyloTree t = contract_random_edges(random_tree(n, Shape::kBinary, rng), 0.3, rng);
    std::vector<TaxonId> subset;
    for (TaxonId x = 0; x < n; ++x) {
      if (rng() % 3) subset.push_back(x);
    }
    if (subset.empty()) subset.push_back(0);
    // s: either a restriction of t (displayed) or an unrelated tree
    PhyloTree s;
    if (rng() % 2) {
      s = contract_random_edges(restrict_to(t, subset), 0.3, rng);
    } else {
      s = random_tree(subset.size(), Shape::kBinary, rng);
      TreeBuilder b;
      for (NodeIndex v = 0; v < s.size(); ++v) {
        NodeIndex p = v == 0 ? kNoNode : s.parent(v);
        if (s.is_leaf(v)) {
          b.add_leaf(p, subset[s.taxon(v)]);
        } else {
          b.add_node(p);
        }
      }
      s = b.build();
    }
    auto rt = triples_of(t), rs = triples_of(s);
    bool included = std::includes(rt.begin(), rt.end(), rs.begin(), rs.end());
    ASSERT_EQ(displays(t, s), included);
  }
}

TEST(PhyloProperties, TripletGraphComponentsAreRootChildClusters) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 3 + rng() % 8;
    PhyloTree t = contract_random_edges(
        random_tree(n, trial % 2 ? Shape::kBinary : Shape::kStarHeavy, rng), 0.3, rng);
    TaxonTable taxa;
    Profile p(taxa, {t});
    auto components = triplet_graph(p, t.taxa()).components();
    std::set<Cluster> got(components.begin(), components.end());
    std::set<Cluster> expected;
    for (NodeIndex c : t.children(t.root())) expected.insert(cluster_of(t, c));
    ASSERT_EQ(got, expected);
  }
}

TEST(PhyloProperties, RestrictToOwnLeavesIsIdentity) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    PhyloTree t = contract_random_edges(random_tree(1 + rng() % 30, Shape::kMixed, rng), 0.3, rng);
    auto all = t.taxa();
    ASSERT_TRUE(same_clusters(restrict_to(t, all), t));
  }
}

TEST(PhyloProperties, SameClustersMatchesClusterSetEquality) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = 1 + rng() % 5;
    PhyloTree a = contract_random_edges(random_tree(n, Shape::kBinary, rng), 0.4, rng);
    PhyloTree b = contract_random_edges(random_tree(n, Shape::kBinary, rng), 0.4, rng);
    ASSERT_EQ(same_clusters(a, b), cluster_set(a) == cluster_set(b));
  }
}

TEST(TreeBuilder, RejectsMalformedTrees) {
  {
    TreeBuilder b;
    NodeIndex r = b.add_node(kNoNode);
    b.add_leaf(r, 0);
    b.add_node(r);  // unlabeled leaf
    EXPECT_THROW(b.build(), TreeError);
  }
  {
    TreeBuilder b;
    NodeIndex r = b.add_node(kNoNode);
    b.add_leaf(r, 0);
    b.add_leaf(r, 0);
    EXPECT_THROW(b.build(), TreeError);
  }
  {
    TreeBuilder b;
    b.add_node(kNoNode);
    EXPECT_THROW(b.add_node(kNoNode), TreeError);
  }
  EXPECT_THROW(TreeBuilder{}.build(), TreeError);
}

TEST(TreeBuilder, PreorderNumbering) {
  TaxonTable taxa;
  PhyloTree t = parse_tree("((a,b),(c,(d,e)));", taxa);
  for (NodeIndex v = 1; v < t.size(); ++v) {
    EXPECT_LT(t.parent(v), v);
    EXPECT_TRUE(t.is_ancestor_or_self(t.parent(v), v));
  }
  EXPECT_EQ(t.subtree_end(0), t.size());
}

}  // namespace
}  // namespace phylocompat
