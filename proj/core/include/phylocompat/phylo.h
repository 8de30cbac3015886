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

#ifndef PHYLOCOMPAT_PHYLO_H_
#define PHYLOCOMPAT_PHYLO_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "phylocompat/taxa.h"

namespace phylocompat {

using NodeIndex = std::uint32_t;
inline constexpr NodeIndex kNoNode = std::numeric_limits<NodeIndex>::max();

// Thrown when a tree under construction violates the phylogenetic tree
// invariants (unlabeled leaf, duplicate label, labeled internal node, ...).
class TreeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rooted phylogenetic tree. Immutable once built.
//
// Nodes are numbered in preorder with the root at index 0, so the subtree of
// `v` occupies the contiguous index range [v, subtree_end(v)). Exactly the
// leaves carry taxa and every internal node has at least two children.
class PhyloTree {
 public:
  PhyloTree() = default;

  static PhyloTree single_leaf(TaxonId taxon);

  std::size_t size() const { return parent_.size(); }
  bool empty() const { return parent_.empty(); }
  NodeIndex root() const { return 0; }

  NodeIndex parent(NodeIndex v) const { return parent_[v]; }
  std::span<const NodeIndex> children(NodeIndex v) const {
    return {children_.data() + child_begin_[v],
            children_.data() + child_begin_[v + 1]};
  }
  std::size_t degree(NodeIndex v) const {
    return child_begin_[v + 1] - child_begin_[v];
  }
  bool is_leaf(NodeIndex v) const { return degree(v) == 0; }
  TaxonId taxon(NodeIndex v) const { return taxon_[v]; }
  NodeIndex subtree_end(NodeIndex v) const { return subtree_end_[v]; }
  bool is_ancestor_or_self(NodeIndex a, NodeIndex v) const {
    return a <= v && v < subtree_end_[a];
  }

  std::size_t edge_count() const { return empty() ? 0 : size() - 1; }
  std::size_t leaf_count() const { return leaf_count_; }

  // Sorted taxa at the leaves, L(T).
  std::vector<TaxonId> taxa() const;

  // Leaf node carrying `taxon`, or kNoNode.
  NodeIndex leaf_of(TaxonId taxon) const;

  // Largest taxon id in the tree plus one (0 for an empty tree).
  TaxonId taxon_bound() const { return taxon_bound_; }

 private:
  friend class TreeBuilder;

  std::vector<NodeIndex> parent_;
  std::vector<NodeIndex> child_begin_;
  std::vector<NodeIndex> children_;
  std::vector<NodeIndex> subtree_end_;
  std::vector<TaxonId> taxon_;
  std::vector<NodeIndex> leaf_by_taxon_;
  std::size_t leaf_count_ = 0;
  TaxonId taxon_bound_ = 0;
};

// Mutable scratch tree. build() contracts unary nodes, validates the result
// and renumbers it into a PhyloTree.
class TreeBuilder {
 public:
  // Adds a node under `parent` (kNoNode for the root) and returns its index.
  NodeIndex add_node(NodeIndex parent);
  NodeIndex add_leaf(NodeIndex parent, TaxonId taxon);
  void set_taxon(NodeIndex v, TaxonId taxon) { taxon_.at(v) = taxon; }
  std::size_t size() const { return parent_.size(); }

  PhyloTree build() const;

 private:
  std::vector<NodeIndex> parent_;
  std::vector<std::vector<NodeIndex>> children_;
  std::vector<TaxonId> taxon_;
  NodeIndex root_ = kNoNode;
};

// An ordered collection of trees over a shared taxon table.
class Profile {
 public:
  Profile() = default;
  Profile(TaxonTable taxa, std::vector<PhyloTree> trees)
      : taxa_(std::move(taxa)), trees_(std::move(trees)) {}

  const TaxonTable& taxa() const { return taxa_; }
  TaxonTable& taxa() { return taxa_; }
  const std::vector<PhyloTree>& trees() const { return trees_; }
  const PhyloTree& tree(std::size_t i) const { return trees_.at(i); }
  std::size_t k() const { return trees_.size(); }
  void add_tree(PhyloTree t) { trees_.push_back(std::move(t)); }

  // Total number of nodes plus edges over all trees.
  std::size_t m_p() const;

  // Sorted union of the leaf sets, L(P).
  std::vector<TaxonId> species() const;

 private:
  TaxonTable taxa_;
  std::vector<PhyloTree> trees_;
};

// ab|c with a < b.
struct RootedTriple {
  TaxonId a;
  TaxonId b;
  TaxonId c;

  static RootedTriple make(TaxonId x, TaxonId y, TaxonId out) {
    return x < y ? RootedTriple{x, y, out} : RootedTriple{y, x, out};
  }
  friend auto operator<=>(const RootedTriple&, const RootedTriple&) = default;
};

using Cluster = std::vector<TaxonId>;  // sorted

Cluster cluster_of(const PhyloTree& t, NodeIndex v);

// All clusters of `t`, including singletons and L(T).
std::set<Cluster> cluster_set(const PhyloTree& t);

// T|A for a set of taxa. Throws std::invalid_argument when A misses L(T).
PhyloTree restrict_to(const PhyloTree& t, std::span<const TaxonId> taxa);

// True iff Cl(s) is contained in Cl(t|L(s)). Throws std::invalid_argument
// when a taxon of `s` is not a leaf of `t`. Linear time.
bool displays(const PhyloTree& t, const PhyloTree& s);

// Equal cluster sets (isomorphism for phylogenetic trees).
bool same_clusters(const PhyloTree& t, const PhyloTree& s);

// R(T), sorted. Cubic in the leaf count; meant for small trees.
std::vector<RootedTriple> triples_of(const PhyloTree& t);

// Simple undirected graph on species.
struct SpeciesGraph {
  std::vector<TaxonId> vertices;  // sorted
  std::set<std::pair<TaxonId, TaxonId>> edges;  // (x, y) with x < y

  // Connected components, each sorted, ordered by smallest member.
  std::vector<std::vector<TaxonId>> components() const;
};

// Triplet graph of P|A.
SpeciesGraph triplet_graph(const Profile& p, std::span<const TaxonId> taxa);

}  // namespace phylocompat

#endif  // PHYLOCOMPAT_PHYLO_H_
