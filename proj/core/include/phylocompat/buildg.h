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

#ifndef PHYLOCOMPAT_BUILDG_H_
#define PHYLOCOMPAT_BUILDG_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "phylocompat/dynconn.h"
#include "phylocompat/phylo.h"

namespace phylocompat {

using TreeIndex = std::uint32_t;
using InfoId = std::uint32_t;
inline constexpr TreeIndex kNoTree = std::numeric_limits<TreeIndex>::max();
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

// A node of one of the profile's trees.
struct TreeNode {
  TreeIndex tree;
  NodeIndex node;
  friend auto operator<=>(const TreeNode&, const TreeNode&) = default;
};

// Bookkeeping for one connected component Y of the display graph:
// COUNT = |Y ∩ X_P|, SEMI = trees i whose marked set in Y is a singleton.
// The per-tree LIST entries live in DisplayGraph and are read through it.
struct ComponentInfo {
  std::size_t count = 0;
  TreeIndex semi_head = kNoTree;
  std::size_t semi_size = 0;
  Vertex representative = kNoVertex;  // some vertex currently in Y
  bool alive = true;                  // false for emptied-out leftovers
};

// The display graph H_P of a profile: every tree node is a vertex, plus one
// vertex x_s per species joined to each leaf labeled s. Marked vertices form
// the current valid set U, one marked node set per component.
class DisplayGraph {
 public:
  explicit DisplayGraph(const Profile& p);

  DisplayGraph(const DisplayGraph&) = delete;
  DisplayGraph& operator=(const DisplayGraph&) = delete;

  const Profile& profile() const { return *profile_; }
  DynGraph& graph() { return graph_; }
  std::size_t vertex_count() const { return tree_of_.size(); }

  Vertex tree_vertex(TreeIndex i, NodeIndex v) const { return offset_.at(i) + v; }
  Vertex species_vertex(TaxonId s) const {
    return s < species_vertex_.size() ? species_vertex_[s] : kNoVertex;
  }
  bool is_species(Vertex x) const { return tree_of_[x] == kNoTree; }
  TreeIndex tree_of(Vertex x) const { return tree_of_[x]; }
  NodeIndex node_of(Vertex x) const { return x - offset_[tree_of_[x]]; }
  TaxonId species_of(Vertex x) const { return species_of_[x - species_base_]; }
  bool marked(Vertex x) const { return marked_[x] != 0; }

  InfoId owner(Vertex x) const { return owner_[x]; }
  const ComponentInfo& info(InfoId id) const { return infos_.at(id); }
  std::vector<InfoId> live_components() const;
  std::vector<TreeIndex> semi(InfoId id) const;
  std::vector<Vertex> list(InfoId id, TreeIndex i) const;
  std::size_t list_size(InfoId id, TreeIndex i) const;

  // Replaces the marked internal node `v` of U by its children and deletes
  // the edges to them, one at a time. Returns the live components split off
  // along the way. Throws std::logic_error if `v` is unmarked or a leaf.
  std::vector<InfoId> expand(Vertex v);

  // Scans the smaller side of `split` into a new ComponentInfo; the larger
  // side keeps the old one. Returns the new id. The new component is dead
  // when it holds no species (an expanded vertex left isolated).
  InfoId rebalance(const SplitReport& split);

  // Total vertices visited by rebalance so far.
  std::size_t scans() const { return scans_; }

  // Species and marked nodes of the component containing `x`.
  std::vector<TaxonId> component_species(Vertex x);
  std::vector<TreeNode> component_marked(Vertex x);

 private:
  struct Bucket {
    Vertex head = kNoVertex;
    std::uint32_t size = 0;
    TreeIndex semi_prev = kNoTree;
    TreeIndex semi_next = kNoTree;
  };

  static std::uint64_t bucket_key(InfoId id, TreeIndex i) {
    return (static_cast<std::uint64_t>(id) << 32) | i;
  }
  Bucket* find_bucket(InfoId id, TreeIndex i);
  const Bucket* find_bucket(InfoId id, TreeIndex i) const;
  InfoId new_info(Vertex representative);
  void list_push(InfoId id, TreeIndex i, Vertex x);
  void list_erase(InfoId id, TreeIndex i, Vertex x);
  void semi_add(InfoId id, TreeIndex i);
  void semi_remove(InfoId id, TreeIndex i);

  const Profile* profile_;
  DynGraph graph_;
  std::vector<Vertex> offset_;
  Vertex species_base_ = 0;
  std::vector<Vertex> species_vertex_;
  std::vector<TaxonId> species_of_;
  std::vector<TreeIndex> tree_of_;
  std::vector<char> marked_;
  std::vector<InfoId> owner_;
  std::vector<Vertex> next_, prev_;
  std::vector<ComponentInfo> infos_;
  absl::flat_hash_map<std::uint64_t, Bucket> buckets_;
  std::size_t scans_ = 0;
};

// What one expansion round of a component produced.
struct RoundObservation {
  std::vector<TaxonId> species;                 // L(U) before the round
  std::vector<std::vector<TreeNode>> parts;     // marked nodes per component
  std::vector<std::vector<TaxonId>> part_species;
  bool split = false;
};

struct BuildOptions {
  bool build_tree = true;
  // Invoked after every expansion round (slow; for tests).
  std::function<void(const RoundObservation&)> observer;
};

struct BuildStats {
  std::size_t m_p = 0;
  std::size_t rounds = 0;
  std::size_t expansions = 0;
  std::size_t splits = 0;  // live components produced by rounds
  std::size_t scans = 0;
};

struct SupertreeResult {
  bool compatible = false;
  std::optional<PhyloTree> tree;  // set when compatible and requested
  BuildStats stats;
};

// Decides compatibility of `p` and, when compatible, builds a supertree that
// displays every input tree. Output children are ordered by smallest taxon
// id. Throws std::invalid_argument for an empty profile.
SupertreeResult buildg(const Profile& p, const BuildOptions& options = {});

// Verdict only.
bool check_only(const Profile& p);

// (V1) and (V2) for a node set U of the profile.
bool is_valid_set(const Profile& p, std::span<const TreeNode> nodes);

}  // namespace phylocompat

#endif  // PHYLOCOMPAT_BUILDG_H_
