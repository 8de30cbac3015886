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

#ifndef PHYLOCOMPAT_DYNCONN_H_
#define PHYLOCOMPAT_DYNCONN_H_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <absl/container/flat_hash_map.h>

namespace phylocompat {

using Vertex = std::uint32_t;

// Identifies a connected component until the next update of the graph.
struct ComponentHandle {
  std::uint32_t id = 0;
  friend auto operator<=>(const ComponentHandle&, const ComponentHandle&) = default;
};

// Result of a tree-edge deletion that disconnected a component.
struct SplitReport {
  ComponentHandle smaller;
  ComponentHandle larger;
  std::size_t smaller_size = 0;
  Vertex smaller_vertex = 0;  // endpoint of the deleted edge on each side
  Vertex larger_vertex = 0;
};

// Fully dynamic connectivity (Holm, de Lichtenberg and Thorup) on a fixed
// vertex set 0..n-1.
//
// Each level keeps a spanning forest as Euler tours stored in splay trees.
// A tour holds one node per vertex and two arc nodes per tree edge; only
// vertex nodes carry weight, so the subtree weight of a tour root is the
// vertex count of the component. Updates cost O(log^2 n) amortized;
// queries O(log n) amortized. Queries splay, hence are non-const.
class DynGraph {
 public:
  explicit DynGraph(std::size_t n = 0);

  std::size_t vertex_count() const { return vl0_.size(); }
  std::size_t edge_count() const { return edge_index_.size(); }
  std::size_t level_count() const { return levels_; }
  std::size_t component_count() const { return vertex_count() - tree_edges_; }

  bool has_edge(Vertex u, Vertex v) const;

  // Returns true iff u and v were disconnected before the insertion.
  // Throws std::invalid_argument for self-loops, duplicates or bad ids.
  bool insert_edge(Vertex u, Vertex v);

  // Removes the edge; reports the two sides when the component splits.
  // Throws std::invalid_argument when the edge is absent.
  std::optional<SplitReport> delete_edge(Vertex u, Vertex v);

  bool connected(Vertex u, Vertex v);
  std::size_t component_size(Vertex u);
  ComponentHandle component_handle(Vertex u);

  // Calls f(vertex) once for every vertex in u's component. The graph must
  // not be modified from inside `f`. O(component size).
  template <class F>
  void for_each_in_component(Vertex u, F&& f);

  std::vector<Vertex> component_vertices(Vertex u);

  // Walks the whole hierarchy and throws std::logic_error on any broken
  // invariant. Slow; for tests.
  void check_invariants();

 private:
  static constexpr std::uint32_t kNil = 0xffffffffu;
  static constexpr std::uint32_t kArcBit = 0x80000000u;
  static constexpr std::uint8_t kVertexNode = 1;
  static constexpr std::uint8_t kTreeFlag = 2;
  static constexpr std::uint8_t kNontreeFlag = 4;

  struct Node {
    std::uint32_t ch[2] = {0, 0};
    std::uint32_t parent = 0;
    std::uint32_t weight = 0;   // vertex nodes in subtree
    std::uint32_t payload = 0;  // vertex id, or edge id | kArcBit
    std::uint8_t own = 0;
    std::uint8_t agg = 0;
  };

  struct VertexLevel {
    std::uint32_t node = 0;      // 0: singleton at this level
    std::uint32_t head = kNil;   // nontree half-edge list
  };

  struct Edge {
    Vertex end[2] = {0, 0};
    std::uint32_t level = 0;
    bool tree = false;
    std::uint32_t arc0[2] = {0, 0};  // level-0 arcs of a tree edge
    std::uint32_t upper = kNil;      // arcs for levels >= 1, in arc_pool_
  };

  // Fixed-size chunks recycled through a free list, so promotions to higher
  // levels do not go through the allocator.
  template <class T>
  struct ChunkPool {
    std::size_t chunk = 0;
    std::vector<T> data;
    std::vector<std::uint32_t> free;

    std::uint32_t alloc() {
      std::uint32_t at;
      if (!free.empty()) {
        at = free.back();
        free.pop_back();
        std::fill_n(data.begin() + at, chunk, T{});
      } else {
        at = static_cast<std::uint32_t>(data.size());
        data.resize(data.size() + chunk);
      }
      return at;
    }
    void release(std::uint32_t at) { free.push_back(at); }
  };

  std::uint32_t& arc(std::uint32_t e, std::uint32_t level, int side) {
    Edge& ed = edges_[e];
    return level == 0 ? ed.arc0[side] : arc_pool_.data[ed.upper + 2 * (level - 1) + side];
  }
  // Existing slot of v at `level`, or nullptr.
  VertexLevel* find_level(Vertex v, std::uint32_t level) {
    if (level == 0) return &vl0_[v];
    return vup_[v] == kNil ? nullptr : &level_pool_.data[vup_[v] + level - 1];
  }
  VertexLevel& vertex_level(Vertex v, std::uint32_t level) {
    if (level == 0) return vl0_[v];
    if (vup_[v] == kNil) vup_[v] = level_pool_.alloc();
    return level_pool_.data[vup_[v] + level - 1];
  }

  // splay forest
  std::uint32_t new_node(std::uint32_t payload, std::uint8_t own);
  void free_node(std::uint32_t x);
  void pull(std::uint32_t x);
  void rotate(std::uint32_t x);
  void splay(std::uint32_t x);
  std::uint32_t join(std::uint32_t a, std::uint32_t b);
  std::uint32_t reroot(std::uint32_t x);
  std::uint32_t first_node(std::uint32_t x);
  std::uint32_t find_flagged(std::uint32_t root, std::uint8_t flag);
  void set_own_flag(std::uint32_t x, std::uint8_t flag, bool on);

  // levels
  std::uint32_t node_at(Vertex v, std::uint32_t level);
  std::uint32_t ensure_node(Vertex v, std::uint32_t level);
  bool connected_at(Vertex u, Vertex v, std::uint32_t level);
  void link(std::uint32_t e, std::uint32_t level);
  void cut(std::uint32_t e, std::uint32_t level);
  void add_nontree(std::uint32_t e, std::uint32_t level);
  void remove_nontree(std::uint32_t e);

  void check_vertex(Vertex v) const;
  static std::uint64_t key(Vertex u, Vertex v);

  std::size_t levels_ = 1;
  std::size_t tree_edges_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> free_nodes_;
  std::vector<VertexLevel> vl0_;       // level 0 of every vertex
  std::vector<std::uint32_t> vup_;     // levels >= 1, in level_pool_
  ChunkPool<VertexLevel> level_pool_;
  ChunkPool<std::uint32_t> arc_pool_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> free_edges_;
  std::vector<std::uint32_t> half_next_, half_prev_;
  absl::flat_hash_map<std::uint64_t, std::uint32_t> edge_index_;
};

template <class F>
void DynGraph::for_each_in_component(Vertex u, F&& f) {
  check_vertex(u);
  std::uint32_t x = vl0_[u].node;
  splay(x);
  // In-order walk using parent links; no restructuring while visiting.
  while (nodes_[x].ch[0] != 0) x = nodes_[x].ch[0];
  while (x != 0) {
    const Node& n = nodes_[x];
    if (n.own & kVertexNode) f(static_cast<Vertex>(n.payload));
    if (n.ch[1] != 0) {
      x = n.ch[1];
      while (nodes_[x].ch[0] != 0) x = nodes_[x].ch[0];
    } else {
      std::uint32_t p = n.parent;
      while (p != 0 && nodes_[p].ch[1] == x) {
        x = p;
        p = nodes_[p].parent;
      }
      x = p;
    }
  }
}

}  // namespace phylocompat

#endif  // PHYLOCOMPAT_DYNCONN_H_
