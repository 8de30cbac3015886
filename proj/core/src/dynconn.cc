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

#include "phylocompat/dynconn.h"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace phylocompat {

DynGraph::DynGraph(std::size_t n) : vl0_(n), vup_(n, kNil) {
  levels_ = n <= 1 ? 1 : static_cast<std::size_t>(std::bit_width(n - 1)) + 1;
  level_pool_.chunk = levels_ - 1;
  arc_pool_.chunk = 2 * (levels_ - 1);
  nodes_.reserve(2 * n + 1);
  nodes_.emplace_back();  // null sentinel
  for (Vertex v = 0; v < n; ++v) vl0_[v].node = new_node(v, kVertexNode);
}

std::uint64_t DynGraph::key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

void DynGraph::check_vertex(Vertex v) const {
  if (v >= vl0_.size()) {
    throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
  }
}

// ---------------------------------------------------------------------------
// Splay forest

std::uint32_t DynGraph::new_node(std::uint32_t payload, std::uint8_t own) {
  std::uint32_t x;
  if (!free_nodes_.empty()) {
    x = free_nodes_.back();
    free_nodes_.pop_back();
    nodes_[x] = Node{};
  } else {
    x = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();
  }
  Node& n = nodes_[x];
  n.payload = payload;
  n.own = own;
  n.agg = own;
  n.weight = own & kVertexNode;
  return x;
}

void DynGraph::free_node(std::uint32_t x) {
  nodes_[x] = Node{};
  free_nodes_.push_back(x);
}

void DynGraph::pull(std::uint32_t x) {
  Node& n = nodes_[x];
  const Node& l = nodes_[n.ch[0]];
  const Node& r = nodes_[n.ch[1]];
  n.weight = (n.own & kVertexNode) + l.weight + r.weight;
  n.agg = n.own | l.agg | r.agg;
}

void DynGraph::rotate(std::uint32_t x) {
  std::uint32_t p = nodes_[x].parent;
  std::uint32_t g = nodes_[p].parent;
  int dir = nodes_[p].ch[1] == x;
  std::uint32_t b = nodes_[x].ch[dir ^ 1];
  nodes_[p].ch[dir] = b;
  if (b) nodes_[b].parent = p;
  nodes_[x].ch[dir ^ 1] = p;
  nodes_[p].parent = x;
  nodes_[x].parent = g;
  if (g) nodes_[g].ch[nodes_[g].ch[1] == p] = x;
  pull(p);  // x is pulled once splay finishes
}

void DynGraph::splay(std::uint32_t x) {
  while (std::uint32_t p = nodes_[x].parent) {
    std::uint32_t g = nodes_[p].parent;
    if (g) {
      bool zigzig = (nodes_[g].ch[1] == p) == (nodes_[p].ch[1] == x);
      rotate(zigzig ? p : x);
    }
    rotate(x);
  }
  pull(x);
}

std::uint32_t DynGraph::join(std::uint32_t a, std::uint32_t b) {
  if (!a) return b;
  if (!b) return a;
  while (nodes_[a].ch[1]) a = nodes_[a].ch[1];
  splay(a);
  nodes_[a].ch[1] = b;
  nodes_[b].parent = a;
  pull(a);
  return a;
}

std::uint32_t DynGraph::reroot(std::uint32_t x) {
  splay(x);
  std::uint32_t l = nodes_[x].ch[0];
  if (!l) return x;
  nodes_[x].ch[0] = 0;
  nodes_[l].parent = 0;
  pull(x);
  return join(x, l);
}

std::uint32_t DynGraph::first_node(std::uint32_t x) {
  splay(x);
  while (nodes_[x].ch[0]) x = nodes_[x].ch[0];
  splay(x);
  return x;
}

std::uint32_t DynGraph::find_flagged(std::uint32_t root, std::uint8_t flag) {
  if (!(nodes_[root].agg & flag)) return 0;
  std::uint32_t x = root;
  for (;;) {
    const Node& n = nodes_[x];
    if (n.own & flag) break;
    x = (nodes_[n.ch[0]].agg & flag) ? n.ch[0] : n.ch[1];
  }
  splay(x);
  return x;
}

void DynGraph::set_own_flag(std::uint32_t x, std::uint8_t flag, bool on) {
  splay(x);
  Node& n = nodes_[x];
  n.own = on ? (n.own | flag) : (n.own & ~flag);
  pull(x);
}

// ---------------------------------------------------------------------------
// Level bookkeeping

std::uint32_t DynGraph::node_at(Vertex v, std::uint32_t level) {
  const VertexLevel* lv = find_level(v, level);
  return lv ? lv->node : 0;
}

std::uint32_t DynGraph::ensure_node(Vertex v, std::uint32_t level) {
  if (std::uint32_t x = node_at(v, level)) return x;
  std::uint32_t x = new_node(v, kVertexNode);
  vertex_level(v, level).node = x;
  return x;
}

bool DynGraph::connected_at(Vertex u, Vertex v, std::uint32_t level) {
  if (u == v) return true;
  std::uint32_t a = node_at(u, level), b = node_at(v, level);
  if (!a || !b) return false;
  splay(a);
  splay(b);
  return nodes_[a].parent != 0;
}

void DynGraph::link(std::uint32_t e, std::uint32_t level) {
  Edge& ed = edges_[e];
  std::uint32_t a = reroot(ensure_node(ed.end[0], level));
  std::uint32_t b = reroot(ensure_node(ed.end[1], level));
  std::uint32_t arc_ab = new_node(e | kArcBit, 0);
  std::uint32_t arc_ba = new_node(e | kArcBit, 0);
  // Both tours are rerooted, so a arc_ab b arc_ba assembles without searching.
  nodes_[arc_ab].ch[0] = a;
  nodes_[arc_ab].ch[1] = b;
  nodes_[a].parent = nodes_[b].parent = arc_ab;
  pull(arc_ab);
  nodes_[arc_ba].ch[0] = arc_ab;
  nodes_[arc_ab].parent = arc_ba;
  pull(arc_ba);
  if (level > 0 && edges_[e].upper == kNil) edges_[e].upper = arc_pool_.alloc();
  arc(e, level, 0) = arc_ab;
  arc(e, level, 1) = arc_ba;
}

void DynGraph::cut(std::uint32_t e, std::uint32_t level) {
  std::uint32_t a1 = arc(e, level, 0);
  std::uint32_t a2 = arc(e, level, 1);
  // Order the two arcs by tour position.
  splay(a2);
  splay(a1);
  for (std::uint32_t x = a2;;) {
    std::uint32_t p = nodes_[x].parent;
    if (p == a1) {
      if (nodes_[a1].ch[0] == x) std::swap(a1, a2);
      break;
    }
    x = p;
  }
  // tour = A a1 B a2 C  ->  B and C+A
  splay(a1);
  std::uint32_t left = nodes_[a1].ch[0], right = nodes_[a1].ch[1];
  if (left) nodes_[left].parent = 0;
  if (right) nodes_[right].parent = 0;
  free_node(a1);
  splay(a2);
  std::uint32_t mid = nodes_[a2].ch[0], tail = nodes_[a2].ch[1];
  if (mid) nodes_[mid].parent = 0;
  if (tail) nodes_[tail].parent = 0;
  free_node(a2);
  join(tail, left);
  arc(e, level, 0) = 0;
  arc(e, level, 1) = 0;
}

void DynGraph::add_nontree(std::uint32_t e, std::uint32_t level) {
  Edge& ed = edges_[e];
  ed.level = level;
  ed.tree = false;
  for (int side = 0; side < 2; ++side) {
    Vertex v = ed.end[side];
    std::uint32_t h = 2 * e + side;
    std::uint32_t node = ensure_node(v, level);
    VertexLevel& lv = vertex_level(v, level);
    half_prev_[h] = kNil;
    half_next_[h] = lv.head;
    if (lv.head != kNil) half_prev_[lv.head] = h;
    bool was_empty = lv.head == kNil;
    lv.head = h;
    if (was_empty) set_own_flag(node, kNontreeFlag, true);
  }
}

void DynGraph::remove_nontree(std::uint32_t e) {
  Edge& ed = edges_[e];
  for (int side = 0; side < 2; ++side) {
    Vertex v = ed.end[side];
    std::uint32_t h = 2 * e + side;
    VertexLevel& lv = vertex_level(v, ed.level);
    if (half_prev_[h] != kNil) {
      half_next_[half_prev_[h]] = half_next_[h];
    } else {
      lv.head = half_next_[h];
    }
    if (half_next_[h] != kNil) half_prev_[half_next_[h]] = half_prev_[h];
    if (lv.head == kNil) set_own_flag(lv.node, kNontreeFlag, false);
  }
}

// ---------------------------------------------------------------------------
// Public operations

bool DynGraph::has_edge(Vertex u, Vertex v) const {
  return edge_index_.contains(key(u, v));
}

bool DynGraph::insert_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("self-loop");
  auto [it, fresh] = edge_index_.try_emplace(key(u, v), 0);
  if (!fresh) throw std::invalid_argument("duplicate edge");

  std::uint32_t e;
  if (!free_edges_.empty()) {
    e = free_edges_.back();
    free_edges_.pop_back();
    edges_[e] = Edge{};
  } else {
    e = static_cast<std::uint32_t>(edges_.size());
    edges_.emplace_back();
    half_next_.resize(2 * edges_.size(), kNil);
    half_prev_.resize(2 * edges_.size(), kNil);
  }
  it->second = e;
  edges_[e].end[0] = u;
  edges_[e].end[1] = v;

  if (connected_at(u, v, 0)) {
    add_nontree(e, 0);
    return false;
  }
  edges_[e].tree = true;
  edges_[e].level = 0;
  link(e, 0);
  set_own_flag(arc(e, 0, 0), kTreeFlag, true);
  ++tree_edges_;
  return true;
}

std::optional<SplitReport> DynGraph::delete_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  auto it = edge_index_.find(key(u, v));
  if (it == edge_index_.end()) throw std::invalid_argument("edge not present");
  const std::uint32_t e = it->second;
  edge_index_.erase(it);

  if (!edges_[e].tree) {
    remove_nontree(e);
    free_edges_.push_back(e);
    return std::nullopt;
  }

  const std::uint32_t top = edges_[e].level;
  for (std::uint32_t i = 0; i <= top; ++i) cut(e, i);
  if (edges_[e].upper != kNil) arc_pool_.release(edges_[e].upper);
  edges_[e].upper = kNil;
  free_edges_.push_back(e);

  for (std::uint32_t i = top + 1; i-- > 0;) {
    std::uint32_t nu = node_at(u, i), nv = node_at(v, i);
    splay(nu);
    std::uint32_t su = nodes_[nu].weight;
    splay(nv);
    std::uint32_t sv = nodes_[nv].weight;
    std::uint32_t small = su <= sv ? nu : nv;
    const Vertex small_vertex = nodes_[small].payload;

    // Push the small side's level-i tree edges up one level.
    for (;;) {
      splay(small);
      std::uint32_t x = find_flagged(small, kTreeFlag);
      if (!x) break;
      std::uint32_t f = nodes_[x].payload & ~kArcBit;
      set_own_flag(x, kTreeFlag, false);
      if (i + 1 >= levels_) throw std::logic_error("level overflow");
      edges_[f].level = i + 1;
      link(f, i + 1);
      set_own_flag(arc(f, i + 1, 0), kTreeFlag, true);
    }

    // Look for a replacement among the small side's level-i nontree edges.
    for (;;) {
      splay(small);
      std::uint32_t x = find_flagged(small, kNontreeFlag);
      if (!x) break;
      const Vertex w = nodes_[x].payload;
      while (vertex_level(w, i).head != kNil) {
        std::uint32_t h = vertex_level(w, i).head;
        std::uint32_t f = h / 2;
        Vertex other = edges_[f].end[(h & 1) ^ 1];
        remove_nontree(f);
        if (connected_at(other, small_vertex, i)) {
          if (i + 1 >= levels_) throw std::logic_error("level overflow");
          add_nontree(f, i + 1);
          continue;
        }
        edges_[f].tree = true;
        edges_[f].level = i;
        for (std::uint32_t j = 0; j <= i; ++j) link(f, j);
        set_own_flag(arc(f, i, 0), kTreeFlag, true);
        return std::nullopt;
      }
    }
  }

  --tree_edges_;
  std::uint32_t nu = vl0_[u].node, nv = vl0_[v].node;
  splay(nu);
  std::size_t su = nodes_[nu].weight;
  splay(nv);
  std::size_t sv = nodes_[nv].weight;
  SplitReport report;
  if (su <= sv) {
    report.smaller_vertex = u;
    report.larger_vertex = v;
    report.smaller_size = su;
  } else {
    report.smaller_vertex = v;
    report.larger_vertex = u;
    report.smaller_size = sv;
  }
  report.smaller = component_handle(report.smaller_vertex);
  report.larger = component_handle(report.larger_vertex);
  return report;
}

bool DynGraph::connected(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  return connected_at(u, v, 0);
}

std::size_t DynGraph::component_size(Vertex u) {
  check_vertex(u);
  std::uint32_t x = vl0_[u].node;
  splay(x);
  return nodes_[x].weight;
}

ComponentHandle DynGraph::component_handle(Vertex u) {
  check_vertex(u);
  return ComponentHandle{first_node(vl0_[u].node)};
}

std::vector<Vertex> DynGraph::component_vertices(Vertex u) {
  std::vector<Vertex> out;
  for_each_in_component(u, [&](Vertex x) { out.push_back(x); });
  return out;
}

void DynGraph::check_invariants() {
  auto fail = [](const std::string& what) {
    throw std::logic_error("dynconn invariant: " + what);
  };
  auto root_of = [&](std::uint32_t x) {
    while (nodes_[x].parent) x = nodes_[x].parent;
    return x;
  };
  const std::size_t n = vertex_count();

  // Aggregates and per-tree vertex counts.
  for (std::uint32_t x = 1; x < nodes_.size(); ++x) {
    const Node& nd = nodes_[x];
    for (int d = 0; d < 2; ++d) {
      if (nd.ch[d] && nodes_[nd.ch[d]].parent != x) fail("broken parent link");
    }
  }
  for (std::uint32_t lvl = 0; lvl < levels_; ++lvl) {
    std::unordered_map<std::uint32_t, std::size_t> count;
    for (Vertex v = 0; v < n; ++v) {
      if (std::uint32_t x = node_at(v, lvl)) ++count[root_of(x)];
    }
    for (auto [root, c] : count) {
      if (nodes_[root].weight != c) fail("weight mismatch");
      if (lvl > 0 && c > (n >> lvl)) fail("level " + std::to_string(lvl) + " tree too large");
    }
  }

  std::size_t tree_count = 0;
  for (auto [k, e] : edge_index_) {
    const Edge& ed = edges_[e];
    Vertex a = ed.end[0], b = ed.end[1];
    if (key(a, b) != k) fail("edge index mismatch");
    if (ed.level >= levels_) fail("edge level out of range");
    if (ed.tree) {
      ++tree_count;
      if (ed.level > 0 && ed.upper == kNil) fail("missing arcs");
      for (std::uint32_t lvl = 0; lvl <= ed.level; ++lvl) {
        std::uint32_t x = arc(e, lvl, 0), y = arc(e, lvl, 1);
        if (!x || !y) fail("missing arc");
        if (root_of(x) != root_of(y) || root_of(x) != root_of(node_at(a, lvl)) ||
            root_of(x) != root_of(node_at(b, lvl))) {
          fail("tree edge endpoints in different tours");
        }
        bool flagged = nodes_[x].own & kTreeFlag;
        if (flagged != (lvl == ed.level)) fail("tree flag mismatch");
      }
    } else {
      std::uint32_t x = node_at(a, ed.level), y = node_at(b, ed.level);
      if (!x || !y || root_of(x) != root_of(y)) {
        fail("nontree edge endpoints disconnected at its level");
      }
    }
  }
  if (tree_count != tree_edges_) fail("tree edge count");

  for (Vertex v = 0; v < n; ++v) {
    for (std::uint32_t lvl = 0; lvl < levels_; ++lvl) {
      const VertexLevel* slot = find_level(v, lvl);
      if (!slot || !slot->node) continue;
      const VertexLevel& lv = *slot;
      bool flagged = nodes_[lv.node].own & kNontreeFlag;
      if (flagged != (lv.head != kNil)) fail("nontree flag mismatch");
      for (std::uint32_t h = lv.head; h != kNil; h = half_next_[h]) {
        const Edge& ed = edges_[h / 2];
        if (ed.tree || ed.level != lvl || ed.end[h & 1] != v) fail("bad adjacency entry");
      }
    }
  }
}

}  // namespace phylocompat
