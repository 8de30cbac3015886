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
#include <numeric>
#include <string>
#include <unordered_set>

namespace phylocompat {

PhyloTree PhyloTree::single_leaf(TaxonId taxon) {
  TreeBuilder b;
  b.add_leaf(kNoNode, taxon);
  return b.build();
}

std::vector<TaxonId> PhyloTree::taxa() const {
  std::vector<TaxonId> out;
  out.reserve(leaf_count_);
  for (NodeIndex v = 0; v < size(); ++v) {
    if (is_leaf(v)) out.push_back(taxon_[v]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

NodeIndex PhyloTree::leaf_of(TaxonId taxon) const {
  if (taxon >= leaf_by_taxon_.size()) return kNoNode;
  return leaf_by_taxon_[taxon];
}

NodeIndex TreeBuilder::add_node(NodeIndex parent) {
  auto v = static_cast<NodeIndex>(parent_.size());
  if (parent == kNoNode) {
    if (root_ != kNoNode) throw TreeError("tree has more than one root");
    root_ = v;
  } else {
    children_.at(parent).push_back(v);
  }
  parent_.push_back(parent);
  children_.emplace_back();
  taxon_.push_back(kNoTaxon);
  return v;
}

NodeIndex TreeBuilder::add_leaf(NodeIndex parent, TaxonId taxon) {
  NodeIndex v = add_node(parent);
  taxon_[v] = taxon;
  return v;
}

PhyloTree TreeBuilder::build() const {
  if (root_ == kNoNode) throw TreeError("empty tree");

  auto skip_unary = [&](NodeIndex v) {
    while (children_[v].size() == 1) v = children_[v].front();
    return v;
  };

  PhyloTree t;
  std::vector<TaxonId>& taxon = t.taxon_;
  std::vector<NodeIndex>& parent = t.parent_;

  // Preorder walk over the contracted tree.
  std::vector<std::pair<NodeIndex, NodeIndex>> stack;  // (old node, new parent)
  stack.emplace_back(skip_unary(root_), kNoNode);
  while (!stack.empty()) {
    auto [old, new_parent] = stack.back();
    stack.pop_back();
    auto v = static_cast<NodeIndex>(parent.size());
    parent.push_back(new_parent);
    const auto& ch = children_[old];
    if (ch.empty()) {
      if (taxon_[old] == kNoTaxon) throw TreeError("leaf without a label");
      taxon.push_back(taxon_[old]);
    } else {
      if (taxon_[old] != kNoTaxon) {
        throw TreeError("internal node carries a taxon");
      }
      taxon.push_back(kNoTaxon);
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) {
        stack.emplace_back(skip_unary(*it), v);
      }
    }
  }

  const auto n = static_cast<NodeIndex>(parent.size());
  t.child_begin_.assign(n + 1, 0);
  for (NodeIndex v = 1; v < n; ++v) ++t.child_begin_[parent[v] + 1];
  std::partial_sum(t.child_begin_.begin(), t.child_begin_.end(),
                   t.child_begin_.begin());
  t.children_.resize(n == 0 ? 0 : n - 1);
  {
    std::vector<NodeIndex> fill(t.child_begin_.begin(), t.child_begin_.end() - 1);
    for (NodeIndex v = 1; v < n; ++v) t.children_[fill[parent[v]]++] = v;
  }

  t.subtree_end_.resize(n);
  std::vector<NodeIndex> sz(n, 1);
  for (NodeIndex v = n; v-- > 1;) sz[parent[v]] += sz[v];
  for (NodeIndex v = 0; v < n; ++v) t.subtree_end_[v] = v + sz[v];

  TaxonId bound = 0;
  for (NodeIndex v = 0; v < n; ++v) {
    if (taxon[v] != kNoTaxon) bound = std::max(bound, taxon[v] + 1);
  }
  t.taxon_bound_ = bound;
  t.leaf_by_taxon_.assign(bound, kNoNode);
  for (NodeIndex v = 0; v < n; ++v) {
    if (taxon[v] == kNoTaxon) continue;
    if (t.leaf_by_taxon_[taxon[v]] != kNoNode) {
      throw TreeError("duplicate leaf taxon " + std::to_string(taxon[v]));
    }
    t.leaf_by_taxon_[taxon[v]] = v;
    ++t.leaf_count_;
  }
  return t;
}

std::size_t Profile::m_p() const {
  std::size_t m = 0;
  for (const auto& t : trees_) m += t.size() + t.edge_count();
  return m;
}

std::vector<TaxonId> Profile::species() const {
  std::vector<TaxonId> out;
  for (const auto& t : trees_) {
    auto tx = t.taxa();
    out.insert(out.end(), tx.begin(), tx.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Cluster cluster_of(const PhyloTree& t, NodeIndex v) {
  if (v >= t.size()) throw std::out_of_range("node index out of range");
  Cluster c;
  for (NodeIndex u = v; u < t.subtree_end(v); ++u) {
    if (t.is_leaf(u)) c.push_back(t.taxon(u));
  }
  std::sort(c.begin(), c.end());
  return c;
}

std::set<Cluster> cluster_set(const PhyloTree& t) {
  std::set<Cluster> out;
  for (NodeIndex v = 0; v < t.size(); ++v) out.insert(cluster_of(t, v));
  return out;
}

PhyloTree restrict_to(const PhyloTree& t, std::span<const TaxonId> taxa) {
  std::vector<char> wanted(t.taxon_bound(), 0);
  for (TaxonId x : taxa) {
    if (x < wanted.size()) wanted[x] = 1;
  }
  const auto n = static_cast<NodeIndex>(t.size());
  std::vector<char> keep(n, 0);
  for (NodeIndex v = n; v-- > 0;) {
    if (t.is_leaf(v)) keep[v] = wanted[t.taxon(v)];
    if (keep[v] && v != 0) keep[t.parent(v)] = 1;
  }
  if (n == 0 || !keep[0]) {
    throw std::invalid_argument("restriction set misses the tree's leaves");
  }

  TreeBuilder b;
  std::vector<NodeIndex> image(n, kNoNode);
  for (NodeIndex v = 0; v < n; ++v) {
    if (!keep[v]) continue;
    NodeIndex p = v == 0 ? kNoNode : image[t.parent(v)];
    image[v] = t.is_leaf(v) ? b.add_leaf(p, t.taxon(v)) : b.add_node(p);
  }
  return b.build();
}

bool displays(const PhyloTree& t, const PhyloTree& s) {
  for (NodeIndex v = 0; v < s.size(); ++v) {
    if (s.is_leaf(v) && t.leaf_of(s.taxon(v)) == kNoNode) {
      throw std::invalid_argument("displayed tree has a taxon missing from "
                                  "the displaying tree");
    }
  }
  auto taxa = s.taxa();
  PhyloTree r = restrict_to(t, taxa);

  // Leaves of r ranked in preorder; every cluster of r is a rank interval.
  std::vector<std::uint32_t> rank(r.taxon_bound(), 0);
  const auto rn = static_cast<NodeIndex>(r.size());
  std::vector<std::uint32_t> lo(rn), hi(rn);
  std::uint32_t next = 0;
  for (NodeIndex v = 0; v < rn; ++v) {
    if (r.is_leaf(v)) rank[r.taxon(v)] = next++;
  }
  const std::uint64_t width = next;
  std::unordered_set<std::uint64_t> intervals;
  intervals.reserve(rn);
  for (NodeIndex v = rn; v-- > 0;) {
    if (r.is_leaf(v)) {
      lo[v] = hi[v] = rank[r.taxon(v)];
    } else {
      auto ch = r.children(v);
      lo[v] = lo[ch.front()];
      hi[v] = hi[ch.back()];
      intervals.insert(lo[v] * width + hi[v]);
    }
  }

  const auto sn = static_cast<NodeIndex>(s.size());
  std::vector<std::uint32_t> mn(sn, UINT32_MAX), mx(sn, 0), cnt(sn, 0);
  for (NodeIndex v = sn; v-- > 0;) {
    if (s.is_leaf(v)) {
      mn[v] = mx[v] = rank[s.taxon(v)];
      cnt[v] = 1;
    } else if (mx[v] - mn[v] + 1 != cnt[v] ||
               !intervals.contains(mn[v] * width + mx[v])) {
      return false;
    }
    if (v != 0) {
      NodeIndex p = s.parent(v);
      mn[p] = std::min(mn[p], mn[v]);
      mx[p] = std::max(mx[p], mx[v]);
      cnt[p] += cnt[v];
    }
  }
  return true;
}

bool same_clusters(const PhyloTree& t, const PhyloTree& s) {
  if (t.size() != s.size() || t.taxa() != s.taxa()) return false;
  return displays(t, s);
}

std::vector<RootedTriple> triples_of(const PhyloTree& t) {
  std::vector<RootedTriple> out;
  auto all = t.taxa();
  for (NodeIndex v = 0; v < t.size(); ++v) {
    if (t.is_leaf(v)) continue;
    auto inside = cluster_of(t, v);
    std::vector<TaxonId> outside;
    std::set_difference(all.begin(), all.end(), inside.begin(), inside.end(),
                        std::back_inserter(outside));
    if (outside.empty()) continue;
    auto ch = t.children(v);
    std::vector<Cluster> parts;
    for (NodeIndex c : ch) parts.push_back(cluster_of(t, c));
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (std::size_t j = i + 1; j < parts.size(); ++j) {
        for (TaxonId a : parts[i]) {
          for (TaxonId b : parts[j]) {
            for (TaxonId c : outside) out.push_back(RootedTriple::make(a, b, c));
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::vector<TaxonId>> SpeciesGraph::components() const {
  std::vector<std::size_t> uf(vertices.size());
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](std::size_t x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  auto index = [&](TaxonId x) {
    return static_cast<std::size_t>(
        std::lower_bound(vertices.begin(), vertices.end(), x) -
        vertices.begin());
  };
  for (auto [x, y] : edges) {
    auto a = find(index(x)), b = find(index(y));
    if (a != b) uf[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<TaxonId>> out;
  std::vector<std::size_t> slot(vertices.size(), SIZE_MAX);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    auto r = find(i);
    if (slot[r] == SIZE_MAX) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(vertices[i]);
  }
  return out;
}

SpeciesGraph triplet_graph(const Profile& p, std::span<const TaxonId> taxa) {
  SpeciesGraph g;
  g.vertices.assign(taxa.begin(), taxa.end());
  std::sort(g.vertices.begin(), g.vertices.end());
  g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()),
                   g.vertices.end());
  for (const auto& t : p.trees()) {
    std::vector<TaxonId> common;
    auto leaves = t.taxa();
    std::set_intersection(leaves.begin(), leaves.end(), g.vertices.begin(),
                          g.vertices.end(), std::back_inserter(common));
    if (common.size() < 3) continue;
    for (const auto& tr : triples_of(restrict_to(t, common))) {
      g.edges.emplace(tr.a, tr.b);
    }
  }
  return g;
}

}  // namespace phylocompat
