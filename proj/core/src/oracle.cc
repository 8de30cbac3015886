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

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace phylocompat {
namespace {

using Hierarchy = std::set<Cluster>;

// All ways to split `items` into at least two nonempty blocks.
std::vector<std::vector<Cluster>> partitions_into_two_or_more(const Cluster& items) {
  std::vector<std::vector<Cluster>> out;
  const std::size_t n = items.size();
  std::vector<std::size_t> block(n, 0);  // restricted growth string
  for (;;) {
    std::size_t blocks = *std::max_element(block.begin(), block.end()) + 1;
    if (blocks >= 2) {
      std::vector<Cluster> parts(blocks);
      for (std::size_t i = 0; i < n; ++i) parts[block[i]].push_back(items[i]);
      out.push_back(std::move(parts));
    }
    // next restricted growth string
    std::size_t i = n;
    for (;;) {
      if (i-- <= 1) return out;
      std::size_t limit = *std::max_element(block.begin(), block.begin() + i) + 1;
      if (block[i] < limit) {
        ++block[i];
        std::fill(block.begin() + i + 1, block.end(), 0);
        break;
      }
    }
  }
}

std::vector<Hierarchy> hierarchies(const Cluster& leaves) {
  if (leaves.size() == 1) return {Hierarchy{leaves}};
  std::set<Hierarchy> unique;
  for (const auto& parts : partitions_into_two_or_more(leaves)) {
    std::vector<std::vector<Hierarchy>> options;
    for (const auto& part : parts) options.push_back(hierarchies(part));
    std::vector<std::size_t> pick(parts.size(), 0);
    for (;;) {
      Hierarchy h{leaves};
      for (std::size_t j = 0; j < parts.size(); ++j) {
        h.insert(options[j][pick[j]].begin(), options[j][pick[j]].end());
      }
      unique.insert(std::move(h));
      std::size_t j = 0;
      while (j < parts.size() && ++pick[j] == options[j].size()) pick[j++] = 0;
      if (j == parts.size()) break;
    }
  }
  return {unique.begin(), unique.end()};
}

PhyloTree tree_from_hierarchy(const Hierarchy& h) {
  std::vector<Cluster> clusters(h.begin(), h.end());
  std::stable_sort(clusters.begin(), clusters.end(),
                   [](const Cluster& a, const Cluster& b) { return a.size() > b.size(); });
  TreeBuilder b;
  std::vector<NodeIndex> image(clusters.size());
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    NodeIndex parent = kNoNode;
    // smallest earlier cluster containing this one
    for (std::size_t d = c; d-- > 0;) {
      if (std::includes(clusters[d].begin(), clusters[d].end(), clusters[c].begin(),
                        clusters[c].end())) {
        parent = image[d];
        break;
      }
    }
    image[c] = clusters[c].size() == 1 ? b.add_leaf(parent, clusters[c][0])
                                       : b.add_node(parent);
  }
  return b.build();
}

bool build_classic_into(const Profile& p, const std::vector<TaxonId>& species,
                        NodeIndex parent, TreeBuilder& out) {
  if (species.size() == 1) {
    out.add_leaf(parent, species[0]);
    return true;
  }
  if (species.size() == 2) {
    NodeIndex r = out.add_node(parent);
    out.add_leaf(r, species[0]);
    out.add_leaf(r, species[1]);
    return true;
  }
  auto components = triplet_graph(p, species).components();
  if (components.size() == 1) return false;
  NodeIndex r = out.add_node(parent);
  for (const auto& c : components) {
    if (!build_classic_into(p, c, r, out)) return false;
  }
  return true;
}

}  // namespace

std::optional<PhyloTree> build_classic(const Profile& p) {
  auto species = p.species();
  if (species.empty()) throw std::invalid_argument("build_classic: empty profile");
  TreeBuilder out;
  if (!build_classic_into(p, species, kNoNode, out)) return std::nullopt;
  return out.build();
}

std::vector<PhyloTree> enumerate_trees(std::span<const TaxonId> leaves) {
  Cluster sorted(leaves.begin(), leaves.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.empty() || sorted.size() > 6) {
    throw std::invalid_argument("enumerate_trees: need 1 to 6 leaves");
  }
  std::vector<PhyloTree> out;
  for (const auto& h : hierarchies(sorted)) out.push_back(tree_from_hierarchy(h));
  return out;
}

bool brute_force_compatible(const Profile& p) {
  auto species = p.species();
  if (species.size() > 6) {
    throw std::invalid_argument("brute_force_compatible: too many species");
  }
  for (const auto& candidate : enumerate_trees(species)) {
    bool all = std::all_of(p.trees().begin(), p.trees().end(),
                           [&](const PhyloTree& t) { return displays(candidate, t); });
    if (all) return true;
  }
  return false;
}

void NaiveGraph::insert(std::size_t u, std::size_t v) {
  if (u > v) std::swap(u, v);
  edges_.emplace(u, v);
}

void NaiveGraph::erase(std::size_t u, std::size_t v) {
  if (u > v) std::swap(u, v);
  edges_.erase({u, v});
}

bool NaiveGraph::has_edge(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  return edges_.contains({u, v});
}

std::vector<std::size_t> NaiveGraph::component(std::size_t u) const {
  std::vector<std::vector<std::size_t>> adj(n_);
  for (auto [a, b] : edges_) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> seen(n_, 0);
  std::vector<std::size_t> out{u}, queue{u};
  seen[u] = 1;
  while (!queue.empty()) {
    std::size_t x = queue.back();
    queue.pop_back();
    for (std::size_t y : adj[x]) {
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
        queue.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool NaiveGraph::connected(std::size_t u, std::size_t v) const {
  auto c = component(u);
  return std::binary_search(c.begin(), c.end(), v);
}

std::size_t NaiveGraph::component_size(std::size_t u) const { return component(u).size(); }

bool naive_connectivity(std::size_t n,
                        std::span<const std::pair<std::size_t, std::size_t>> edges,
                        std::size_t u, std::size_t v) {
  NaiveGraph g(n);
  for (auto [a, b] : edges) g.insert(a, b);
  return g.connected(u, v);
}

}  // namespace phylocompat
