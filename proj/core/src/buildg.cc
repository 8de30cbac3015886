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
#include <stdexcept>

namespace phylocompat {

// ---------------------------------------------------------------------------
// DisplayGraph

DisplayGraph::DisplayGraph(const Profile& p) : profile_(&p) {
  const auto k = static_cast<TreeIndex>(p.k());
  Vertex total = 0;
  offset_.reserve(k);
  for (const auto& t : p.trees()) {
    offset_.push_back(total);
    total += static_cast<Vertex>(t.size());
  }
  species_base_ = total;
  auto species = p.species();
  species_of_ = species;
  TaxonId bound = species.empty() ? 0 : species.back() + 1;
  species_vertex_.assign(bound, kNoVertex);
  for (std::size_t j = 0; j < species.size(); ++j) {
    species_vertex_[species[j]] = species_base_ + static_cast<Vertex>(j);
  }
  total += static_cast<Vertex>(species.size());

  tree_of_.assign(total, kNoTree);
  for (TreeIndex i = 0; i < k; ++i) {
    std::fill_n(tree_of_.begin() + offset_[i], p.tree(i).size(), i);
  }
  marked_.assign(total, 0);
  owner_.assign(total, 0);
  next_.assign(total, kNoVertex);
  prev_.assign(total, kNoVertex);

  graph_ = DynGraph(total);
  for (TreeIndex i = 0; i < k; ++i) {
    const PhyloTree& t = p.tree(i);
    for (NodeIndex v = 0; v < t.size(); ++v) {
      if (v != t.root()) graph_.insert_edge(offset_[i] + t.parent(v), offset_[i] + v);
      if (t.is_leaf(v)) graph_.insert_edge(offset_[i] + v, species_vertex_[t.taxon(v)]);
    }
  }

  std::vector<char> seen(total, 0);
  for (Vertex x = 0; x < total; ++x) {
    if (seen[x]) continue;
    InfoId id = new_info(x);
    graph_.for_each_in_component(x, [&](Vertex y) {
      seen[y] = 1;
      owner_[y] = id;
      if (is_species(y)) ++infos_[id].count;
    });
  }
  for (TreeIndex i = 0; i < k; ++i) {
    Vertex r = offset_[i];
    marked_[r] = 1;
    list_push(owner_[r], i, r);
  }
}

InfoId DisplayGraph::new_info(Vertex representative) {
  auto id = static_cast<InfoId>(infos_.size());
  infos_.emplace_back();
  infos_.back().representative = representative;
  return id;
}

std::vector<InfoId> DisplayGraph::live_components() const {
  std::vector<InfoId> out;
  for (InfoId id = 0; id < infos_.size(); ++id) {
    if (infos_[id].alive) out.push_back(id);
  }
  return out;
}

DisplayGraph::Bucket* DisplayGraph::find_bucket(InfoId id, TreeIndex i) {
  auto it = buckets_.find(bucket_key(id, i));
  return it == buckets_.end() ? nullptr : &it->second;
}

const DisplayGraph::Bucket* DisplayGraph::find_bucket(InfoId id, TreeIndex i) const {
  auto it = buckets_.find(bucket_key(id, i));
  return it == buckets_.end() ? nullptr : &it->second;
}

std::vector<TreeIndex> DisplayGraph::semi(InfoId id) const {
  std::vector<TreeIndex> out;
  for (TreeIndex i = infos_.at(id).semi_head; i != kNoTree;) {
    out.push_back(i);
    i = find_bucket(id, i)->semi_next;
  }
  return out;
}

std::vector<Vertex> DisplayGraph::list(InfoId id, TreeIndex i) const {
  std::vector<Vertex> out;
  if (const Bucket* b = find_bucket(id, i)) {
    for (Vertex x = b->head; x != kNoVertex; x = next_[x]) out.push_back(x);
  }
  return out;
}

std::size_t DisplayGraph::list_size(InfoId id, TreeIndex i) const {
  const Bucket* b = find_bucket(id, i);
  return b ? b->size : 0;
}

void DisplayGraph::semi_add(InfoId id, TreeIndex i) {
  ComponentInfo& info = infos_[id];
  Bucket& b = buckets_[bucket_key(id, i)];
  b.semi_prev = kNoTree;
  b.semi_next = info.semi_head;
  if (info.semi_head != kNoTree) find_bucket(id, info.semi_head)->semi_prev = i;
  info.semi_head = i;
  ++info.semi_size;
}

void DisplayGraph::semi_remove(InfoId id, TreeIndex i) {
  ComponentInfo& info = infos_[id];
  Bucket& b = *find_bucket(id, i);
  if (b.semi_prev != kNoTree) {
    find_bucket(id, b.semi_prev)->semi_next = b.semi_next;
  } else {
    info.semi_head = b.semi_next;
  }
  if (b.semi_next != kNoTree) find_bucket(id, b.semi_next)->semi_prev = b.semi_prev;
  b.semi_prev = b.semi_next = kNoTree;
  --info.semi_size;
}

void DisplayGraph::list_push(InfoId id, TreeIndex i, Vertex x) {
  Bucket& b = buckets_[bucket_key(id, i)];
  prev_[x] = kNoVertex;
  next_[x] = b.head;
  if (b.head != kNoVertex) prev_[b.head] = x;
  b.head = x;
  ++b.size;
  if (b.size == 1) semi_add(id, i);
  if (b.size == 2) semi_remove(id, i);
}

void DisplayGraph::list_erase(InfoId id, TreeIndex i, Vertex x) {
  Bucket* b = find_bucket(id, i);
  if (b == nullptr) throw std::logic_error("vertex missing from its LIST");
  if (prev_[x] != kNoVertex) {
    next_[prev_[x]] = next_[x];
  } else {
    b->head = next_[x];
  }
  if (next_[x] != kNoVertex) prev_[next_[x]] = prev_[x];
  prev_[x] = next_[x] = kNoVertex;
  --b->size;
  if (b->size == 1) semi_add(id, i);
  if (b->size == 0) {
    semi_remove(id, i);
    buckets_.erase(bucket_key(id, i));
  }
}

InfoId DisplayGraph::rebalance(const SplitReport& split) {
  const InfoId parent = owner_[split.larger_vertex];
  const InfoId id = new_info(split.smaller_vertex);
  infos_[parent].representative = split.larger_vertex;
  graph_.for_each_in_component(split.smaller_vertex, [&](Vertex x) {
    ++scans_;
    owner_[x] = id;
    if (is_species(x)) {
      --infos_[parent].count;
      ++infos_[id].count;
    } else if (marked_[x]) {
      TreeIndex i = tree_of_[x];
      list_erase(parent, i, x);
      list_push(id, i, x);
    }
  });
  if (infos_[id].count == 0) {
    if (infos_[id].semi_size != 0) {
      throw std::logic_error("marked vertices in a component without species");
    }
    infos_[id].alive = false;
  }
  return id;
}

std::vector<InfoId> DisplayGraph::expand(Vertex v) {
  if (v >= vertex_count() || is_species(v) || !marked_[v]) {
    throw std::logic_error("expand: vertex is not a marked tree node");
  }
  const TreeIndex i = tree_of_[v];
  const PhyloTree& t = profile_->tree(i);
  const NodeIndex local = node_of(v);
  if (t.is_leaf(local)) throw std::logic_error("expand: vertex is a leaf");

  const InfoId id = owner_[v];
  list_erase(id, i, v);
  marked_[v] = 0;
  for (NodeIndex c : t.children(local)) {
    Vertex u = offset_[i] + c;
    marked_[u] = 1;
    list_push(id, i, u);
  }
  std::vector<InfoId> created;
  for (NodeIndex c : t.children(local)) {
    if (auto split = graph_.delete_edge(v, offset_[i] + c)) {
      InfoId fresh = rebalance(*split);
      if (infos_[fresh].alive) created.push_back(fresh);
    }
  }
  return created;
}

std::vector<TaxonId> DisplayGraph::component_species(Vertex x) {
  std::vector<TaxonId> out;
  graph_.for_each_in_component(x, [&](Vertex y) {
    if (is_species(y)) out.push_back(species_of(y));
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TreeNode> DisplayGraph::component_marked(Vertex x) {
  std::vector<TreeNode> out;
  graph_.for_each_in_component(x, [&](Vertex y) {
    if (!is_species(y) && marked_[y]) out.push_back({tree_of_[y], node_of(y)});
  });
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Solver

namespace {

PhyloTree order_by_min_taxon(const PhyloTree& t) {
  const auto n = static_cast<NodeIndex>(t.size());
  std::vector<TaxonId> key(n, kNoTaxon);
  for (NodeIndex v = n; v-- > 0;) {
    if (t.is_leaf(v)) key[v] = t.taxon(v);
    if (v != 0) key[t.parent(v)] = std::min(key[t.parent(v)], key[v]);
  }
  TreeBuilder b;
  std::vector<std::pair<NodeIndex, NodeIndex>> stack{{0, kNoNode}};
  while (!stack.empty()) {
    auto [v, parent] = stack.back();
    stack.pop_back();
    if (t.is_leaf(v)) {
      b.add_leaf(parent, t.taxon(v));
      continue;
    }
    NodeIndex image = b.add_node(parent);
    std::vector<NodeIndex> ch(t.children(v).begin(), t.children(v).end());
    std::sort(ch.begin(), ch.end(), [&](NodeIndex a, NodeIndex c) { return key[a] < key[c]; });
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.emplace_back(*it, image);
  }
  return b.build();
}

}  // namespace

SupertreeResult buildg(const Profile& p, const BuildOptions& options) {
  if (p.k() == 0) throw std::invalid_argument("buildg: empty profile");
  SupertreeResult result;
  result.stats.m_p = p.m_p();

  DisplayGraph h(p);
  TreeBuilder out;
  const bool build = options.build_tree;

  struct Task {
    InfoId info;
    NodeIndex parent;
  };
  std::vector<Task> work;
  auto roots = h.live_components();
  if (roots.size() == 1) {
    work.push_back({roots[0], kNoNode});
  } else {
    NodeIndex top = build ? out.add_node(kNoNode) : kNoNode;
    for (InfoId id : roots) work.push_back({id, top});
  }

  while (!work.empty()) {
    const Task task = work.back();
    work.pop_back();
    const ComponentInfo& y = h.info(task.info);

    if (y.count <= 2) {
      if (build) {
        auto species = h.component_species(y.representative);
        if (species.size() == 1) {
          out.add_leaf(task.parent, species[0]);
        } else {
          NodeIndex r = out.add_node(task.parent);
          out.add_leaf(r, species[0]);
          out.add_leaf(r, species[1]);
        }
      }
      continue;
    }

    // J(U) and the vertex of each singleton U(i), fixed before expanding.
    std::vector<Vertex> semi_vertices;
    for (TreeIndex i : h.semi(task.info)) semi_vertices.push_back(h.list(task.info, i).front());

    RoundObservation obs;
    if (options.observer) obs.species = h.component_species(y.representative);

    ++result.stats.rounds;
    std::vector<InfoId> parts{task.info};
    for (Vertex v : semi_vertices) {
      if (p.tree(h.tree_of(v)).is_leaf(h.node_of(v))) continue;
      ++result.stats.expansions;
      auto created = h.expand(v);
      parts.insert(parts.end(), created.begin(), created.end());
    }
    result.stats.splits += parts.size() - 1;

    if (options.observer) {
      obs.split = parts.size() > 1;
      for (InfoId id : parts) {
        Vertex rep = h.info(id).representative;
        obs.parts.push_back(h.component_marked(rep));
        obs.part_species.push_back(h.component_species(rep));
      }
      options.observer(obs);
    }

    if (parts.size() == 1) {
      result.stats.scans = h.scans();
      return result;
    }
    NodeIndex r = build ? out.add_node(task.parent) : kNoNode;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) work.push_back({*it, r});
  }

  result.compatible = true;
  result.stats.scans = h.scans();
  if (build) result.tree = order_by_min_taxon(out.build());
  return result;
}

bool check_only(const Profile& p) {
  BuildOptions options;
  options.build_tree = false;
  return buildg(p, options).compatible;
}

bool is_valid_set(const Profile& p, std::span<const TreeNode> nodes) {
  const auto k = p.k();
  std::vector<std::vector<NodeIndex>> per_tree(k);
  for (const TreeNode& n : nodes) per_tree.at(n.tree).push_back(n.node);

  std::vector<TaxonId> all;
  for (const TreeNode& n : nodes) {
    auto c = cluster_of(p.tree(n.tree), n.node);
    all.insert(all.end(), c.begin(), c.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  for (std::size_t i = 0; i < k; ++i) {
    const PhyloTree& t = p.tree(i);
    const auto& ui = per_tree[i];
    if (ui.size() >= 2) {
      NodeIndex parent = t.parent(ui.front());
      if (parent == kNoNode) return false;
      for (NodeIndex v : ui) {
        if (t.parent(v) != parent) return false;
      }
    }
    std::vector<TaxonId> covered;
    for (NodeIndex v : ui) {
      auto c = cluster_of(t, v);
      covered.insert(covered.end(), c.begin(), c.end());
    }
    std::sort(covered.begin(), covered.end());
    std::vector<TaxonId> expected;
    auto leaves = t.taxa();
    std::set_intersection(leaves.begin(), leaves.end(), all.begin(), all.end(),
                          std::back_inserter(expected));
    if (covered != expected) return false;
  }
  return true;
}

}  // namespace phylocompat
