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

#include "phylocompat/gen.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace phylocompat {
namespace {

// Distribution objects in <random> are implementation-defined; these keep
// generated profiles identical across standard libraries.
std::size_t uniform(std::mt19937_64& rng, std::size_t n) { return rng() % n; }

bool bernoulli(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

std::size_t geometric(std::mt19937_64& rng, double p) {
  std::size_t g = 0;
  while (!bernoulli(rng, p)) ++g;
  return g;
}

// Copies a child-list tree into a PhyloTree. Leaves carry taxon = their
// leaf index in `taxon`.
PhyloTree materialize(const std::vector<std::vector<std::uint32_t>>& children,
                      const std::vector<TaxonId>& taxon, std::uint32_t root) {
  TreeBuilder b;
  std::vector<std::pair<std::uint32_t, NodeIndex>> stack{{root, kNoNode}};
  while (!stack.empty()) {
    auto [v, parent] = stack.back();
    stack.pop_back();
    if (children[v].empty()) {
      b.add_leaf(parent, taxon[v]);
      continue;
    }
    NodeIndex image = b.add_node(parent);
    for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) {
      stack.emplace_back(*it, image);
    }
  }
  return b.build();
}

PhyloTree random_binary(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::vector<std::uint32_t>> children(1);
  std::vector<std::uint32_t> parent{UINT32_MAX};
  std::vector<TaxonId> taxon{0};
  std::uint32_t root = 0;
  for (TaxonId s = 1; s < n; ++s) {
    auto x = static_cast<std::uint32_t>(uniform(rng, children.size()));
    auto leaf = static_cast<std::uint32_t>(children.size());
    children.emplace_back();
    parent.push_back(UINT32_MAX);
    taxon.push_back(s);
    auto mid = static_cast<std::uint32_t>(children.size());
    children.emplace_back();
    parent.push_back(parent[x]);
    taxon.push_back(kNoTaxon);
    if (parent[x] == UINT32_MAX) {
      root = mid;
    } else {
      auto& siblings = children[parent[x]];
      *std::find(siblings.begin(), siblings.end(), x) = mid;
    }
    bool left = bernoulli(rng, 0.5);
    children[mid] = left ? std::vector<std::uint32_t>{leaf, x}
                         : std::vector<std::uint32_t>{x, leaf};
    parent[x] = parent[leaf] = mid;
  }
  return materialize(children, taxon, root);
}

PhyloTree random_star_heavy(std::size_t n, std::mt19937_64& rng) {
  std::vector<TaxonId> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t j = n; j > 1; --j) std::swap(order[j - 1], order[uniform(rng, j)]);

  std::vector<std::vector<std::uint32_t>> children;
  std::vector<TaxonId> taxon;
  auto add = [&](TaxonId t) {
    children.emplace_back();
    taxon.push_back(t);
    return static_cast<std::uint32_t>(children.size() - 1);
  };

  // (range of `order`, node) pending expansion
  struct Pending {
    std::size_t begin, end;
    std::uint32_t node;
  };
  std::vector<Pending> stack;
  std::uint32_t root = add(n == 1 ? order[0] : kNoTaxon);
  if (n > 1) stack.push_back({0, n, root});
  while (!stack.empty()) {
    Pending job = stack.back();
    stack.pop_back();
    const std::size_t m = job.end - job.begin;
    // Join a few adjacent gaps; everything else becomes its own child.
    std::size_t joins = std::min(geometric(rng, 0.35), m - 2);
    std::vector<char> joined(m - 1, 0);
    for (std::size_t j = 0; j < joins; ++j) joined[uniform(rng, m - 1)] = 1;
    std::size_t start = job.begin;
    for (std::size_t pos = job.begin; pos < job.end; ++pos) {
      bool last = pos + 1 == job.end || !joined[pos - job.begin];
      if (!last) continue;
      if (pos == start) {
        std::uint32_t leaf = add(order[pos]);
        children[job.node].push_back(leaf);
      } else {
        std::uint32_t inner = add(kNoTaxon);
        children[job.node].push_back(inner);
        stack.push_back({start, pos + 1, inner});
      }
      start = pos + 1;
    }
  }
  return materialize(children, taxon, root);
}

PhyloTree relabel_swapped(const PhyloTree& t, std::size_t swaps, std::mt19937_64& rng) {
  std::vector<NodeIndex> leaves;
  for (NodeIndex v = 0; v < t.size(); ++v) {
    if (t.is_leaf(v)) leaves.push_back(v);
  }
  std::vector<TaxonId> label(t.size(), kNoTaxon);
  for (NodeIndex v : leaves) label[v] = t.taxon(v);
  if (leaves.size() >= 2) {
    for (std::size_t s = 0; s < swaps; ++s) {
      std::size_t a = uniform(rng, leaves.size());
      std::size_t b = uniform(rng, leaves.size() - 1);
      if (b >= a) ++b;
      std::swap(label[leaves[a]], label[leaves[b]]);
    }
  }
  TreeBuilder out;
  for (NodeIndex v = 0; v < t.size(); ++v) {
    NodeIndex p = v == 0 ? kNoNode : t.parent(v);
    if (t.is_leaf(v)) {
      out.add_leaf(p, label[v]);
    } else {
      out.add_node(p);
    }
  }
  return out.build();
}

}  // namespace

std::string_view to_string(Shape s) {
  switch (s) {
    case Shape::kBinary: return "binary";
    case Shape::kStarHeavy: return "star";
    case Shape::kMixed: return "mixed";
  }
  return "?";
}

std::optional<Shape> parse_shape(std::string_view s) {
  if (s == "binary") return Shape::kBinary;
  if (s == "star" || s == "star-heavy") return Shape::kStarHeavy;
  if (s == "mixed") return Shape::kMixed;
  return std::nullopt;
}

PhyloTree random_tree(std::size_t n, Shape shape, std::mt19937_64& rng) {
  if (n == 0) throw std::invalid_argument("random_tree: no species");
  return shape == Shape::kStarHeavy ? random_star_heavy(n, rng) : random_binary(n, rng);
}

PhyloTree contract_random_edges(const PhyloTree& t, double q, std::mt19937_64& rng) {
  if (q <= 0) return t;
  TreeBuilder b;
  std::vector<NodeIndex> image(t.size(), kNoNode);
  for (NodeIndex v = 0; v < t.size(); ++v) {
    NodeIndex p = v == 0 ? kNoNode : image[t.parent(v)];
    if (t.is_leaf(v)) {
      image[v] = b.add_leaf(p, t.taxon(v));
    } else if (v != 0 && bernoulli(rng, q)) {
      image[v] = p;  // merged into the parent
    } else {
      image[v] = b.add_node(p);
    }
  }
  return b.build();
}

Profile gen_compatible(const GenConfig& cfg) {
  if (cfg.n_species == 0 || cfg.k_trees == 0) {
    throw std::invalid_argument("gen: species and tree counts must be positive");
  }
  if (!(cfg.coverage > 0 && cfg.coverage <= 1) ||
      cfg.coverage * static_cast<double>(cfg.n_species) < 1) {
    throw std::invalid_argument("gen: coverage must lie in (0, 1] and cover a species");
  }
  std::mt19937_64 rng(cfg.seed);
  const std::size_t n = cfg.n_species;
  const double q = cfg.contract_probability.value_or(cfg.shape == Shape::kMixed ? 0.2 : 0.0);

  TaxonTable taxa;
  for (std::size_t s = 0; s < n; ++s) taxa.intern("t" + std::to_string(s));
  PhyloTree base = random_tree(n, cfg.shape, rng);

  const auto per_tree = std::max<std::size_t>(
      1, static_cast<std::size_t>(cfg.coverage * static_cast<double>(n) + 0.5));
  std::vector<TaxonId> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  Profile p(std::move(taxa), {});
  for (std::size_t i = 0; i < cfg.k_trees; ++i) {
    PhyloTree t = base;
    if (per_tree < n) {
      for (std::size_t j = 0; j < per_tree; ++j) std::swap(pool[j], pool[j + uniform(rng, n - j)]);
      t = restrict_to(base, std::span<const TaxonId>(pool.data(), per_tree));
    }
    p.add_tree(contract_random_edges(t, q, rng));
  }
  return p;
}

Profile gen_perturbed(const GenConfig& cfg) {
  Profile p = gen_compatible(cfg);
  if (cfg.perturb == 0) return p;
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::size_t victim = uniform(rng, p.k());
  std::vector<PhyloTree> trees = p.trees();
  trees[victim] = relabel_swapped(trees[victim], cfg.perturb, rng);
  return Profile(p.taxa(), std::move(trees));
}

}  // namespace phylocompat
