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

#ifndef PHYLOCOMPAT_ORACLE_H_
#define PHYLOCOMPAT_ORACLE_H_

// Slow, independent baselines used to cross-check the fast path. Nothing in
// here shares code with buildg or dynconn beyond the tree model.

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "phylocompat/phylo.h"

namespace phylocompat {

// Classic BUILD over the triplet graph. Returns a supertree, or nullopt when
// the profile is incompatible.
std::optional<PhyloTree> build_classic(const Profile& p);

// Every rooted phylogenetic tree on `leaves` (at most 6), up to isomorphism.
std::vector<PhyloTree> enumerate_trees(std::span<const TaxonId> leaves);

// True iff some tree on L(P) displays every input tree. |L(P)| <= 6, else
// std::invalid_argument.
bool brute_force_compatible(const Profile& p);

// Edge-set graph answering connectivity by breadth-first search.
class NaiveGraph {
 public:
  explicit NaiveGraph(std::size_t n) : n_(n) {}

  void insert(std::size_t u, std::size_t v);
  void erase(std::size_t u, std::size_t v);
  bool has_edge(std::size_t u, std::size_t v) const;
  std::size_t edge_count() const { return edges_.size(); }

  bool connected(std::size_t u, std::size_t v) const;
  std::size_t component_size(std::size_t u) const;
  std::vector<std::size_t> component(std::size_t u) const;  // sorted

 private:
  std::size_t n_;
  std::set<std::pair<std::size_t, std::size_t>> edges_;
};

// One-shot query against an explicit edge list.
bool naive_connectivity(std::size_t n,
                        std::span<const std::pair<std::size_t, std::size_t>> edges,
                        std::size_t u, std::size_t v);

}  // namespace phylocompat

#endif  // PHYLOCOMPAT_ORACLE_H_
