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

#ifndef PHYLOCOMPAT_GEN_H_
#define PHYLOCOMPAT_GEN_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "phylocompat/phylo.h"

namespace phylocompat {

enum class Shape { kBinary, kStarHeavy, kMixed };

std::string_view to_string(Shape s);
// Accepts "binary", "star" / "star-heavy" and "mixed".
std::optional<Shape> parse_shape(std::string_view s);

struct GenConfig {
  std::uint64_t seed = 1;
  std::size_t n_species = 8;
  std::size_t k_trees = 3;
  double coverage = 0.5;  // fraction of species per input tree, (0, 1]
  Shape shape = Shape::kBinary;
  std::size_t perturb = 0;  // leaf-label swaps in one tree (gen_perturbed)
  // Probability of contracting each internal edge of an input tree. Defaults
  // to 0.2 for kMixed and 0 otherwise.
  std::optional<double> contract_probability;
};

// Random tree on taxa 0..n-1 with the configured shape. Binary trees grow by
// attaching each new leaf to a uniformly chosen edge; star-heavy nodes give
// almost every leaf its own child slot.
PhyloTree random_tree(std::size_t n, Shape shape, std::mt19937_64& rng);

// Compatible by construction: every tree is a restriction of one random
// supertree, optionally with contracted edges. Species are named t0, t1, ...
Profile gen_compatible(const GenConfig& cfg);

// gen_compatible followed by `perturb` random leaf-label swaps in one tree.
Profile gen_perturbed(const GenConfig& cfg);

// Contracts each internal non-root edge independently with probability q.
PhyloTree contract_random_edges(const PhyloTree& t, double q, std::mt19937_64& rng);

}  // namespace phylocompat

#endif  // PHYLOCOMPAT_GEN_H_
