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

#ifndef PHYLOCOMPAT_TAXA_H_
#define PHYLOCOMPAT_TAXA_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace phylocompat {

using TaxonId = std::uint32_t;
inline constexpr TaxonId kNoTaxon = std::numeric_limits<TaxonId>::max();

// Bijection between species names and dense ids. Ids are handed out in
// interning order starting at zero.
class TaxonTable {
 public:
  TaxonId intern(std::string_view name);
  std::optional<TaxonId> find(std::string_view name) const;
  const std::string& name(TaxonId id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, TaxonId> ids_;
};

}  // namespace phylocompat

#endif  // PHYLOCOMPAT_TAXA_H_
