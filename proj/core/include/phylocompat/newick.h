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

#ifndef PHYLOCOMPAT_NEWICK_H_
#define PHYLOCOMPAT_NEWICK_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "phylocompat/phylo.h"
#include "phylocompat/taxa.h"

namespace phylocompat {

// Parse failure. `offset` is the byte position in the parsed text; `tree` is
// the zero-based index of the offending tree within a profile, or -1 when
// parsing a single tree.
class NewickError : public std::runtime_error {
 public:
  NewickError(const std::string& what, std::size_t offset, long tree = -1);

  std::size_t offset() const { return offset_; }
  long tree() const { return tree_; }

 private:
  std::size_t offset_;
  long tree_;
};

// Raw split of a document into its ';'-terminated tree descriptions. Quoted
// labels and bracket comments are honored when looking for terminators.
struct NewickDocument {
  std::vector<std::string> trees;
  std::string source_name;

  static NewickDocument split(std::string_view text, std::string source_name = {});
};

// Parses one ';'-terminated tree. Leaf labels are interned into `taxa`;
// internal labels, branch lengths and [comments] are dropped and unary
// nodes are contracted.
PhyloTree parse_tree(std::string_view text, TaxonTable& taxa);

// Parses every tree in `text` into one profile sharing a taxon table.
Profile parse_profile(std::string_view text);
Profile parse_profile(std::string_view text, TaxonTable taxa);

// Canonical Newick: children ordered by the smallest leaf label (byte order)
// in their cluster; labels quoted only when necessary.
std::string write_tree(const PhyloTree& t, const TaxonTable& taxa);

// One tree per line.
std::string write_profile(const Profile& p);

}  // namespace phylocompat

#endif  // PHYLOCOMPAT_NEWICK_H_
