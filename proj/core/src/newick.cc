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

#include "phylocompat/newick.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <utility>

namespace phylocompat {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_label_char(char c) {
  switch (c) {
    case '(': case ')': case '[': case ']': case '\'':
    case ':': case ';': case ',':
      return false;
    default:
      return !is_space(c);
  }
}

class Parser {
 public:
  Parser(std::string_view text, TaxonTable& taxa) : s_(text), taxa_(taxa) {}

  std::size_t pos() const { return pos_; }
  bool at_end() {
    skip();
    return pos_ >= s_.size();
  }

  PhyloTree parse_one() {
    TreeBuilder b;
    std::vector<NodeIndex> open;
    std::vector<char> seen;
    for (;;) {
      // An element: either an opening parenthesis or a leaf.
      skip();
      NodeIndex parent = open.empty() ? kNoNode : open.back();
      if (peek() == '(') {
        ++pos_;
        open.push_back(b.add_node(parent));
        continue;
      }
      std::size_t at = pos_;
      if (pos_ >= s_.size()) fail("unexpected end of input", at);
      std::string label = read_label();
      if (label.empty()) fail("empty leaf label", at);
      TaxonId id = taxa_.intern(label);
      if (id >= seen.size()) seen.resize(id + 1, 0);
      if (seen[id]) fail("duplicate leaf label '" + label + "'", at);
      seen[id] = 1;
      b.add_leaf(parent, id);
      read_length();

      // Close as many subtrees as the input closes here.
      for (;;) {
        skip();
        char c = peek();
        if (c == ',') {
          if (open.empty()) fail("',' outside parentheses", pos_);
          ++pos_;
          break;
        }
        if (c == ')') {
          if (open.empty()) fail("unbalanced ')'", pos_);
          ++pos_;
          open.pop_back();
          skip();
          if (peek() == '\'' || is_label_char(peek())) read_label();
          read_length();
          continue;
        }
        if (c == ';') {
          if (!open.empty()) fail("missing ')' before ';'", pos_);
          ++pos_;
          try {
            return b.build();
          } catch (const TreeError& e) {
            fail(e.what(), pos_ - 1);
          }
        }
        if (pos_ >= s_.size()) fail("unexpected end of input", pos_);
        fail(std::string("unexpected character '") + c + "'", pos_);
      }
    }
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    throw NewickError(what, at);
  }

  void skip() {
    while (pos_ < s_.size()) {
      if (is_space(s_[pos_])) {
        ++pos_;
      } else if (s_[pos_] == '[') {
        auto end = s_.find(']', pos_);
        if (end == std::string_view::npos) fail("unterminated comment", pos_);
        pos_ = end + 1;
      } else {
        break;
      }
    }
  }

  std::string read_label() {
    std::string out;
    if (peek() == '\'') {
      std::size_t at = pos_++;
      for (;;) {
        if (pos_ >= s_.size()) fail("unterminated quoted label", at);
        char c = s_[pos_++];
        if (c == '\'') {
          if (peek() != '\'') break;
          ++pos_;
        }
        out.push_back(c);
      }
      return out;
    }
    while (pos_ < s_.size() && is_label_char(s_[pos_])) out.push_back(s_[pos_++]);
    return out;
  }

  void read_length() {
    skip();
    if (peek() != ':') return;
    ++pos_;
    skip();
    std::size_t at = pos_;
    while (pos_ < s_.size() && is_label_char(s_[pos_])) ++pos_;
    double value = 0;
    auto token = s_.substr(at, pos_ - at);
    auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || end != token.data() + token.size()) {
      fail("malformed branch length", at);
    }
  }

  std::string_view s_;
  TaxonTable& taxa_;
  std::size_t pos_ = 0;
};

bool needs_quotes(const std::string& label) {
  return label.empty() ||
         !std::all_of(label.begin(), label.end(), is_label_char);
}

void append_label(std::string& out, const std::string& label) {
  if (!needs_quotes(label)) {
    out += label;
    return;
  }
  out.push_back('\'');
  for (char c : label) {
    if (c == '\'') out.push_back('\'');
    out.push_back(c);
  }
  out.push_back('\'');
}

}  // namespace

NewickError::NewickError(const std::string& what, std::size_t offset, long tree)
    : std::runtime_error(
          (tree >= 0 ? "tree " + std::to_string(tree) + ": " : std::string()) +
          what + " at offset " + std::to_string(offset)),
      offset_(offset),
      tree_(tree) {}

NewickDocument NewickDocument::split(std::string_view text, std::string source_name) {
  NewickDocument doc;
  doc.source_name = std::move(source_name);
  std::size_t start = 0;
  bool quoted = false, comment = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '\'') quoted = false;
    } else if (comment) {
      if (c == ']') comment = false;
    } else if (c == '\'') {
      quoted = true;
    } else if (c == '[') {
      comment = true;
    } else if (c == ';') {
      doc.trees.emplace_back(text.substr(start, i + 1 - start));
      start = i + 1;
    }
  }
  auto rest = text.substr(start);
  if (!std::all_of(rest.begin(), rest.end(), is_space)) {
    throw NewickError("tree description without terminating ';'", start,
                      static_cast<long>(doc.trees.size()));
  }
  return doc;
}

PhyloTree parse_tree(std::string_view text, TaxonTable& taxa) {
  Parser p(text, taxa);
  PhyloTree t = p.parse_one();
  if (!p.at_end()) throw NewickError("trailing characters after ';'", p.pos());
  return t;
}

Profile parse_profile(std::string_view text) { return parse_profile(text, TaxonTable{}); }

Profile parse_profile(std::string_view text, TaxonTable taxa) {
  Profile profile(std::move(taxa), {});
  Parser p(text, profile.taxa());
  long index = 0;
  while (!p.at_end()) {
    try {
      profile.add_tree(p.parse_one());
    } catch (const NewickError& e) {
      std::string what = e.what();
      what = what.substr(0, what.rfind(" at offset "));
      throw NewickError(what, e.offset(), index);
    }
    ++index;
  }
  if (profile.k() == 0) throw NewickError("no trees in input", 0);
  return profile;
}

std::string write_tree(const PhyloTree& t, const TaxonTable& taxa) {
  if (t.empty()) return ";";
  const auto n = static_cast<NodeIndex>(t.size());
  // Order taxa by label, then key each node by its smallest label rank.
  auto leaves = t.taxa();
  std::sort(leaves.begin(), leaves.end(), [&](TaxonId a, TaxonId b) {
    return taxa.name(a) < taxa.name(b);
  });
  std::vector<std::uint32_t> label_rank(t.taxon_bound(), 0);
  for (std::uint32_t r = 0; r < leaves.size(); ++r) label_rank[leaves[r]] = r;
  std::vector<std::uint32_t> key(n, UINT32_MAX);
  for (NodeIndex v = n; v-- > 0;) {
    if (t.is_leaf(v)) key[v] = label_rank[t.taxon(v)];
    if (v != 0) key[t.parent(v)] = std::min(key[t.parent(v)], key[v]);
  }

  std::string out;
  struct Frame {
    std::vector<NodeIndex> children;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  auto enter = [&](NodeIndex v) {
    if (t.is_leaf(v)) {
      append_label(out, taxa.name(t.taxon(v)));
      return;
    }
    out.push_back('(');
    auto ch = t.children(v);
    Frame f{{ch.begin(), ch.end()}};
    std::sort(f.children.begin(), f.children.end(),
              [&](NodeIndex a, NodeIndex b) { return key[a] < key[b]; });
    stack.push_back(std::move(f));
  };
  enter(0);
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == f.children.size()) {
      out.push_back(')');
      stack.pop_back();
      continue;
    }
    if (f.next > 0) out.push_back(',');
    enter(f.children[f.next++]);
  }
  out.push_back(';');
  return out;
}

std::string write_profile(const Profile& p) {
  std::string out;
  for (const auto& t : p.trees()) {
    out += write_tree(t, p.taxa());
    out.push_back('\n');
  }
  return out;
}

}  // namespace phylocompat
