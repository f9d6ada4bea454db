#pragma once

#include "sbseries/half_int.hpp"
#include "sbseries/rational.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sbs {

// Node color: 0 is the drift/time channel, l >= 1 the l-th Wiener channel.
using Color = int;

/// Colored rooted tree, or the empty tree.
///
/// A Tree keeps its children in the order it was built with, so it can also
/// stand for an ordered representative. `canonical()` sorts children
/// recursively; two trees are isomorphic iff their canonical forms compare
/// equal. Trees produced by the parser and the enumerators are canonical.
///
/// The encoding is the printed form `color` or `color[child,child,...]`.
/// Children are ordered length-lexicographically on their encodings.
class Tree {
 public:
  Tree() = default;  // empty tree

  static Tree leaf(Color color);
  /// Empty children are dropped: [∅]_l is the single node of color l.
  static Tree node(Color color, std::vector<Tree> children);

  bool empty() const noexcept { return !root_; }
  Color color() const;
  const std::vector<Tree>& children() const noexcept { return children_; }
  const std::string& encoding() const noexcept { return encoding_; }
  std::size_t node_count() const noexcept { return nodes_; }
  /// Largest color in the tree, -1 for the empty tree.
  Color max_color() const noexcept { return max_color_; }

  friend bool operator==(const Tree& a, const Tree& b) noexcept { return a.encoding_ == b.encoding_; }
  friend std::strong_ordering operator<=>(const Tree& a, const Tree& b) noexcept;

 private:
  std::optional<Color> root_;
  std::vector<Tree> children_;
  std::string encoding_ = "()";
  std::size_t nodes_ = 0;
  Color max_color_ = -1;
};

/// Length-lexicographic comparison of encodings.
std::strong_ordering compare_encodings(std::string_view a, std::string_view b) noexcept;

Tree canonical(const Tree& t);
bool is_canonical(const Tree& t);

/// Order: 1 per drift node, 1/2 per diffusion node.
HalfInt rho(const Tree& t);

/// Symmetry coefficient, the inverse of the automorphism group order.
Rational alpha(const Tree& t);

/// Colors of all nodes, sorted.
std::vector<Color> color_multiset(const Tree& t);

/// All canonical non-empty trees with colors <= m and rho <= max_rho,
/// sorted by (rho, encoding).
std::vector<Tree> enumerate_trees(int m, HalfInt max_rho);

/// All canonical non-empty trees with colors <= m and at most max_nodes
/// nodes, sorted by (node count, encoding).
std::vector<Tree> enumerate_trees_by_nodes(int m, std::size_t max_nodes);

class TreeParseError : public std::runtime_error {
 public:
  TreeParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Grammar: tree := color | color '[' tree (',' tree)* ']', color := digits.
/// Whitespace is ignored; "()" denotes the empty tree. Result is canonical.
Tree parse_tree(std::string_view text);

inline std::string to_string(const Tree& t) { return t.encoding(); }

}  // namespace sbs
