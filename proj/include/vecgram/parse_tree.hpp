#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vecgram/sim_vector.hpp"
#include "vecgram/vocab.hpp"

namespace vecgram {

// Binary tree over a token span. Nodes carry their composed vector and score
// once evaluated; evaluation is purely a function of the children and the
// model, so nodes are shared freely between candidate parses.
struct ParseNode {
  int start = 0;
  int end = 0;                // exclusive
  EntryId entry = kNoEntry;   // leaves only
  std::shared_ptr<ParseNode> left;
  std::shared_ptr<ParseNode> right;
  SimVector vector;
  double score = 0.0;
  bool evaluated = false;

  bool is_leaf() const { return left == nullptr; }
  int split() const { return left ? left->end : end; }
};

using ParseNodePtr = std::shared_ptr<ParseNode>;

inline ParseNodePtr make_leaf(int pos, EntryId entry) {
  auto node = std::make_shared<ParseNode>();
  node->start = pos;
  node->end = pos + 1;
  node->entry = entry;
  return node;
}

inline ParseNodePtr make_node(ParseNodePtr left, ParseNodePtr right) {
  auto node = std::make_shared<ParseNode>();
  node->start = left->start;
  node->end = right->end;
  node->left = std::move(left);
  node->right = std::move(right);
  return node;
}

// Penn-style brackets: "((the cat) (sat .))".
inline std::string render_tree(const ParseNode& node, std::span<const std::string> words) {
  if (node.is_leaf()) return words[node.start];
  return "(" + render_tree(*node.left, words) + " " + render_tree(*node.right, words) + ")";
}

// Spans of every internal node, preorder.
inline void collect_spans(const ParseNode& node, std::vector<std::pair<int, int>>& out) {
  if (node.is_leaf()) return;
  out.emplace_back(node.start, node.end);
  collect_spans(*node.left, out);
  collect_spans(*node.right, out);
}

// Tie order between equal-scoring candidates over the same span: prefer the
// tree that associates the leftmost adjacent pair first, i.e. the larger
// root split, recursively. A degenerate all-zero model therefore yields the
// fully left-branching tree. Returns <0 when a is preferred, >0 when b is,
// 0 for identical shapes; linear in the tree size.
inline int shape_compare(const ParseNode& a, const ParseNode& b) {
  if (a.is_leaf() && b.is_leaf()) return 0;
  if (a.is_leaf() || b.is_leaf()) return a.is_leaf() ? 1 : -1;  // same span: unreachable
  if (a.split() != b.split()) return a.split() > b.split() ? -1 : 1;
  if (int c = shape_compare(*a.left, *b.left)) return c;
  return shape_compare(*a.right, *b.right);
}

inline bool shape_prefers(const ParseNode& a, const ParseNode& b) {
  return shape_compare(a, b) < 0;
}

}  // namespace vecgram
