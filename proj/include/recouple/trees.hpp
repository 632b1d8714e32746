#pragma once

// Coupling trees: planar binary trees whose branch points carry distinct
// levels increasing away from the root. A tree of length n is stored as its
// region sequence: entry k is the level of the branch point separating
// leaves k and k+1 (regions and leaves are 0-based internally, levels are
// 1-based).

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace recouple {

using Level = int;
/// 1-based leaf positions, as used by nodule sets and contractions.
using PositionSet = std::set<int>;

class RecursiveTree {
 public:
  static RecursiveTree leaf() { return RecursiveTree(); }
  static RecursiveTree node(Level level, RecursiveTree left, RecursiveTree right);

  bool is_leaf() const noexcept { return node_ == nullptr; }
  Level level() const;
  const RecursiveTree& left() const;
  const RecursiveTree& right() const;
  std::size_t leaf_count() const noexcept;

  friend bool operator==(const RecursiveTree& a, const RecursiveTree& b);

 private:
  struct Node;
  RecursiveTree() = default;
  std::shared_ptr<const Node> node_;
};

struct RecursiveTree::Node {
  Level level;
  RecursiveTree left;
  RecursiveTree right;
  std::size_t leaves;
};

/// Unleveled planar binary tree.
class Bracketing {
 public:
  static Bracketing leaf() { return Bracketing(); }
  static Bracketing join(Bracketing left, Bracketing right);

  bool is_leaf() const noexcept { return node_ == nullptr; }
  const Bracketing& left() const;
  const Bracketing& right() const;
  std::size_t leaf_count() const noexcept;

  friend bool operator==(const Bracketing& a, const Bracketing& b);

 private:
  struct Node;
  Bracketing() = default;
  std::shared_ptr<const Node> node_;
};

struct Bracketing::Node {
  Bracketing left;
  Bracketing right;
  std::size_t leaves;
};

class CouplingTree {
 public:
  /// The null tree 0 (length 0).
  static CouplingTree null();
  /// The leaf tree 1 (length 1, empty region sequence).
  static CouplingTree leaf();
  /// Throws NotAPermutation unless `levels` is a permutation of 1..levels.size().
  static CouplingTree make(std::vector<Level> levels);
  /// Order-preserving re-ranking of distinct positive levels onto 1..k.
  static CouplingTree reranked(const std::vector<Level>& levels);

  bool is_null() const noexcept { return null_; }
  std::size_t length() const noexcept { return null_ ? 0 : levels_.size() + 1; }
  std::span<const Level> levels() const noexcept { return levels_; }
  Level level_at(std::size_t region) const { return levels_.at(region); }
  /// 0-based region holding `level`; throws LevelAbsent.
  std::size_t region_of(Level level) const;
  bool has_level(Level level) const noexcept {
    return !null_ && level >= 1 && static_cast<std::size_t>(level) <= levels_.size();
  }

  friend bool operator==(const CouplingTree& a, const CouplingTree& b) {
    return a.null_ == b.null_ && a.levels_ == b.levels_;
  }

 private:
  CouplingTree() = default;
  bool null_ = false;
  std::vector<Level> levels_;
  std::vector<std::size_t> region_of_;
};

CouplingTree make_tree(std::vector<Level> levels);

RecursiveTree to_recursive(const CouplingTree& t);
/// Throws NotAPermutation if the node levels are not 1..n-1 increasing
/// along every root path.
CouplingTree from_recursive(const RecursiveTree& r);

/// Subtrees either side of the root; throws TooShort below length 2.
CouplingTree left(const CouplingTree& t);
CouplingTree right(const CouplingTree& t);

/// Closed interval of regions spanned by the subtree rooted at `level`.
struct RegionSpan {
  std::size_t first;
  std::size_t last;
  std::size_t size() const noexcept { return last - first + 1; }
};
RegionSpan subtree_regions(const CouplingTree& t, Level level);

/// ∨_i: the subtree above the branch at level i, or the null tree.
CouplingTree cut_above(const CouplingTree& t, Level i);
/// ∧_i: t with the subtree at level i collapsed to one leaf.
CouplingTree cut_below(const CouplingTree& t, Level i);

/// Result of a cut together with where each original level ended up:
/// relabel[old] is the new level, or 0 when the level was removed.
struct TrackedTree {
  CouplingTree tree;
  std::vector<Level> relabel;
};
TrackedTree cut_above_tracked(const CouplingTree& t, Level i);
TrackedTree cut_below_tracked(const CouplingTree& t, Level i);

/// i ≤_t j: level j lies in the subtree rooted at level i.
bool level_leq(const CouplingTree& t, Level i, Level j);

/// C_U: contract out the leaves at the given 1-based positions.
CouplingTree contract(const CouplingTree& t, const PositionSet& positions);

Bracketing forget_levels(const CouplingTree& t);
bool tree_equiv(const CouplingTree& s, const CouplingTree& t);

/// Strict total order: by length, then lexicographic on region sequences.
bool tree_less(const CouplingTree& s, const CouplingTree& t);

/// The maximal member (under tree_less) of the class of trees with shape b.
CouplingTree representative(const Bracketing& b);
/// All trees with shape b, in increasing tree_less order.
std::vector<CouplingTree> trees_with_shape(const Bracketing& b);

/// s ⊗_M t: the representative of the grafted bracketing.
CouplingTree tensor_M(const CouplingTree& s, const CouplingTree& t);

/// All (n-1)! trees of length n in increasing tree_less order.
std::vector<CouplingTree> enumerate_trees(std::size_t n);

std::string to_string(const CouplingTree& t);
std::string to_string(const Bracketing& b);
std::string to_string(const RecursiveTree& r);

}  // namespace recouple
