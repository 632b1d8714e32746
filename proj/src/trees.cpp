#include "recouple/trees.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "recouple/error.hpp"

namespace recouple {

namespace {

RecursiveTree build_recursive(std::span<const Level> levels) {
  if (levels.empty()) return RecursiveTree::leaf();
  const auto root = std::min_element(levels.begin(), levels.end());
  const auto pos = static_cast<std::size_t>(root - levels.begin());
  return RecursiveTree::node(*root, build_recursive(levels.first(pos)),
                             build_recursive(levels.subspan(pos + 1)));
}

void inorder_levels(const RecursiveTree& r, std::vector<Level>& out) {
  if (r.is_leaf()) return;
  inorder_levels(r.left(), out);
  out.push_back(r.level());
  inorder_levels(r.right(), out);
}

Bracketing shape_of(std::span<const Level> levels) {
  if (levels.empty()) return Bracketing::leaf();
  const auto pos = static_cast<std::size_t>(
      std::min_element(levels.begin(), levels.end()) - levels.begin());
  return Bracketing::join(shape_of(levels.first(pos)), shape_of(levels.subspan(pos + 1)));
}

void require_tree(const CouplingTree& t, const char* op) {
  if (t.is_null()) throw Error(ErrorCode::NullOperand, std::string(op) + " on the null tree");
}

// Nodes of a shape in in-order numbering: parent index (or -1) per node.
struct ShapeNodes {
  std::vector<int> parent;
  std::vector<std::vector<int>> children;
};

int number_nodes(const Bracketing& b, int parent, ShapeNodes& out) {
  if (b.is_leaf()) return -1;
  const int left = number_nodes(b.left(), -2, out);
  const int self = static_cast<int>(out.parent.size());
  out.parent.push_back(parent);
  out.children.emplace_back();
  const int right = number_nodes(b.right(), self, out);
  if (left >= 0) {
    out.parent[static_cast<std::size_t>(left)] = self;
    out.children[static_cast<std::size_t>(self)].push_back(left);
  }
  if (right >= 0) out.children[static_cast<std::size_t>(self)].push_back(right);
  return self;
}

ShapeNodes shape_nodes(const Bracketing& b) {
  ShapeNodes nodes;
  number_nodes(b, -1, nodes);
  return nodes;
}

// Whether a partial labelling (0 = free) of the shape's nodes extends to a
// bijection onto 1..N increasing away from the root. Unit-time scheduling
// with release times and deadlines: earliest-deadline-first is exact.
bool extendable(const ShapeNodes& nodes, const std::vector<Level>& fixed) {
  const int n = static_cast<int>(nodes.parent.size());
  std::vector<int> deadline(static_cast<std::size_t>(n), n);
  std::vector<int> release(static_cast<std::size_t>(n), 1);
  std::vector<int> order;  // pre-order
  for (int root = 0; root < n; ++root) {
    if (nodes.parent[static_cast<std::size_t>(root)] != -1) continue;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      order.push_back(x);
      for (int c : nodes.children[static_cast<std::size_t>(x)]) stack.push_back(c);
    }
  }
  for (int x : order) {
    const auto ux = static_cast<std::size_t>(x);
    const int p = nodes.parent[ux];
    const int lower = p < 0 ? 1 : release[static_cast<std::size_t>(p)] + 1;
    if (fixed[ux] != 0) {
      if (fixed[ux] < lower) return false;
      release[ux] = fixed[ux];
    } else {
      release[ux] = lower;
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto ux = static_cast<std::size_t>(*it);
    int upper = n;
    for (int c : nodes.children[ux]) upper = std::min(upper, deadline[static_cast<std::size_t>(c)] - 1);
    if (fixed[ux] != 0) {
      if (fixed[ux] > upper) return false;
      deadline[ux] = fixed[ux];
    } else {
      deadline[ux] = upper;
    }
    if (release[ux] > deadline[ux]) return false;
  }
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (int time = 1; time <= n; ++time) {
    int pick = -1;
    for (int x = 0; x < n; ++x) {
      const auto ux = static_cast<std::size_t>(x);
      if (done[ux] || release[ux] > time) continue;
      const int p = nodes.parent[ux];
      if (p >= 0 && !done[static_cast<std::size_t>(p)]) continue;
      if (pick < 0) {
        pick = x;
        continue;
      }
      const auto up = static_cast<std::size_t>(pick);
      if (deadline[ux] < deadline[up] ||
          (deadline[ux] == deadline[up] && fixed[ux] != 0 && fixed[up] == 0)) {
        pick = x;
      }
    }
    if (pick < 0) return false;
    const auto up = static_cast<std::size_t>(pick);
    if (deadline[up] < time) return false;
    if (fixed[up] != 0 && fixed[up] != time) return false;
    done[up] = true;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------

RecursiveTree RecursiveTree::node(Level level, RecursiveTree left, RecursiveTree right) {
  RecursiveTree t;
  const std::size_t leaves = left.leaf_count() + right.leaf_count();
  t.node_ = std::make_shared<const Node>(Node{level, std::move(left), std::move(right), leaves});
  return t;
}

Level RecursiveTree::level() const {
  if (!node_) throw Error(ErrorCode::TooShort, "leaf has no level");
  return node_->level;
}

const RecursiveTree& RecursiveTree::left() const {
  if (!node_) throw Error(ErrorCode::TooShort, "leaf has no children");
  return node_->left;
}

const RecursiveTree& RecursiveTree::right() const {
  if (!node_) throw Error(ErrorCode::TooShort, "leaf has no children");
  return node_->right;
}

std::size_t RecursiveTree::leaf_count() const noexcept { return node_ ? node_->leaves : 1; }

bool operator==(const RecursiveTree& a, const RecursiveTree& b) {
  if (a.is_leaf() || b.is_leaf()) return a.is_leaf() == b.is_leaf();
  return a.level() == b.level() && a.left() == b.left() && a.right() == b.right();
}

Bracketing Bracketing::join(Bracketing left, Bracketing right) {
  Bracketing b;
  const std::size_t leaves = left.leaf_count() + right.leaf_count();
  b.node_ = std::make_shared<const Node>(Node{std::move(left), std::move(right), leaves});
  return b;
}

const Bracketing& Bracketing::left() const {
  if (!node_) throw Error(ErrorCode::TooShort, "leaf bracketing has no children");
  return node_->left;
}

const Bracketing& Bracketing::right() const {
  if (!node_) throw Error(ErrorCode::TooShort, "leaf bracketing has no children");
  return node_->right;
}

std::size_t Bracketing::leaf_count() const noexcept { return node_ ? node_->leaves : 1; }

bool operator==(const Bracketing& a, const Bracketing& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_leaf() || b.is_leaf()) return false;
  return a.leaf_count() == b.leaf_count() && a.left() == b.left() && a.right() == b.right();
}

// ---------------------------------------------------------------------------

CouplingTree CouplingTree::null() {
  CouplingTree t;
  t.null_ = true;
  return t;
}

CouplingTree CouplingTree::leaf() { return CouplingTree(); }

CouplingTree CouplingTree::make(std::vector<Level> levels) {
  const std::size_t n = levels.size();
  std::vector<std::size_t> where(n + 1, n);
  for (std::size_t k = 0; k < n; ++k) {
    const Level l = levels[k];
    if (l < 1 || static_cast<std::size_t>(l) > n) {
      throw Error(ErrorCode::NotAPermutation,
                  "level " + std::to_string(l) + " out of range 1.." + std::to_string(n));
    }
    if (where[static_cast<std::size_t>(l)] != n) {
      throw Error(ErrorCode::NotAPermutation, "duplicate level " + std::to_string(l));
    }
    where[static_cast<std::size_t>(l)] = k;
  }
  CouplingTree t;
  t.levels_ = std::move(levels);
  t.region_of_.assign(where.begin() + 1, where.end());
  return t;
}

CouplingTree CouplingTree::reranked(const std::vector<Level>& levels) {
  std::vector<std::size_t> idx(levels.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return levels[a] < levels[b]; });
  std::vector<Level> ranks(levels.size());
  for (std::size_t r = 0; r < idx.size(); ++r) ranks[idx[r]] = static_cast<Level>(r + 1);
  return make(std::move(ranks));
}

std::size_t CouplingTree::region_of(Level level) const {
  if (!has_level(level)) {
    throw Error(ErrorCode::LevelAbsent, "level " + std::to_string(level) + " not in " + to_string(*this));
  }
  return region_of_[static_cast<std::size_t>(level - 1)];
}

CouplingTree make_tree(std::vector<Level> levels) { return CouplingTree::make(std::move(levels)); }

RecursiveTree to_recursive(const CouplingTree& t) {
  require_tree(t, "to_recursive");
  return build_recursive(t.levels());
}

CouplingTree from_recursive(const RecursiveTree& r) {
  std::vector<Level> levels;
  inorder_levels(r, levels);
  CouplingTree t = CouplingTree::make(levels);
  if (!(to_recursive(t) == r)) {
    throw Error(ErrorCode::NotAPermutation, "levels do not increase away from the root");
  }
  return t;
}

CouplingTree left(const CouplingTree& t) {
  if (t.length() < 2) throw Error(ErrorCode::TooShort, "left() needs length >= 2");
  const std::size_t root = t.region_of(1);
  return CouplingTree::reranked({t.levels().begin(), t.levels().begin() + static_cast<long>(root)});
}

CouplingTree right(const CouplingTree& t) {
  if (t.length() < 2) throw Error(ErrorCode::TooShort, "right() needs length >= 2");
  const std::size_t root = t.region_of(1);
  return CouplingTree::reranked({t.levels().begin() + static_cast<long>(root) + 1, t.levels().end()});
}

RegionSpan subtree_regions(const CouplingTree& t, Level level) {
  const std::size_t p = t.region_of(level);
  std::size_t first = p;
  std::size_t last = p;
  const auto lv = t.levels();
  while (first > 0 && lv[first - 1] > level) --first;
  while (last + 1 < lv.size() && lv[last + 1] > level) ++last;
  return {first, last};
}

TrackedTree cut_above_tracked(const CouplingTree& t, Level i) {
  require_tree(t, "cut_above");
  std::vector<Level> relabel(t.length(), 0);
  if (!t.has_level(i)) return {CouplingTree::null(), relabel};
  const RegionSpan span = subtree_regions(t, i);
  std::vector<Level> kept(t.levels().begin() + static_cast<long>(span.first),
                          t.levels().begin() + static_cast<long>(span.last) + 1);
  CouplingTree out = CouplingTree::reranked(kept);
  for (std::size_t k = 0; k < kept.size(); ++k) {
    relabel[static_cast<std::size_t>(kept[k])] = out.level_at(k);
  }
  return {out, relabel};
}

TrackedTree cut_below_tracked(const CouplingTree& t, Level i) {
  require_tree(t, "cut_below");
  std::vector<Level> relabel(t.length(), 0);
  if (!t.has_level(i)) {
    for (Level l = 1; static_cast<std::size_t>(l) < t.length(); ++l) relabel[static_cast<std::size_t>(l)] = l;
    return {t, relabel};
  }
  const RegionSpan span = subtree_regions(t, i);
  std::vector<Level> kept;
  for (std::size_t k = 0; k < t.levels().size(); ++k) {
    if (k < span.first || k > span.last) kept.push_back(t.level_at(k));
  }
  CouplingTree out = CouplingTree::reranked(kept);
  for (std::size_t k = 0; k < kept.size(); ++k) {
    relabel[static_cast<std::size_t>(kept[k])] = out.level_at(k);
  }
  return {out, relabel};
}

CouplingTree cut_above(const CouplingTree& t, Level i) { return cut_above_tracked(t, i).tree; }
CouplingTree cut_below(const CouplingTree& t, Level i) { return cut_below_tracked(t, i).tree; }

bool level_leq(const CouplingTree& t, Level i, Level j) {
  const RegionSpan span = subtree_regions(t, i);
  const std::size_t pj = t.region_of(j);
  return span.first <= pj && pj <= span.last;
}

CouplingTree contract(const CouplingTree& t, const PositionSet& positions) {
  require_tree(t, "contract");
  const auto n = static_cast<int>(t.length());
  for (int p : positions) {
    if (p < 1 || p > n) {
      throw Error(ErrorCode::PositionOutOfRange, "leaf position " + std::to_string(p));
    }
  }
  if (static_cast<int>(positions.size()) == n) {
    throw Error(ErrorCode::AllLeavesContracted, "cannot contract every leaf of " + to_string(t));
  }
  int next_leaf = 1;
  std::function<std::optional<RecursiveTree>(const RecursiveTree&)> prune =
      [&](const RecursiveTree& r) -> std::optional<RecursiveTree> {
    if (r.is_leaf()) {
      if (positions.count(next_leaf++)) return std::nullopt;
      return r;
    }
    auto l = prune(r.left());
    auto rr = prune(r.right());
    if (l && rr) return RecursiveTree::node(r.level(), *l, *rr);
    return l ? l : rr;
  };
  std::vector<Level> levels;
  inorder_levels(*prune(to_recursive(t)), levels);
  return CouplingTree::reranked(levels);
}

Bracketing forget_levels(const CouplingTree& t) {
  require_tree(t, "forget_levels");
  return shape_of(t.levels());
}

bool tree_equiv(const CouplingTree& s, const CouplingTree& t) {
  if (s.is_null() || t.is_null()) return s.is_null() && t.is_null();
  return s.length() == t.length() && forget_levels(s) == forget_levels(t);
}

bool tree_less(const CouplingTree& s, const CouplingTree& t) {
  if (s.length() != t.length()) return s.length() < t.length();
  return std::lexicographical_compare(s.levels().begin(), s.levels().end(), t.levels().begin(),
                                      t.levels().end());
}

CouplingTree representative(const Bracketing& b) {
  const ShapeNodes nodes = shape_nodes(b);
  const auto n = static_cast<Level>(nodes.parent.size());
  std::vector<Level> fixed(nodes.parent.size(), 0);
  std::vector<bool> used(nodes.parent.size() + 1, false);
  for (std::size_t pos = 0; pos < fixed.size(); ++pos) {
    for (Level v = n; v >= 1; --v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      fixed[pos] = v;
      if (extendable(nodes, fixed)) {
        used[static_cast<std::size_t>(v)] = true;
        break;
      }
      fixed[pos] = 0;
    }
  }
  return CouplingTree::make(fixed);
}

std::vector<CouplingTree> trees_with_shape(const Bracketing& b) {
  const ShapeNodes nodes = shape_nodes(b);
  const std::size_t n = nodes.parent.size();
  std::vector<CouplingTree> out;
  std::vector<Level> fixed(n, 0);
  std::vector<bool> used(n + 1, false);
  std::function<void(std::size_t)> fill = [&](std::size_t pos) {
    if (pos == n) {
      out.push_back(CouplingTree::make(fixed));
      return;
    }
    for (Level v = 1; static_cast<std::size_t>(v) <= n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      fixed[pos] = v;
      if (extendable(nodes, fixed)) {
        used[static_cast<std::size_t>(v)] = true;
        fill(pos + 1);
        used[static_cast<std::size_t>(v)] = false;
      }
      fixed[pos] = 0;
    }
  };
  fill(0);
  return out;
}

CouplingTree tensor_M(const CouplingTree& s, const CouplingTree& t) {
  if (s.is_null() || t.is_null()) throw Error(ErrorCode::NullOperand, "tensor_M with the null tree");
  return representative(Bracketing::join(forget_levels(s), forget_levels(t)));
}

std::vector<CouplingTree> enumerate_trees(std::size_t n) {
  std::vector<CouplingTree> out;
  if (n == 0) return out;
  std::vector<Level> levels(n - 1);
  std::iota(levels.begin(), levels.end(), 1);
  do {
    out.push_back(CouplingTree::make(levels));
  } while (std::next_permutation(levels.begin(), levels.end()));
  return out;
}

std::string to_string(const CouplingTree& t) {
  if (t.is_null()) return "0";
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < t.levels().size(); ++k) {
    if (k) os << ',';
    os << t.level_at(k);
  }
  os << ']';
  return os.str();
}

std::string to_string(const Bracketing& b) {
  if (b.is_leaf()) return "*";
  return "(" + to_string(b.left()) + "." + to_string(b.right()) + ")";
}

std::string to_string(const RecursiveTree& r) {
  if (r.is_leaf()) return "Leaf";
  return "Node(" + std::to_string(r.level()) + "," + to_string(r.left()) + "," + to_string(r.right()) + ")";
}

}  // namespace recouple
