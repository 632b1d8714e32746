#pragma once

// Test-only oracles that work on the recursive form directly, with no use
// of region sequences.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "recouple/trees.hpp"

namespace oracle {

using recouple::Level;
using recouple::RecursiveTree;

inline void collect_levels(const RecursiveTree& r, std::vector<Level>& out) {
  if (r.is_leaf()) return;
  out.push_back(r.level());
  collect_levels(r.left(), out);
  collect_levels(r.right(), out);
}

inline RecursiveTree relabel(const RecursiveTree& r, const std::map<Level, Level>& m) {
  if (r.is_leaf()) return r;
  return RecursiveTree::node(m.at(r.level()), relabel(r.left(), m), relabel(r.right(), m));
}

inline RecursiveTree rerank(const RecursiveTree& r) {
  std::vector<Level> ls;
  collect_levels(r, ls);
  std::sort(ls.begin(), ls.end());
  std::map<Level, Level> m;
  for (std::size_t k = 0; k < ls.size(); ++k) m[ls[k]] = static_cast<Level>(k + 1);
  return relabel(r, m);
}

// Every leveled tree on the given level set with `leaves` leaves.
inline std::vector<RecursiveTree> generate(std::vector<Level> levels, std::size_t leaves) {
  if (leaves == 1) return {RecursiveTree::leaf()};
  std::sort(levels.begin(), levels.end());
  const Level root = levels.front();
  std::vector<Level> rest(levels.begin() + 1, levels.end());
  std::vector<RecursiveTree> out;
  for (std::size_t left_leaves = 1; left_leaves < leaves; ++left_leaves) {
    const std::size_t k = left_leaves - 1;
    std::vector<bool> pick(rest.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
    do {
      std::vector<Level> l, r;
      for (std::size_t i = 0; i < rest.size(); ++i) (pick[i] ? l : r).push_back(rest[i]);
      for (const auto& lt : generate(l, left_leaves)) {
        for (const auto& rt : generate(r, leaves - left_leaves)) {
          out.push_back(RecursiveTree::node(root, lt, rt));
        }
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

inline std::vector<RecursiveTree> all_trees(std::size_t n) {
  std::vector<Level> levels;
  for (Level l = 1; static_cast<std::size_t>(l) < n; ++l) levels.push_back(l);
  return generate(levels, n);
}

inline const RecursiveTree* find(const RecursiveTree& r, Level level) {
  if (r.is_leaf()) return nullptr;
  if (r.level() == level) return &r;
  if (auto* f = find(r.left(), level)) return f;
  return find(r.right(), level);
}

inline std::optional<RecursiveTree> above(const RecursiveTree& r, Level i) {
  const RecursiveTree* f = find(r, i);
  if (!f) return std::nullopt;
  return rerank(*f);
}

inline RecursiveTree collapse(const RecursiveTree& r, Level i) {
  if (r.is_leaf()) return r;
  if (r.level() == i) return RecursiveTree::leaf();
  return RecursiveTree::node(r.level(), collapse(r.left(), i), collapse(r.right(), i));
}

inline RecursiveTree below(const RecursiveTree& r, Level i) { return rerank(collapse(r, i)); }

inline bool leq(const RecursiveTree& r, Level i, Level j) {
  const RecursiveTree* f = find(r, i);
  return f && find(*f, j);
}

inline std::optional<RecursiveTree> prune(const RecursiveTree& r, int& next, const recouple::PositionSet& drop) {
  if (r.is_leaf()) return drop.count(next++) ? std::nullopt : std::optional<RecursiveTree>(r);
  auto a = prune(r.left(), next, drop);
  auto b = prune(r.right(), next, drop);
  if (a && b) return RecursiveTree::node(r.level(), *a, *b);
  return a ? a : b;
}

inline RecursiveTree contract(const RecursiveTree& r, const recouple::PositionSet& drop) {
  int next = 1;
  return rerank(*prune(r, next, drop));
}

}  // namespace oracle
