#include "recouple/recouplings.hpp"

#include <deque>
#include <map>

#include "recouple/error.hpp"

namespace recouple {

Recoupling::Recoupling(CouplingTree source, CouplingTree target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (source_.length() != target_.length() || source_.is_null() != target_.is_null()) {
    throw Error(ErrorCode::LengthMismatch,
                "recoupling between " + to_string(source_) + " and " + to_string(target_));
  }
}

Permutation Recoupling::level_permutation() const {
  const std::size_t k = source_.levels().size();
  std::vector<int> img(k);
  for (std::size_t l = 1; l <= k; ++l) {
    img[l - 1] = source_.level_at(target_.region_of(static_cast<Level>(l)));
  }
  return Permutation::from_image(std::move(img));
}

Recoupling recoupling(const CouplingTree& s, const CouplingTree& t) { return Recoupling(s, t); }

Recoupling compose(const Recoupling& first, const Recoupling& second) {
  if (!(first.target() == second.source())) {
    throw Error(ErrorCode::NotComposable, "target " + to_string(first.target()) +
                                              " differs from source " + to_string(second.source()));
  }
  return Recoupling(first.source(), second.target());
}

std::string to_string(Direction d) { return d == Direction::Left ? "left" : "right"; }

namespace {

CouplingTree swap_levels(const CouplingTree& t, Level a, Level b) {
  std::vector<Level> lv(t.levels().begin(), t.levels().end());
  std::swap(lv[t.region_of(a)], lv[t.region_of(b)]);
  return CouplingTree::make(std::move(lv));
}

}  // namespace

CouplingTree Reattachment::target() const { return apply_reattachment(tree, level, direction); }

CouplingTree PseudoReattachment::target() const { return swap_levels(tree, level, partner); }

bool can_reattach(const CouplingTree& t, Level n) {
  return t.has_level(n) && t.has_level(n + 1) && level_leq(t, n, n + 1);
}

Direction reattachment_direction(const CouplingTree& t, Level n) {
  if (!can_reattach(t, n)) {
    throw Error(ErrorCode::NotAttached, "level " + std::to_string(n + 1) +
                                            " is not above level " + std::to_string(n) + " in " +
                                            to_string(t));
  }
  return t.region_of(n) < t.region_of(n + 1) ? Direction::Left : Direction::Right;
}

CouplingTree apply_reattachment(const CouplingTree& t, Level n, Direction direction) {
  if (reattachment_direction(t, n) != direction) {
    throw Error(ErrorCode::IllegalMove, "no " + to_string(direction) + " reattachment at level " +
                                            std::to_string(n) + " in " + to_string(t));
  }
  return swap_levels(t, n, n + 1);
}

std::vector<Reattachment> reattachments_from(const CouplingTree& t) {
  std::vector<Reattachment> out;
  for (Level n = 1; t.has_level(n + 1); ++n) {
    if (can_reattach(t, n)) out.push_back({t, n, reattachment_direction(t, n)});
  }
  return out;
}

std::optional<Level> pseudo_partner(const CouplingTree& t, Level n) {
  const RegionSpan span = subtree_regions(t, n);
  std::optional<Level> best;
  for (std::size_t r = span.first; r <= span.last; ++r) {
    const Level l = t.level_at(r);
    if (l != n && (!best || l < *best)) best = l;
  }
  return best;
}

PseudoReattachment pseudo_reattachment(const CouplingTree& t, Level n) {
  const auto q = pseudo_partner(t, n);
  if (!q) {
    throw Error(ErrorCode::NotAttached,
                "level " + std::to_string(n) + " has no branch above it in " + to_string(t));
  }
  const Direction d = t.region_of(n) < t.region_of(*q) ? Direction::Left : Direction::Right;
  return {t, n, *q, d};
}

std::vector<PseudoReattachment> pseudo_reattachments_from(const CouplingTree& t) {
  std::vector<PseudoReattachment> out;
  for (Level n = 1; t.has_level(n); ++n) {
    if (pseudo_partner(t, n)) out.push_back(pseudo_reattachment(t, n));
  }
  return out;
}

namespace {

template <class Move, class Gen>
std::vector<Move> bfs_path(const Recoupling& r, Gen moves) {
  if (r.is_identity()) return {};
  using Key = std::vector<Level>;
  auto key = [](const CouplingTree& t) { return Key(t.levels().begin(), t.levels().end()); };
  std::map<Key, std::optional<Move>> parent;
  std::deque<CouplingTree> queue{r.source()};
  parent.emplace(key(r.source()), std::nullopt);
  const Key goal = key(r.target());
  while (!queue.empty()) {
    const CouplingTree cur = queue.front();
    queue.pop_front();
    for (const Move& m : moves(cur)) {
      const CouplingTree next = m.target();
      if (!parent.emplace(key(next), m).second) continue;
      if (key(next) == goal) {
        std::vector<Move> path;
        for (Key k = goal; parent.at(k).has_value();) {
          const Move& step = *parent.at(k);
          path.push_back(step);
          k = key(step.tree);
        }
        return {path.rbegin(), path.rend()};
      }
      queue.push_back(next);
    }
  }
  throw Error(ErrorCode::IllegalMove, "no factorization from " + to_string(r.source()) + " to " +
                                          to_string(r.target()));
}

}  // namespace

std::vector<Reattachment> factor_primitive(const Recoupling& r) {
  return bfs_path<Reattachment>(r, [](const CouplingTree& t) { return reattachments_from(t); });
}

std::vector<PseudoReattachment> factor_primitive_pseudo(const Recoupling& r) {
  return bfs_path<PseudoReattachment>(
      r, [](const CouplingTree& t) { return pseudo_reattachments_from(t); });
}

namespace {

std::vector<bool> subtree_mask(const CouplingTree& t, Level m) {
  std::vector<bool> mask(t.levels().size(), false);
  const RegionSpan span = subtree_regions(t, m);
  for (std::size_t r = span.first; r <= span.last; ++r) mask[r] = true;
  return mask;
}

}  // namespace

bool is_split_about(const Recoupling& r, Level m) {
  const CouplingTree& s = r.source();
  const CouplingTree& t = r.target();
  if (!s.has_level(m)) throw Error(ErrorCode::LevelAbsent, "level " + std::to_string(m));
  if (s.region_of(m) != t.region_of(m) || subtree_mask(s, m) != subtree_mask(t, m)) return false;
  for (Level l = 1; s.has_level(l); ++l) {
    if (level_leq(s, m, l) != level_leq(t, m, l)) return false;
  }
  return true;
}

SplitArrows split_about(const Recoupling& r, Level m) {
  if (!is_split_about(r, m)) {
    throw Error(ErrorCode::NotSplit, to_string(r.source()) + " -> " + to_string(r.target()) +
                                         " is not split about level " + std::to_string(m));
  }
  const CouplingTree& s = r.source();
  const CouplingTree& t = r.target();
  const std::vector<bool> inside = subtree_mask(s, m);
  const std::size_t mr = s.region_of(m);
  std::vector<Level> u(s.levels().begin(), s.levels().end());
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (inside[k] && k != mr) u[k] = t.level_at(k);
  }
  const CouplingTree mid = CouplingTree::make(std::move(u));
  return {Recoupling(s, mid), Recoupling(mid, t)};
}

std::pair<Recoupling, Recoupling> root_sides(const Recoupling& r) {
  const CouplingTree& s = r.source();
  const CouplingTree& t = r.target();
  if (s.length() < 2 || s.region_of(1) != t.region_of(1)) {
    throw Error(ErrorCode::NotSplit, "root regions differ between " + to_string(s) + " and " +
                                         to_string(t));
  }
  return {Recoupling(left(s), left(t)), Recoupling(right(s), right(t))};
}

}  // namespace recouple
