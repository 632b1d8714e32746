#include "recouple/nodules.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <tuple>

#include "recouple/error.hpp"

namespace recouple {

namespace {

std::string set_string(const std::set<int>& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int x : s) {
    if (!first) os << ',';
    os << x;
    first = false;
  }
  os << '}';
  return os.str();
}

PositionSet full_range(std::size_t n) {
  PositionSet s;
  for (std::size_t i = 1; i <= n; ++i) s.insert(static_cast<int>(i));
  return s;
}

bool disjoint(const std::set<int>& a, const std::set<int>& b) {
  return std::none_of(a.begin(), a.end(), [&](int x) { return b.count(x) != 0; });
}

}  // namespace

void NoduleObject::validate() const {
  for (const auto* s : {&units, &ghosts}) {
    for (int x : *s) {
      if (!ground.count(x)) {
        throw Error(ErrorCode::PositionOutOfRange, std::to_string(x) + " not in ground set");
      }
    }
  }
  if (!disjoint(units, ghosts)) throw Error(ErrorCode::NodulesOverlap, "u and v intersect");
  if (ghosts == ground) throw Error(ErrorCode::AllGhost, "v equals the ground set");
}

bool nodule_arrow_exists(const NoduleObject& a, const NoduleObject& b) {
  if (a.ground != b.ground) throw Error(ErrorCode::GroundMismatch, "nodule objects over different sets");
  a.validate();
  b.validate();
  std::set<int> sa = a.units, sb = b.units;
  sa.insert(a.ghosts.begin(), a.ghosts.end());
  sb.insert(b.ghosts.begin(), b.ghosts.end());
  return sa == sb;
}

NoduledTree::NoduledTree(CouplingTree tree, PositionSet units, PositionSet ghosts)
    : tree_(std::move(tree)), units_(std::move(units)), ghosts_(std::move(ghosts)) {
  if (tree_.is_null()) throw Error(ErrorCode::NullOperand, "noduled tree over the null tree");
  nodules().validate();
}

PositionSet NoduledTree::support() const {
  PositionSet s = units_;
  s.insert(ghosts_.begin(), ghosts_.end());
  return s;
}

NoduleObject NoduledTree::nodules() const { return {full_range(length()), units_, ghosts_}; }

namespace {

PositionSet window(const PositionSet& s, int lo, int hi, int shift) {
  PositionSet out;
  for (int x : s) {
    if (x >= lo && x <= hi) out.insert(x - shift);
  }
  return out;
}

}  // namespace

NoduledTree noduled_left(const NoduledTree& nt) {
  const CouplingTree l = left(nt.tree());
  const int m = static_cast<int>(l.length());
  PositionSet v = window(nt.ghosts(), 1, m, 0);
  if (v.size() == static_cast<std::size_t>(m)) {
    throw Error(ErrorCode::AllGhostSide, "left side of " + to_string(nt) + " is all ghosts");
  }
  return NoduledTree(l, window(nt.units(), 1, m, 0), std::move(v));
}

NoduledTree noduled_right(const NoduledTree& nt) {
  const CouplingTree r = right(nt.tree());
  const int m = static_cast<int>(nt.length() - r.length());
  const int n = static_cast<int>(nt.length());
  PositionSet v = window(nt.ghosts(), m + 1, n, m);
  if (v.size() == r.length()) {
    throw Error(ErrorCode::AllGhostSide, "right side of " + to_string(nt) + " is all ghosts");
  }
  return NoduledTree(r, window(nt.units(), m + 1, n, m), std::move(v));
}

bool noduled_equiv(const NoduledTree& a, const NoduledTree& b) {
  return a.units() == b.units() && a.ghosts() == b.ghosts() && tree_equiv(a.tree(), b.tree()) &&
         a.contracted() == b.contracted();
}

NoduledTree noduled_representative(const NoduledTree& nt) {
  // Without ghosts C_v s = s already pins the tree.
  if (nt.ghosts().empty()) return nt;
  const CouplingTree goal = nt.contracted();
  const auto candidates = trees_with_shape(forget_levels(nt.tree()));
  for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
    if (contract(*it, nt.ghosts()) == goal) return NoduledTree(*it, nt.units(), nt.ghosts());
  }
  return nt;  // unreachable: nt itself is a candidate
}

NoduledTree noduled_tensor_M(const NoduledTree& a, const NoduledTree& b) {
  const int shift = static_cast<int>(a.length());
  PositionSet u = a.units(), v = a.ghosts();
  for (int x : b.units()) u.insert(x + shift);
  for (int x : b.ghosts()) v.insert(x + shift);
  return noduled_representative(NoduledTree(tensor_M(a.tree(), b.tree()), std::move(u), std::move(v)));
}

bool NoduledArrow::exists(const NoduledTree& a, const NoduledTree& b) {
  return a.length() == b.length() && a.support() == b.support();
}

NoduledArrow::NoduledArrow(NoduledTree source, NoduledTree target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (source_.length() != target_.length()) {
    throw Error(ErrorCode::LengthMismatch, to_string(source_) + " vs " + to_string(target_));
  }
  if (source_.support() != target_.support()) {
    throw Error(ErrorCode::SourceTargetMismatch,
                "nodule supports differ: " + to_string(source_) + " vs " + to_string(target_));
  }
}

NoduledArrow compose(const NoduledArrow& first, const NoduledArrow& second) {
  if (!(first.target() == second.source())) {
    throw Error(ErrorCode::NotComposable, to_string(first.target()) + " vs " + to_string(second.source()));
  }
  return NoduledArrow(first.source(), second.target());
}

namespace {

struct Blocks {
  // 1-based inclusive leaf ranges.
  std::pair<int, int> a, b, c;
};

Blocks rotation_blocks(const CouplingTree& t, Level n) {
  const RegionSpan span = subtree_regions(t, n);
  const int first = static_cast<int>(span.first) + 1;
  const int last = static_cast<int>(span.last) + 2;
  const int p = static_cast<int>(t.region_of(n)) + 1;
  const int r = static_cast<int>(t.region_of(n + 1)) + 1;
  const int lo = std::min(p, r), hi = std::max(p, r);
  return {{first, lo}, {lo + 1, hi}, {hi + 1, last}};
}

}  // namespace

bool reattachment_ghost_free(const NoduledTree& nt, Level n) {
  if (!can_reattach(nt.tree(), n)) return false;
  const Blocks bl = rotation_blocks(nt.tree(), n);
  for (const auto& [lo, hi] : {bl.a, bl.b, bl.c}) {
    bool free = false;
    for (int i = lo; i <= hi && !free; ++i) free = !nt.ghosts().count(i);
    if (!free) return false;
  }
  return true;
}

NoduledReattachment noduled_reattachment(const NoduledTree& nt, Level n) {
  const Direction d = reattachment_direction(nt.tree(), n);
  if (!reattachment_ghost_free(nt, n)) {
    throw Error(ErrorCode::AllGhostSide, "reattachment at level " + std::to_string(n) + " of " +
                                             to_string(nt) + " moves an all-ghost block");
  }
  return {nt, n, d};
}

NoduledTree NoduledReattachment::target() const {
  return NoduledTree(apply_reattachment(tree.tree(), level, direction), tree.units(), tree.ghosts());
}

NoduleChange nodule_change(const NoduledTree& nt, int position) {
  const bool unit = nt.units().count(position) != 0;
  if (!unit && !nt.ghosts().count(position)) {
    throw Error(ErrorCode::PositionOutOfRange, "no nodule at position " + std::to_string(position));
  }
  NoduleChange c{nt, position, unit};
  (void)c.target();
  return c;
}

NoduledTree NoduleChange::target() const {
  PositionSet u = tree.units(), v = tree.ghosts();
  if (to_ghost) {
    u.erase(position);
    v.insert(position);
  } else {
    v.erase(position);
    u.insert(position);
  }
  return NoduledTree(tree.tree(), std::move(u), std::move(v));
}

NoduledTree primitive_source(const NoduledPrimitive& p) {
  return std::visit([](const auto& m) { return m.tree; }, p);
}

NoduledTree primitive_target(const NoduledPrimitive& p) {
  return std::visit([](const auto& m) { return m.target(); }, p);
}

std::vector<NoduledPrimitive> noduled_primitives_from(const NoduledTree& nt) {
  std::vector<NoduledPrimitive> out;
  for (Level n = 1; nt.tree().has_level(n + 1); ++n) {
    if (reattachment_ghost_free(nt, n)) out.emplace_back(noduled_reattachment(nt, n));
  }
  for (int pos : nt.support()) {
    const bool to_ghost = nt.units().count(pos) != 0;
    if (to_ghost && nt.ghosts().size() + 1 == nt.length()) continue;
    out.emplace_back(NoduleChange{nt, pos, to_ghost});
  }
  return out;
}

std::vector<NoduledPrimitive> factor_noduled(const NoduledArrow& r) {
  std::vector<NoduledPrimitive> out;
  NoduledTree cur = r.source();
  for (int pos : r.source().ghosts()) {
    out.emplace_back(nodule_change(cur, pos));
    cur = primitive_target(out.back());
  }
  for (const Reattachment& m : factor_primitive(Recoupling(cur.tree(), r.target().tree()))) {
    out.emplace_back(noduled_reattachment(cur, m.level));
    cur = primitive_target(out.back());
  }
  for (int pos : r.target().ghosts()) {
    out.emplace_back(nodule_change(cur, pos));
    cur = primitive_target(out.back());
  }
  return out;
}

std::vector<NoduledPrimitive> factor_noduled_bfs(const NoduledArrow& r) {
  if (r.is_identity()) return {};
  using Key = std::tuple<std::vector<Level>, PositionSet, PositionSet>;
  auto key = [](const NoduledTree& t) {
    return Key(std::vector<Level>(t.tree().levels().begin(), t.tree().levels().end()), t.units(),
               t.ghosts());
  };
  std::map<Key, std::optional<NoduledPrimitive>> parent;
  parent.emplace(key(r.source()), std::nullopt);
  std::deque<NoduledTree> queue{r.source()};
  const Key goal = key(r.target());
  while (!queue.empty()) {
    const NoduledTree cur = queue.front();
    queue.pop_front();
    for (const auto& p : noduled_primitives_from(cur)) {
      const NoduledTree next = primitive_target(p);
      if (!parent.emplace(key(next), p).second) continue;
      if (key(next) == goal) {
        std::vector<NoduledPrimitive> path;
        for (Key k = goal; parent.at(k).has_value();) {
          const NoduledPrimitive step = *parent.at(k);
          path.push_back(step);
          k = key(primitive_source(step));
        }
        return {path.rbegin(), path.rend()};
      }
      queue.push_back(next);
    }
  }
  throw Error(ErrorCode::IllegalMove, "no primitive path from " + to_string(r.source()) + " to " +
                                          to_string(r.target()));
}

std::string to_string(const NoduledTree& nt) {
  std::string s = to_string(nt.tree());
  if (!nt.units().empty()) s += " u" + set_string(nt.units());
  if (!nt.ghosts().empty()) s += " g" + set_string(nt.ghosts());
  return s;
}

std::string to_string(const NoduledPrimitive& p) {
  if (const auto* m = std::get_if<NoduledReattachment>(&p)) {
    return "reattach " + std::to_string(m->level) + " " + to_string(m->direction);
  }
  const auto& c = std::get<NoduleChange>(p);
  return std::string(c.to_ghost ? "unit->ghost " : "ghost->unit ") + std::to_string(c.position);
}

}  // namespace recouple
