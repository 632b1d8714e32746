#include "recouple/gamma.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "recouple/error.hpp"

namespace recouple {

namespace {

// Sum of weights over the 0-based leaf range [first, last]; empty when first > last.
Object weight(const LeafAssignment& w, std::size_t first, std::size_t last) {
  Object s = 0;
  for (std::size_t k = first; k <= last && k < w.size(); ++k) s += w[k];
  return s;
}

Object total(const LeafAssignment& w) { return std::accumulate(w.begin(), w.end(), Object{0}); }

void require_length(std::size_t leaves, std::size_t length) {
  if (leaves != length) {
    throw Error(ErrorCode::LengthMismatch,
                "leaf assignment of size " + std::to_string(leaves) + " for length " + std::to_string(length));
  }
}

// Tensor the component X (acting on the subtree at `level`) with identities
// along the path from the root down to that subtree.
QMatrix structural(const CouplingTree& t, const RecursiveTree& r, std::size_t offset, Level level,
                   const QMatrix& x, const LeafAssignment& w, const Model& m) {
  if (r.is_leaf()) throw Error(ErrorCode::LevelAbsent, "level not found in context");
  if (r.level() == level) return x;
  const std::size_t nl = r.left().leaf_count();
  const std::size_t end = offset + r.leaf_count() - 1;
  if (t.region_of(level) + 1 < offset + nl) {
    return kron(structural(t, r.left(), offset, level, x, w, m), m.id(weight(w, offset + nl, end)));
  }
  return kron(m.id(weight(w, offset, offset + nl - 1)), structural(t, r.right(), offset + nl, level, x, w, m));
}

QMatrix embed(const CouplingTree& t, Level level, std::size_t first_leaf, std::size_t last_leaf, const QMatrix& x,
              const LeafAssignment& w, const Model& m, Embedding e) {
  if (e == Embedding::Structural) return structural(t, to_recursive(t), 0, level, x, w, m);
  const Object p = first_leaf == 0 ? 0 : weight(w, 0, first_leaf - 1);
  const Object q = weight(w, last_leaf + 1, w.size() - 1);
  return kron(kron(m.id(p), x), m.id(q));
}

// Rotation of the branch at `level` with its child branch `child`.
QMatrix rotation(const CouplingTree& t, Level level, Level child, const LeafAssignment& w, const Model& m,
                 Embedding e) {
  const RegionSpan span = subtree_regions(t, level);
  const std::size_t r = t.region_of(level), rc = t.region_of(child);
  const std::size_t f = span.first, last = span.last + 1;
  QMatrix x;
  if (rc < r) {
    x = m.assoc(weight(w, f, rc), weight(w, rc + 1, r), weight(w, r + 1, last));
  } else {
    x = m.assoc_inv(weight(w, f, r), weight(w, r + 1, rc), weight(w, rc + 1, last));
  }
  return embed(t, level, f, last, x, w, m, e);
}

std::string word_of(const RecursiveTree& r, const std::vector<std::string>& names, std::size_t& next) {
  if (r.is_leaf()) return names.at(next++);
  std::string left = word_of(r.left(), names, next);
  std::string right = word_of(r.right(), names, next);
  if (!r.left().is_leaf()) left = "(" + left + ")";
  if (!r.right().is_leaf()) right = "(" + right + ")";
  return left + "⊗" + right;
}

}  // namespace

Object gamma_object(const CouplingTree& t, const LeafAssignment& leaves, const Model&) {
  if (t.is_null()) throw Error(ErrorCode::NullOperand, "null tree has no image");
  require_length(leaves.size(), t.length());
  return total(leaves);
}

std::string gamma_word(const CouplingTree& t, const std::vector<std::string>& names) {
  require_length(names.size(), t.length());
  std::size_t next = 0;
  return word_of(to_recursive(t), names, next);
}

QMatrix gamma_reattachment(const Reattachment& r, const LeafAssignment& leaves, const Model& m, Embedding e) {
  require_length(leaves.size(), r.tree.length());
  if (!can_reattach(r.tree, r.level) || reattachment_direction(r.tree, r.level) != r.direction) {
    throw Error(ErrorCode::IllegalMove, "not a reattachment of " + to_string(r.tree));
  }
  return rotation(r.tree, r.level, r.level + 1, leaves, m, e);
}

QMatrix gamma_pseudo_reattachment(const PseudoReattachment& r, const LeafAssignment& leaves, const Model& m,
                                  Embedding e) {
  require_length(leaves.size(), r.tree.length());
  const auto partner = pseudo_partner(r.tree, r.level);
  if (!partner || *partner != r.partner || pseudo_reattachment(r.tree, r.level).direction != r.direction) {
    throw Error(ErrorCode::IllegalMove, "not a pseudo reattachment of " + to_string(r.tree));
  }
  return rotation(r.tree, r.level, r.partner, leaves, m, e);
}

bool dodecagons_on_leaves(const Model& m, const LeafAssignment& leaves) {
  const std::set<Object> ws(leaves.begin(), leaves.end());
  const std::vector<Object> v(ws.begin(), ws.end());
  for (Object a : v)
    for (Object b : v)
      for (Object c : v)
        for (Object d : v)
          for (Object f : v) {
            if (m.dim(a + b + c + d + f) > 64) continue;
            if (!check_dodecagons(m, a, b, c, d, f)) return false;
          }
  return true;
}

QMatrix gamma_path(const std::vector<Reattachment>& path, const LeafAssignment& leaves, const Model& m) {
  if (path.empty()) throw Error(ErrorCode::NotComposable, "empty path has no source");
  QMatrix out = m.id(total(leaves));
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (k > 0 && !(path[k - 1].target() == path[k].tree)) throw Error(ErrorCode::NotComposable, "gap in path");
    out = gamma_reattachment(path[k], leaves, m) * out;
  }
  return out;
}

QMatrix gamma_pseudo_path(const std::vector<PseudoReattachment>& path, const LeafAssignment& leaves,
                          const Model& m) {
  if (path.empty()) throw Error(ErrorCode::NotComposable, "empty path has no source");
  QMatrix out = m.id(total(leaves));
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (k > 0 && !(path[k - 1].target() == path[k].tree)) throw Error(ErrorCode::NotComposable, "gap in path");
    out = gamma_pseudo_reattachment(path[k], leaves, m) * out;
  }
  return out;
}

GammaResult gamma_arrow(const Recoupling& r, const LeafAssignment& leaves, const Model& m, GammaOptions options) {
  const Object obj = gamma_object(r.source(), leaves, m);
  QMatrix out = m.id(obj);
  if (options.mode == Mode::Pseudo) {
    if (!options.allow_mode_violation && !dodecagons_on_leaves(m, leaves)) {
      throw Error(ErrorCode::ModeViolation, m.name() + " fails the dodecagons; pseudo mode is not well defined");
    }
    for (const auto& p : factor_primitive_pseudo(r)) out = gamma_pseudo_reattachment(p, leaves, m) * out;
  } else {
    for (const auto& p : factor_primitive(r)) out = gamma_reattachment(p, leaves, m) * out;
  }
  return {obj, obj, std::move(out)};
}

// ---- noduled trees

namespace {

void require_units(const NoduledTree& nt, const LeafAssignment& leaves, const Model& m) {
  require_length(leaves.size(), nt.length());
  for (int p : nt.support()) {
    if (leaves[static_cast<std::size_t>(p - 1)] != m.unit()) {
      throw Error(ErrorCode::EndpointMismatch, "noduled position " + std::to_string(p) + " must carry e");
    }
  }
}

LeafAssignment without_ghosts(const NoduledTree& nt, const LeafAssignment& leaves) {
  LeafAssignment out;
  for (std::size_t k = 0; k < leaves.size(); ++k) {
    if (!nt.ghosts().contains(static_cast<int>(k + 1))) out.push_back(leaves[k]);
  }
  return out;
}

LeafAssignment zero_ghosts(const NoduledTree& nt, LeafAssignment leaves) {
  for (int p : nt.ghosts()) leaves[static_cast<std::size_t>(p - 1)] = 0;
  return leaves;
}

// Unit at `position` becomes a ghost.
QMatrix unit_to_ghost(const NoduledTree& nt, int position, const LeafAssignment& leaves, const Model& m) {
  const CouplingTree ct = nt.contracted();
  const LeafAssignment w = without_ghosts(nt, leaves);
  std::size_t k = 0;
  for (int p = 1; p < position; ++p) {
    if (!nt.ghosts().contains(p)) ++k;
  }
  const auto levels = ct.levels();
  const bool has_right = k < levels.size();
  const bool has_left = k > 0;
  const bool left_child = has_right && (!has_left || levels[k] > levels[k - 1]);
  const std::size_t region = left_child ? k : k - 1;
  const Level parent = levels[region];
  const RegionSpan span = subtree_regions(ct, parent);
  const std::size_t f = span.first, last = span.last + 1;
  const QMatrix x = left_child ? m.left_unit(weight(w, k + 1, last)) : m.right_unit(weight(w, f, k - 1));
  return embed(ct, parent, f, last, x, w, m, Embedding::Flattened);
}

}  // namespace

Object gamma_noduled_object(const NoduledTree& nt, const LeafAssignment& leaves, const Model& m) {
  require_units(nt, leaves, m);
  return total(without_ghosts(nt, leaves));
}

QMatrix gamma_noduled_reattachment(const NoduledReattachment& r, const LeafAssignment& leaves, const Model& m) {
  require_units(r.tree, leaves, m);
  if (noduled_reattachment(r.tree, r.level).direction != r.direction) {
    throw Error(ErrorCode::IllegalMove, "direction contradicts " + to_string(r.tree));
  }
  return rotation(r.tree.tree(), r.level, r.level + 1, zero_ghosts(r.tree, leaves), m, Embedding::Flattened);
}

QMatrix gamma_nodule_change(const NoduleChange& c, const LeafAssignment& leaves, const Model& m) {
  require_units(c.tree, leaves, m);
  if (nodule_change(c.tree, c.position).to_ghost != c.to_ghost) {
    throw Error(ErrorCode::IllegalMove, "nodule change direction contradicts " + to_string(c.tree));
  }
  if (c.to_ghost) return unit_to_ghost(c.tree, c.position, leaves, m);
  return unit_to_ghost(c.target(), c.position, leaves, m).inverse();
}

QMatrix gamma_noduled_primitive(const NoduledPrimitive& p, const LeafAssignment& leaves, const Model& m) {
  if (const auto* r = std::get_if<NoduledReattachment>(&p)) return gamma_noduled_reattachment(*r, leaves, m);
  return gamma_nodule_change(std::get<NoduleChange>(p), leaves, m);
}

QMatrix gamma_noduled_path(const std::vector<NoduledPrimitive>& path, const LeafAssignment& leaves,
                           const Model& m) {
  if (path.empty()) throw Error(ErrorCode::NotComposable, "empty path has no source");
  const NoduledTree start = primitive_source(path.front());
  QMatrix out = m.id(gamma_noduled_object(start, leaves, m));
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (k > 0 && !(primitive_target(path[k - 1]) == primitive_source(path[k]))) {
      throw Error(ErrorCode::NotComposable, "gap in path");
    }
    out = gamma_noduled_primitive(path[k], leaves, m) * out;
  }
  return out;
}

GammaResult gamma_noduled(const NoduledArrow& r, const LeafAssignment& leaves, const Model& m) {
  const Object s = gamma_noduled_object(r.source(), leaves, m);
  const Object t = gamma_noduled_object(r.target(), leaves, m);
  QMatrix out = m.id(s);
  for (const auto& p : factor_noduled(r)) out = gamma_noduled_primitive(p, leaves, m) * out;
  return {s, t, std::move(out)};
}

// ---- braided trees

LeafAssignment permuted_leaves(const Permutation& perm, const LeafAssignment& strands) {
  require_length(strands.size(), perm.size());
  LeafAssignment b(strands.size());
  for (std::size_t k = 0; k < b.size(); ++k) b[k] = strands[static_cast<std::size_t>(perm(static_cast<int>(k + 1)) - 1)];
  return b;
}

bool is_cherry(const CouplingTree& t, int index) {
  const auto levels = t.levels();
  if (index < 1 || static_cast<std::size_t>(index) > levels.size()) return false;
  const std::size_t r = static_cast<std::size_t>(index - 1);
  return (r == 0 || levels[r] > levels[r - 1]) && (r + 1 == levels.size() || levels[r] > levels[r + 1]);
}

BraidedTree Interchange::target() const {
  return {object.tree, compose(object.perm, Permutation::transposition(object.perm.size(), index, index + 1))};
}

Interchange interchange(const BraidedTree& object, int index, int sign) {
  if (object.perm.size() != object.tree.length()) throw Error(ErrorCode::StrandMismatch, "permutation size");
  if (index < 1 || static_cast<std::size_t>(index) >= object.tree.length() || (sign != 1 && sign != -1)) {
    throw Error(ErrorCode::PositionOutOfRange, "interchange index " + std::to_string(index));
  }
  if (!is_cherry(object.tree, index)) {
    throw Error(ErrorCode::NotPrimitiveInterchange,
                "leaves " + std::to_string(index) + "," + std::to_string(index + 1) + " are not attached in " +
                    to_string(object.tree));
  }
  return {object, index, sign};
}

QMatrix gamma_interchange(const Interchange& p, const LeafAssignment& strands, const Model& m) {
  const Interchange checked = interchange(p.object, p.index, p.sign);
  const LeafAssignment b = permuted_leaves(checked.object.perm, strands);
  const std::size_t i = static_cast<std::size_t>(checked.index - 1);
  const QMatrix x = checked.sign > 0 ? m.braid(b[i], b[i + 1]) : m.braid(b[i + 1], b[i]).inverse();
  const Object p_w = i == 0 ? 0 : weight(b, 0, i - 1);
  return kron(kron(m.id(p_w), x), m.id(weight(b, i + 2, b.size() - 1)));
}

BraidedArrow::BraidedArrow(BraidedTree source, CouplingTree target, BraidWord word)
    : source_(std::move(source)), target_tree_(std::move(target)), word_(std::move(word)) {
  if (source_.tree.length() != target_tree_.length()) throw Error(ErrorCode::LengthMismatch, "tree lengths differ");
  if (source_.perm.size() != source_.tree.length() || word_.strands() != source_.tree.length()) {
    throw Error(ErrorCode::StrandMismatch, "strand counts differ from the tree length");
  }
}

BraidedTree BraidedArrow::target() const { return {target_tree_, compose(source_.perm, underlying_perm(word_))}; }

CouplingTree cherry_tree(std::size_t length, int index) {
  if (index < 1 || static_cast<std::size_t>(index) >= length) {
    throw Error(ErrorCode::PositionOutOfRange, "cherry index " + std::to_string(index));
  }
  std::vector<Level> levels(length - 1);
  Level next = 1;
  for (std::size_t r = 0; r < levels.size(); ++r) {
    levels[r] = r + 1 == static_cast<std::size_t>(index) ? static_cast<Level>(length - 1) : next++;
  }
  return make_tree(levels);
}

std::vector<BraidedPrimitive> factor_braided(const BraidedArrow& a) {
  std::vector<BraidedPrimitive> out;
  CouplingTree cur = a.source().tree;
  Permutation perm = a.source().perm;
  auto move_to = [&](const CouplingTree& t) {
    for (auto& r : factor_primitive(Recoupling(cur, t))) out.push_back(BraidedReattachment{std::move(r), perm});
    cur = t;
  };
  for (const Generator& g : a.word().letters()) {
    if (!is_cherry(cur, g.index)) move_to(cherry_tree(cur.length(), g.index));
    Interchange x = interchange({cur, perm}, g.index, g.sign);
    perm = x.target().perm;
    out.push_back(std::move(x));
  }
  move_to(a.target_tree());
  return out;
}

namespace {

BraidedTree primitive_source(const BraidedPrimitive& p) {
  if (const auto* r = std::get_if<BraidedReattachment>(&p)) return {r->move.tree, r->perm};
  return std::get<Interchange>(p).object;
}

BraidedTree primitive_target(const BraidedPrimitive& p) {
  if (const auto* r = std::get_if<BraidedReattachment>(&p)) return {r->move.target(), r->perm};
  return std::get<Interchange>(p).target();
}

}  // namespace

QMatrix gamma_braided_path(const std::vector<BraidedPrimitive>& path, const LeafAssignment& strands,
                           const Model& m) {
  QMatrix out = m.id(total(strands));
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (k > 0 && !(primitive_target(path[k - 1]) == primitive_source(path[k]))) {
      throw Error(ErrorCode::NotComposable, "gap in braided path");
    }
    if (const auto* r = std::get_if<BraidedReattachment>(&path[k])) {
      out = gamma_reattachment(r->move, permuted_leaves(r->perm, strands), m) * out;
    } else {
      out = gamma_interchange(std::get<Interchange>(path[k]), strands, m) * out;
    }
  }
  return out;
}

GammaResult gamma_bcptr(const BraidedArrow& a, const LeafAssignment& strands, const Model& m) {
  require_length(strands.size(), a.source().tree.length());
  const Object obj = total(strands);
  return {obj, obj, gamma_braided_path(factor_braided(a), strands, m)};
}

// ---- braided noduled trees

namespace {

PositionSet strands_of(const Permutation& perm, const PositionSet& positions) {
  PositionSet out;
  for (int p : positions) out.insert(perm(p));
  return out;
}

}  // namespace

BraidedNoduledArrow::BraidedNoduledArrow(NoduledTree source, Permutation perm, NoduledTree target, BraidWord word)
    : source_(std::move(source)), perm_(std::move(perm)), target_(std::move(target)), word_(std::move(word)) {
  if (source_.length() != target_.length()) throw Error(ErrorCode::LengthMismatch, "tree lengths differ");
  if (perm_.size() != source_.length() || word_.strands() != source_.length()) {
    throw Error(ErrorCode::StrandMismatch, "strand counts differ from the tree length");
  }
  if (strands_of(perm_, source_.support()) != strands_of(target_perm(), target_.support())) {
    throw Error(ErrorCode::SourceTargetMismatch, "nodules do not follow their strands");
  }
}

Permutation BraidedNoduledArrow::target_perm() const { return compose(perm_, underlying_perm(word_)); }

GammaResult gamma_bncptr(const BraidedNoduledArrow& a, const LeafAssignment& strands, const Model& m) {
  require_length(strands.size(), a.source().length());
  const LeafAssignment b0 = permuted_leaves(a.perm(), strands);
  const LeafAssignment b1 = permuted_leaves(a.target_perm(), strands);
  const Object s = gamma_noduled_object(a.source(), b0, m);
  const Object t = gamma_noduled_object(a.target(), b1, m);

  QMatrix out = m.id(s);
  NoduledTree cur = a.source();
  for (int p : a.source().ghosts()) {
    const NoduleChange c = nodule_change(cur, p);
    out = gamma_nodule_change(c, b0, m) * out;
    cur = c.target();
  }
  const BraidedArrow middle({a.source().tree(), a.perm()}, a.target().tree(), a.word());
  out = gamma_braided_path(factor_braided(middle), strands, m) * out;
  cur = NoduledTree(a.target().tree(), a.target().support(), {});
  for (int p : a.target().ghosts()) {
    const NoduleChange c = nodule_change(cur, p);
    out = gamma_nodule_change(c, b1, m) * out;
    cur = c.target();
  }
  return {s, t, std::move(out)};
}

// ---- evaluation

QMatrix evaluate(const QMatrix& gamma, const std::vector<int>& source_strands,
                 const std::vector<int>& target_strands, const std::vector<QMatrix>& fs) {
  auto word = [&](const std::vector<int>& order) {
    QMatrix out = QMatrix::identity(1);
    for (int s : order) {
      if (s < 1 || static_cast<std::size_t>(s) > fs.size()) {
        throw Error(ErrorCode::EndpointMismatch, "no component arrow for strand " + std::to_string(s));
      }
      out = kron(out, fs[static_cast<std::size_t>(s - 1)]);
    }
    return out;
  };
  const QMatrix ff = word(source_strands);
  const QMatrix gf = word(target_strands);
  if (ff.rows() != gamma.cols() || gf.cols() != gamma.rows() || !ff.is_square() || !gf.is_square()) {
    throw Error(ErrorCode::EndpointMismatch, "component arrows do not match the structure arrow");
  }
  QMatrix lhs = gf * gamma;
  if (lhs != gamma * ff) throw Error(ErrorCode::NaturalityViolation, "(Gf)τ differs from τ(Ff)");
  return lhs;
}

namespace {

void require_components(const LeafAssignment& leaves, const std::vector<QMatrix>& fs, const Model& m) {
  if (fs.size() != leaves.size()) throw Error(ErrorCode::EndpointMismatch, "one component arrow per leaf");
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const std::size_t d = m.dim(leaves[k]);
    if (fs[k].rows() != d || fs[k].cols() != d) {
      throw Error(ErrorCode::EndpointMismatch, "component " + std::to_string(k + 1) + " has the wrong size");
    }
  }
}

}  // namespace

QMatrix canonical(const Recoupling& r, const LeafAssignment& leaves, const std::vector<QMatrix>& fs,
                  const Model& m) {
  require_components(leaves, fs, m);
  std::vector<int> order(leaves.size());
  std::iota(order.begin(), order.end(), 1);
  return evaluate(gamma_arrow(r, leaves, m).arrow, order, order, fs);
}

QMatrix canonical(const BraidedArrow& a, const LeafAssignment& strands, const std::vector<QMatrix>& fs,
                  const Model& m) {
  require_components(strands, fs, m);
  return evaluate(gamma_bcptr(a, strands, m).arrow, a.source().perm.image(), a.target().perm.image(), fs);
}

}  // namespace recouple
