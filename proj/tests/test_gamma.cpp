#include <random>

#include "doctest.h"
#include "gamma_support.hpp"
#include "recouple/error.hpp"
#include "recouple/gamma.hpp"

using namespace recouple;
using gtest::check_potential;
using gtest::DiagonalModel;

namespace {

LeafAssignment random_leaves(std::mt19937_64& rng, std::size_t n, Object lo = 1, Object hi = 2) {
  std::uniform_int_distribution<Object> d(lo, hi);
  LeafAssignment a(n);
  for (auto& x : a) x = d(rng);
  return a;
}

Rational num(const QMatrix& m) { return m.scalar(); }

gtest::PotentialReport adjacent_potential(const CouplingTree& start, const LeafAssignment& a, const Model& m) {
  return check_potential<CouplingTree>(
      start, m.id(gamma_object(start, a, m)), [](const CouplingTree& t) { return to_string(t); },
      [&](const CouplingTree& t) {
        std::vector<std::pair<CouplingTree, QMatrix>> out;
        for (const auto& r : reattachments_from(t)) out.emplace_back(r.target(), gamma_reattachment(r, a, m));
        return out;
      });
}

gtest::PotentialReport pseudo_potential(const CouplingTree& start, const LeafAssignment& a, const Model& m) {
  return check_potential<CouplingTree>(
      start, m.id(gamma_object(start, a, m)), [](const CouplingTree& t) { return to_string(t); },
      [&](const CouplingTree& t) {
        std::vector<std::pair<CouplingTree, QMatrix>> out;
        for (const auto& r : pseudo_reattachments_from(t)) {
          out.emplace_back(r.target(), gamma_pseudo_reattachment(r, a, m));
        }
        return out;
      });
}

ModelPtr constant_assoc() {
  return model_from_json(R"({"kind":"scalar","family":"table","default":"-2/3"})");
}

}  // namespace

TEST_CASE("objects") {
  const ModelPtr m = scalar::strict();
  CHECK(gamma_object(CouplingTree::leaf(), {3}, *m) == 3);
  CHECK(gamma_object(make_tree({1}), {1, 2}, *m) == 3);
  CHECK(gamma_word(make_tree({2, 1}), {"a", "b", "c"}) == "(a⊗b)⊗c");
  CHECK(gamma_word(make_tree({1, 2}), {"a", "b", "c"}) == "a⊗(b⊗c)");
  CHECK(gamma_word(make_tree({2, 1, 3}), {"a", "b", "c", "d"}) == "(a⊗b)⊗(c⊗d)");
  CHECK(gamma_word(CouplingTree::leaf(), {"a"}) == "a");
  try {
    gamma_object(make_tree({1}), {1}, *m);
    FAIL("expected LengthMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LengthMismatch);
  }
}

TEST_CASE("reattachment components") {
  const DiagonalModel d(5);
  const LeafAssignment a{1, 2, 1};
  const Reattachment r{make_tree({2, 1}), 1, Direction::Right};
  CHECK(r.target() == make_tree({1, 2}));
  CHECK(gamma_reattachment(r, a, d) == d.assoc(1, 2, 1));
  const Reattachment back{make_tree({1, 2}), 1, Direction::Left};
  CHECK(gamma_reattachment(back, a, d) == d.assoc(1, 2, 1).inverse());

  // ((ab)c)d → (a(bc))d
  const LeafAssignment b{1, 1, 2, 1};
  const Reattachment inner{make_tree({3, 2, 1}), 2, Direction::Right};
  CHECK(inner.target() == make_tree({2, 3, 1}));
  CHECK(gamma_reattachment(inner, b, d) == kron(d.assoc(1, 1, 2), d.id(1)));
  // a((bc)d) → a(b(cd))
  const Reattachment right_side{make_tree({1, 3, 2}), 2, Direction::Right};
  CHECK(gamma_reattachment(right_side, b, d) == kron(d.id(1), d.assoc(1, 2, 1)));

  try {
    gamma_reattachment({make_tree({2, 1}), 1, Direction::Left}, a, d);
    FAIL("expected IllegalMove");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IllegalMove);
  }
}

TEST_CASE("structural and flattened embeddings agree") {
  const DiagonalModel d(11);
  std::mt19937_64 rng(3);
  for (std::size_t n = 3; n <= 5; ++n) {
    for (const CouplingTree& t : enumerate_trees(n)) {
      const LeafAssignment a = random_leaves(rng, n, 0, 2);
      for (const auto& r : reattachments_from(t)) {
        CHECK(gamma_reattachment(r, a, d, Embedding::Structural) == gamma_reattachment(r, a, d, Embedding::Flattened));
      }
      for (const auto& r : pseudo_reattachments_from(t)) {
        CHECK(gamma_pseudo_reattachment(r, a, d, Embedding::Structural) ==
              gamma_pseudo_reattachment(r, a, d, Embedding::Flattened));
      }
    }
  }
}

TEST_CASE("the deformed pentagon closes with q") {
  const LeafAssignment a{1, 2, 1, 2};
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const DiagonalModel d(seed);
    const ModelPtr r = scalar::random(seed);
    for (const Model* m : {static_cast<const Model*>(&d), r.get()}) {
      // ((ab)c)d = [3,2,1], (ab)(cd) = [3,1,2] and [2,1,3], a(b(cd)) = [1,2,3].
      const QMatrix top = gamma_arrow(Recoupling(make_tree({3, 2, 1}), make_tree({3, 1, 2})), a, *m).arrow;
      const QMatrix swap = gamma_arrow(Recoupling(make_tree({3, 1, 2}), make_tree({2, 1, 3})), a, *m).arrow;
      const QMatrix top2 = gamma_arrow(Recoupling(make_tree({2, 1, 3}), make_tree({1, 2, 3})), a, *m).arrow;
      const QMatrix bottom = gamma_arrow(Recoupling(make_tree({3, 2, 1}), make_tree({1, 2, 3})), a, *m).arrow;
      CHECK(top == m->assoc(3, 1, 2));
      CHECK(top2 == m->assoc(1, 2, 3));
      CHECK(swap == deformativity(*m, 1, 2, 1, 2));
      CHECK(bottom == top2 * swap * top);
      const QMatrix lower = kron(m->id(1), m->assoc(2, 1, 2)) * m->assoc(1, 3, 2) * kron(m->assoc(1, 2, 1), m->id(2));
      CHECK(bottom == lower);
    }
  }
}

TEST_CASE("well-definedness over all adjacent factorizations") {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const ModelPtr r = scalar::random(seed);
    const DiagonalModel d(seed);
    for (std::size_t n = 2; n <= 5; ++n) {
      const LeafAssignment a = random_leaves(rng, n, 1, n <= 4 ? 2 : 1);
      for (const Model* m : {r.get(), static_cast<const Model*>(&d)}) {
        const auto rep = adjacent_potential(enumerate_trees(n).front(), a, *m);
        CHECK(rep.vertices == enumerate_trees(n).size());
        CHECK_MESSAGE(rep.violations == 0, m->name() << " " << rep.witness);
      }
    }
  }
}

TEST_CASE("functoriality") {
  std::mt19937_64 rng(23);
  const ModelPtr m = scalar::random(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const auto trees = enumerate_trees(n);
    std::uniform_int_distribution<std::size_t> pick(0, trees.size() - 1);
    const CouplingTree s = trees[pick(rng)], t = trees[pick(rng)], u = trees[pick(rng)];
    const LeafAssignment a = random_leaves(rng, n);
    const QMatrix f = gamma_arrow(Recoupling(s, t), a, *m).arrow;
    const QMatrix g = gamma_arrow(Recoupling(t, u), a, *m).arrow;
    CHECK(gamma_arrow(Recoupling(s, u), a, *m).arrow == g * f);
    CHECK(gamma_arrow(Recoupling::identity(s), a, *m).arrow.is_identity());
    CHECK(gamma_arrow(Recoupling(t, s), a, *m).arrow == f.inverse());
    const auto path = factor_primitive(Recoupling(s, t));
    if (!path.empty()) CHECK(gamma_path(path, a, *m) == f);
  }
}

TEST_CASE("monoidal models: the image depends only on the shapes") {
  std::mt19937_64 rng(29);
  const ModelPtr m = scalar::coboundary(4);
  for (std::size_t n = 3; n <= 5; ++n) {
    const auto trees = enumerate_trees(n);
    const LeafAssignment a = random_leaves(rng, n);
    for (const auto& s : trees)
      for (const auto& t : trees) {
        if (tree_equiv(s, t)) CHECK(gamma_arrow(Recoupling(s, t), a, *m).arrow.is_identity());
        const QMatrix via = gamma_arrow(Recoupling(representative(forget_levels(s)), representative(forget_levels(t))),
                                        a, *m).arrow;
        CHECK(gamma_arrow(Recoupling(s, t), a, *m).arrow == via);
      }
  }
}

TEST_CASE("pseudo mode") {
  std::mt19937_64 rng(31);
  for (std::size_t n = 2; n <= 5; ++n) {
    const LeafAssignment a = random_leaves(rng, n);
    for (const ModelPtr& m : {constant_assoc(), scalar::coboundary(2), scalar::strict()}) {
      const auto rep = pseudo_potential(enumerate_trees(n).front(), a, *m);
      CHECK(rep.vertices == enumerate_trees(n).size());
      CHECK_MESSAGE(rep.violations == 0, m->name() << " " << rep.witness);
    }
  }
  const ModelPtr r = scalar::random(7);
  try {
    gamma_arrow(Recoupling(make_tree({1, 2, 3, 4}), make_tree({4, 3, 2, 1})), {1, 1, 1, 1, 1}, *r, {Mode::Pseudo});
    FAIL("expected ModeViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ModeViolation);
  }
  CHECK_NOTHROW(gamma_arrow(Recoupling(make_tree({1, 2, 3, 4}), make_tree({4, 3, 2, 1})), {1, 1, 1, 1, 1}, *r,
                            {Mode::Pseudo, true}));
}

TEST_CASE("pseudo factorizations disagree once q is nontrivial") {
  // Non-adjacent moves first appear at length 5; a random associator has q ≠ 1.
  std::size_t failing = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const ModelPtr m = scalar::random(seed);
    const auto rep = pseudo_potential(enumerate_trees(5).front(), {1, 1, 1, 1, 1}, *m);
    if (rep.violations > 0) ++failing;
  }
  CHECK(failing > 0);
}

TEST_CASE("split arrows factor through the subtree and the contracted tree") {
  std::mt19937_64 rng(37);
  std::size_t checked = 0;
  for (std::size_t n = 3; n <= 5; ++n) {
    const auto trees = enumerate_trees(n);
    for (const ModelPtr& m : {constant_assoc(), scalar::coboundary(3)}) {
      const LeafAssignment a = random_leaves(rng, n);
      for (const auto& s : trees)
        for (const auto& t : trees) {
          const Recoupling r(s, t);
          for (Level lvl = 2; static_cast<std::size_t>(lvl) < n; ++lvl) {
            if (!is_split_about(r, lvl)) continue;
            const SplitArrows parts = split_about(r, lvl);
            const GammaOptions pseudo{Mode::Pseudo};
            const QMatrix whole = gamma_arrow(r, a, *m, pseudo).arrow;
            const QMatrix gs = gamma_arrow(parts.sigma, a, *m, pseudo).arrow;
            const QMatrix gt = gamma_arrow(parts.tau, a, *m, pseudo).arrow;
            CHECK(whole == gt * gs);
            // σ is the subtree recoupling; τ lives on the contracted tree.
            const RegionSpan span = subtree_regions(s, lvl);
            const LeafAssignment sub(a.begin() + static_cast<long>(span.first),
                                     a.begin() + static_cast<long>(span.last) + 2);
            LeafAssignment collapsed(a.begin(), a.begin() + static_cast<long>(span.first));
            collapsed.push_back(gamma_object(cut_above(s, lvl), sub, *m));
            collapsed.insert(collapsed.end(), a.begin() + static_cast<long>(span.last) + 2, a.end());
            const Recoupling inside(cut_above(s, lvl), cut_above(t, lvl));
            const Recoupling outside(cut_below(s, lvl), cut_below(t, lvl));
            CHECK(num(gs) == num(gamma_arrow(inside, sub, *m, pseudo).arrow));
            CHECK(num(gt) == num(gamma_arrow(outside, collapsed, *m, pseudo).arrow));
            ++checked;
          }
        }
    }
  }
  CHECK(checked > 100);
}
