#include <numeric>
#include <random>

#include "braid_oracle.hpp"
#include "doctest.h"
#include "recouple/braids.hpp"
#include "recouple/error.hpp"

using namespace recouple;
using oracle::Closure;

namespace {

BraidWord W(std::size_t n, std::vector<Generator> g) { return BraidWord(n, std::move(g)); }


}  // namespace

TEST_CASE("underlying permutation") {
  CHECK(underlying_perm(BraidWord::identity(4)).is_identity());
  CHECK(underlying_perm(W(3, {{1, 1}})) == Permutation::from_cycles("(12)", 3));
  CHECK(underlying_perm(W(3, {{1, -1}})) == Permutation::from_cycles("(12)", 3));
  CHECK(underlying_perm(W(3, {{1, 1}, {2, 1}, {1, 1}})) == underlying_perm(W(3, {{2, 1}, {1, 1}, {2, 1}})));
  CHECK(underlying_perm(W(3, {{1, 1}, {2, 1}, {1, 1}})) == Permutation::from_cycles("(13)", 3));
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    const BraidWord a = oracle::random_word(rng, n, rng() % 13);
    const BraidWord b = oracle::random_word(rng, n, rng() % 13);
    CHECK(underlying_perm(a * b) == compose(underlying_perm(a), underlying_perm(b)));
  }
}

TEST_CASE("braid relations") {
  CHECK(braid_equal(W(3, {{1, 1}, {2, 1}, {1, 1}}), W(3, {{2, 1}, {1, 1}, {2, 1}})));
  CHECK(braid_equal(W(4, {{1, 1}, {3, 1}}), W(4, {{3, 1}, {1, 1}})));
  CHECK(!braid_equal(W(2, {{1, 1}}), W(2, {{1, -1}})));
  CHECK(!braid_equal(W(3, {{1, 1}, {2, 1}}), W(3, {{2, 1}, {1, 1}})));
  CHECK(is_trivial(W(3, {{1, 1}, {2, 1}, {1, -1}, {2, -1}, {1, -1}, {2, 1}})));
  // τ1 τ2 and τ2 τ1 are conjugate but distinct; same permutation class fails too.
  CHECK(!is_trivial(W(3, {{1, 1}, {2, 1}, {1, -1}, {2, -1}})));
  // The full twist squared commutes with everything.
  const BraidWord delta = W(3, {{1, 1}, {2, 1}, {1, 1}});
  const BraidWord center = delta * delta;
  CHECK(braid_equal(center * W(3, {{1, 1}}), W(3, {{1, 1}}) * center));
  try {
    braid_equal(W(3, {}), W(4, {}));
    FAIL("expected StrandMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StrandMismatch);
  }
  CHECK_THROWS_AS(W(3, {{3, 1}}), Error);
  CHECK_THROWS_AS(W(3, {{1, 2}}), Error);
}

TEST_CASE("handle reduction agrees with the Artin action") {
  std::mt19937_64 rng(2024);
  int equal_pairs = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    const BraidWord a = oracle::random_word(rng, n, rng() % 13);
    // Half the time build b by relation steps from a.
    BraidWord b = oracle::random_word(rng, n, rng() % 13);
    if (trial % 2 == 0) {
      b = a;
      for (int k = 0; k < 12; ++k) b = oracle::random_rewrite(rng, b);
    }
    const bool expect = oracle::artin_equal(a, b);
    CHECK(braid_equal(a, b) == expect);
    if (trial % 2 == 0) CHECK(expect);
    equal_pairs += expect;
  }
  CHECK(equal_pairs >= 200);
  // Short words with small strand counts, compared exhaustively.
  std::vector<BraidWord> words;
  for (int len = 0; len <= 3; ++len) {
    std::vector<int> digits(static_cast<std::size_t>(len), 0);
    for (;;) {
      std::vector<Generator> g;
      for (int d : digits) g.push_back({d / 2 + 1, d % 2 ? -1 : 1});
      words.push_back(W(3, g));
      int k = 0;
      while (k < len && ++digits[static_cast<std::size_t>(k)] == 4) digits[static_cast<std::size_t>(k++)] = 0;
      if (k == len) break;
    }
  }
  for (const auto& a : words) {
    for (const auto& b : words) CHECK(braid_equal(a, b) == oracle::artin_equal(a, b));
  }
}

TEST_CASE("relation closure is contained in braid equality") {
  Closure c(4, 4);
  std::mt19937_64 rng(11);
  std::map<int, std::vector<int>> classes;
  for (int k = 0; k < static_cast<int>(c.words.size()); ++k) classes[c.find(k)].push_back(k);
  CHECK(classes.size() < c.words.size());
  for (const auto& [root, members] : classes) {
    const BraidWord r = W(4, c.words[static_cast<std::size_t>(root)]);
    for (int m : members) CHECK(braid_equal(W(4, c.words[static_cast<std::size_t>(m)]), r));
    const int other = static_cast<int>(rng() % c.words.size());
    if (c.find(other) != root) {
      const BraidWord o = W(4, c.words[static_cast<std::size_t>(other)]);
      CHECK(braid_equal(o, r) == oracle::artin_equal(o, r));
    }
  }
}

TEST_CASE("braid equality is a congruence") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 3 + rng() % 3;
    const BraidWord a = oracle::random_word(rng, n, rng() % 10);
    BraidWord b = a, c = a;
    for (int k = 0; k < 8; ++k) b = oracle::random_rewrite(rng, b);
    for (int k = 0; k < 8; ++k) c = oracle::random_rewrite(rng, c);
    const BraidWord x = oracle::random_word(rng, n, rng() % 6);
    CHECK(braid_equal(a, a));
    CHECK(braid_equal(a, b) == braid_equal(b, a));
    CHECK(braid_equal(b, c));
    CHECK(braid_equal(x * b, x * c));
    CHECK(braid_equal(b * x, c * x));
    CHECK(braid_equal(a.free_reduced(), a));
    CHECK(braid_equal(a * a.inverse(), BraidWord::identity(n)));
    CHECK(underlying_perm(handle_reduce(a)) == underlying_perm(a));
  }
}

TEST_CASE("exploded braid groupoid") {
  const std::size_t n = 6;
  const XBraidArrow id(Permutation::identity(n), BraidWord::identity(n));
  const XBraidArrow a(Permutation::identity(n), W(n, {{5, 1}, {4, -1}, {3, 1}, {1, 1}}));
  CHECK(compose_x(id, a).equivalent(a));
  CHECK(compose_x(a, XBraidArrow(a.target(), BraidWord::identity(n))).equivalent(a));
  const XBraidArrow b(a.target(), W(n, {{5, -1}, {2, 1}}));
  const XBraidArrow ab = compose_x(a, b);
  CHECK(ab.source().is_identity());
  CHECK(ab.target() == compose(a.target(), underlying_perm(b.word())));
  const BraidWord expected = W(n, {{5, 1}, {4, -1}, {5, -1}, {3, 1}, {1, 1}, {2, 1}});
  CHECK(braid_equal(ab.word(), expected));
  CHECK(oracle::artin_equal(ab.word(), expected));
  // The opposite concatenation order is a different braid.
  CHECK(!braid_equal(b.word() * a.word(), expected));
  CHECK(!oracle::artin_equal(b.word() * a.word(), expected));

  const XBraidArrow inv = ab.inverse();
  CHECK(inv.source() == ab.target());
  CHECK(inv.target() == ab.source());
  CHECK(compose_x(ab, inv).word().free_reduced().empty());
  try {
    compose_x(b, b);
    FAIL("expected SourceTargetMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SourceTargetMismatch);
  }
  CHECK(to_string(b.word()) == "t5' t2");
  CHECK(to_string(BraidWord::identity(3)) == "e");
}
