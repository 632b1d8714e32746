#pragma once

// Arrows of the groupoid Cptr. Between two trees of equal length there is
// exactly one arrow; it is stored as the (source, target) pair and its
// permutation of levels is derived on demand.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recouple/permutation.hpp"
#include "recouple/trees.hpp"

namespace recouple {

class Recoupling {
 public:
  /// Throws LengthMismatch.
  Recoupling(CouplingTree source, CouplingTree target);
  static Recoupling identity(const CouplingTree& t) { return Recoupling(t, t); }

  const CouplingTree& source() const noexcept { return source_; }
  const CouplingTree& target() const noexcept { return target_; }
  std::size_t length() const noexcept { return source_.length(); }
  bool is_identity() const noexcept { return source_ == target_; }
  Recoupling inverse() const { return Recoupling(target_, source_); }

  /// π = s ∘ t⁻¹: the source level occupying the region where the target
  /// has level ℓ.
  Permutation level_permutation() const;

  friend bool operator==(const Recoupling&, const Recoupling&) = default;

 private:
  CouplingTree source_;
  CouplingTree target_;
};

Recoupling recoupling(const CouplingTree& s, const CouplingTree& t);
/// `first` then `second`; throws NotComposable unless first.target == second.source.
Recoupling compose(const Recoupling& first, const Recoupling& second);

enum class Direction { Left, Right };
std::string to_string(Direction d);

/// A left move takes A(BC) to (AB)C, a right move the reverse.
struct Reattachment {
  CouplingTree tree;
  Level level;
  Direction direction;
  CouplingTree target() const;
  friend bool operator==(const Reattachment&, const Reattachment&) = default;
};

/// Non-adjacent rotation at `level` with the nearest branch above it.
struct PseudoReattachment {
  CouplingTree tree;
  Level level;
  Level partner;
  Direction direction;
  CouplingTree target() const;
  friend bool operator==(const PseudoReattachment&, const PseudoReattachment&) = default;
};

/// Whether n ≤_t n+1, i.e. a reattachment at n is legal.
bool can_reattach(const CouplingTree& t, Level n);
/// Left iff t⁻¹(n) < t⁻¹(n+1). Throws NotAttached.
Direction reattachment_direction(const CouplingTree& t, Level n);
/// Throws NotAttached, or IllegalMove if `direction` contradicts the tree.
CouplingTree apply_reattachment(const CouplingTree& t, Level n, Direction direction);
/// Every legal move out of t, by increasing level.
std::vector<Reattachment> reattachments_from(const CouplingTree& t);

/// min{m : n <_t m}, if the branch at n has a branch above it.
std::optional<Level> pseudo_partner(const CouplingTree& t, Level n);
/// Throws NotAttached when n has no branch above it.
PseudoReattachment pseudo_reattachment(const CouplingTree& t, Level n);
std::vector<PseudoReattachment> pseudo_reattachments_from(const CouplingTree& t);

/// Deterministic BFS; moves at smaller levels are tried first.
std::vector<Reattachment> factor_primitive(const Recoupling& r);
std::vector<PseudoReattachment> factor_primitive_pseudo(const Recoupling& r);

/// σ acts on {l : m <_s l}, τ on the rest; σ: s → u and τ: u → t.
struct SplitArrows {
  Recoupling sigma;
  Recoupling tau;
};
bool is_split_about(const Recoupling& r, Level m);
/// Throws NotSplit.
SplitArrows split_about(const Recoupling& r, Level m);

/// For an arrow fixing the root region: the induced recouplings of the
/// left and right subtrees. Throws NotSplit.
std::pair<Recoupling, Recoupling> root_sides(const Recoupling& r);

}  // namespace recouple
