#pragma once

// Unit and ghost nodules on the leaves of coupling trees. Positions are
// 1-based leaf indices. Nodules are fixed in place by recouplings, so an
// arrow of NCptr is a recoupling paired with a change of nodule types.

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "recouple/recouplings.hpp"
#include "recouple/trees.hpp"

namespace recouple {

/// Object (u, v) of the nodule groupoid over a finite ground set.
struct NoduleObject {
  std::set<int> ground;
  std::set<int> units;
  std::set<int> ghosts;

  /// Throws NodulesOverlap, PositionOutOfRange or AllGhost.
  void validate() const;
  friend bool operator==(const NoduleObject&, const NoduleObject&) = default;
};

/// (u,v) → (u',v') iff u ∪ v = u' ∪ v'. Throws GroundMismatch.
bool nodule_arrow_exists(const NoduleObject& a, const NoduleObject& b);

class NoduledTree {
 public:
  /// Throws NullOperand, PositionOutOfRange, NodulesOverlap or AllGhost.
  NoduledTree(CouplingTree tree, PositionSet units = {}, PositionSet ghosts = {});

  const CouplingTree& tree() const noexcept { return tree_; }
  const PositionSet& units() const noexcept { return units_; }
  const PositionSet& ghosts() const noexcept { return ghosts_; }
  std::size_t length() const noexcept { return tree_.length(); }
  bool has_nodules() const noexcept { return !units_.empty() || !ghosts_.empty(); }
  /// u ∪ v.
  PositionSet support() const;
  /// C_v t.
  CouplingTree contracted() const { return contract(tree_, ghosts_); }
  NoduleObject nodules() const;

  friend bool operator==(const NoduledTree&, const NoduledTree&) = default;

 private:
  CouplingTree tree_;
  PositionSet units_;
  PositionSet ghosts_;
};

/// Throws AllGhostSide when every leaf of the side carries a ghost.
NoduledTree noduled_left(const NoduledTree& nt);
NoduledTree noduled_right(const NoduledTree& nt);

bool noduled_equiv(const NoduledTree& a, const NoduledTree& b);
/// Maximal member of the class under the tree order.
NoduledTree noduled_representative(const NoduledTree& nt);
/// Graft, shift the right factor's nodules by |a|, take the representative.
NoduledTree noduled_tensor_M(const NoduledTree& a, const NoduledTree& b);

/// The unique arrow between two noduled trees, when it exists.
class NoduledArrow {
 public:
  /// Throws LengthMismatch, or SourceTargetMismatch when u ∪ v differ.
  NoduledArrow(NoduledTree source, NoduledTree target);
  static bool exists(const NoduledTree& a, const NoduledTree& b);

  const NoduledTree& source() const noexcept { return source_; }
  const NoduledTree& target() const noexcept { return target_; }
  Recoupling recoupling() const { return Recoupling(source_.tree(), target_.tree()); }
  bool is_identity() const noexcept { return source_ == target_; }
  NoduledArrow inverse() const { return NoduledArrow(target_, source_); }

  friend bool operator==(const NoduledArrow&, const NoduledArrow&) = default;

 private:
  NoduledTree source_;
  NoduledTree target_;
};

NoduledArrow compose(const NoduledArrow& first, const NoduledArrow& second);

/// A reattachment carried out on a noduled tree. Legal only when each of
/// the three rotated blocks keeps a leaf without a ghost.
struct NoduledReattachment {
  NoduledTree tree;
  Level level;
  Direction direction;
  NoduledTree target() const;
  friend bool operator==(const NoduledReattachment&, const NoduledReattachment&) = default;
};

/// Change of a single nodule between unit and ghost at a 1-based position.
struct NoduleChange {
  NoduledTree tree;
  int position;
  bool to_ghost;
  NoduledTree target() const;
  friend bool operator==(const NoduleChange&, const NoduleChange&) = default;
};

using NoduledPrimitive = std::variant<NoduledReattachment, NoduleChange>;
NoduledTree primitive_source(const NoduledPrimitive& p);
NoduledTree primitive_target(const NoduledPrimitive& p);

/// Whether the rotation at level n keeps a ghost-free leaf in every block.
bool reattachment_ghost_free(const NoduledTree& nt, Level n);
/// Throws NotAttached, IllegalMove, or AllGhostSide.
NoduledReattachment noduled_reattachment(const NoduledTree& nt, Level n);
/// Throws PositionOutOfRange if the position carries no nodule, AllGhost
/// if the result would be all ghosts.
NoduleChange nodule_change(const NoduledTree& nt, int position);

/// Every legal primitive out of nt: reattachments by level, then changes by position.
std::vector<NoduledPrimitive> noduled_primitives_from(const NoduledTree& nt);

/// Ghosts to units, adjacent reattachments, then units to ghosts.
std::vector<NoduledPrimitive> factor_noduled(const NoduledArrow& r);
/// Shortest path in the primitive graph with small levels and positions first.
std::vector<NoduledPrimitive> factor_noduled_bfs(const NoduledArrow& r);

std::string to_string(const NoduledTree& nt);
std::string to_string(const NoduledPrimitive& p);

}  // namespace recouple
