#pragma once

// Γ: evaluation of recouplings in a model at a leaf assignment.
//
// Objects are evaluated pointwise, so Γ(t) at (a1..an) is the bracketed
// tensor word of the a's; with ⊗ = + on weights that is just the total
// weight, and the bracketing only matters for arrows.

#include <string>
#include <variant>
#include <vector>

#include "recouple/braids.hpp"
#include "recouple/models.hpp"
#include "recouple/nodules.hpp"
#include "recouple/recouplings.hpp"

namespace recouple {

using LeafAssignment = std::vector<Object>;

struct GammaResult {
  Object source;
  Object target;
  QMatrix arrow;
};

/// Throws LengthMismatch.
Object gamma_object(const CouplingTree& t, const LeafAssignment& leaves, const Model& m);
/// "(a⊗b)⊗c" style word over the given leaf names.
std::string gamma_word(const CouplingTree& t, const std::vector<std::string>& names);

/// How the ambient context ∧_m t is applied around a local component.
enum class Embedding { Structural, Flattened };

/// Γρ for an adjacent reattachment. Throws IllegalMove.
QMatrix gamma_reattachment(const Reattachment& r, const LeafAssignment& leaves, const Model& m,
                           Embedding e = Embedding::Flattened);
QMatrix gamma_pseudo_reattachment(const PseudoReattachment& r, const LeafAssignment& leaves, const Model& m,
                                  Embedding e = Embedding::Flattened);

enum class Mode { Premonoidal, Pseudo };

struct GammaOptions {
  Mode mode = Mode::Premonoidal;
  /// Evaluate in pseudo mode even when the dodecagons fail (negative tests).
  bool allow_mode_violation = false;
};

/// Composite along factor_primitive (or factor_primitive_pseudo in pseudo
/// mode). Pseudo mode throws ModeViolation if the dodecagons fail on
/// tuples of the leaf objects.
GammaResult gamma_arrow(const Recoupling& r, const LeafAssignment& leaves, const Model& m,
                        GammaOptions options = {});
/// Composite along an explicit sequence; throws NotComposable on a gap.
QMatrix gamma_path(const std::vector<Reattachment>& path, const LeafAssignment& leaves, const Model& m);
QMatrix gamma_pseudo_path(const std::vector<PseudoReattachment>& path, const LeafAssignment& leaves,
                          const Model& m);
/// Whether the dodecagons hold on the tuples the options would sample.
bool dodecagons_on_leaves(const Model& m, const LeafAssignment& leaves);

// Noduled trees: the assignment covers all n positions, positions in u ∪ v
// carry the unit object, ghost positions are dropped from Γ.

/// Throws LengthMismatch, or EndpointMismatch when a noduled position is not e.
Object gamma_noduled_object(const NoduledTree& nt, const LeafAssignment& leaves, const Model& m);
QMatrix gamma_noduled_reattachment(const NoduledReattachment& r, const LeafAssignment& leaves, const Model& m);
/// 𝔩 for a leaf that is a left child in the ghost-contracted tree, 𝔯 otherwise.
QMatrix gamma_nodule_change(const NoduleChange& c, const LeafAssignment& leaves, const Model& m);
QMatrix gamma_noduled_primitive(const NoduledPrimitive& p, const LeafAssignment& leaves, const Model& m);
QMatrix gamma_noduled_path(const std::vector<NoduledPrimitive>& path, const LeafAssignment& leaves,
                           const Model& m);
GammaResult gamma_noduled(const NoduledArrow& r, const LeafAssignment& leaves, const Model& m);

// BCptr = Cptr × xB. Tree position k carries the strand π(k), so a leaf
// assignment is indexed by strands.

struct BraidedTree {
  CouplingTree tree;
  Permutation perm;
  friend bool operator==(const BraidedTree&, const BraidedTree&) = default;
};

/// Objects at tree positions: b_k = a_{π(k)}.
LeafAssignment permuted_leaves(const Permutation& perm, const LeafAssignment& strands);

/// Exchange of the leaves at positions index, index+1 (a cherry of the tree).
struct Interchange {
  BraidedTree object;
  int index;
  int sign;
  BraidedTree target() const;
};

/// A reattachment on the tree with the permutation carried along.
struct BraidedReattachment {
  Reattachment move;
  Permutation perm;
};

using BraidedPrimitive = std::variant<BraidedReattachment, Interchange>;

/// Throws NotPrimitiveInterchange unless positions index, index+1 form a cherry.
Interchange interchange(const BraidedTree& object, int index, int sign);
bool is_cherry(const CouplingTree& t, int index);
QMatrix gamma_interchange(const Interchange& p, const LeafAssignment& strands, const Model& m);

class BraidedArrow {
 public:
  /// Throws LengthMismatch or StrandMismatch.
  BraidedArrow(BraidedTree source, CouplingTree target, BraidWord word);
  const BraidedTree& source() const noexcept { return source_; }
  BraidedTree target() const;
  const BraidWord& word() const noexcept { return word_; }
  const CouplingTree& target_tree() const noexcept { return target_tree_; }

 private:
  BraidedTree source_;
  CouplingTree target_tree_;
  BraidWord word_;
};

/// The tree whose region index-1 carries the top level and whose other
/// regions are ranked left to right; positions index, index+1 form a cherry.
CouplingTree cherry_tree(std::size_t length, int index);

/// One interchange per letter. Before each letter the tree is moved to
/// cherry_tree unless it already has the needed cherry.
std::vector<BraidedPrimitive> factor_braided(const BraidedArrow& a);
QMatrix gamma_braided_path(const std::vector<BraidedPrimitive>& path, const LeafAssignment& strands,
                           const Model& m);
GammaResult gamma_bcptr(const BraidedArrow& a, const LeafAssignment& strands, const Model& m);

// BNCptr: nodule positions are tree positions of the source; nodules
// travel with their strands through interchanges.

class BraidedNoduledArrow {
 public:
  /// Throws LengthMismatch, StrandMismatch or SourceTargetMismatch.
  BraidedNoduledArrow(NoduledTree source, Permutation perm, NoduledTree target, BraidWord word);
  const NoduledTree& source() const noexcept { return source_; }
  const NoduledTree& target() const noexcept { return target_; }
  const Permutation& perm() const noexcept { return perm_; }
  const BraidWord& word() const noexcept { return word_; }
  Permutation target_perm() const;

 private:
  NoduledTree source_;
  Permutation perm_;
  NoduledTree target_;
  BraidWord word_;
};

/// Ghosts to units, the BCptr composite on the full tree, units to ghosts.
GammaResult gamma_bncptr(const BraidedNoduledArrow& a, const LeafAssignment& strands, const Model& m);

// can = ev ∘ (Γ × 1). Component arrows are indexed by strands; both
// evaluation orders (Gf)τ_a and (τ_b)(Ff) are computed and compared.

/// Throws EndpointMismatch or NaturalityViolation.
QMatrix evaluate(const QMatrix& gamma, const std::vector<int>& source_strands,
                 const std::vector<int>& target_strands, const std::vector<QMatrix>& fs);
QMatrix canonical(const Recoupling& r, const LeafAssignment& leaves, const std::vector<QMatrix>& fs,
                  const Model& m);
QMatrix canonical(const BraidedArrow& a, const LeafAssignment& strands, const std::vector<QMatrix>& fs,
                  const Model& m);

}  // namespace recouple
