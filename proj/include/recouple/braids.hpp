#pragma once

// Artin braid words on n strands and the exploded braid groupoid xB_n,
// whose objects are permutations of [n].

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "recouple/permutation.hpp"

namespace recouple {

/// τ_index raised to sign (±1).
struct Generator {
  int index;
  int sign;
  friend auto operator<=>(const Generator&, const Generator&) = default;
};

class BraidWord {
 public:
  /// Throws PositionOutOfRange for indices outside 1..n-1 or signs other than ±1.
  BraidWord(std::size_t strands, std::vector<Generator> letters = {});
  static BraidWord identity(std::size_t strands) { return BraidWord(strands); }

  std::size_t strands() const noexcept { return strands_; }
  const std::vector<Generator>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  int writhe() const noexcept;
  BraidWord inverse() const;
  /// Cancels adjacent τ τ⁻¹ pairs.
  BraidWord free_reduced() const;

  /// Literal equality; use braid_equal for equality in B_n.
  friend bool operator==(const BraidWord&, const BraidWord&) = default;

 private:
  std::size_t strands_;
  std::vector<Generator> letters_;
};

/// a followed by b. Throws StrandMismatch.
BraidWord operator*(const BraidWord& a, const BraidWord& b);

/// V, with V(τ_i) = (i i+1) and V(w1 w2) = V(w1) ∘ V(w2).
Permutation underlying_perm(const BraidWord& w);

/// Handle reduction to a handle-free word; empty iff w is trivial in B_n.
BraidWord handle_reduce(const BraidWord& w);
bool is_trivial(const BraidWord& w);
/// Throws StrandMismatch.
bool braid_equal(const BraidWord& a, const BraidWord& b);

/// An arrow π → π ∘ V(τ) of xB_n. Permutations are acted on from the right
/// so that concatenating words composes arrows.
class XBraidArrow {
 public:
  /// Throws StrandMismatch.
  XBraidArrow(Permutation source, BraidWord word);
  const Permutation& source() const noexcept { return source_; }
  const BraidWord& word() const noexcept { return word_; }
  Permutation target() const;
  XBraidArrow inverse() const { return XBraidArrow(target(), word_.inverse()); }
  /// Same source and braid-equal words.
  bool equivalent(const XBraidArrow& other) const;

 private:
  Permutation source_;
  BraidWord word_;
};

/// a then b; the word is a's letters followed by b's. Throws SourceTargetMismatch.
XBraidArrow compose_x(const XBraidArrow& a, const XBraidArrow& b);

/// "t1 t2' t3"; the empty word prints as "e".
std::string to_string(const BraidWord& w);

}  // namespace recouple
