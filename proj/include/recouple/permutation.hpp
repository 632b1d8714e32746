#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace recouple {

/// Bijection of {1..n}, stored as its image sequence.
class Permutation {
 public:
  Permutation() = default;
  static Permutation identity(std::size_t n);
  /// Throws NotAPermutation unless `image` is a permutation of 1..size.
  static Permutation from_image(std::vector<int> image);
  static Permutation transposition(std::size_t n, int i, int j);
  /// Cycle notation such as "(13452)" or "(1 3)(2 4)"; "1" or "()" is the identity.
  static Permutation from_cycles(const std::string& text, std::size_t n);

  std::size_t size() const noexcept { return image_.size(); }
  int operator()(int x) const { return image_.at(static_cast<std::size_t>(x - 1)); }
  const std::vector<int>& image() const noexcept { return image_; }
  bool is_identity() const noexcept;
  Permutation inverse() const;

  /// Space-separated cycle notation, e.g. "(1 3 4 5 2)".
  std::string to_cycles() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> image_;
};

/// (f ∘ g)(x) = f(g(x)).
Permutation compose(const Permutation& f, const Permutation& g);

}  // namespace recouple
