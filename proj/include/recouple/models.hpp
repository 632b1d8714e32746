#pragma once

// Model categories carrying (⊗, 𝔞, 𝔩, 𝔯, 𝔠, e). Objects are weights
// (naturals) with a ⊗ b = a + b and e = 0; every arrow is an automorphism,
// represented as a square rational matrix of size dim(a). Composition is
// matrix product (f ∘ g = f * g) and the tensor of arrows is kron.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "recouple/rational.hpp"

namespace recouple {

using Object = unsigned;

class Model {
 public:
  virtual ~Model() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dim(Object a) const = 0;

  /// 𝔞_{a,b,c}: (a⊗b)⊗c → a⊗(b⊗c).
  virtual QMatrix assoc(Object a, Object b, Object c) const = 0;
  virtual QMatrix assoc_inv(Object a, Object b, Object c) const { return assoc(a, b, c).inverse(); }

  virtual bool has_unit() const { return false; }
  /// 𝔩_b: e⊗b → b. Throws NoUnit.
  virtual QMatrix left_unit(Object b) const;
  /// 𝔯_a: a⊗e → a. Throws NoUnit.
  virtual QMatrix right_unit(Object a) const;

  virtual bool has_braiding() const { return false; }
  /// 𝔠_{a,b}: a⊗b → b⊗a. Throws NoBraiding.
  virtual QMatrix braid(Object a, Object b) const;

  /// Automorphisms of `a` against which naturality is sampled.
  virtual std::vector<QMatrix> sample_arrows(Object a, std::uint64_t seed, std::size_t count) const = 0;

  Object unit() const noexcept { return 0; }
  QMatrix id(Object a) const { return QMatrix::identity(dim(a)); }
};

using ModelPtr = std::shared_ptr<const Model>;

/// Scalar model: dim ≡ 1, each component a nonzero rational function of
/// the object weights.
class ScalarModel : public Model {
 public:
  using Fn3 = std::function<Rational(Object, Object, Object)>;
  using Fn2 = std::function<Rational(Object, Object)>;
  using Fn1 = std::function<Rational(Object)>;

  struct Components {
    std::string name;
    Fn3 assoc;
    Fn1 left_unit;   // empty: no unit structure
    Fn1 right_unit;
    Fn2 braid;       // empty: no braiding
  };

  explicit ScalarModel(Components c);

  std::string name() const override { return c_.name; }
  std::size_t dim(Object) const override { return 1; }
  QMatrix assoc(Object a, Object b, Object c) const override;
  bool has_unit() const override { return static_cast<bool>(c_.left_unit); }
  QMatrix left_unit(Object b) const override;
  QMatrix right_unit(Object a) const override;
  bool has_braiding() const override { return static_cast<bool>(c_.braid); }
  QMatrix braid(Object a, Object b) const override;
  std::vector<QMatrix> sample_arrows(Object a, std::uint64_t seed, std::size_t count) const override;

 private:
  Components c_;
};

/// Deterministic nonzero rational in [-3,3] with small denominators,
/// hashed from a seed, a component tag and the arguments.
Rational hashed_rational(std::uint64_t seed, std::uint64_t tag, std::initializer_list<Object> args);

namespace scalar {
/// All components 1: strict, symmetric, with unit.
ModelPtr strict();
/// 𝔞 = 2^(a·c), units 1, no braiding: 𝔮 = 2^(-a·d).
ModelPtr exp2();
/// Seeded random 𝔞 (and units / braiding when requested); generically not monoidal.
ModelPtr random(std::uint64_t seed, bool with_unit = true, bool with_braid = true);
/// 𝔞 = ∂φ for a seeded random φ: monoidal (𝔮 = 1) but not strict; random units.
ModelPtr coboundary(std::uint64_t seed);
/// Coboundary 𝔞 with units tied to φ so that all ghosts vanish.
ModelPtr ghost_free(std::uint64_t seed);
/// Coboundary 𝔞 with the gauge-transported bicharacter braiding β^(ab):
/// hexagons hold; symmetric exactly when β = ±1.
ModelPtr gauged_bicharacter(std::uint64_t seed, const Rational& beta);
/// Coboundary 𝔞 with a random braiding: hexagons fail generically.
ModelPtr broken_braid(std::uint64_t seed);
}  // namespace scalar

/// Tensor powers of a 2-dimensional space with strict 𝔞 and 𝔠 extended
/// from the Hecke-type R-matrix by the strict hexagon recursion.
class MatrixModel : public Model {
 public:
  /// q = 1 gives the symmetric swap model.
  explicit MatrixModel(Rational q);

  std::string name() const override;
  std::size_t dim(Object a) const override;
  QMatrix assoc(Object a, Object b, Object c) const override;
  bool has_unit() const override { return true; }
  QMatrix left_unit(Object b) const override { return id(b); }
  QMatrix right_unit(Object a) const override { return id(a); }
  bool has_braiding() const override { return true; }
  QMatrix braid(Object a, Object b) const override;
  std::vector<QMatrix> sample_arrows(Object a, std::uint64_t seed, std::size_t count) const override;

  const QMatrix& r_matrix() const noexcept { return r_; }
  /// R acting on factors i, i+1 (1-based) of the a-fold power.
  QMatrix r_at(Object a, unsigned i, bool inverse = false) const;

 private:
  Rational q_;
  QMatrix r_;
  QMatrix r_inv_;
};

ModelPtr hecke_model(const Rational& q);

// Derived structure.

/// 𝔮_{a,b,c,d}, an automorphism of (a⊗b)⊗(c⊗d).
QMatrix deformativity(const Model& m, Object a, Object b, Object c, Object d);
bool check_pentagon(const Model& m, Object a, Object b, Object c, Object d);
bool check_dodecagons(const Model& m, Object a, Object b, Object c, Object d, Object f);

enum class Ghost { G12, G23, G13, G234, G134, G124, G123 };
std::string to_string(Ghost g);
/// 𝔤(12), 𝔤(23), 𝔤(13) take two objects; the deformativity ghosts three.
QMatrix ghost(const Model& m, Ghost g, const std::vector<Object>& objects);
/// All three ghostly triangles reduce to the plain triangles.
bool check_triangles(const Model& m, Object a, Object b, Object c);

bool check_hexagons(const Model& m, Object a, Object b, Object c);
struct QSquares {
  bool braid_square;   // 𝔠_{a⊗b,c⊗d} = 𝔮_{c,d,a,b} 𝔠_{a⊗b,c⊗d} 𝔮_{a,b,c,d}
  bool pseudo_square;  // (𝔠_{a,b}⊗1) 𝔮_{a,b,c,d} = 𝔮_{b,a,c,d} (𝔠_{a,b}⊗1)
};
QSquares check_q_squares(const Model& m, Object a, Object b, Object c, Object d);
bool check_symmetry(const Model& m, Object a, Object b);

/// The two outer composites (a⊗b)⊗c → c⊗(b⊗a) of the quasi-Yang–Baxter diagram.
std::pair<QMatrix, QMatrix> quasi_yang_baxter_sides(const Model& m, Object a, Object b, Object c);
bool check_quasi_yang_baxter(const Model& m, Object a, Object b, Object c);

/// Sampled naturality of 𝔞, 𝔩, 𝔯, 𝔠 and 𝔞⁻¹𝔞 = 1 up to total weight `max_weight`.
bool check_naturality(const Model& m, Object max_weight, std::uint64_t seed, std::size_t samples);

/// One named constraint family evaluated over all object tuples with
/// weights in [lo, hi].
struct ConstraintReport {
  std::string constraint;
  std::size_t evaluated = 0;
  std::size_t failed = 0;
  std::string first_failure;
};
std::vector<ConstraintReport> check_model(const Model& m, Object lo, Object hi);

/// Model from a JSON file path, inline JSON text, or "builtin:<name>".
/// `seed` applies to seeded builtins and to configs without a seed.
/// Throws ParseError.
ModelPtr load_model(const std::string& spec, std::uint64_t seed = 1);
ModelPtr model_from_json(const std::string& json_text, std::uint64_t seed = 1);
ModelPtr builtin_model(const std::string& name, std::uint64_t seed = 1);
std::vector<std::string> builtin_model_names();

/// Seeded search for a pseudo-monoidal scalar model that is not monoidal,
/// over 𝔞 = 2^P(a,b,c) with P an integer polynomial. Reports the first hit.
struct SearchResult {
  std::size_t tried = 0;
  bool found = false;
  std::string description;
};
SearchResult search_pseudo_monoidal(std::uint64_t seed, std::size_t trials, Object max_weight);

}  // namespace recouple
