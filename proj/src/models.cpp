#include "recouple/models.hpp"

#include <gmp.h>

#include "recouple/error.hpp"

namespace recouple {

QMatrix Model::left_unit(Object) const { throw Error(ErrorCode::NoUnit, name() + " has no unit"); }
QMatrix Model::right_unit(Object) const { throw Error(ErrorCode::NoUnit, name() + " has no unit"); }
QMatrix Model::braid(Object, Object) const {
  throw Error(ErrorCode::NoBraiding, name() + " has no braiding");
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rational pow2(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

}  // namespace

Rational hashed_rational(std::uint64_t seed, std::uint64_t tag, std::initializer_list<Object> args) {
  std::uint64_t h = splitmix(seed ^ splitmix(tag));
  for (Object a : args) h = splitmix(h ^ (static_cast<std::uint64_t>(a) + 0x1234567ULL));
  const long num = static_cast<long>(h % 3) + 1;
  const long den = static_cast<long>((h >> 8) % 3) + 1;
  Rational r(num * ((h >> 16) & 1 ? -1 : 1), den);
  r.canonicalize();
  return r;
}

ScalarModel::ScalarModel(Components c) : c_(std::move(c)) {
  if (!c_.assoc) throw Error(ErrorCode::ParseError, "scalar model without associator");
  if (static_cast<bool>(c_.left_unit) != static_cast<bool>(c_.right_unit)) {
    throw Error(ErrorCode::ParseError, "scalar model needs both unit recouplings or neither");
  }
}

namespace {

QMatrix nonzero(const Rational& v, const char* what) {
  if (v == 0) throw Error(ErrorCode::SingularMatrix, std::string(what) + " component is zero");
  return QMatrix(v);
}

}  // namespace

QMatrix ScalarModel::assoc(Object a, Object b, Object c) const { return nonzero(c_.assoc(a, b, c), "associator"); }

QMatrix ScalarModel::left_unit(Object b) const {
  if (!c_.left_unit) return Model::left_unit(b);
  return nonzero(c_.left_unit(b), "left unit");
}

QMatrix ScalarModel::right_unit(Object a) const {
  if (!c_.right_unit) return Model::right_unit(a);
  return nonzero(c_.right_unit(a), "right unit");
}

QMatrix ScalarModel::braid(Object a, Object b) const {
  if (!c_.braid) return Model::braid(a, b);
  return nonzero(c_.braid(a, b), "braiding");
}

std::vector<QMatrix> ScalarModel::sample_arrows(Object a, std::uint64_t seed, std::size_t count) const {
  std::vector<QMatrix> out;
  for (std::size_t k = 0; k < count; ++k) out.emplace_back(hashed_rational(seed, 99 + k, {a}));
  return out;
}

namespace scalar {

namespace {

enum Tag : std::uint64_t { kAssoc = 1, kLeft, kRight, kBraid, kPhi, kLambda };

ScalarModel::Fn3 coboundary_of(std::uint64_t seed) {
  return [seed](Object a, Object b, Object c) {
    auto phi = [seed](Object x, Object y) { return hashed_rational(seed, kPhi, {x, y}); };
    Rational v = phi(a, b) * phi(a + b, c) / (phi(b, c) * phi(a, b + c));
    return v;
  };
}

ModelPtr make(ScalarModel::Components c) { return std::make_shared<ScalarModel>(std::move(c)); }

}  // namespace

ModelPtr strict() {
  const auto one1 = [](Object) { return Rational(1); };
  return make({"scalar-strict", [](Object, Object, Object) { return Rational(1); }, one1, one1,
               [](Object, Object) { return Rational(1); }});
}

ModelPtr exp2() {
  const auto one1 = [](Object) { return Rational(1); };
  return make({"scalar-exp2", [](Object a, Object, Object c) { return pow2(static_cast<long>(a * c)); }, one1,
               one1, {}});
}

ModelPtr random(std::uint64_t seed, bool with_unit, bool with_braid) {
  ScalarModel::Components c;
  c.name = "scalar-random";
  c.assoc = [seed](Object a, Object b, Object x) { return hashed_rational(seed, kAssoc, {a, b, x}); };
  if (with_unit) {
    c.left_unit = [seed](Object b) { return hashed_rational(seed, kLeft, {b}); };
    c.right_unit = [seed](Object a) { return hashed_rational(seed, kRight, {a}); };
  }
  if (with_braid) c.braid = [seed](Object a, Object b) { return hashed_rational(seed, kBraid, {a, b}); };
  return make(std::move(c));
}

ModelPtr coboundary(std::uint64_t seed) {
  return make({"scalar-coboundary", coboundary_of(seed),
               [seed](Object b) { return hashed_rational(seed, kLeft, {b}); },
               [seed](Object a) { return hashed_rational(seed, kRight, {a}); }, {}});
}

ModelPtr ghost_free(std::uint64_t seed) {
  const Rational lambda = hashed_rational(seed, kLambda, {});
  return make({"scalar-ghost-free", coboundary_of(seed),
               [seed, lambda](Object b) -> Rational { return lambda * hashed_rational(seed, kPhi, {0, b}); },
               [seed, lambda](Object a) -> Rational { return lambda * hashed_rational(seed, kPhi, {a, 0}); }, {}});
}

ModelPtr gauged_bicharacter(std::uint64_t seed, const Rational& beta) {
  if (beta == 0) throw Error(ErrorCode::ParseError, "bicharacter base must be nonzero");
  return make({"scalar-bicharacter", coboundary_of(seed),
               [seed](Object b) { return hashed_rational(seed, kLeft, {b}); },
               [seed](Object a) { return hashed_rational(seed, kRight, {a}); },
               [seed, beta](Object a, Object b) -> Rational {
                 Rational chi = 1;
                 for (Object k = 0; k < a * b; ++k) chi *= beta;
                 return chi * hashed_rational(seed, kPhi, {a, b}) / hashed_rational(seed, kPhi, {b, a});
               }});
}

ModelPtr broken_braid(std::uint64_t seed) {
  // braid scalars cancel out of the quasi-Yang-Baxter square, so the associator has to be generic too
  return make({"scalar-broken-braid", [seed](Object a, Object b, Object x) { return hashed_rational(seed, kAssoc, {a, b, x}); },
               [seed](Object b) { return hashed_rational(seed, kLeft, {b}); },
               [seed](Object a) { return hashed_rational(seed, kRight, {a}); },
               [seed](Object a, Object b) { return hashed_rational(seed, kBraid, {a, b}); }});
}

}  // namespace scalar

MatrixModel::MatrixModel(Rational q) : q_(std::move(q)) {
  if (q_ == 0) throw Error(ErrorCode::ParseError, "Hecke parameter must be nonzero");
  const Rational z = 0, o = 1;
  r_ = QMatrix::from_rows({{q_, z, z, z}, {z, z, o, z}, {z, o, q_ - 1 / q_, z}, {z, z, z, q_}});
  r_inv_ = r_.inverse();
}

std::string MatrixModel::name() const { return q_ == 1 ? "matrix-swap" : "matrix-hecke(q=" + to_string(q_) + ")"; }

std::size_t MatrixModel::dim(Object a) const { return std::size_t{1} << a; }

QMatrix MatrixModel::assoc(Object a, Object b, Object c) const { return id(a + b + c); }

QMatrix MatrixModel::r_at(Object a, unsigned i, bool inverse) const {
  if (i < 1 || i + 1 > a) throw Error(ErrorCode::PositionOutOfRange, "R position outside the tensor power");
  return kron(kron(id(i - 1), inverse ? r_inv_ : r_), id(a - i - 1));
}

QMatrix MatrixModel::braid(Object a, Object b) const {
  if (a == 0 || b == 0) return id(a + b);
  if (a == 1) {
    if (b == 1) return r_;
    // 𝔠_{1,1⊗(b-1)} = (1 ⊗ 𝔠_{1,b-1}) (𝔠_{1,1} ⊗ 1)
    return kron(id(1), braid(1, b - 1)) * kron(r_, id(b - 1));
  }
  // 𝔠_{1⊗(a-1),b} = (𝔠_{1,b} ⊗ 1) (1 ⊗ 𝔠_{a-1,b})
  return kron(braid(1, b), id(a - 1)) * kron(id(1), braid(a - 1, b));
}

std::vector<QMatrix> MatrixModel::sample_arrows(Object a, std::uint64_t seed, std::size_t count) const {
  std::vector<QMatrix> out;
  for (std::size_t k = 0; k < count; ++k) {
    QMatrix f = QMatrix::identity(dim(a));
    const Rational s = hashed_rational(seed, 500 + k, {a});
    for (std::size_t i = 0; i < dim(a); ++i) f(i, i) = s;
    if (a >= 2) {
      std::uint64_t h = splitmix(seed * 131 + k);
      for (int step = 0; step < 3; ++step, h = splitmix(h)) {
        const unsigned pos = static_cast<unsigned>(h % (a - 1)) + 1;
        f = f * r_at(a, pos, (h >> 20) & 1);
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

ModelPtr hecke_model(const Rational& q) { return std::make_shared<MatrixModel>(q); }

QMatrix deformativity(const Model& m, Object a, Object b, Object c, Object d) {
  return m.assoc_inv(a, b, c + d) * kron(m.id(a), m.assoc(b, c, d)) * m.assoc(a, b + c, d) *
         kron(m.assoc(a, b, c), m.id(d)) * m.assoc_inv(a + b, c, d);
}

bool check_pentagon(const Model& m, Object a, Object b, Object c, Object d) {
  return deformativity(m, a, b, c, d).is_identity();
}

bool check_dodecagons(const Model& m, Object a, Object b, Object c, Object d, Object f) {
  const QMatrix left = kron(m.assoc(a, b, c), m.id(d + f));
  const bool first = left * deformativity(m, a + b, c, d, f) == deformativity(m, a, b + c, d, f) * left;
  const QMatrix right = kron(m.id(a + b), m.assoc(c, d, f));
  const bool second = right * deformativity(m, a, b, c + d, f) == deformativity(m, a, b, c, d + f) * right;
  return first && second;
}

std::string to_string(Ghost g) {
  switch (g) {
    case Ghost::G12: return "g(12)";
    case Ghost::G23: return "g(23)";
    case Ghost::G13: return "g(13)";
    case Ghost::G234: return "g(234)";
    case Ghost::G134: return "g(134)";
    case Ghost::G124: return "g(124)";
    case Ghost::G123: return "g(123)";
  }
  return "g(?)";
}

QMatrix ghost(const Model& m, Ghost g, const std::vector<Object>& o) {
  if (!m.has_unit()) throw Error(ErrorCode::NoUnit, m.name() + " has no unit");
  const bool pair = g == Ghost::G12 || g == Ghost::G23 || g == Ghost::G13;
  if (o.size() != (pair ? 2u : 3u)) throw Error(ErrorCode::LengthMismatch, to_string(g) + " arity");
  const Object e = m.unit();
  switch (g) {
    case Ghost::G23: {  // b⊗c
      const Object b = o[0], c = o[1];
      return m.left_unit(b + c) * m.assoc(e, b, c) * kron(m.left_unit(b).inverse(), m.id(c));
    }
    case Ghost::G13: {  // a⊗c
      const Object a = o[0], c = o[1];
      return kron(m.id(a), m.left_unit(c)) * m.assoc(a, e, c) * kron(m.right_unit(a).inverse(), m.id(c));
    }
    case Ghost::G12: {  // a⊗b
      const Object a = o[0], b = o[1];
      return kron(m.id(a), m.right_unit(b)) * m.assoc(a, b, e) * m.right_unit(a + b).inverse();
    }
    case Ghost::G234: {  // b⊗(c⊗d)
      const Object b = o[0], c = o[1], d = o[2];
      return kron(m.left_unit(b), m.id(c + d)) * deformativity(m, e, b, c, d) *
             kron(m.left_unit(b).inverse(), m.id(c + d));
    }
    case Ghost::G134: {  // a⊗(c⊗d)
      const Object a = o[0], c = o[1], d = o[2];
      return kron(m.right_unit(a), m.id(c + d)) * deformativity(m, a, e, c, d) *
             kron(m.right_unit(a).inverse(), m.id(c + d));
    }
    case Ghost::G124: {  // (a⊗b)⊗d
      const Object a = o[0], b = o[1], d = o[2];
      return kron(m.id(a + b), m.left_unit(d)) * deformativity(m, a, b, e, d) *
             kron(m.id(a + b), m.left_unit(d).inverse());
    }
    case Ghost::G123: {  // (a⊗b)⊗c
      const Object a = o[0], b = o[1], c = o[2];
      return kron(m.id(a + b), m.right_unit(c)) * deformativity(m, a, b, c, e) *
             kron(m.id(a + b), m.right_unit(c).inverse());
    }
  }
  throw Error(ErrorCode::ParseError, "unknown ghost");
}

bool check_triangles(const Model& m, Object a, Object b, Object c) {
  const Object e = m.unit();
  // The plain triangles, stated without reference to ghosts.
  const bool t13 = kron(m.id(a), m.left_unit(c)) * m.assoc(a, e, c) == kron(m.right_unit(a), m.id(c));
  const bool t23 = m.left_unit(b + c) * m.assoc(e, b, c) == kron(m.left_unit(b), m.id(c));
  const bool t12 = kron(m.id(a), m.right_unit(b)) * m.assoc(a, b, e) == m.right_unit(a + b);
  return t13 && t23 && t12;
}

bool check_hexagons(const Model& m, Object a, Object b, Object c) {
  if (!m.has_braiding()) throw Error(ErrorCode::NoBraiding, m.name() + " has no braiding");
  const QMatrix h1 = m.assoc(c, a, b) * kron(m.braid(a, c), m.id(b)) * m.assoc_inv(a, c, b) *
                     kron(m.id(a), m.braid(b, c)) * m.assoc(a, b, c);
  const QMatrix h2 = m.assoc_inv(b, c, a) * kron(m.id(b), m.braid(a, c)) * m.assoc(b, a, c) *
                     kron(m.braid(a, b), m.id(c)) * m.assoc_inv(a, b, c);
  return h1 == m.braid(a + b, c) && h2 == m.braid(a, b + c);
}

QSquares check_q_squares(const Model& m, Object a, Object b, Object c, Object d) {
  if (!m.has_braiding()) throw Error(ErrorCode::NoBraiding, m.name() + " has no braiding");
  const QMatrix cc = m.braid(a + b, c + d);
  QSquares s;
  s.braid_square = deformativity(m, c, d, a, b) * cc * deformativity(m, a, b, c, d) == cc;
  const QMatrix cab = kron(m.braid(a, b), m.id(c + d));
  s.pseudo_square = cab * deformativity(m, a, b, c, d) == deformativity(m, b, a, c, d) * cab;
  return s;
}

bool check_symmetry(const Model& m, Object a, Object b) {
  if (!m.has_braiding()) throw Error(ErrorCode::NoBraiding, m.name() + " has no braiding");
  return (m.braid(b, a) * m.braid(a, b)).is_identity();
}

std::pair<QMatrix, QMatrix> quasi_yang_baxter_sides(const Model& m, Object a, Object b, Object c) {
  if (!m.has_braiding()) throw Error(ErrorCode::NoBraiding, m.name() + " has no braiding");
  const QMatrix left = m.assoc(c, b, a) * kron(m.braid(b, c), m.id(a)) * m.assoc_inv(b, c, a) *
                       kron(m.id(b), m.braid(a, c)) * m.assoc(b, a, c) * kron(m.braid(a, b), m.id(c));
  const QMatrix right = kron(m.id(c), m.braid(a, b)) * m.assoc(c, a, b) * kron(m.braid(a, c), m.id(b)) *
                        m.assoc_inv(a, c, b) * kron(m.id(a), m.braid(b, c)) * m.assoc(a, b, c);
  return {left, right};
}

bool check_quasi_yang_baxter(const Model& m, Object a, Object b, Object c) {
  const auto [l, r] = quasi_yang_baxter_sides(m, a, b, c);
  return l == r;
}

bool check_naturality(const Model& m, Object max_weight, std::uint64_t seed, std::size_t samples) {
  for (Object a = 0; a <= max_weight; ++a) {
    for (Object b = 0; a + b <= max_weight; ++b) {
      const auto fs = m.sample_arrows(a, seed + a, samples);
      const auto gs = m.sample_arrows(b, seed * 7 + b, samples);
      for (std::size_t k = 0; k < samples; ++k) {
        const QMatrix& f = fs[k];
        const QMatrix& g = gs[k];
        if (m.has_braiding() && !(m.braid(a, b) * kron(f, g) == kron(g, f) * m.braid(a, b))) return false;
        if (m.has_unit() && b == 0) {
          if (!(m.left_unit(a) * kron(m.id(0), f) == f * m.left_unit(a))) return false;
          if (!(m.right_unit(a) * kron(f, m.id(0)) == f * m.right_unit(a))) return false;
        }
        for (Object c = 0; a + b + c <= max_weight; ++c) {
          const QMatrix h = m.sample_arrows(c, seed * 13 + c + k, 1).front();
          const QMatrix x = m.assoc(a, b, c);
          if (!(m.assoc_inv(a, b, c) * x).is_identity()) return false;
          if (!(x * kron(kron(f, g), h) == kron(f, kron(g, h)) * x)) return false;
        }
      }
    }
  }
  return true;
}

namespace {

std::string tuple_string(std::initializer_list<Object> xs) {
  std::string s = "(";
  bool first = true;
  for (Object x : xs) {
    if (!first) s += ",";
    s += std::to_string(x);
    first = false;
  }
  return s + ")";
}

void record(ConstraintReport& r, bool ok, std::initializer_list<Object> args) {
  ++r.evaluated;
  if (!ok) {
    if (r.failed == 0) r.first_failure = tuple_string(args);
    ++r.failed;
  }
}

}  // namespace

std::vector<ConstraintReport> check_model(const Model& m, Object lo, Object hi) {
  constexpr std::size_t kMaxDim = 64;
  auto small = [&](Object total) { return m.dim(total) <= kMaxDim; };
  auto named = [](const char* n) {
    ConstraintReport r;
    r.constraint = n;
    return r;
  };
  ConstraintReport natural = named("naturality"), pent = named("pentagon"), dodec = named("dodecagons"),
                   tri = named("triangles"), hex = named("hexagons"), bq = named("braid q-square"),
                   pq = named("pseudo q-square"), sym = named("symmetry"), qyb = named("quasi-Yang-Baxter");
  record(natural, check_naturality(m, std::min<Object>(hi * 2, 4), 17, 2), {hi});
  for (Object a = lo; a <= hi; ++a) {
    for (Object b = lo; b <= hi; ++b) {
      if (m.has_braiding() && small(a + b)) record(sym, check_symmetry(m, a, b), {a, b});
      for (Object c = lo; c <= hi; ++c) {
        if (!small(a + b + c)) continue;
        if (m.has_unit()) record(tri, check_triangles(m, a, b, c), {a, b, c});
        if (m.has_braiding()) {
          record(hex, check_hexagons(m, a, b, c), {a, b, c});
          record(qyb, check_quasi_yang_baxter(m, a, b, c), {a, b, c});
        }
        for (Object d = lo; d <= hi; ++d) {
          if (!small(a + b + c + d)) continue;
          record(pent, check_pentagon(m, a, b, c, d), {a, b, c, d});
          if (m.has_braiding()) {
            const QSquares s = check_q_squares(m, a, b, c, d);
            record(bq, s.braid_square, {a, b, c, d});
            record(pq, s.pseudo_square, {a, b, c, d});
          }
          for (Object f = lo; f <= hi; ++f) {
            if (small(a + b + c + d + f)) record(dodec, check_dodecagons(m, a, b, c, d, f), {a, b, c, d, f});
          }
        }
      }
    }
  }
  std::vector<ConstraintReport> out{natural, pent, dodec};
  if (m.has_unit()) out.push_back(tri);
  if (m.has_braiding()) out.insert(out.end(), {hex, bq, pq, sym, qyb});
  return out;
}

}  // namespace recouple
