#include <array>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "recouple/error.hpp"
#include "recouple/models.hpp"

namespace recouple {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

Rational rational_of(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw Error(ErrorCode::ParseError, "expected an integer or a rational string, got " + v.dump());
}

std::vector<Object> key_objects(const std::string& key, std::size_t arity) {
  std::vector<Object> out;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      out.push_back(static_cast<Object>(std::stoul(part)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad object tuple '" + key + "'");
    }
  }
  if (out.size() != arity) throw Error(ErrorCode::ParseError, "tuple '" + key + "' has wrong arity");
  return out;
}

using Table = std::map<std::vector<Object>, Rational>;

Table table_of(const json& j, std::size_t arity) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "component table must be an object");
  Table t;
  for (const auto& [k, v] : j.items()) {
    const Rational r = rational_of(v);
    if (r == 0) throw Error(ErrorCode::ParseError, "component value for " + k + " is zero");
    t[key_objects(k, arity)] = r;
  }
  return t;
}

ModelPtr table_model(const json& j) {
  const Rational dflt = j.contains("default") ? rational_of(j["default"]) : Rational(1);
  if (dflt == 0) throw Error(ErrorCode::ParseError, "default component value is zero");
  auto lookup = [dflt](std::shared_ptr<Table> t) {
    return [t, dflt](std::vector<Object> k) {
      const auto it = t->find(k);
      return it == t->end() ? dflt : it->second;
    };
  };
  ScalarModel::Components c;
  c.name = j.value("name", std::string("scalar-table"));
  const auto assoc = lookup(std::make_shared<Table>(j.contains("assoc") ? table_of(j["assoc"], 3) : Table{}));
  c.assoc = [assoc](Object a, Object b, Object x) { return assoc({a, b, x}); };
  if (j.contains("left_unit") || j.contains("right_unit")) {
    const auto l = lookup(std::make_shared<Table>(table_of(j.value("left_unit", json::object()), 1)));
    const auto r = lookup(std::make_shared<Table>(table_of(j.value("right_unit", json::object()), 1)));
    c.left_unit = [l](Object b) { return l({b}); };
    c.right_unit = [r](Object a) { return r({a}); };
  }
  if (j.contains("braid")) {
    const auto br = lookup(std::make_shared<Table>(table_of(j["braid"], 2)));
    c.braid = [br](Object a, Object b) { return br({a, b}); };
  }
  return std::make_shared<ScalarModel>(std::move(c));
}

}  // namespace

std::vector<std::string> builtin_model_names() {
  return {"strict", "exp2", "random", "coboundary", "ghost-free", "bicharacter", "symmetric-bicharacter",
          "broken-braid", "hecke", "swap"};
}

ModelPtr builtin_model(const std::string& name, std::uint64_t seed) {
  if (name == "strict") return scalar::strict();
  if (name == "exp2") return scalar::exp2();
  if (name == "random") return scalar::random(seed);
  if (name == "coboundary") return scalar::coboundary(seed);
  if (name == "ghost-free") return scalar::ghost_free(seed);
  if (name == "bicharacter") return scalar::gauged_bicharacter(seed, 2);
  if (name == "symmetric-bicharacter") return scalar::gauged_bicharacter(seed, -1);
  if (name == "broken-braid") return scalar::broken_braid(seed);
  if (name == "hecke") return hecke_model(2);
  if (name == "swap") return hecke_model(1);
  throw Error(ErrorCode::ParseError, "unknown builtin model '" + name + "'");
}

ModelPtr model_from_json(const std::string& text, std::uint64_t seed) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("model config: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "model config must be a JSON object");
  if (j.value("version", kSchemaVersion) != kSchemaVersion) {
    throw Error(ErrorCode::ParseError, "unsupported model config version");
  }
  const std::string kind = j.value("kind", std::string());
  if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
  if (kind == "matrix") return hecke_model(j.contains("q") ? rational_of(j["q"]) : Rational(2));
  if (kind != "scalar") throw Error(ErrorCode::ParseError, "model kind must be 'scalar' or 'matrix'");
  const std::string family = j.value("family", std::string("table"));
  if (family == "table") return table_model(j);
  if (family == "random") return scalar::random(seed, j.value("unit", true), j.value("braid", true));
  if (family == "bicharacter") {
    return scalar::gauged_bicharacter(seed, j.contains("beta") ? rational_of(j["beta"]) : Rational(2));
  }
  return builtin_model(family, seed);
}

ModelPtr load_model(const std::string& spec, std::uint64_t seed) {
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) return builtin_model(spec.substr(prefix.size()), seed);
  if (!spec.empty() && spec.front() == '{') return model_from_json(spec, seed);
  std::ifstream in(spec);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read model config '" + spec + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str(), seed);
}

namespace {

// Exponent polynomial P(a,b,c) = Σ coeff · a^i b^j c^k over i+j+k ≤ 3.
struct Poly {
  std::vector<std::array<int, 4>> terms;  // i, j, k, coefficient
  long operator()(long a, long b, long c) const {
    long s = 0;
    for (const auto& t : terms) {
      long v = t[3];
      for (int n = 0; n < t[0]; ++n) v *= a;
      for (int n = 0; n < t[1]; ++n) v *= b;
      for (int n = 0; n < t[2]; ++n) v *= c;
      s += v;
    }
    return s;
  }
  std::string describe() const {
    std::string s;
    for (const auto& t : terms) {
      if (!s.empty()) s += " + ";
      s += "(" + std::to_string(t[3]) + ")";
      const char* names = "abc";
      for (int v = 0; v < 3; ++v) {
        for (int n = 0; n < t[static_cast<std::size_t>(v)]; ++n) s += std::string("*") + names[v];
      }
    }
    return s.empty() ? "0" : s;
  }
};

}  // namespace

SearchResult search_pseudo_monoidal(std::uint64_t seed, std::size_t trials, Object max_weight) {
  std::vector<std::array<int, 3>> monomials;
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; i + j <= 3; ++j)
      for (int k = 0; i + j + k <= 3; ++k) monomials.push_back({i, j, k});
  SearchResult result;
  std::uint64_t h = seed;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    ++result.tried;
    Poly p;
    for (const auto& mono : monomials) {
      h = h * 6364136223846793005ULL + 1442695040888963407ULL;
      const int coeff = static_cast<int>((h >> 33) % 5) - 2;
      if ((h >> 40) % 3 == 0 && coeff != 0) p.terms.push_back({mono[0], mono[1], mono[2], coeff});
    }
    auto q = [&](long a, long b, long c, long d) {
      return -p(a, b, c + d) + p(b, c, d) + p(a, b + c, d) + p(a, b, c) - p(a + b, c, d);
    };
    bool pentagon = true, dodecagons = true;
    const long w = static_cast<long>(max_weight);
    for (long a = 0; a <= w && dodecagons; ++a)
      for (long b = 0; b <= w && dodecagons; ++b)
        for (long c = 0; c <= w && dodecagons; ++c)
          for (long d = 0; d <= w && dodecagons; ++d) {
            if (q(a, b, c, d) != 0) pentagon = false;
            for (long f = 0; f <= w && dodecagons; ++f) {
              if (q(a + b, c, d, f) != q(a, b + c, d, f) || q(a, b, c + d, f) != q(a, b, c, d + f)) {
                dodecagons = false;
              }
            }
          }
    if (dodecagons && !pentagon) {
      result.found = true;
      result.description = "a(a,b,c) = 2^(" + p.describe() + ")";
      return result;
    }
  }
  return result;
}

}  // namespace recouple
