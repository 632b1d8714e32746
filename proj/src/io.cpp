#include "recouple/io.hpp"

#include <cctype>

#include "recouple/error.hpp"

namespace recouple {

namespace {

[[noreturn]] void fail(const std::string& what, const std::string& text) {
  throw Error(ErrorCode::ParseError, what + ": '" + text + "'");
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Comma (or space) separated integers, no brackets.
std::vector<int> int_list(const std::string& body, const std::string& whole) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < body.size()) {
    const char c = body[i];
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) fail("unexpected character", whole);
    int v = 0;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
      v = v * 10 + (body[i] - '0');
      if (v > 1000000) fail("number too large", whole);
      ++i;
    }
    out.push_back(v);
  }
  return out;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

PositionSet position_set(const std::string& text, const std::string& whole) {
  const std::string t = trim(text);
  if (t.size() < 2 || t.front() != '{' || t.back() != '}') fail("expected {..}", whole);
  const auto v = int_list(t.substr(1, t.size() - 2), whole);
  return PositionSet(v.begin(), v.end());
}

class BracketParser {
 public:
  explicit BracketParser(const std::string& text) : s_(text) {}

  Bracketing run() {
    Bracketing b = item();
    skip();
    if (pos_ != s_.size()) fail("trailing input in bracketing", s_);
    return b;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  Bracketing item() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of bracketing", s_);
    if (s_[pos_] == '*') {
      ++pos_;
      return Bracketing::leaf();
    }
    if (s_[pos_] != '(') fail("expected '*' or '('", s_);
    ++pos_;
    std::vector<Bracketing> items{item()};
    for (;;) {
      skip();
      if (pos_ >= s_.size()) fail("unclosed '('", s_);
      if (s_[pos_] == ')') {
        ++pos_;
        break;
      }
      if (s_[pos_] == '.') ++pos_;
      items.push_back(item());
    }
    if (items.size() < 2) fail("a group needs two items", s_);
    Bracketing acc = items[0];
    for (std::size_t k = 1; k < items.size(); ++k) acc = Bracketing::join(acc, items[k]);
    return acc;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

Json positions_json(const PositionSet& s) { return Json(std::vector<int>(s.begin(), s.end())); }

PositionSet positions_from(const Json& j) {
  PositionSet out;
  if (j.is_null()) return out;
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected an array of positions");
  for (const auto& v : j) out.insert(v.get<int>());
  return out;
}

}  // namespace

CouplingTree parse_tree(const std::string& raw) {
  const std::string text = trim(raw);
  if (text == "0" || text == "null") return CouplingTree::null();
  if (text.empty()) fail("empty tree literal", raw);
  if (text.front() == '{') {
    const Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) fail("bad JSON", raw);
    return tree_from_json(j);
  }
  if (text.front() == '[') {
    if (text.back() != ']') fail("unclosed '['", raw);
    const auto v = int_list(text.substr(1, text.size() - 2), raw);
    return CouplingTree::make(std::vector<Level>(v.begin(), v.end()));
  }
  if (all_digits(text)) {
    const bool zero_based = text.find('0') != std::string::npos;
    std::vector<Level> levels;
    for (char c : text) levels.push_back((c - '0') + (zero_based ? 1 : 0));
    return CouplingTree::make(std::move(levels));
  }
  fail("not a tree literal", raw);
}

Bracketing parse_bracketing(const std::string& text) { return BracketParser(trim(text)).run(); }

CouplingTree parse_tree_or_bracketing(const std::string& raw) {
  const std::string text = trim(raw);
  if (!text.empty() && (text.front() == '(' || text == "*")) return representative(parse_bracketing(text));
  return parse_tree(text);
}

NoduledTree parse_noduled(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) fail("empty noduled literal", raw);
  if (text.front() == '{') {
    const Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) fail("bad JSON", raw);
    return noduled_from_json(j);
  }
  if (text.front() == '(') {
    // (514632,{3},{5,6})
    if (text.back() != ')') fail("unclosed '('", raw);
    const std::string body = text.substr(1, text.size() - 2);
    const auto c1 = body.find(',');
    if (c1 == std::string::npos) fail("expected (tree,{units},{ghosts})", raw);
    std::string tree_part = body.substr(0, c1);
    std::size_t rest = c1 + 1;
    if (trim(tree_part).front() == '[') {
      const auto close = body.find(']');
      if (close == std::string::npos) fail("unclosed '['", raw);
      tree_part = body.substr(0, close + 1);
      rest = body.find(',', close);
      if (rest == std::string::npos) fail("expected (tree,{units},{ghosts})", raw);
      ++rest;
    }
    const auto split = body.find('}', rest);
    if (split == std::string::npos) fail("expected {units}", raw);
    const std::string units = body.substr(rest, split + 1 - rest);
    const auto c2 = body.find(',', split);
    if (c2 == std::string::npos) fail("expected {ghosts}", raw);
    return NoduledTree(parse_tree(tree_part), position_set(units, raw), position_set(body.substr(c2 + 1), raw));
  }
  // [5,1,4,6,3,2] u{3} g{5,6}, nodule groups optional and in any order
  std::size_t end = text.find_first_of(" \t");
  if (text.front() == '[') {
    end = text.find(']');
    if (end == std::string::npos) fail("unclosed '['", raw);
    ++end;
  }
  if (end == std::string::npos) end = text.size();
  const CouplingTree tree = parse_tree(text.substr(0, end));
  PositionSet units, ghosts;
  std::size_t i = end;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const char tag = text[i];
    if (tag != 'u' && tag != 'g') fail("expected u{..} or g{..}", raw);
    const auto close = text.find('}', i);
    if (close == std::string::npos) fail("unclosed '{'", raw);
    (tag == 'u' ? units : ghosts) = position_set(text.substr(i + 1, close - i), raw);
    i = close + 1;
  }
  return NoduledTree(tree, units, ghosts);
}

BraidWord parse_braid(const std::string& raw, std::size_t strands) {
  const std::string text = trim(raw);
  if (!text.empty() && text.front() == '{') {
    const Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) fail("bad JSON", raw);
    return braid_from_json(j);
  }
  std::vector<Generator> letters;
  if (text.empty() || text == "e" || text == "1") return BraidWord(strands);
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') {
      ++i;
      continue;
    }
    if (c != 't' && c != 'T') fail("expected a generator t<i>", raw);
    ++i;
    if (i < text.size() && text[i] == '_') ++i;
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail("missing generator index", raw);
    int idx = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) idx = idx * 10 + (text[i++] - '0');
    int sign = 1;
    if (i < text.size() && text[i] == '\'') {
      sign = -1;
      ++i;
    } else if (text.compare(i, 3, "^-1") == 0) {
      sign = -1;
      i += 3;
    }
    letters.push_back({idx, sign});
  }
  return BraidWord(strands, std::move(letters));
}

Permutation parse_permutation(const std::string& raw, std::size_t n) {
  const std::string text = trim(raw);
  if (!text.empty() && text.front() == '[') {
    const auto v = int_list(text.substr(1, text.size() - 2), raw);
    return Permutation::from_image(v);
  }
  return Permutation::from_cycles(text, n);
}

std::vector<unsigned> parse_objects(const std::string& raw) {
  std::string text = trim(raw);
  if (!text.empty() && text.front() == '[') text = text.substr(1, text.size() - 2);
  std::vector<unsigned> out;
  for (int v : int_list(text, raw)) out.push_back(static_cast<unsigned>(v));
  return out;
}

Json to_json(const CouplingTree& t) {
  if (t.is_null()) return Json{{"version", 1}, {"null", true}};
  return Json{{"version", 1}, {"levels", t.levels()}};
}

Json to_json(const NoduledTree& nt) {
  Json j = Json{{"version", 1}, {"tree", to_json(nt.tree())}};
  j["tree"].erase("version");
  j["units"] = positions_json(nt.units());
  j["ghosts"] = positions_json(nt.ghosts());
  return j;
}

Json to_json(const BraidWord& w) {
  Json word = Json::array();
  for (const Generator& g : w.letters()) word.push_back({g.index, g.sign});
  return Json{{"version", 1}, {"n", w.strands()}, {"word", word}};
}

Json to_json(const Recoupling& r) {
  Json s = to_json(r.source()), t = to_json(r.target());
  s.erase("version");
  t.erase("version");
  return Json{{"version", 1}, {"source", s}, {"target", t}};
}

Json to_json(const std::vector<Reattachment>& factorization) {
  Json steps = Json::array();
  for (const Reattachment& m : factorization) {
    steps.push_back({{"tree", to_string(m.tree)}, {"level", m.level}, {"direction", to_string(m.direction)}});
  }
  return steps;
}

Json to_json(const NoduledPrimitive& p) {
  if (const auto* m = std::get_if<NoduledReattachment>(&p)) {
    return {{"kind", "reattachment"}, {"tree", to_string(m->tree)}, {"level", m->level},
            {"direction", to_string(m->direction)}};
  }
  const auto& c = std::get<NoduleChange>(p);
  return {{"kind", c.to_ghost ? "unit_to_ghost" : "ghost_to_unit"}, {"tree", to_string(c.tree)},
          {"position", c.position}};
}

CouplingTree tree_from_json(const Json& j) {
  try {
    if (j.is_string()) return parse_tree_or_bracketing(j.get<std::string>());
    if (j.is_array()) return CouplingTree::make(j.get<std::vector<Level>>());
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "tree must be an object, array or string");
    if (j.contains("version") && j.at("version").get<int>() != 1) {
      throw Error(ErrorCode::ParseError, "unsupported version " + j.at("version").dump());
    }
    if (j.value("null", false)) return CouplingTree::null();
    if (!j.contains("levels")) throw Error(ErrorCode::ParseError, "tree record without \"levels\"");
    return CouplingTree::make(j.at("levels").get<std::vector<Level>>());
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

CouplingTree tree_from_any(const Json& j) { return tree_from_json(j); }

NoduledTree noduled_from_json(const Json& j) {
  try {
    if (j.is_string()) return parse_noduled(j.get<std::string>());
    if (!j.is_object() || !j.contains("tree")) throw Error(ErrorCode::ParseError, "noduled record without \"tree\"");
    return NoduledTree(tree_from_json(j.at("tree")), positions_from(j.value("units", Json())),
                       positions_from(j.value("ghosts", Json())));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

BraidWord braid_from_json(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("n")) throw Error(ErrorCode::ParseError, "braid record without \"n\"");
    const auto n = j.at("n").get<std::size_t>();
    const Json& word = j.value("word", Json::array());
    if (word.is_string()) return parse_braid(word.get<std::string>(), n);
    std::vector<Generator> letters;
    for (const auto& g : word) {
      if (!g.is_array() || g.size() != 2) throw Error(ErrorCode::ParseError, "generator must be [index, sign]");
      letters.push_back({g[0].get<int>(), g[1].get<int>()});
    }
    return BraidWord(n, std::move(letters));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Recoupling recoupling_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("source") || !j.contains("target")) {
    throw Error(ErrorCode::ParseError, "arrow record needs \"source\" and \"target\"");
  }
  return Recoupling(tree_from_json(j.at("source")), tree_from_json(j.at("target")));
}

}  // namespace recouple
