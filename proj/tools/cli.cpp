#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "recouple/diagrams.hpp"
#include "recouple/error.hpp"
#include "recouple/gamma.hpp"
#include "recouple/io.hpp"
#include "recouple/models.hpp"

namespace recouple::cli {

namespace {

struct Globals {
  std::string model = "scalar";
  std::uint64_t seed = 1;
  std::string format = "text";
  std::size_t cap = 100000;
};

// RECOUPLE_LOG: off/0, info/1, debug/2
int log_level() {
  const char* v = std::getenv("RECOUPLE_LOG");
  if (!v) return 0;
  const std::string s(v);
  if (s == "debug" || s == "2") return 2;
  if (s == "info" || s == "1") return 1;
  return 0;
}

struct Context {
  Globals g;
  std::ostream& out;
  std::ostream& err;
  int verbosity = log_level();

  void log(int level, const std::string& msg) const {
    if (verbosity >= level) err << "[recouple] " << msg << "\n";
  }
  bool json() const { return g.format == "json"; }
  void emit(const Json& j) const { out << j.dump(2) << "\n"; }
};

ModelPtr resolve_model(const Context& c) {
  std::string spec = c.g.model;
  if (spec == "scalar") spec = "random";
  const auto names = builtin_model_names();
  if (std::find(names.begin(), names.end(), spec) != names.end()) spec = "builtin:" + spec;
  ModelPtr m = load_model(spec, c.g.seed);
  c.log(1, "model " + m->name() + " seed " + std::to_string(c.g.seed));
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path_or_text) {
  const std::string text =
      !path_or_text.empty() && path_or_text.front() == '{' ? path_or_text : read_file(path_or_text);
  const Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::ParseError, "bad JSON in '" + path_or_text + "'");
  return j;
}

Json matrix_json(const QMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(r, k).get_str());
    rows.push_back(row);
  }
  return rows;
}

std::string objects_string(const std::vector<unsigned>& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + ")";
}

LeafAssignment objects_or_ones(const std::string& text, std::size_t n) {
  if (text.empty()) return LeafAssignment(n, 1);
  const auto v = parse_objects(text);
  if (v.size() != n) {
    throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(n) + " objects, got " +
                                               std::to_string(v.size()));
  }
  return LeafAssignment(v.begin(), v.end());
}

std::vector<Object> exact_objects(const std::string& text, std::size_t n, const std::string& what) {
  const auto v = parse_objects(text);
  if (v.size() != n) {
    throw Error(ErrorCode::LengthMismatch, what + " takes " + std::to_string(n) + " objects, got " +
                                               std::to_string(v.size()));
  }
  return std::vector<Object>(v.begin(), v.end());
}

std::string primitive_string(const BraidedPrimitive& p) {
  if (const auto* r = std::get_if<BraidedReattachment>(&p)) {
    return "reattach " + std::to_string(r->move.level) + " " + to_string(r->move.direction) + " at " +
           to_string(r->move.tree);
  }
  const auto& x = std::get<Interchange>(p);
  return std::string(x.sign > 0 ? "interchange " : "interchange^-1 ") + std::to_string(x.index) + " at " +
         to_string(x.object.tree);
}

// normalize

enum class Kind { Tree, Bracketing, Noduled, Braid };

Kind detect(const std::string& raw, const std::string& forced) {
  if (forced == "tree") return Kind::Tree;
  if (forced == "bracketing") return Kind::Bracketing;
  if (forced == "noduled") return Kind::Noduled;
  if (forced == "braid") return Kind::Braid;
  if (!forced.empty() && forced != "auto") throw Error(ErrorCode::ParseError, "unknown kind '" + forced + "'");
  std::string s = raw;
  s.erase(0, s.find_first_not_of(" \t"));
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty expression");
  if (s.front() == '{') {
    const Json j = read_json(s);
    if (j.contains("word")) return Kind::Braid;
    if (j.contains("tree")) return Kind::Noduled;
    return Kind::Tree;
  }
  if (s.front() == 't' || s.front() == 'T' || s == "e") return Kind::Braid;
  if (s.find('*') != std::string::npos) return Kind::Bracketing;
  if (s.find("u{") != std::string::npos || s.find("g{") != std::string::npos || s.find(",{") != std::string::npos) {
    return Kind::Noduled;
  }
  return Kind::Tree;
}

std::size_t strands_needed(const std::string& text) {
  std::size_t n = 1;
  const BraidWord probe = parse_braid(text, 1000);
  for (const Generator& g : probe.letters()) n = std::max(n, static_cast<std::size_t>(g.index) + 1);
  return n;
}

int cmd_normalize(const Context& c, const std::string& expr, const std::string& kind, std::size_t strands) {
  Json j{{"version", 1}};
  std::ostringstream text;
  switch (detect(expr, kind)) {
    case Kind::Tree: {
      const CouplingTree t = parse_tree(expr);
      j["kind"] = "tree";
      j["tree"] = to_string(t);
      text << "tree " << to_string(t) << "\n";
      if (!t.is_null()) {
        const Bracketing b = forget_levels(t);
        j["bracketing"] = to_string(b);
        j["representative"] = to_string(representative(b));
        text << "bracketing " << to_string(b) << "\nrepresentative " << to_string(representative(b)) << "\n";
      }
      break;
    }
    case Kind::Bracketing: {
      const Bracketing b = parse_bracketing(expr);
      j["kind"] = "bracketing";
      j["bracketing"] = to_string(b);
      j["representative"] = to_string(representative(b));
      j["trees"] = trees_with_shape(b).size();
      text << "bracketing " << to_string(b) << "\nrepresentative " << to_string(representative(b)) << "\ntrees "
           << trees_with_shape(b).size() << "\n";
      break;
    }
    case Kind::Noduled: {
      const NoduledTree nt = parse_noduled(expr);
      j["kind"] = "noduled";
      j["noduled"] = to_string(nt);
      j["representative"] = to_string(noduled_representative(nt));
      j["contracted"] = to_string(nt.contracted());
      text << "noduled " << to_string(nt) << "\nrepresentative " << to_string(noduled_representative(nt))
           << "\ncontracted " << to_string(nt.contracted()) << "\n";
      break;
    }
    case Kind::Braid: {
      const std::size_t n = strands ? strands : strands_needed(expr);
      const BraidWord w = parse_braid(expr, n);
      const BraidWord r = handle_reduce(w);
      j["kind"] = "braid";
      j["strands"] = n;
      j["word"] = to_string(w);
      j["reduced"] = to_string(r);
      j["trivial"] = r.empty();
      j["permutation"] = underlying_perm(w).to_cycles();
      text << "word " << to_string(w) << "\nreduced " << to_string(r) << "\npermutation "
           << underlying_perm(w).to_cycles() << "\n";
      break;
    }
  }
  if (c.json()) {
    c.emit(j);
  } else {
    c.out << text.str();
  }
  return Ok;
}

// recouple

int cmd_recouple(const Context& c, const std::string& from, const std::string& to, bool pseudo,
                 const std::string& objects) {
  const Recoupling r(parse_tree_or_bracketing(from), parse_tree_or_bracketing(to));
  Json j = to_json(r);
  j["permutation"] = r.level_permutation().to_cycles();
  std::vector<std::string> lines;
  if (pseudo) {
    Json moves = Json::array();
    for (const auto& m : factor_primitive_pseudo(r)) {
      moves.push_back({{"tree", to_string(m.tree)}, {"level", m.level}, {"partner", m.partner},
                       {"direction", to_string(m.direction)}});
      lines.push_back(to_string(m.tree) + " rotate " + std::to_string(m.level) + " with " +
                      std::to_string(m.partner) + " " + to_string(m.direction) + " -> " + to_string(m.target()));
    }
    j["moves"] = moves;
  } else {
    const auto moves = factor_primitive(r);
    j["moves"] = to_json(moves);
    for (const auto& m : moves) {
      lines.push_back(to_string(m.tree) + " reattach " + std::to_string(m.level) + " " + to_string(m.direction) +
                      " -> " + to_string(m.target()));
    }
  }
  std::string gamma;
  if (!objects.empty()) {
    const ModelPtr m = resolve_model(c);
    const LeafAssignment leaves = objects_or_ones(objects, r.source().length());
    const auto g = gamma_arrow(r, leaves, *m, {pseudo ? Mode::Pseudo : Mode::Premonoidal, false});
    j["gamma"] = matrix_json(g.arrow);
    gamma = to_string(g.arrow);
  }
  if (c.json()) {
    c.emit(j);
    return Ok;
  }
  c.out << to_string(r.source()) << " -> " << to_string(r.target()) << "  permutation "
        << r.level_permutation().to_cycles() << "\n";
  c.out << lines.size() << (lines.size() == 1 ? " move" : " moves") << "\n";
  for (std::size_t k = 0; k < lines.size(); ++k) c.out << "  " << k + 1 << ". " << lines[k] << "\n";
  if (!gamma.empty()) c.out << "gamma " << gamma << "\n";
  return Ok;
}

// evaluate

struct EvalArgs {
  std::string groupoid = "cptr";
  std::string from, to, perm, word, objects, diagram;
  bool pseudo = false;
};

int report_gamma(const Context& c, Json j, const GammaResult& r, const std::vector<std::string>& steps) {
  j["source_object"] = r.source;
  j["target_object"] = r.target;
  j["gamma"] = matrix_json(r.arrow);
  j["steps"] = steps;
  if (c.json()) {
    c.emit(j);
    return Ok;
  }
  c.out << "groupoid " << j.at("groupoid").get<std::string>() << "\n";
  c.out << "source " << j.at("source").get<std::string>() << "  object " << r.source << "\n";
  c.out << "target " << j.at("target").get<std::string>() << "  object " << r.target << "\n";
  c.out << steps.size() << " primitive steps\n";
  for (const auto& s : steps) c.out << "  " << s << "\n";
  c.out << "gamma " << to_string(r.arrow) << "\n";
  return Ok;
}

int evaluate_diagram(const Context& c, const EvalArgs& a, const Model& m) {
  const StringDiagram d = string_diagram_from_json(read_json(a.diagram));
  const LeafAssignment strands = objects_or_ones(a.objects, d.strings());
  const Box composite = compose_boxes(d);
  QMatrix product = QMatrix::identity(m.dim(gamma_object(d.boxes().front().source.tree,
                                                         permuted_leaves(d.boxes().front().source.perm, strands), m)));
  Json boxes = Json::array();
  for (const Box& b : d.boxes()) {
    const QMatrix g = gamma_bcptr(b.arrow(), strands, m).arrow;
    product = g * product;
    Json jb = to_json(b);
    jb["gamma"] = matrix_json(g);
    boxes.push_back(jb);
  }
  const QMatrix whole = gamma_bcptr(composite.arrow(), strands, m).arrow;
  const bool agrees = whole == product;
  Json j{{"version", 1}, {"groupoid", "bcptr"}, {"model", m.name()}, {"boxes", boxes}};
  j["composite"] = to_json(composite);
  j["composite"]["gamma"] = matrix_json(whole);
  j["composite_matches_product"] = agrees;
  if (c.json()) {
    c.emit(j);
  } else {
    for (std::size_t k = 0; k < d.boxes().size(); ++k) {
      const Box& b = d.boxes()[k];
      c.out << "box " << k + 1 << ": " << to_string(b.source.tree) << " " << b.source.perm.to_cycles() << " -> "
            << to_string(b.target_tree) << " " << b.target().perm.to_cycles() << "  sigma "
            << b.recoupling_permutation().to_cycles() << "  word " << to_string(b.word) << "\n";
    }
    c.out << "composite: " << to_string(composite.source.tree) << " -> " << to_string(composite.target_tree)
          << "  sigma " << composite.recoupling_permutation().to_cycles() << "\n";
    c.out << "  word " << to_string(composite.word) << "\n";
    c.out << "  reduced " << to_string(handle_reduce(composite.word)) << "\n";
    c.out << "  target perm " << composite.target().perm.to_cycles() << "\n";
    std::string labels;
    for (const auto& l : composite.labels) labels += (labels.empty() ? "" : " ") + l;
    c.out << "  components " << labels << "\n";
    c.out << "  gamma " << to_string(whole) << "\n";
    c.out << "gamma of composite " << (agrees ? "equals" : "DIFFERS FROM") << " product of box gammas\n";
  }
  return agrees ? Ok : CheckFailed;
}

int cmd_evaluate(const Context& c, const EvalArgs& a) {
  const ModelPtr m = resolve_model(c);
  if (a.groupoid == "bcptr" && !a.diagram.empty()) return evaluate_diagram(c, a, *m);
  if (a.from.empty() || a.to.empty()) throw Error(ErrorCode::ParseError, "--from and --to are required");
  Json j{{"version", 1}, {"groupoid", a.groupoid}, {"model", m->name()}};
  std::vector<std::string> steps;
  if (a.groupoid == "cptr") {
    const Recoupling r(parse_tree_or_bracketing(a.from), parse_tree_or_bracketing(a.to));
    j["source"] = to_string(r.source());
    j["target"] = to_string(r.target());
    if (a.pseudo) {
      for (const auto& p : factor_primitive_pseudo(r)) {
        steps.push_back("rotate " + std::to_string(p.level) + " with " + std::to_string(p.partner) + " at " +
                        to_string(p.tree));
      }
    } else {
      for (const auto& p : factor_primitive(r)) {
        steps.push_back("reattach " + std::to_string(p.level) + " " + to_string(p.direction) + " at " +
                        to_string(p.tree));
      }
    }
    const LeafAssignment leaves = objects_or_ones(a.objects, r.source().length());
    return report_gamma(c, j, gamma_arrow(r, leaves, *m, {a.pseudo ? Mode::Pseudo : Mode::Premonoidal, false}),
                        steps);
  }
  if (a.groupoid == "ncptr") {
    const NoduledArrow r(parse_noduled(a.from), parse_noduled(a.to));
    j["source"] = to_string(r.source());
    j["target"] = to_string(r.target());
    for (const auto& p : factor_noduled(r)) steps.push_back(to_string(p) + " at " + to_string(primitive_source(p)));
    LeafAssignment leaves = objects_or_ones(a.objects, r.source().length());
    if (a.objects.empty()) {
      for (int k : r.source().support()) leaves[static_cast<std::size_t>(k - 1)] = 0;
    }
    return report_gamma(c, j, gamma_noduled(r, leaves, *m), steps);
  }
  if (a.groupoid == "bcptr" || a.groupoid == "bncptr") {
    const bool noduled = a.groupoid == "bncptr";
    const NoduledTree src = noduled ? parse_noduled(a.from) : NoduledTree(parse_tree_or_bracketing(a.from));
    const std::size_t n = src.length();
    const Permutation perm = a.perm.empty() ? Permutation::identity(n) : parse_permutation(a.perm, n);
    const BraidWord word = parse_braid(a.word, n);
    LeafAssignment strands = objects_or_ones(a.objects, n);
    if (a.objects.empty()) {
      // nodules sit on strands π(k)
      for (int k : src.support()) strands[static_cast<std::size_t>(perm(k) - 1)] = 0;
    }
    if (!noduled) {
      const BraidedArrow arrow({src.tree(), perm}, parse_tree_or_bracketing(a.to), word);
      j["source"] = to_string(src.tree()) + " " + perm.to_cycles();
      j["target"] = to_string(arrow.target().tree) + " " + arrow.target().perm.to_cycles();
      j["word"] = to_string(word);
      for (const auto& p : factor_braided(arrow)) steps.push_back(primitive_string(p));
      return report_gamma(c, j, gamma_bcptr(arrow, strands, *m), steps);
    }
    const BraidedNoduledArrow arrow(src, perm, parse_noduled(a.to), word);
    j["source"] = to_string(src) + " " + perm.to_cycles();
    j["target"] = to_string(arrow.target()) + " " + arrow.target_perm().to_cycles();
    j["word"] = to_string(word);
    return report_gamma(c, j, gamma_bncptr(arrow, strands, *m), steps);
  }
  throw Error(ErrorCode::ParseError, "unknown groupoid '" + a.groupoid + "'");
}

// check

struct CheckArgs {
  std::string property;
  std::string objects;
  std::string input;
  std::string pentagon;
  unsigned lo = 0, hi = 2;
  unsigned max_weight = 2;
  std::size_t samples = 3;
};

int verdict(const Context& c, const std::string& name, const std::string& objects, bool ok, Json details,
            const std::string& detail_text) {
  if (c.json()) {
    Json j{{"version", 1}, {"check", name}, {"objects", objects}, {"pass", ok}};
    j.update(details);
    c.emit(j);
  } else {
    c.out << (ok ? "PASS " : "FAIL ") << name << (objects.empty() ? "" : " " + objects)
          << (detail_text.empty() ? "" : ": " + detail_text) << "\n";
  }
  return ok ? Ok : CheckFailed;
}

int check_graph(const Context& c, const ArrowGraph& g, const std::string& name) {
  const CommutativityReport r = is_commutative(g, c.g.cap);
  std::string text = std::to_string(r.paths) + " paths";
  if (r.witness) {
    text += "\n  path 1: " + describe(g, r.witness->first) + "\n  path 2: " + describe(g, r.witness->second);
  }
  Json details = to_json(g, r);
  details.erase("version");
  return verdict(c, name, "", r.commutative, details, text);
}

int cmd_check(const Context& c, const CheckArgs& a) {
  const std::string& p = a.property;
  if (p == "diagram") {
    if (!a.input.empty()) return check_graph(c, arrow_graph_from_json(read_json(a.input)), "diagram");
    const ModelPtr m = resolve_model(c);
    const LeafAssignment w = objects_or_ones(a.objects, 4);
    const bool bare = a.pentagon != "deformed";
    return check_graph(c, recoupling_diagram(4, w, *m, bare), std::string(bare ? "bare" : "deformed") + " pentagon");
  }
  const ModelPtr m = resolve_model(c);
  if (p == "pentagon") {
    const auto o = exact_objects(a.objects, 4, p);
    const QMatrix q = deformativity(*m, o[0], o[1], o[2], o[3]);
    return verdict(c, p, objects_string(o), check_pentagon(*m, o[0], o[1], o[2], o[3]), {{"q", matrix_json(q)}},
                   "q = " + (q.rows() == 1 ? q.scalar().get_str() : to_string(q)));
  }
  if (p == "dodecagons") {
    const auto o = exact_objects(a.objects, 5, p);
    return verdict(c, p, objects_string(o), check_dodecagons(*m, o[0], o[1], o[2], o[3], o[4]), Json::object(), "");
  }
  if (p == "triangles") {
    const auto o = exact_objects(a.objects, 3, p);
    return verdict(c, p, objects_string(o), check_triangles(*m, o[0], o[1], o[2]), Json::object(), "");
  }
  if (p == "hexagons") {
    const auto o = exact_objects(a.objects, 3, p);
    return verdict(c, p, objects_string(o), check_hexagons(*m, o[0], o[1], o[2]), Json::object(), "");
  }
  if (p == "qyb") {
    const auto o = exact_objects(a.objects, 3, p);
    const auto [lhs, rhs] = quasi_yang_baxter_sides(*m, o[0], o[1], o[2]);
    return verdict(c, p, objects_string(o), lhs == rhs, {{"lhs", matrix_json(lhs)}, {"rhs", matrix_json(rhs)}},
                   lhs == rhs ? "" : to_string(lhs) + " vs " + to_string(rhs));
  }
  if (p == "symmetry") {
    const auto o = exact_objects(a.objects, 2, p);
    return verdict(c, p, objects_string(o), check_symmetry(*m, o[0], o[1]), Json::object(), "");
  }
  if (p == "q-squares") {
    const auto o = exact_objects(a.objects, 4, p);
    const QSquares s = check_q_squares(*m, o[0], o[1], o[2], o[3]);
    return verdict(c, p, objects_string(o), s.braid_square && s.pseudo_square,
                   {{"braid_square", s.braid_square}, {"pseudo_square", s.pseudo_square}},
                   std::string("braid square ") + (s.braid_square ? "holds" : "fails") + ", pseudo square " +
                       (s.pseudo_square ? "holds" : "fails"));
  }
  if (p == "naturality") {
    return verdict(c, p, "", check_naturality(*m, a.max_weight, c.g.seed, a.samples), Json::object(), "");
  }
  if (p == "model") {
    bool ok = true;
    Json rows = Json::array();
    std::ostringstream text;
    for (const auto& r : check_model(*m, a.lo, a.hi)) {
      ok = ok && r.failed == 0;
      rows.push_back({{"constraint", r.constraint}, {"evaluated", r.evaluated}, {"failed", r.failed},
                      {"first_failure", r.first_failure}});
      text << "\n  " << r.constraint << ": " << r.evaluated - r.failed << "/" << r.evaluated << " hold"
           << (r.first_failure.empty() ? "" : ", first failure " + r.first_failure);
    }
    return verdict(c, "model " + m->name(), "", ok, {{"constraints", rows}}, text.str());
  }
  throw Error(ErrorCode::ParseError, "unknown property '" + p + "'");
}

// render, search, enumerate

int cmd_render(const Context& c, const std::string& input, bool composite) {
  StringDiagram d = string_diagram_from_json(read_json(input));
  if (composite && !d.boxes().empty()) d = StringDiagram(d.strings(), {compose_boxes(d)});
  if (c.json()) {
    Json boxes = Json::array();
    for (const Box& b : d.boxes()) boxes.push_back(to_json(b));
    c.emit({{"version", 1}, {"strings", d.strings()}, {"boxes", boxes}});
  } else {
    c.out << render(d, c.g.format == "svg" ? RenderFormat::Svg : RenderFormat::Text);
  }
  return Ok;
}

int cmd_search(const Context& c, std::size_t trials, unsigned max_weight) {
  const SearchResult r = search_pseudo_monoidal(c.g.seed, trials, max_weight);
  if (c.json()) {
    c.emit({{"version", 1}, {"tried", r.tried}, {"found", r.found}, {"description", r.description}});
  } else {
    c.out << (r.found ? "found " : "none found ") << "after " << r.tried << " candidates"
          << (r.description.empty() ? "" : ": " + r.description) << "\n";
  }
  return r.found ? Ok : CheckFailed;
}

int cmd_enumerate(const Context& c, const std::string& what, std::size_t length, const std::string& from) {
  std::vector<std::string> items;
  if (what == "trees" || what == "bracketings") {
    std::size_t count = 1;
    for (std::size_t k = 2; k < length; ++k) count *= k;
    if (count > c.g.cap) {
      throw Error(ErrorCode::CapExceeded, std::to_string(count) + " trees exceed the cap " + std::to_string(c.g.cap));
    }
    std::vector<Bracketing> seen;
    for (const auto& t : enumerate_trees(length)) {
      if (what == "trees") {
        items.push_back(to_string(t));
      } else if (std::find(seen.begin(), seen.end(), forget_levels(t)) == seen.end()) {
        seen.push_back(forget_levels(t));
        items.push_back(to_string(seen.back()));
      }
    }
  } else if (what == "moves") {
    const CouplingTree t = parse_tree_or_bracketing(from);
    for (const auto& r : reattachments_from(t)) {
      items.push_back("reattach " + std::to_string(r.level) + " " + to_string(r.direction) + " -> " +
                      to_string(r.target()));
    }
    for (const auto& r : pseudo_reattachments_from(t)) {
      items.push_back("rotate " + std::to_string(r.level) + " with " + std::to_string(r.partner) + " " +
                      to_string(r.direction) + " -> " + to_string(r.target()));
    }
  } else if (what == "models") {
    items = builtin_model_names();
  } else {
    throw Error(ErrorCode::ParseError, "unknown enumeration '" + what + "'");
  }
  if (c.json()) {
    c.emit({{"version", 1}, {"kind", what}, {"count", items.size()}, {"items", items}});
  } else {
    for (const auto& s : items) c.out << s << "\n";
  }
  return Ok;
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ModeViolation:
    case ErrorCode::NaturalityViolation:
    case ErrorCode::PathExplosion:
    case ErrorCode::CapExceeded:
      return CheckFailed;
    default:
      return InputError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context c{Globals{}, out, err};
  CLI::App app{"Exact computations with coupling trees, recouplings and braids", "recouple"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  const auto globals = [&](CLI::App* sub) {
    sub->add_option("--model", c.g.model, "builtin name, builtin:<name>, JSON file or inline JSON")
        ->capture_default_str();
    sub->add_option("--seed", c.g.seed, "seed for random models and sampling")->capture_default_str();
    sub->add_option("--format", c.g.format, "output format")
        ->check(CLI::IsMember({"text", "json", "svg"}))
        ->capture_default_str();
    sub->add_option("--cap", c.g.cap, "limit on enumerated paths or trees")->capture_default_str();
  };

  std::string expr, kind = "auto";
  std::size_t strands = 0;
  auto* normalize = app.add_subcommand("normalize", "parse an expression and print its normal forms");
  normalize->add_option("expr", expr, "tree, bracketing, noduled tree or braid word")->required();
  normalize->add_option("--kind", kind, "auto|tree|bracketing|noduled|braid");
  normalize->add_option("--strands", strands, "strand count for braid words");
  globals(normalize);

  std::string from, to, objects;
  bool pseudo = false;
  auto* recouple = app.add_subcommand("recouple", "factor a recoupling into primitive moves");
  recouple->add_option("--from", from, "source tree or bracketing")->required();
  recouple->add_option("--to", to, "target tree or bracketing")->required();
  recouple->add_flag("--pseudo", pseudo, "use non-adjacent rotations");
  recouple->add_option("--objects", objects, "leaf objects; also prints the image under the model");
  globals(recouple);

  EvalArgs ea;
  auto* evaluate = app.add_subcommand("evaluate", "evaluate an arrow in a model");
  evaluate->add_option("--groupoid", ea.groupoid, "cptr|ncptr|bcptr|bncptr")
      ->check(CLI::IsMember({"cptr", "ncptr", "bcptr", "bncptr"}))
      ->capture_default_str();
  evaluate->add_option("--from", ea.from, "source tree (noduled for ncptr/bncptr)");
  evaluate->add_option("--to", ea.to, "target tree (noduled for ncptr/bncptr)");
  evaluate->add_option("--perm", ea.perm, "source permutation, cycle notation");
  evaluate->add_option("--word", ea.word, "braid word, e.g. \"t1 t2'\"");
  evaluate->add_option("--objects", ea.objects, "objects per leaf (per strand when braided)");
  evaluate->add_option("--diagram", ea.diagram, "string diagram JSON (file or inline), bcptr only");
  evaluate->add_flag("--pseudo", ea.pseudo, "pseudo-mode factorization");
  globals(evaluate);

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "check a coherence property");
  check->add_option("property", ca.property,
                    "pentagon|dodecagons|triangles|hexagons|qyb|symmetry|q-squares|naturality|model|diagram")
      ->required();
  check->add_option("--objects", ca.objects, "comma separated object weights");
  check->add_option("--input", ca.input, "diagram JSON edge list (file or inline)");
  check->add_option("--pentagon", ca.pentagon, "bare|deformed pentagon diagram")
      ->check(CLI::IsMember({"bare", "deformed"}));
  check->add_option("--lo", ca.lo, "lowest weight for model checks")->capture_default_str();
  check->add_option("--hi", ca.hi, "highest weight for model checks")->capture_default_str();
  check->add_option("--max-weight", ca.max_weight, "naturality weight bound")->capture_default_str();
  check->add_option("--samples", ca.samples, "naturality samples")->capture_default_str();
  globals(check);

  std::string render_input;
  bool composite = false;
  auto* render_cmd = app.add_subcommand("render", "draw a string diagram");
  render_cmd->add_option("--diagram", render_input, "string diagram JSON (file or inline)")->required();
  render_cmd->add_flag("--composite", composite, "draw the composite box only");
  globals(render_cmd);

  std::size_t trials = 200;
  unsigned max_weight = 3;
  auto* search = app.add_subcommand("search-models", "seeded search for pseudo-monoidal, non-monoidal models");
  search->add_option("--trials", trials)->capture_default_str();
  search->add_option("--max-weight", max_weight)->capture_default_str();
  globals(search);

  std::string what;
  std::size_t length = 3;
  std::string moves_from;
  auto* enumerate = app.add_subcommand("enumerate", "list trees, bracketings, moves or builtin models");
  enumerate->add_option("what", what, "trees|bracketings|moves|models")->required();
  enumerate->add_option("-n,--length", length, "number of leaves")->capture_default_str();
  enumerate->add_option("--from", moves_from, "tree whose moves are listed");
  globals(enumerate);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return Usage;
  }
  if (c.g.format == "svg" && !render_cmd->parsed()) {
    err << "usage error: --format svg applies to render only\n";
    return Usage;
  }

  try {
    if (normalize->parsed()) return cmd_normalize(c, expr, kind, strands);
    if (recouple->parsed()) return cmd_recouple(c, from, to, pseudo, objects);
    if (evaluate->parsed()) return cmd_evaluate(c, ea);
    if (check->parsed()) return cmd_check(c, ca);
    if (render_cmd->parsed()) return cmd_render(c, render_input, composite);
    if (search->parsed()) return cmd_search(c, trials, max_weight);
    if (enumerate->parsed()) return cmd_enumerate(c, what, length, moves_from);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return InputError;
  }
  return Usage;
}

}  // namespace recouple::cli
