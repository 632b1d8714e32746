#include "recouple/diagrams.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "recouple/error.hpp"

namespace recouple {

void ArrowGraph::add_vertex(const std::string& name, std::size_t dim) {
  const auto [it, fresh] = dims_.emplace(name, dim);
  if (!fresh && it->second != dim) {
    throw Error(ErrorCode::EndpointMismatch, "vertex " + name + " has dimension " + std::to_string(it->second) +
                                                 ", not " + std::to_string(dim));
  }
}

std::size_t ArrowGraph::add_edge(const std::string& from, const std::string& to, const std::string& label,
                                 QMatrix arrow) {
  add_vertex(from, arrow.cols());
  add_vertex(to, arrow.rows());
  edges_.push_back({from, to, label, std::move(arrow)});
  return edges_.size() - 1;
}

ArrowGraph ArrowGraph::subgraph(const std::vector<std::size_t>& edge_indices) const {
  ArrowGraph g;
  for (std::size_t i : edge_indices) {
    const GraphEdge& e = edges_.at(i);
    g.add_edge(e.from, e.to, e.label, e.arrow);
  }
  return g;
}

std::vector<ArrowGraph> ArrowGraph::components() const {
  std::map<std::string, std::string> parent;
  for (const auto& [v, d] : dims_) parent[v] = v;
  const std::function<std::string(const std::string&)> find = [&](const std::string& v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (const GraphEdge& e : edges_) parent[find(e.from)] = find(e.to);

  std::map<std::string, ArrowGraph> parts;
  for (const auto& [v, d] : dims_) parts[find(v)].add_vertex(v, d);
  for (const GraphEdge& e : edges_) parts[find(e.from)].add_edge(e.from, e.to, e.label, e.arrow);
  std::vector<ArrowGraph> out;
  for (auto& [root, g] : parts) out.push_back(std::move(g));
  return out;
}

namespace {

struct Enumerator {
  const ArrowGraph& g;
  std::size_t cap;
  ArrowEquality eq;
  std::map<std::string, std::vector<std::size_t>> out_edges;
  std::map<std::pair<std::string, std::string>, std::pair<GraphPath, QMatrix>> seen;
  CommutativityReport report;

  void record(const GraphPath& p, const QMatrix& composite) {
    if (++report.paths > cap) {
      throw Error(ErrorCode::PathExplosion, "more than " + std::to_string(cap) + " paths");
    }
    if (!report.commutative) return;
    if (p.from == p.to) {
      if (!eq(composite, QMatrix::identity(g.dim(p.from)))) {
        report.commutative = false;
        report.witness = std::make_pair(p, GraphPath{p.from, p.to, {}});
      }
      return;
    }
    const auto key = std::make_pair(p.from, p.to);
    const auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(key, std::make_pair(p, composite));
    } else if (!eq(it->second.second, composite)) {
      report.commutative = false;
      report.witness = std::make_pair(it->second.first, p);
    }
  }

  void walk(GraphPath& p, const QMatrix& composite, std::set<std::string>& visited) {
    for (std::size_t i : out_edges[p.to]) {
      const GraphEdge& e = g.edges()[i];
      const QMatrix next = e.arrow * composite;
      GraphPath q{p.from, e.to, p.edges};
      q.edges.push_back(i);
      record(q, next);
      if (e.to == p.from || visited.count(e.to)) continue;
      visited.insert(e.to);
      walk(q, next, visited);
      visited.erase(e.to);
    }
  }
};

}  // namespace

CommutativityReport is_commutative(const ArrowGraph& g, std::size_t cap, const ArrowEquality& eq) {
  Enumerator en{g, cap, eq ? eq : ArrowEquality([](const QMatrix& a, const QMatrix& b) { return a == b; }), {}, {},
                {}};
  for (std::size_t i = 0; i < g.edges().size(); ++i) en.out_edges[g.edges()[i].from].push_back(i);
  for (const auto& [v, d] : g.vertices()) {
    GraphPath start{v, v, {}};
    std::set<std::string> visited{v};
    en.walk(start, QMatrix::identity(d), visited);
  }
  return en.report;
}

std::string describe(const ArrowGraph& g, const GraphPath& p) {
  if (p.edges.empty()) return "1 at " + p.from;
  std::ostringstream os;
  os << p.from;
  for (std::size_t i : p.edges) os << " --" << g.edges()[i].label << "--> " << g.edges()[i].to;
  return os.str();
}

Json to_json(const ArrowGraph& g, const CommutativityReport& r) {
  Json j{{"version", 1}, {"commutative", r.commutative}, {"paths", r.paths}};
  if (r.witness) {
    Json w = Json::array();
    for (const GraphPath* p : {&r.witness->first, &r.witness->second}) {
      Json labels = Json::array();
      QMatrix composite = QMatrix::identity(g.dim(p->from));
      for (std::size_t i : p->edges) {
        labels.push_back(g.edges()[i].label);
        composite = g.edges()[i].arrow * composite;
      }
      w.push_back({{"from", p->from}, {"to", p->to}, {"edges", labels}, {"composite", to_string(composite)}});
    }
    j["witness"] = w;
  }
  return j;
}

ArrowGraph arrow_graph_from_json(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("edges")) throw Error(ErrorCode::ParseError, "diagram without \"edges\"");
    ArrowGraph g;
    if (j.contains("vertices")) {
      for (const auto& [name, dim] : j.at("vertices").items()) g.add_vertex(name, dim.get<std::size_t>());
    }
    const auto entry = [](const Json& v) {
      return v.is_string() ? parse_rational(v.get<std::string>()) : parse_rational(v.dump());
    };
    for (const Json& e : j.at("edges")) {
      QMatrix arrow;
      if (e.contains("scalar")) {
        arrow = QMatrix(entry(e.at("scalar")));
      } else if (e.contains("arrow")) {
        std::vector<std::vector<Rational>> rows;
        for (const Json& row : e.at("arrow")) {
          rows.emplace_back();
          for (const Json& v : row) rows.back().push_back(entry(v));
        }
        arrow = QMatrix::from_rows(rows);
      } else {
        throw Error(ErrorCode::ParseError, "edge needs \"arrow\" or \"scalar\"");
      }
      g.add_edge(e.at("from").get<std::string>(), e.at("to").get<std::string>(), e.value("label", std::string()),
                 std::move(arrow));
    }
    return g;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

ArrowGraph recoupling_diagram(std::size_t length, const LeafAssignment& leaves, const Model& m,
                              bool merge_shapes) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < length; ++k) names.push_back(std::string(1, static_cast<char>('a' + k % 26)));
  const auto key = [&](const CouplingTree& t) { return merge_shapes ? gamma_word(t, names) : to_string(t); };
  ArrowGraph g;
  for (const CouplingTree& t : enumerate_trees(length)) {
    g.add_vertex(key(t), m.dim(gamma_object(t, leaves, m)));
    for (const Reattachment& r : reattachments_from(t)) {
      if (r.direction != Direction::Left) continue;
      const CouplingTree target = r.target();
      if (merge_shapes && forget_levels(t) == forget_levels(target)) continue;
      g.add_edge(key(t), key(target), to_string(t) + " r" + std::to_string(r.level) + "L",
                 gamma_reattachment(r, leaves, m));
    }
  }
  return g;
}

// boxes

Permutation Box::recoupling_permutation() const { return Recoupling(source.tree, target_tree).level_permutation(); }

bool Box::is_identity() const {
  return source.tree == target_tree && is_trivial(word) &&
         std::all_of(labels.begin(), labels.end(), [](const std::string& l) { return l == "1"; });
}

StringDiagram::StringDiagram(std::size_t strings, std::vector<Box> boxes) : strings_(strings), boxes_(std::move(boxes)) {
  for (std::size_t k = 0; k < boxes_.size(); ++k) {
    Box& b = boxes_[k];
    if (b.labels.empty()) b.labels.assign(strings_, "1");
    if (b.strings() != strings_ || b.labels.size() != strings_ || b.source.tree.length() != strings_) {
      throw Error(ErrorCode::LengthMismatch, "box " + std::to_string(k + 1) + " is not on " +
                                                 std::to_string(strings_) + " strings");
    }
    b.arrow();  // validates
    if (k > 0 && !(boxes_[k - 1].target() == b.source)) {
      throw Error(ErrorCode::NotComposable, "box " + std::to_string(k) + " does not end where box " +
                                                std::to_string(k + 1) + " starts");
    }
  }
}

std::string compose_labels(const std::string& first, const std::string& second) {
  if (first == "1") return second;
  if (second == "1") return first;
  return second + first;
}

Box compose_boxes(const StringDiagram& d) {
  if (d.boxes().empty()) throw Error(ErrorCode::NotComposable, "no boxes to compose");
  Box acc = d.boxes().front();
  for (std::size_t k = 1; k < d.boxes().size(); ++k) {
    const Box& b = d.boxes()[k];
    acc.target_tree = b.target_tree;
    acc.word = acc.word * b.word;
    for (std::size_t i = 0; i < acc.labels.size(); ++i) acc.labels[i] = compose_labels(acc.labels[i], b.labels[i]);
  }
  return acc;
}

namespace {

std::string annotation(const Box& b) {
  return to_string(b.source.tree) + " " + b.source.perm.to_cycles() + " -> " + to_string(b.target_tree) + " " +
         b.target().perm.to_cycles() + "  sigma " + b.recoupling_permutation().to_cycles() + "  word " +
         to_string(b.word);
}

// Label drawn at tree position k: the component of the strand sitting there.
const std::string& label_at(const Box& b, std::size_t k) {
  return b.labels[static_cast<std::size_t>(b.source.perm(static_cast<int>(k + 1)) - 1)];
}

std::size_t column_width(const StringDiagram& d) {
  std::size_t w = 4;
  for (const Box& b : d.boxes()) {
    for (const auto& l : b.labels) w = std::max(w, l.size() + 2);
  }
  return w;
}

std::string render_text(const StringDiagram& d) {
  const std::size_t n = d.strings(), w = column_width(d);
  const auto x = [&](std::size_t k) { return 2 + k * w; };
  const std::size_t right = n == 0 ? 3 : x(n - 1) + w - 1;
  std::vector<std::string> lines{"strings " + std::to_string(n)};
  const auto bare = [&] {
    std::string s(right + 1, ' ');
    for (std::size_t k = 0; k < n; ++k) s[x(k)] = '|';
    return s;
  };
  const auto strip = [](std::string s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
  };
  lines.push_back(strip(bare()));
  for (const Box& b : d.boxes()) {
    if (b.is_identity()) continue;
    std::string border(right + 1, '-');
    border.front() = border.back() = '+';
    std::string row(right + 1, ' ');
    row.front() = row.back() = '|';
    for (std::size_t k = 0; k < n; ++k) {
      const std::string& l = label_at(b, k);
      if (l == "1") {
        row[x(k)] = '|';
      } else {
        row.replace(x(k), l.size(), l);
      }
    }
    lines.push_back(border);
    lines.push_back(row + "  " + annotation(b));
    lines.push_back(border);
    for (const Generator& gen : b.word.letters()) {
      const std::size_t a = x(static_cast<std::size_t>(gen.index - 1)), c = x(static_cast<std::size_t>(gen.index));
      std::string r1 = bare(), r2 = bare(), r3 = bare();
      r1[a] = r1[c] = r2[a] = r2[c] = r3[a] = r3[c] = ' ';
      r1[a + 1] = '\\';
      r1[c - 1] = '/';
      r2[(a + c) / 2] = gen.sign > 0 ? '\\' : '/';
      r3[a + 1] = '/';
      r3[c - 1] = '\\';
      for (auto* r : {&r1, &r2, &r3}) lines.push_back(strip(*r));
    }
    lines.push_back(strip(bare()));
  }
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_svg(const StringDiagram& d) {
  const std::size_t n = d.strings();
  constexpr int gap = 40, margin = 30, strip = 20, box_h = 30, cross_h = 40;
  const auto x = [&](std::size_t k) { return margin + gap * static_cast<int>(k); };
  const int right = n == 0 ? margin : x(n - 1);

  std::ostringstream body;
  std::size_t longest = 0;
  int y = 10;
  const auto segment = [&](int x1, int y1, int x2, int y2, const char* extra = "") {
    body << "  <line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2 << "\"" << extra
         << "/>\n";
  };
  const auto band = [&](int height, std::size_t skip_a, std::size_t skip_b) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k != skip_a && k != skip_b) segment(x(k), y, x(k), y + height);
    }
  };
  band(strip, n, n);
  y += strip;
  for (const Box& b : d.boxes()) {
    if (b.is_identity()) continue;
    const std::string note = annotation(b);
    longest = std::max(longest, note.size());
    body << "  <rect x=\"" << margin - 15 << "\" y=\"" << y << "\" width=\"" << right - margin + 30
         << "\" height=\"" << box_h << "\" fill=\"white\"/>\n";
    for (std::size_t k = 0; k < n; ++k) {
      body << "  <text x=\"" << x(k) << "\" y=\"" << y + 20 << "\" text-anchor=\"middle\" stroke=\"none\">"
           << xml_escape(label_at(b, k) == "1" ? "" : label_at(b, k)) << "</text>\n";
    }
    body << "  <text x=\"" << right + 30 << "\" y=\"" << y + 20 << "\" stroke=\"none\">" << xml_escape(note) << "</text>\n";
    y += box_h;
    for (const Generator& gen : b.word.letters()) {
      const auto i = static_cast<std::size_t>(gen.index - 1);
      band(cross_h, i, i + 1);
      // positive letters carry the left strand over
      const int xl = x(i), xr = x(i + 1);
      const bool left_over = gen.sign > 0;
      const int ux1 = left_over ? xr : xl, ux2 = left_over ? xl : xr;
      const int ox1 = left_over ? xl : xr, ox2 = left_over ? xr : xl;
      segment(ux1, y, ux2, y + cross_h);
      segment(ox1, y, ox2, y + cross_h, " stroke=\"white\" stroke-width=\"8\"");
      segment(ox1, y, ox2, y + cross_h);
      y += cross_h;
    }
    band(strip, n, n);
    y += strip;
  }
  std::ostringstream os;
  const int width = right + 40 + 8 * static_cast<int>(longest);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << y + 10
     << "\" viewBox=\"0 0 " << width << " " << y + 10 << "\">\n"
     << "<g stroke=\"black\" stroke-width=\"2\" font-family=\"monospace\" font-size=\"12\">\n"
     << body.str() << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace

std::string render(const StringDiagram& d, RenderFormat format) {
  return format == RenderFormat::Svg ? render_svg(d) : render_text(d);
}

StringDiagram string_diagram_from_json(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("strings") || !j.contains("boxes")) {
      throw Error(ErrorCode::ParseError, "string diagram needs \"strings\" and \"boxes\"");
    }
    const auto n = j.at("strings").get<std::size_t>();
    const auto braided = [&](const Json& s) {
      return BraidedTree{tree_from_json(s.at("tree")), parse_permutation(s.value("perm", std::string("()")), n)};
    };
    std::optional<BraidedTree> current;
    if (j.contains("source")) current = braided(j.at("source"));
    std::vector<Box> boxes;
    for (const Json& jb : j.at("boxes")) {
      BraidedTree src = jb.contains("source") ? braided(jb.at("source"))
                        : current           ? *current
                                            : throw Error(ErrorCode::ParseError, "first box has no source");
      const Json& w = jb.value("word", Json("e"));
      Box b{src, tree_from_json(jb.at("target")),
            w.is_string() ? parse_braid(w.get<std::string>(), n) : braid_from_json(Json{{"n", n}, {"word", w}}),
            jb.value("labels", std::vector<std::string>{})};
      if (b.labels.empty()) b.labels.assign(n, "1");
      current = b.target();
      boxes.push_back(std::move(b));
    }
    return StringDiagram(n, std::move(boxes));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Json to_json(const Box& b) {
  const BraidedTree t = b.target();
  return Json{{"source", {{"tree", to_string(b.source.tree)}, {"perm", b.source.perm.to_cycles()}}},
              {"target", {{"tree", to_string(t.tree)}, {"perm", t.perm.to_cycles()}}},
              {"recoupling", b.recoupling_permutation().to_cycles()},
              {"word", to_string(b.word)},
              {"labels", b.labels}};
}

}  // namespace recouple
