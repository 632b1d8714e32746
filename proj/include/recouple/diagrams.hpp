#pragma once

// Diagrams of arrows and their commutativity, plus boxes on strings.
//
// A diagram commutes when any two composable sequences of its arrows with
// the same endpoints have equal composites. Paths are enumerated without
// repeated vertices; a simple cycle is compared with the identity, since
// both it and its square are composable sequences from its basepoint.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recouple/braids.hpp"
#include "recouple/gamma.hpp"
#include "recouple/io.hpp"
#include "recouple/models.hpp"

namespace recouple {

struct GraphEdge {
  std::string from;
  std::string to;
  std::string label;
  QMatrix arrow;
};

class ArrowGraph {
 public:
  /// Adds a vertex of the given dimension; an existing vertex must agree. Throws EndpointMismatch.
  void add_vertex(const std::string& name, std::size_t dim);
  /// Endpoints are created on demand. Throws EndpointMismatch if the arrow's shape disagrees.
  std::size_t add_edge(const std::string& from, const std::string& to, const std::string& label, QMatrix arrow);

  const std::map<std::string, std::size_t>& vertices() const noexcept { return dims_; }
  const std::vector<GraphEdge>& edges() const noexcept { return edges_; }
  std::size_t dim(const std::string& vertex) const { return dims_.at(vertex); }

  /// The edges with the given indices and their endpoints.
  ArrowGraph subgraph(const std::vector<std::size_t>& edge_indices) const;
  /// Weakly connected components, isolated vertices included.
  std::vector<ArrowGraph> components() const;

 private:
  std::map<std::string, std::size_t> dims_;
  std::vector<GraphEdge> edges_;
};

struct GraphPath {
  std::string from;
  std::string to;
  std::vector<std::size_t> edges;
};

struct CommutativityReport {
  bool commutative = true;
  std::size_t paths = 0;
  /// Two paths with equal endpoints and different composites. A cycle is
  /// paired with the empty path at its basepoint.
  std::optional<std::pair<GraphPath, GraphPath>> witness;
};

using ArrowEquality = std::function<bool(const QMatrix&, const QMatrix&)>;

/// Throws PathExplosion when more than `cap` paths would be enumerated.
CommutativityReport is_commutative(const ArrowGraph& g, std::size_t cap = 100000,
                                   const ArrowEquality& eq = {});
/// "e0:label ; e3:label" with the endpoints, for reports.
std::string describe(const ArrowGraph& g, const GraphPath& p);
Json to_json(const ArrowGraph& g, const CommutativityReport& r);

/// {"edges":[{"from":..,"to":..,"label":..,"arrow":[["1","0"],["0","1"]] | "scalar":"1/2"}], "vertices":{"x":1}}
ArrowGraph arrow_graph_from_json(const Json& j);

/// Γ-image of the adjacent moves among trees with n leaves (each move taken in
/// its left direction). With merge_shapes, trees with the same bracketing
/// become one vertex and the moves between them are dropped: for n = 4 this
/// is the bare pentagon, without it the pentagon deformed by 𝔮.
ArrowGraph recoupling_diagram(std::size_t length, const LeafAssignment& leaves, const Model& m,
                              bool merge_shapes);

/// A box: an arrow of BCptr with one component label per strand ("1" is an identity component).
struct Box {
  BraidedTree source;
  CouplingTree target_tree;
  BraidWord word;
  std::vector<std::string> labels;

  BraidedArrow arrow() const { return BraidedArrow(source, target_tree, word); }
  BraidedTree target() const { return arrow().target(); }
  std::size_t strings() const noexcept { return word.strands(); }
  /// Recoupling datum in S_{n-1}.
  Permutation recoupling_permutation() const;
  bool is_identity() const;
};

class StringDiagram {
 public:
  /// Throws NotComposable or LengthMismatch.
  StringDiagram(std::size_t strings, std::vector<Box> boxes = {});
  std::size_t strings() const noexcept { return strings_; }
  const std::vector<Box>& boxes() const noexcept { return boxes_; }

 private:
  std::size_t strings_;
  std::vector<Box> boxes_;
};

/// Label of g after f; identities vanish.
std::string compose_labels(const std::string& first, const std::string& second);
/// Componentwise composite of all boxes. Throws NotComposable for an empty diagram.
Box compose_boxes(const StringDiagram& d);

enum class RenderFormat { Text, Svg };
std::string render(const StringDiagram& d, RenderFormat format);

/// {"strings":6,"source":{"tree":"[1,2,3,4,5]","perm":"()"},
///  "boxes":[{"target":"[3,4,1,2,5]","word":"t5 t4' t3 t1","labels":["f1",..]}]}
StringDiagram string_diagram_from_json(const Json& j);
Json to_json(const Box& b);

}  // namespace recouple
