#pragma once

// Quotient graphs of groups with trivial edge groups, marked by a spanning
// tree and free-letter labels on the remaining edges, and edge paths in them.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fpaut/words.hpp"

namespace fpaut {

/// 2e for edge e traversed forwards, 2e+1 backwards.
using OrientedEdge = int;

inline int edge_of(OrientedEdge d) { return d / 2; }
inline bool is_reversed(OrientedEdge d) { return d % 2 == 1; }
inline OrientedEdge reverse(OrientedEdge d) { return d ^ 1; }
inline OrientedEdge forward(int e) { return 2 * e; }

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GraphVertex {
  std::string name;
  int factor = 0;  // 0 for a free vertex
};

struct GraphEdge {
  std::string name;  // starts with a lowercase letter
  int tail = 0;
  int head = 0;
  double length = 1.0;
  bool in_tree = false;
  Word label;  // non-tree edges: a single free letter
};

class MarkedGraph {
 public:
  MarkedGraph(std::shared_ptr<const FreeProduct> fp, std::vector<GraphVertex> vertices,
              std::vector<GraphEdge> edges, int basepoint);

  /// One free vertex, a unit loop per free generator and an edge of length
  /// 1/2 to each factor vertex.
  static MarkedGraph rose(std::shared_ptr<const FreeProduct> fp);

  const FreeProduct& fp() const { return *fp_; }
  const std::shared_ptr<const FreeProduct>& fp_ptr() const { return fp_; }
  const std::vector<GraphVertex>& vertices() const { return vertices_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int basepoint() const { return basepoint_; }
  bool is_free_vertex(int v) const { return vertices_.at(static_cast<std::size_t>(v)).factor == 0; }
  int factor_at(int v) const { return vertices_.at(static_cast<std::size_t>(v)).factor; }
  int vertex_of_factor(int factor) const;

  int origin(OrientedEdge d) const;
  int terminus(OrientedEdge d) const;
  double length(OrientedEdge d) const { return edges_.at(static_cast<std::size_t>(edge_of(d))).length; }
  /// Label read along d: the edge label, inverted for a reversed edge.
  Word label(OrientedEdge d) const;

  /// Oriented edges leaving v, in increasing order.
  std::vector<OrientedEdge> germs(int v) const;

  std::string edge_name(OrientedEdge d) const;
  OrientedEdge parse_edge(std::string_view token) const;
  int vertex_by_name(std::string_view name) const;

  /// Oriented edge whose label is b_j.
  OrientedEdge labelled_edge(int j) const { return label_edge_.at(static_cast<std::size_t>(j - 1)); }

  /// The unique tree path from u to v.
  std::vector<OrientedEdge> tree_path(int u, int v) const;

 private:
  std::shared_ptr<const FreeProduct> fp_;
  std::vector<GraphVertex> vertices_;
  std::vector<GraphEdge> edges_;
  int basepoint_ = 0;
  std::vector<int> label_edge_;  // per free generator j-1: oriented edge labelled b_j
  std::vector<int> tree_parent_;  // oriented edge from the parent, -1 at basepoint
  std::vector<int> tree_depth_;
};

/// A path in the graph of groups. `turns[k]` is the vertex-group element
/// between edges k and k+1; `lead` and `trail` are elements at the start
/// and end vertex. Elements only occur at non-free vertices. A path without
/// edges keeps its element in `lead`.
struct EdgePath {
  int start = 0;
  int end = 0;
  MaybeElement lead;
  std::vector<OrientedEdge> edges;
  std::vector<MaybeElement> turns;
  MaybeElement trail;

  std::size_t size() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
  friend bool operator==(const EdgePath&, const EdgePath&) = default;
};

EdgePath vertex_path(int v);
EdgePath edge_path(const MarkedGraph& g, OrientedEdge d);

/// Checks connectivity and the placement of elements.
void validate(const MarkedGraph& g, const EdgePath& p);

/// p then q, with `junction` inserted at the shared vertex.
void append(const MarkedGraph& g, EdgePath& p, const EdgePath& q, const MaybeElement& junction = std::nullopt);
EdgePath join(const MarkedGraph& g, const EdgePath& p, const EdgePath& q, const MaybeElement& junction = std::nullopt);

/// Removes every backtrack e (trivial turn) e^-1, merging the surrounding elements.
EdgePath tighten(const MarkedGraph& g, const EdgePath& p);
bool is_reduced(const MarkedGraph& g, const EdgePath& p);
EdgePath reverse(const MarkedGraph& g, const EdgePath& p);

/// Edges [i, j) with the interior turns; no lead or trail.
EdgePath subpath(const MarkedGraph& g, const EdgePath& p, std::size_t i, std::size_t j);

/// The quotient path: the edge sequence with vertex-group data forgotten.
inline const std::vector<OrientedEdge>& projection(const EdgePath& p) { return p.edges; }
std::vector<OrientedEdge> reversed_projection(const std::vector<OrientedEdge>& edges);

double length(const MarkedGraph& g, const EdgePath& p);
/// The element of G read along p: labels of non-tree edges and vertex elements.
Word word(const MarkedGraph& g, const EdgePath& p);

/// A path from the basepoint to itself reading w; reduced when w is.
EdgePath path_of_word(const MarkedGraph& g, const Word& w);

/// Text form "e2 h (a@1) H"; "." for a path without edges or elements.
std::string format(const MarkedGraph& g, const EdgePath& p);
std::string format_edges(const MarkedGraph& g, const std::vector<OrientedEdge>& edges);
EdgePath parse_path(const MarkedGraph& g, std::string_view text, int start);

}  // namespace fpaut
