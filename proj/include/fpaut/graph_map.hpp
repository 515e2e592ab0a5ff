#pragma once

// Topological representatives: edge-path valued self-maps of a marked graph.

#include <memory>
#include <string>
#include <vector>

#include "fpaut/autos.hpp"
#include "fpaut/graph.hpp"

namespace fpaut {

class GraphMap {
 public:
  /// `edge_images[e]` is the image of edge e in its forward orientation;
  /// `twists[v]` maps the group of vertex v to the group of its image
  /// (ignored at free vertices). Free vertices must go to free vertices and
  /// factor vertices to factor vertices.
  GraphMap(std::shared_ptr<const MarkedGraph> graph, std::vector<int> vertex_images,
           std::vector<EdgePath> edge_images, std::vector<FactorAutomorphism> twists);

  static GraphMap identity(std::shared_ptr<const MarkedGraph> graph);

  const MarkedGraph& graph() const { return *graph_; }
  const std::shared_ptr<const MarkedGraph>& graph_ptr() const { return graph_; }
  int vertex_image(int v) const { return vertex_images_.at(static_cast<std::size_t>(v)); }
  const std::vector<int>& vertex_images() const { return vertex_images_; }
  const FactorAutomorphism& twist(int v) const { return twists_.at(static_cast<std::size_t>(v)); }
  const std::vector<FactorAutomorphism>& twists() const { return twists_; }

  /// Image of an oriented edge.
  const EdgePath& image(OrientedEdge d) const { return images_.at(static_cast<std::size_t>(d)); }
  MaybeElement map_element(int v, const MaybeElement& x) const;

  /// f(p) without tightening.
  EdgePath map_path(const EdgePath& p) const;
  /// f_#(p) = [f(p)].
  EdgePath sharp(const EdgePath& p) const;

 private:
  std::shared_ptr<const MarkedGraph> graph_;
  std::vector<int> vertex_images_;
  std::vector<EdgePath> images_;  // per oriented edge
  std::vector<FactorAutomorphism> twists_;
};

/// outer after inner, with tightened edge images.
GraphMap compose(const GraphMap& outer, const GraphMap& inner);
GraphMap power(const GraphMap& f, int k);

/// The automorphism read off through the marking: the image of a
/// generator is the word of f applied to a basepoint loop reading it. The
/// factor conjugators come out of the images of the tree paths.
FpEndomorphism induced_endomorphism(const GraphMap& f);

/// Pairs the induced endomorphism with a declared inverse and verifies it.
/// Throws GraphError naming the first generator whose image disagrees.
FpAutomorphism induced_automorphism(const GraphMap& f, const FpAutomorphism& declared);

struct MatedVerdict {
  bool mated = true;
  std::string witness;  // generator whose images differ
};

/// phi(g) f = f g on every generator loop.
MatedVerdict mated_check(const GraphMap& f, const FpAutomorphism& phi);

}  // namespace fpaut
