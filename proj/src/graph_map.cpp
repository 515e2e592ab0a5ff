#include "fpaut/graph_map.hpp"

namespace fpaut {

GraphMap::GraphMap(std::shared_ptr<const MarkedGraph> graph, std::vector<int> vertex_images,
                   std::vector<EdgePath> edge_images, std::vector<FactorAutomorphism> twists)
    : graph_(std::move(graph)), vertex_images_(std::move(vertex_images)), twists_(std::move(twists)) {
  const MarkedGraph& g = *graph_;
  if (static_cast<int>(vertex_images_.size()) != g.vertex_count())
    throw GraphError("graph map needs one image per vertex");
  if (static_cast<int>(edge_images.size()) != g.edge_count()) throw GraphError("graph map needs one image per edge");
  twists_.resize(static_cast<std::size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) {
    int w = vertex_images_[static_cast<std::size_t>(v)];
    const std::string& name = g.vertices()[static_cast<std::size_t>(v)].name;
    if (w < 0 || w >= g.vertex_count()) throw GraphError("image of vertex " + name + " out of range");
    if (g.is_free_vertex(v) != g.is_free_vertex(w))
      throw GraphError("vertex " + name + " and its image differ in being free");
    if (g.is_free_vertex(v)) continue;
    auto& t = twists_[static_cast<std::size_t>(v)];
    if (t.images.empty() && g.factor_at(v) == g.factor_at(w)) t = FactorAutomorphism::identity(g.fp().factor(g.factor_at(v)));
    if (t.source != g.factor_at(v) || t.target != g.factor_at(w))
      throw GraphError("twist at vertex " + name + " must map factor " + std::to_string(g.factor_at(v)) +
                       " to factor " + std::to_string(g.factor_at(w)));
    FactorAutVerdict ok = verify_factor_aut(g.fp().factor(t.source), g.fp().factor(t.target), t);
    if (!ok.ok) throw GraphError("twist at vertex " + name + " is not an isomorphism: " + ok.witness);
  }
  images_.resize(2 * edge_images.size());
  for (int e = 0; e < g.edge_count(); ++e) {
    EdgePath& img = edge_images[static_cast<std::size_t>(e)];
    const auto& ed = g.edges()[static_cast<std::size_t>(e)];
    try {
      validate(g, img);
    } catch (const GraphError& err) {
      throw GraphError("image of edge " + ed.name + ": " + err.what());
    }
    if (img.start != vertex_image(ed.tail) || img.end != vertex_image(ed.head))
      throw GraphError("image of edge " + ed.name + " does not run between the images of its endpoints");
    images_[static_cast<std::size_t>(reverse(forward(e)))] = reverse(g, img);
    images_[static_cast<std::size_t>(forward(e))] = std::move(img);
  }
}

GraphMap GraphMap::identity(std::shared_ptr<const MarkedGraph> graph) {
  const MarkedGraph& g = *graph;
  std::vector<int> vs(static_cast<std::size_t>(g.vertex_count()));
  std::vector<EdgePath> es;
  std::vector<FactorAutomorphism> ts(static_cast<std::size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) vs[static_cast<std::size_t>(v)] = v;
  for (int e = 0; e < g.edge_count(); ++e) es.push_back(edge_path(g, forward(e)));
  return GraphMap(std::move(graph), std::move(vs), std::move(es), std::move(ts));
}

MaybeElement GraphMap::map_element(int v, const MaybeElement& x) const {
  if (!x) return std::nullopt;
  const auto& t = twist(v);
  return apply_factor_aut(graph_->fp().factor(t.source), graph_->fp().factor(t.target), t, *x);
}

EdgePath GraphMap::map_path(const EdgePath& p) const {
  const MarkedGraph& g = *graph_;
  EdgePath r = vertex_path(vertex_image(p.start));
  r.lead = map_element(p.start, p.lead);
  for (std::size_t k = 0; k < p.edges.size(); ++k) {
    MaybeElement turn = k == 0 ? std::nullopt : map_element(g.origin(p.edges[k]), p.turns[k - 1]);
    append(g, r, image(p.edges[k]), turn);
  }
  if (p.trail) append(g, r, vertex_path(vertex_image(p.end)), map_element(p.end, p.trail));
  return r;
}

EdgePath GraphMap::sharp(const EdgePath& p) const { return tighten(*graph_, map_path(p)); }

GraphMap compose(const GraphMap& outer, const GraphMap& inner) {
  const MarkedGraph& g = inner.graph();
  std::vector<int> vs;
  std::vector<EdgePath> es;
  std::vector<FactorAutomorphism> ts;
  for (int v = 0; v < g.vertex_count(); ++v) {
    int w = inner.vertex_image(v);
    vs.push_back(outer.vertex_image(w));
    if (g.is_free_vertex(v)) {
      ts.emplace_back();
      continue;
    }
    ts.push_back(compose(g.fp().factor(g.factor_at(v)), g.fp().factor(g.factor_at(w)),
                         g.fp().factor(g.factor_at(vs.back())), outer.twist(w), inner.twist(v)));
  }
  for (int e = 0; e < g.edge_count(); ++e) es.push_back(outer.sharp(inner.image(forward(e))));
  return GraphMap(inner.graph_ptr(), std::move(vs), std::move(es), std::move(ts));
}

GraphMap power(const GraphMap& f, int k) {
  if (k < 0) throw GraphError("graph maps have no negative powers");
  GraphMap out = GraphMap::identity(f.graph_ptr());
  for (int i = 0; i < k; ++i) out = compose(f, out);
  return out;
}

FpEndomorphism induced_endomorphism(const GraphMap& f) {
  const MarkedGraph& g = f.graph();
  const FreeProduct& fp = g.fp();
  FpEndomorphism e;
  for (int j = 1; j <= fp.free_rank(); ++j)
    e.free_images.push_back(word(g, f.map_path(path_of_word(g, Word{FreeLetter{j, 1}}))));
  for (const auto& h : fp.factors()) {
    int v = g.vertex_of_factor(h.id());
    EdgePath to_v = vertex_path(g.basepoint());
    for (OrientedEdge d : g.tree_path(g.basepoint(), v)) to_v = join(g, to_v, edge_path(g, d));
    FactorImage fi;
    fi.target = g.factor_at(f.vertex_image(v));
    fi.conjugator = word(g, f.map_path(to_v));
    fi.twist = f.twist(v);
    e.factor_images.push_back(std::move(fi));
  }
  return e;
}

FpAutomorphism induced_automorphism(const GraphMap& f, const FpAutomorphism& declared) {
  FpAutomorphism a(f.graph().fp_ptr(), induced_endomorphism(f), declared.backward());
  AutVerdict v = verify(a);
  if (!v.ok) throw GraphError("induced map is not inverted by the declared inverse: " + v.witness);
  return a;
}

MatedVerdict mated_check(const GraphMap& f, const FpAutomorphism& phi) {
  const FreeProduct& fp = f.graph().fp();
  FpEndomorphism e = induced_endomorphism(f);
  for (const auto& s : generators(fp)) {
    Word a = apply(fp, e, s);
    Word b = phi.image(s);
    if (a != b) return {false, format(fp, s) + ": map gives " + format(fp, a) + ", automorphism gives " + format(fp, b)};
  }
  return {};
}

}  // namespace fpaut
