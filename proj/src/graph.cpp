#include "fpaut/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <set>

namespace fpaut {

MarkedGraph::MarkedGraph(std::shared_ptr<const FreeProduct> fp, std::vector<GraphVertex> vertices,
                         std::vector<GraphEdge> edges, int basepoint)
    : fp_(std::move(fp)), vertices_(std::move(vertices)), edges_(std::move(edges)), basepoint_(basepoint) {
  const int nv = vertex_count();
  if (nv == 0) throw GraphError("graph has no vertices");
  if (basepoint_ < 0 || basepoint_ >= nv) throw GraphError("basepoint out of range");
  if (!is_free_vertex(basepoint_)) throw GraphError("basepoint must be a free vertex");

  std::vector<int> factor_count(fp_->factor_count() + 1, 0);
  std::set<std::string> vnames;
  for (const auto& v : vertices_) {
    if (v.factor < 0 || v.factor > static_cast<int>(fp_->factor_count()))
      throw GraphError("vertex " + v.name + " carries unknown factor " + std::to_string(v.factor));
    if (v.factor) ++factor_count[static_cast<std::size_t>(v.factor)];
    if (!vnames.insert(v.name).second) throw GraphError("duplicate vertex name " + v.name);
  }
  for (std::size_t i = 1; i < factor_count.size(); ++i)
    if (factor_count[i] != 1)
      throw GraphError("factor " + std::to_string(i) + " must label exactly one vertex, found " +
                       std::to_string(factor_count[i]));

  std::set<std::string> names;
  for (const auto& e : edges_) {
    if (e.name.empty() || !std::islower(static_cast<unsigned char>(e.name[0])))
      throw GraphError("edge name '" + e.name + "' must start with a lowercase letter");
    std::string cap = e.name;
    cap[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(cap[0])));
    if (!names.insert(e.name).second || !names.insert(cap).second)
      throw GraphError("edge name '" + e.name + "' clashes with another edge");
    if (e.tail < 0 || e.tail >= nv || e.head < 0 || e.head >= nv)
      throw GraphError("edge " + e.name + " has an endpoint out of range");
    if (!(e.length > 0.0) || !std::isfinite(e.length)) throw GraphError("edge " + e.name + " must have positive length");
  }

  // spanning tree by breadth-first search from the basepoint
  tree_parent_.assign(static_cast<std::size_t>(nv), -2);
  tree_depth_.assign(static_cast<std::size_t>(nv), 0);
  tree_parent_[static_cast<std::size_t>(basepoint_)] = -1;
  std::deque<int> queue{basepoint_};
  int tree_edges = 0;
  for (const auto& e : edges_) tree_edges += e.in_tree;
  if (tree_edges != nv - 1) throw GraphError("spanning tree must have vertex count - 1 edges");
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int e = 0; e < edge_count(); ++e) {
      if (!edges_[static_cast<std::size_t>(e)].in_tree) continue;
      for (OrientedEdge d : {forward(e), reverse(forward(e))}) {
        if (origin(d) != u) continue;
        int w = terminus(d);
        if (w == u) throw GraphError("tree edge " + edge_name(d) + " is a loop");
        if (tree_parent_[static_cast<std::size_t>(w)] != -2) continue;
        tree_parent_[static_cast<std::size_t>(w)] = d;
        tree_depth_[static_cast<std::size_t>(w)] = tree_depth_[static_cast<std::size_t>(u)] + 1;
        queue.push_back(w);
      }
    }
  }
  for (int v = 0; v < nv; ++v)
    if (tree_parent_[static_cast<std::size_t>(v)] == -2)
      throw GraphError("spanning tree does not reach vertex " + vertices_[static_cast<std::size_t>(v)].name);

  label_edge_.assign(static_cast<std::size_t>(fp_->free_rank()), -1);
  int non_tree = 0;
  for (int e = 0; e < edge_count(); ++e) {
    const auto& ed = edges_[static_cast<std::size_t>(e)];
    if (ed.in_tree) {
      if (!ed.label.empty()) throw GraphError("tree edge " + ed.name + " must not carry a label");
      continue;
    }
    ++non_tree;
    if (ed.label.size() != 1 || !is_free(ed.label[0]))
      throw GraphError("edge " + ed.name + " must be labelled by a single free letter");
    const auto& l = as_free(ed.label[0]);
    auto& slot = label_edge_[static_cast<std::size_t>(l.index - 1)];
    if (slot != -1) throw GraphError("free generator b" + std::to_string(l.index) + " labels two edges");
    slot = l.sign > 0 ? forward(e) : reverse(forward(e));
  }
  if (non_tree != fp_->free_rank())
    throw GraphError("graph has " + std::to_string(non_tree) + " edges outside the tree but free rank " +
                     std::to_string(fp_->free_rank()));
}

MarkedGraph MarkedGraph::rose(std::shared_ptr<const FreeProduct> fp) {
  std::vector<GraphVertex> vs{{"v0", 0}};
  std::vector<GraphEdge> es;
  for (int j = 1; j <= fp->free_rank(); ++j)
    es.push_back({"e" + std::to_string(j), 0, 0, 1.0, false, Word{FreeLetter{j, 1}}});
  const int r = static_cast<int>(fp->factor_count());
  for (int i = 1; i <= r; ++i) {
    vs.push_back({"v" + std::to_string(i), i});
    es.push_back({r == 1 ? std::string("h") : "h" + std::to_string(i), 0, i, 0.5, true, {}});
  }
  return MarkedGraph(std::move(fp), std::move(vs), std::move(es), 0);
}

int MarkedGraph::vertex_of_factor(int factor) const {
  for (int v = 0; v < vertex_count(); ++v)
    if (factor_at(v) == factor) return v;
  throw GraphError("no vertex carries factor " + std::to_string(factor));
}

int MarkedGraph::origin(OrientedEdge d) const {
  const auto& e = edges_.at(static_cast<std::size_t>(edge_of(d)));
  return is_reversed(d) ? e.head : e.tail;
}

int MarkedGraph::terminus(OrientedEdge d) const { return origin(reverse(d)); }

Word MarkedGraph::label(OrientedEdge d) const {
  const Word& l = edges_.at(static_cast<std::size_t>(edge_of(d))).label;
  return is_reversed(d) ? inverse(*fp_, l) : l;
}

std::vector<OrientedEdge> MarkedGraph::germs(int v) const {
  std::vector<OrientedEdge> out;
  for (OrientedEdge d = 0; d < 2 * edge_count(); ++d)
    if (origin(d) == v) out.push_back(d);
  return out;
}

std::string MarkedGraph::edge_name(OrientedEdge d) const {
  std::string n = edges_.at(static_cast<std::size_t>(edge_of(d))).name;
  if (is_reversed(d)) n[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(n[0])));
  return n;
}

OrientedEdge MarkedGraph::parse_edge(std::string_view token) const {
  if (token.empty()) throw GraphError("empty edge token");
  std::string lower(token);
  bool rev = std::isupper(static_cast<unsigned char>(lower[0]));
  lower[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(lower[0])));
  for (int e = 0; e < edge_count(); ++e)
    if (edges_[static_cast<std::size_t>(e)].name == lower) return rev ? reverse(forward(e)) : forward(e);
  throw GraphError("unknown edge '" + std::string(token) + "'");
}

int MarkedGraph::vertex_by_name(std::string_view name) const {
  for (int v = 0; v < vertex_count(); ++v)
    if (vertices_[static_cast<std::size_t>(v)].name == name) return v;
  throw GraphError("unknown vertex '" + std::string(name) + "'");
}

std::vector<OrientedEdge> MarkedGraph::tree_path(int u, int v) const {
  std::vector<OrientedEdge> up, down;
  while (u != v) {
    if (tree_depth_[static_cast<std::size_t>(u)] >= tree_depth_[static_cast<std::size_t>(v)]) {
      OrientedEdge d = tree_parent_[static_cast<std::size_t>(u)];
      up.push_back(reverse(d));
      u = origin(d);
    } else {
      OrientedEdge d = tree_parent_[static_cast<std::size_t>(v)];
      down.push_back(d);
      v = origin(d);
    }
  }
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

}  // namespace fpaut
