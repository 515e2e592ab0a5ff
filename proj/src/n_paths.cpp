#include "fpaut/n_paths.hpp"

#include <algorithm>
#include <map>

namespace fpaut {

bool is_n_path(const GraphMap& f, const EdgePath& p) {
  if (p.empty()) return false;
  return f.sharp(p).edges == p.edges;
}

namespace {

std::vector<MaybeElement> turn_choices(const MarkedGraph& g, int v) {
  std::vector<MaybeElement> out{std::nullopt};
  if (g.is_free_vertex(v)) return out;
  const FactorGroup& h = g.fp().factor(g.factor_at(v));
  if (h.is_finite()) {
    for (const auto& x : h.elements()) out.emplace_back(x);
  } else {
    for (std::size_t j = 0; j < h.generator_count(); ++j) {
      FactorElement x = *h.generator(j);
      out.emplace_back(x);
      out.emplace_back(h.inverse(x));
    }
  }
  return out;
}

}  // namespace

NPathReport find_n_paths(const GraphMap& f, int L) {
  const MarkedGraph& g = f.graph();
  NPathReport r;
  r.max_edges = L;
  std::map<std::vector<OrientedEdge>, NPathClass> classes;
  std::vector<std::vector<MaybeElement>> choices;
  for (int v = 0; v < g.vertex_count(); ++v) choices.push_back(turn_choices(g, v));

  auto indivisible = [&](const EdgePath& p) {
    for (std::size_t s = 1; s < p.size(); ++s)
      if (is_n_path(f, subpath(g, p, 0, s)) && is_n_path(f, subpath(g, p, s, p.size()))) return false;
    return true;
  };

  EdgePath p;
  auto visit = [&](auto&& self) -> void {
    ++r.examined;
    if (is_n_path(f, p)) {
      ++r.found;
      if (indivisible(p)) {
        auto key = std::min(p.edges, reversed_projection(p.edges));
        classes.try_emplace(key, NPathClass{key, p});
      }
    }
    if (static_cast<int>(p.size()) >= L) return;
    int v = p.end;
    for (const auto& c : choices[static_cast<std::size_t>(v)])
      for (OrientedEdge d : g.germs(v)) {
        if (d == reverse(p.edges.back()) && !c) continue;
        EdgePath saved = p;
        p = join(g, p, edge_path(g, d), c);
        self(self);
        p = std::move(saved);
      }
  };
  for (int d = 0; d < 2 * g.edge_count(); ++d) {
    p = edge_path(g, d);
    visit(visit);
  }
  for (auto& [k, c] : classes) r.classes.push_back(std::move(c));
  return r;
}

}  // namespace fpaut
