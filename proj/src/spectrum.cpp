#include "fpaut/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace fpaut {

Matrix transition_matrix(const GraphMap& f) {
  const int n = f.graph().edge_count();
  Matrix m(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 0));
  for (int j = 0; j < n; ++j)
    for (OrientedEdge d : f.image(forward(j)).edges) ++m[static_cast<std::size_t>(edge_of(d))][static_cast<std::size_t>(j)];
  return m;
}

std::vector<std::vector<int>> irreducible_blocks(const Matrix& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<bool> on(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  std::vector<std::vector<int>> out;
  int counter = 0;
  std::function<void(int)> visit = [&](int v) {
    auto sv = static_cast<std::size_t>(v);
    index[sv] = low[sv] = counter++;
    stack.push_back(v);
    on[sv] = true;
    for (int w = 0; w < n; ++w) {
      auto sw = static_cast<std::size_t>(w);
      if (m[sw][sv] == 0) continue;  // v -> w when w occurs in f(v)
      if (index[sw] < 0) {
        visit(w);
        low[sv] = std::min(low[sv], low[sw]);
      } else if (on[sw]) {
        low[sv] = std::min(low[sv], index[sw]);
      }
    }
    if (low[sv] == index[sv]) {
      std::vector<int> comp;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on[static_cast<std::size_t>(w)] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[static_cast<std::size_t>(v)] < 0) visit(v);
  std::reverse(out.begin(), out.end());
  return out;
}

double perron_root(const Matrix& m, const std::vector<int>& block, double tol) {
  const std::size_t k = block.size();
  if (k == 1) {
    auto i = static_cast<std::size_t>(block[0]);
    return static_cast<double>(m[i][i]);
  }
  std::vector<double> x(k, 1.0), y(k);
  double lo = 0.0, hi = 0.0;
  double best_lo = 0.0, best_hi = INFINITY;
  int stale = 0;
  for (int it = 0; it < 1'000'000; ++it) {
    for (std::size_t a = 0; a < k; ++a) {
      double s = x[a];
      for (std::size_t b = 0; b < k; ++b)
        s += static_cast<double>(m[static_cast<std::size_t>(block[a])][static_cast<std::size_t>(block[b])]) * x[b];
      y[a] = s;
    }
    lo = INFINITY;
    hi = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      lo = std::min(lo, y[a] / x[a]);
      hi = std::max(hi, y[a] / x[a]);
    }
    double top = *std::max_element(y.begin(), y.end());
    for (std::size_t a = 0; a < k; ++a) x[a] = y[a] / top;
    if (hi - lo < best_hi - best_lo) {
      best_lo = lo;
      best_hi = hi;
      stale = 0;
    } else {
      ++stale;
    }
    // past the tolerance, keep going while rounding still lets the bounds close
    if (best_hi - best_lo <= tol * best_hi && (best_hi == best_lo || stale >= 8)) break;
  }
  return (best_lo + best_hi) / 2.0 - 1.0;
}

Spectrum transition_spectrum(const GraphMap& f) {
  Spectrum s;
  s.matrix = transition_matrix(f);
  s.blocks = irreducible_blocks(s.matrix);
  for (std::size_t b = 0; b < s.blocks.size(); ++b) {
    double r = perron_root(s.matrix, s.blocks[b]);
    if (s.dominant < 0 || r > s.pf + 1e-12) {
      s.dominant = static_cast<int>(b);
      s.pf = r;
    }
  }
  return s;
}

std::string format_edge_set(const MarkedGraph& g, const std::vector<int>& edges) {
  std::string out = "{";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) out += ", ";
    out += g.edge_name(forward(edges[i]));
  }
  return out + "}";
}

InvariantSubgraph describe_subgraph(const MarkedGraph& g, std::vector<int> edges) {
  std::sort(edges.begin(), edges.end());
  InvariantSubgraph s;
  s.edges = edges;
  const int nv = g.vertex_count();
  std::vector<int> parent(static_cast<std::size_t>(nv));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  std::vector<bool> touched(static_cast<std::size_t>(nv), false);
  for (int e : edges) {
    int a = g.origin(forward(e)), b = g.terminus(forward(e));
    touched[static_cast<std::size_t>(a)] = touched[static_cast<std::size_t>(b)] = true;
    int ra = find(a), rb = find(b);
    if (ra == rb) {
      s.hyperbolic = true;
      s.reason = "contains a circuit through " + g.edge_name(forward(e));
      return s;
    }
    parent[static_cast<std::size_t>(ra)] = rb;
  }
  std::vector<int> nonfree(static_cast<std::size_t>(nv), 0);
  for (int v = 0; v < nv; ++v)
    if (touched[static_cast<std::size_t>(v)] && !g.is_free_vertex(v)) {
      if (++nonfree[static_cast<std::size_t>(find(v))] >= 2) {
        s.hyperbolic = true;
        s.reason = "a component meets two vertex groups";
        return s;
      }
    }
  s.reason = "a forest with at most one vertex group per component";
  return s;
}

IrreducibilityVerdict o_irreducibility_check(const GraphMap& f) {
  const MarkedGraph& g = f.graph();
  const int n = g.edge_count();
  if (n > 20) throw GraphError("invariant subgraph enumeration is limited to 20 edges");
  std::vector<unsigned> reach(static_cast<std::size_t>(n), 0);
  for (int e = 0; e < n; ++e)
    for (OrientedEdge d : f.image(forward(e)).edges) reach[static_cast<std::size_t>(e)] |= 1u << edge_of(d);
  const unsigned full = n == 32 ? ~0u : (1u << n) - 1;
  std::vector<std::pair<unsigned, unsigned>> sets;  // (popcount, mask)
  for (unsigned mask = 1; mask < full; ++mask) {
    bool closed = true;
    for (int e = 0; e < n && closed; ++e)
      if ((mask >> e & 1u) && (reach[static_cast<std::size_t>(e)] & ~mask)) closed = false;
    if (closed) sets.emplace_back(static_cast<unsigned>(__builtin_popcount(mask)), mask);
  }
  std::sort(sets.begin(), sets.end());
  IrreducibilityVerdict v;
  for (auto [count, mask] : sets) {
    std::vector<int> edges;
    for (int e = 0; e < n; ++e)
      if (mask >> e & 1u) edges.push_back(e);
    InvariantSubgraph s = describe_subgraph(g, edges);
    if (s.hyperbolic && !v.witness) {
      v.irreducible = false;
      v.witness = s;
    }
    v.invariant.push_back(std::move(s));
  }
  return v;
}

}  // namespace fpaut
