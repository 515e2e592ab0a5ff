#include "fpaut/train_track.hpp"

#include <map>
#include <numeric>

namespace fpaut {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

constexpr std::size_t kIterateCap = 2'000'000;

}  // namespace

std::optional<std::size_t> Gates::gate_count(const MarkedGraph& g, int v) const {
  std::size_t c = classes.at(static_cast<std::size_t>(v)).size();
  if (g.is_free_vertex(v)) return c;
  const FactorGroup& h = g.fp().factor(g.factor_at(v));
  if (!h.is_finite()) return std::nullopt;
  return c * h.order();
}

OrientedEdge derivative(const GraphMap& f, OrientedEdge d) {
  const EdgePath& img = f.image(d);
  if (img.empty()) throw GraphError("edge " + f.graph().edge_name(d) + " collapses to a point");
  return img.edges.front();
}

Gates gates_from_map(const GraphMap& f, int K) {
  const MarkedGraph& g = f.graph();
  const int n = 2 * g.edge_count();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<OrientedEdge> cur(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) cur[static_cast<std::size_t>(d)] = derivative(f, d);
  for (int k = 1; k <= K; ++k) {
    std::map<OrientedEdge, int> first;
    for (int d = 0; d < n; ++d) {
      auto [it, fresh] = first.emplace(cur[static_cast<std::size_t>(d)], d);
      if (!fresh) parent[static_cast<std::size_t>(find_root(parent, d))] = find_root(parent, it->second);
    }
    if (k < K)
      for (int d = 0; d < n; ++d) cur[static_cast<std::size_t>(d)] = derivative(f, cur[static_cast<std::size_t>(d)]);
  }
  Gates gates;
  gates.iterations = K;
  gates.gate_of.resize(static_cast<std::size_t>(n));
  gates.classes.resize(static_cast<std::size_t>(g.vertex_count()));
  std::map<int, std::pair<int, std::size_t>> slot;  // root -> (vertex, class index)
  for (int d = 0; d < n; ++d) {
    int r = find_root(parent, d);
    gates.gate_of[static_cast<std::size_t>(d)] = r;
    int v = g.origin(d);
    auto& cls = gates.classes[static_cast<std::size_t>(v)];
    auto it = slot.find(r);
    if (it == slot.end()) {
      slot[r] = {v, cls.size()};
      cls.push_back({d});
    } else {
      cls[it->second.second].push_back(d);
    }
  }
  return gates;
}

bool is_legal_turn(const MarkedGraph& g, const Gates& gates, OrientedEdge in, const MaybeElement& element,
                   OrientedEdge out) {
  (void)g;
  if (element) return true;
  return !gates.same_gate(reverse(in), out);
}

std::string format_turn(const MarkedGraph& g, const TurnRecord& t) {
  std::string s = "(" + g.edge_name(t.in);
  if (t.element) s += " (" + format(g.fp(), Syllable(*t.element)) + ")";
  return s + " " + g.edge_name(t.out) + ")";
}

TrainTrackVerdict is_train_track(const GraphMap& f, int K) {
  const MarkedGraph& g = f.graph();
  TrainTrackVerdict v;
  try {
    v.gates = gates_from_map(f, K);
  } catch (const GraphError& e) {
    v.train_track = false;
    v.failure = e.what();
    return v;
  }
  auto fail = [&](std::string why) {
    if (v.train_track) {
      v.train_track = false;
      v.failure = std::move(why);
    }
  };

  for (int e = 0; e < g.edge_count(); ++e) {
    const EdgePath& img = f.image(forward(e));
    for (std::size_t k = 0; k + 1 < img.edges.size(); ++k) {
      TurnRecord t{forward(e), k, img.edges[k], img.turns[k], img.edges[k + 1], true};
      t.legal = is_legal_turn(g, v.gates, t.in, t.element, t.out);
      v.certificate.push_back(t);
      if (!t.legal && !v.witness) {
        v.witness = t;
        fail("image of " + g.edge_name(forward(e)) + " takes the illegal turn " + format_turn(g, t));
      }
    }
  }

  for (int x = 0; x < g.vertex_count(); ++x) {
    auto count = v.gates.gate_count(g, x);
    if (count && *count < 2) fail("vertex " + g.vertices()[static_cast<std::size_t>(x)].name + " has fewer than two gates");
    std::vector<OrientedEdge> gs = g.germs(x);
    for (std::size_t i = 0; i < gs.size(); ++i)
      for (std::size_t j = i + 1; j < gs.size(); ++j)
        if (!v.gates.same_gate(gs[i], gs[j]) &&
            v.gates.same_gate(derivative(f, gs[i]), derivative(f, gs[j])))
          fail("germs " + g.edge_name(gs[i]) + " and " + g.edge_name(gs[j]) + " lie in different gates but Df joins them");
  }
  if (!v.train_track) return v;

  // iterate without tightening and watch for backtracking
  for (int e = 0; e < g.edge_count() && v.train_track; ++e) {
    EdgePath p = edge_path(g, forward(e));
    for (int k = 1; k <= K; ++k) {
      p = f.map_path(p);
      if (!is_reduced(g, p)) {
        fail("f^" + std::to_string(k) + "(" + g.edge_name(forward(e)) + ") is not reduced");
        break;
      }
      if (p.size() > kIterateCap) break;
    }
  }
  v.iterations = K;
  return v;
}

CancellationBound lip_qvol_bcc(const GraphMap& f) {
  const MarkedGraph& g = f.graph();
  CancellationBound b;
  for (int e = 0; e < g.edge_count(); ++e) {
    double le = g.length(forward(e));
    if (le <= 0.0) throw GraphError("edge " + g.edge_name(forward(e)) + " has zero length");
    b.lip = std::max(b.lip, length(g, f.image(forward(e))) / le);
    b.qvol += le;
  }
  b.bcc = b.lip * b.qvol;
  return b;
}

EdgePath trim(const MarkedGraph& g, const EdgePath& p, double C) {
  if (C <= 0.0) return p;
  constexpr double eps = 1e-12;
  if (2.0 * C >= length(g, p) - eps) return vertex_path(p.start);
  std::size_t i = 0, j = p.size();
  double removed = 0.0;
  while (i < j && removed < C - eps) removed += g.length(p.edges[i++]);
  removed = 0.0;
  while (j > i && removed < C - eps) removed += g.length(p.edges[--j]);
  if (i >= j) return vertex_path(p.start);
  return subpath(g, p, i, j);
}

EdgePath f_sharp_c(const GraphMap& f, const EdgePath& p, double C) { return trim(f.graph(), f.sharp(p), C); }

double cancelled_length(const MarkedGraph& g, const EdgePath& p, const EdgePath& q, const MaybeElement& junction) {
  EdgePath joined = join(g, p, q, junction);
  return (length(g, joined) - length(g, tighten(g, joined))) / 2.0;
}

EdgePath assemble(const MarkedGraph& g, const BrickSplitting& s) {
  if (s.bricks.empty()) throw GraphError("splitting has no bricks");
  if (s.junctions.size() + 1 != s.bricks.size()) throw GraphError("splitting has the wrong number of junctions");
  EdgePath p = s.bricks.front().path;
  for (std::size_t i = 1; i < s.bricks.size(); ++i) append(g, p, s.bricks[i].path, s.junctions[i - 1]);
  return p;
}

BrickSplitting map_splitting(const GraphMap& f, const BrickSplitting& s) {
  const MarkedGraph& g = f.graph();
  BrickSplitting r;
  r.level = s.level + 1;
  for (const auto& b : s.bricks) r.bricks.push_back({f.sharp(b.path), b.tag});
  for (std::size_t i = 0; i < s.junctions.size(); ++i)
    r.junctions.push_back(f.map_element(s.bricks[i].path.end, s.junctions[i]));
  (void)g;
  return r;
}

SplitVerdict split_check(const GraphMap& f, const EdgePath& w, const BrickSplitting& s, int K) {
  const MarkedGraph& g = f.graph();
  EdgePath whole = assemble(g, s);
  if (whole.edges != w.edges || whole.turns != w.turns || whole.start != w.start || whole.end != w.end)
    throw GraphError("bricks do not concatenate to the path");
  SplitVerdict v;
  BrickSplitting cur = s;
  EdgePath target = w;
  for (int k = 1; k <= K; ++k) {
    cur = map_splitting(f, cur);
    target = f.sharp(target);
    for (std::size_t i = 0; i + 1 < cur.bricks.size(); ++i) {
      const EdgePath& a = cur.bricks[i].path;
      const EdgePath& b = cur.bricks[i + 1].path;
      if (a.empty() || b.empty()) {
        v = {false, k, i, "a brick image degenerates to a point"};
        return v;
      }
      MaybeElement turn = g.is_free_vertex(a.end)
                              ? std::nullopt
                              : g.fp().factor(g.factor_at(a.end)).multiply(
                                    g.fp().factor(g.factor_at(a.end)).multiply(a.trail, cur.junctions[i]), b.lead);
      if (b.edges.front() == reverse(a.edges.back()) && !turn) {
        v = {false, k, i, "cancellation at junction " + std::to_string(i) + " of f^" + std::to_string(k)};
        return v;
      }
    }
    EdgePath joined = assemble(g, cur);
    if (joined.edges != target.edges || joined.turns != target.turns) {
      v = {false, k, 0, "concatenated brick images differ from f^" + std::to_string(k) + "_#(w)"};
      return v;
    }
  }
  return v;
}

}  // namespace fpaut
