#include "fpaut/graph.hpp"

#include <cctype>

namespace fpaut {

namespace {

MaybeElement mul_at(const MarkedGraph& g, int v, const MaybeElement& x, const MaybeElement& y) {
  if (g.is_free_vertex(v)) {
    if (x || y) throw GraphError("vertex element at free vertex " + g.vertices()[static_cast<std::size_t>(v)].name);
    return std::nullopt;
  }
  return g.fp().factor(g.factor_at(v)).multiply(x, y);
}

MaybeElement inv(const MarkedGraph& g, const MaybeElement& x) {
  if (!x) return std::nullopt;
  return g.fp().factor(x->factor).inverse(*x);
}

void check_element(const MarkedGraph& g, int v, const MaybeElement& x, const char* where) {
  if (!x) return;
  if (g.is_free_vertex(v))
    throw GraphError(std::string(where) + " element at free vertex " + g.vertices()[static_cast<std::size_t>(v)].name);
  if (x->factor != g.factor_at(v) || !g.fp().factor(x->factor).is_valid(*x))
    throw GraphError(std::string(where) + " element does not belong to the vertex group of " +
                     g.vertices()[static_cast<std::size_t>(v)].name);
}

EdgePath tree_edge_path(const MarkedGraph& g, int u, int v) {
  EdgePath p = vertex_path(u);
  for (OrientedEdge d : g.tree_path(u, v)) append(g, p, edge_path(g, d));
  return p;
}

}  // namespace

EdgePath vertex_path(int v) {
  EdgePath p;
  p.start = p.end = v;
  return p;
}

EdgePath edge_path(const MarkedGraph& g, OrientedEdge d) {
  EdgePath p;
  p.start = g.origin(d);
  p.end = g.terminus(d);
  p.edges = {d};
  return p;
}

void validate(const MarkedGraph& g, const EdgePath& p) {
  if (p.start < 0 || p.start >= g.vertex_count() || p.end < 0 || p.end >= g.vertex_count())
    throw GraphError("path endpoint out of range");
  check_element(g, p.start, p.lead, "leading");
  if (p.edges.empty()) {
    if (p.start != p.end || !p.turns.empty() || p.trail) throw GraphError("malformed path without edges");
    return;
  }
  if (p.turns.size() + 1 != p.edges.size()) throw GraphError("path has the wrong number of turns");
  for (OrientedEdge d : p.edges)
    if (d < 0 || edge_of(d) >= g.edge_count()) throw GraphError("path uses an unknown edge");
  if (g.origin(p.edges.front()) != p.start) throw GraphError("path does not start at its start vertex");
  for (std::size_t k = 0; k + 1 < p.edges.size(); ++k) {
    int v = g.terminus(p.edges[k]);
    if (g.origin(p.edges[k + 1]) != v)
      throw GraphError("path is not connected after " + g.edge_name(p.edges[k]) + " (position " +
                       std::to_string(k + 1) + ")");
    check_element(g, v, p.turns[k], "turn");
  }
  if (g.terminus(p.edges.back()) != p.end) throw GraphError("path does not end at its end vertex");
  check_element(g, p.end, p.trail, "trailing");
}

void append(const MarkedGraph& g, EdgePath& p, const EdgePath& q, const MaybeElement& junction) {
  if (p.end != q.start)
    throw GraphError("cannot join paths ending at " + g.vertices()[static_cast<std::size_t>(p.end)].name +
                     " and starting at " + g.vertices()[static_cast<std::size_t>(q.start)].name);
  if (p.edges.empty()) {
    MaybeElement lead = mul_at(g, q.start, mul_at(g, q.start, p.lead, junction), q.lead);
    p = q;
    p.lead = lead;
    return;
  }
  MaybeElement mid = mul_at(g, p.end, mul_at(g, p.end, p.trail, junction), q.lead);
  if (q.edges.empty()) {
    p.trail = mid;
    return;
  }
  p.turns.push_back(mid);
  p.edges.insert(p.edges.end(), q.edges.begin(), q.edges.end());
  p.turns.insert(p.turns.end(), q.turns.begin(), q.turns.end());
  p.trail = q.trail;
  p.end = q.end;
}

EdgePath join(const MarkedGraph& g, const EdgePath& p, const EdgePath& q, const MaybeElement& junction) {
  EdgePath r = p;
  append(g, r, q, junction);
  return r;
}

EdgePath tighten(const MarkedGraph& g, const EdgePath& p) {
  std::vector<OrientedEdge> stack;
  std::vector<MaybeElement> slots;  // element before each stacked edge
  stack.reserve(p.edges.size());
  slots.reserve(p.edges.size());
  MaybeElement pending = p.lead;
  for (std::size_t k = 0; k < p.edges.size(); ++k) {
    OrientedEdge d = p.edges[k];
    if (k > 0) pending = mul_at(g, g.origin(d), pending, p.turns[k - 1]);
    if (!stack.empty() && stack.back() == reverse(d) && !pending) {
      pending = slots.back();
      stack.pop_back();
      slots.pop_back();
    } else {
      stack.push_back(d);
      slots.push_back(pending);
      pending.reset();
    }
  }
  pending = mul_at(g, p.end, pending, p.trail);
  EdgePath r;
  r.start = p.start;
  r.end = p.end;
  if (stack.empty()) {
    r.lead = pending;
    return r;
  }
  r.lead = slots.front();
  r.edges = std::move(stack);
  r.turns.assign(slots.begin() + 1, slots.end());
  r.trail = pending;
  return r;
}

bool is_reduced(const MarkedGraph&, const EdgePath& p) {
  for (std::size_t k = 0; k + 1 < p.edges.size(); ++k)
    if (p.edges[k + 1] == reverse(p.edges[k]) && !p.turns[k]) return false;
  return true;
}

EdgePath reverse(const MarkedGraph& g, const EdgePath& p) {
  EdgePath r;
  r.start = p.end;
  r.end = p.start;
  if (p.edges.empty()) {
    r.lead = inv(g, p.lead);
    return r;
  }
  r.lead = inv(g, p.trail);
  r.trail = inv(g, p.lead);
  for (auto it = p.edges.rbegin(); it != p.edges.rend(); ++it) r.edges.push_back(reverse(*it));
  for (auto it = p.turns.rbegin(); it != p.turns.rend(); ++it) r.turns.push_back(inv(g, *it));
  return r;
}

EdgePath subpath(const MarkedGraph& g, const EdgePath& p, std::size_t i, std::size_t j) {
  if (i > j || j > p.edges.size()) throw GraphError("subpath range out of bounds");
  if (i == j) return vertex_path(i == 0 ? p.start : g.terminus(p.edges[i - 1]));
  EdgePath r;
  r.start = g.origin(p.edges[i]);
  r.end = g.terminus(p.edges[j - 1]);
  r.edges.assign(p.edges.begin() + static_cast<std::ptrdiff_t>(i), p.edges.begin() + static_cast<std::ptrdiff_t>(j));
  r.turns.assign(p.turns.begin() + static_cast<std::ptrdiff_t>(i), p.turns.begin() + static_cast<std::ptrdiff_t>(j - 1));
  return r;
}

std::vector<OrientedEdge> reversed_projection(const std::vector<OrientedEdge>& edges) {
  std::vector<OrientedEdge> r;
  r.reserve(edges.size());
  for (auto it = edges.rbegin(); it != edges.rend(); ++it) r.push_back(reverse(*it));
  return r;
}

double length(const MarkedGraph& g, const EdgePath& p) {
  double total = 0.0;
  for (OrientedEdge d : p.edges) total += g.length(d);
  return total;
}

Word word(const MarkedGraph& g, const EdgePath& p) {
  Word raw;
  if (p.lead) raw.push_back(*p.lead);
  for (std::size_t k = 0; k < p.edges.size(); ++k) {
    Word l = g.label(p.edges[k]);
    raw.insert(raw.end(), l.begin(), l.end());
    if (k + 1 < p.edges.size() && p.turns[k]) raw.push_back(*p.turns[k]);
  }
  if (p.trail) raw.push_back(*p.trail);
  return reduce(g.fp(), raw);
}

EdgePath path_of_word(const MarkedGraph& g, const Word& w) {
  const int v0 = g.basepoint();
  EdgePath p = vertex_path(v0);
  for (const auto& s : w) {
    if (is_free(s)) {
      const auto& l = as_free(s);
      OrientedEdge d = g.labelled_edge(l.index);
      if (l.sign < 0) d = reverse(d);
      append(g, p, tree_edge_path(g, v0, g.origin(d)));
      append(g, p, edge_path(g, d));
      append(g, p, tree_edge_path(g, g.terminus(d), v0));
    } else {
      const auto& x = as_factor(s);
      int v = g.vertex_of_factor(x.factor);
      append(g, p, tree_edge_path(g, v0, v));
      append(g, p, tree_edge_path(g, v, v0), x);
    }
  }
  return tighten(g, p);
}

namespace {

std::string element_token(const MarkedGraph& g, const FactorElement& x) {
  return "(" + format(g.fp(), Syllable(x)) + ")";
}

}  // namespace

std::string format(const MarkedGraph& g, const EdgePath& p) {
  std::string out;
  auto add = [&](const std::string& tok) {
    if (!out.empty()) out += ' ';
    out += tok;
  };
  if (p.lead) add(element_token(g, *p.lead));
  for (std::size_t k = 0; k < p.edges.size(); ++k) {
    add(g.edge_name(p.edges[k]));
    if (k + 1 < p.edges.size() && p.turns[k]) add(element_token(g, *p.turns[k]));
  }
  if (p.trail) add(element_token(g, *p.trail));
  return out.empty() ? "." : out;
}

std::string format_edges(const MarkedGraph& g, const std::vector<OrientedEdge>& edges) {
  std::string out;
  for (OrientedEdge d : edges) {
    if (!out.empty()) out += ' ';
    out += g.edge_name(d);
  }
  return out.empty() ? "." : out;
}

EdgePath parse_path(const MarkedGraph& g, std::string_view text, int start) {
  EdgePath p = vertex_path(start);
  MaybeElement pending;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] == '(') {
      std::size_t close = text.find(')', i);
      if (close == std::string_view::npos) throw ParseError("unclosed '(' in path", i + 1);
      Word x = parse_word(g.fp(), text.substr(i + 1, close - i - 1));
      if (x.size() > 1 || (x.size() == 1 && is_free(x[0])))
        throw ParseError("path turn must be a single vertex-group element", i + 1);
      if (pending) throw ParseError("two consecutive path elements", i + 1);
      if (!x.empty()) {
        if (g.is_free_vertex(p.end) || as_factor(x[0]).factor != g.factor_at(p.end))
          throw ParseError("element does not belong to the vertex group here", i + 1);
        pending = as_factor(x[0]);
      }
      i = close + 1;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '(') ++j;
    std::string_view tok = text.substr(i, j - i);
    if (tok != ".") {
      OrientedEdge d;
      try {
        d = g.parse_edge(tok);
      } catch (const GraphError& e) {
        throw ParseError(e.what(), i + 1);
      }
      if (g.origin(d) != p.end) throw ParseError("path is not connected at '" + std::string(tok) + "'", i + 1);
      append(g, p, edge_path(g, d), pending);
      pending.reset();
    }
    i = j;
  }
  if (pending) append(g, p, vertex_path(p.end), pending);
  return p;
}

}  // namespace fpaut
