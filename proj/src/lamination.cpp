#include "fpaut/lamination.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "fpaut/spectrum.hpp"
#include "fpaut/train_track.hpp"

namespace fpaut {

std::vector<std::size_t> LaminaryLanguage::counts_by_length() const {
  std::vector<std::size_t> out(static_cast<std::size_t>(std::max(depth, 0)), 0);
  for (const auto& [p, w] : words) ++out[p.size() - 1];
  return out;
}

EdgePath iterate_edge(const GraphMap& f, OrientedEdge e, int k) {
  EdgePath p = edge_path(f.graph(), e);
  for (int i = 0; i < k; ++i) p = f.sharp(p);
  return p;
}

void add_subpaths(const MarkedGraph& g, LaminaryLanguage& lang, const EdgePath& p, int k, OrientedEdge edge) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j <= n && j - i <= static_cast<std::size_t>(lang.depth); ++j) {
      Projection key(p.edges.begin() + static_cast<std::ptrdiff_t>(i), p.edges.begin() + static_cast<std::ptrdiff_t>(j));
      if (lang.words.count(key)) continue;
      EdgePath sub = subpath(g, p, i, j);
      Projection rkey = reversed_projection(key);
      lang.words.emplace(std::move(key), LanguageWord{sub, k, edge});
      lang.words.emplace(std::move(rkey), LanguageWord{reverse(g, sub), k, edge});
    }
}

LaminaryLanguage generate_language(const GraphMap& f, int L, int kmax) {
  const MarkedGraph& g = f.graph();
  LaminaryLanguage lang;
  lang.graph = f.graph_ptr();
  lang.depth = std::max(L, 0);
  if (L <= 0) return lang;
  std::vector<EdgePath> cur;
  for (int e = 0; e < g.edge_count(); ++e) cur.push_back(edge_path(g, forward(e)));
  for (int k = 1; k <= kmax; ++k) {
    std::size_t before = lang.words.size();
    for (int e = 0; e < g.edge_count(); ++e) {
      auto& p = cur[static_cast<std::size_t>(e)];
      p = f.sharp(p);
      add_subpaths(g, lang, p, k, forward(e));
    }
    lang.levels = k;
    // sets are cumulative, so equal sizes mean equal sets
    if (k > 1 && lang.words.size() == before) {
      lang.saturation = k - 1;
      break;
    }
  }
  return lang;
}

GenerationVerdict check_generation_property(const LaminaryLanguage& lang, const GraphMap& f, int kcap) {
  const MarkedGraph& g = f.graph();
  GenerationVerdict v;
  if (lang.words.empty()) return v;
  const int n = g.edge_count();
  for (int e = 0; e < n; ++e) {
    std::set<int> orbit{e};
    EdgePath p = edge_path(g, forward(e));
    std::vector<std::set<Projection>> windows;  // per k, both orientations
    for (int k = 1; k <= kcap; ++k) {
      p = f.sharp(p);
      for (OrientedEdge d : p.edges) orbit.insert(edge_of(d));
      std::set<Projection> s;
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j <= p.size() && j - i <= static_cast<std::size_t>(lang.depth); ++j) {
          Projection key(p.edges.begin() + static_cast<std::ptrdiff_t>(i), p.edges.begin() + static_cast<std::ptrdiff_t>(j));
          s.insert(reversed_projection(key));
          s.insert(std::move(key));
        }
      windows.push_back(std::move(s));
    }
    if (!describe_subgraph(g, std::vector<int>(orbit.begin(), orbit.end())).hyperbolic) {
      v.skipped.push_back(e);
      continue;
    }
    for (const auto& [w, info] : lang.words) {
      int found = 0;
      for (int k = 1; k <= kcap && !found; ++k)
        if (windows[static_cast<std::size_t>(k - 1)].count(w)) found = k;
      if (!found) {
        v.ok = false;
        v.failing_edge = forward(e);
        v.failing_word = w;
        return v;
      }
      v.max_k = std::max(v.max_k, found);
    }
  }
  return v;
}

std::optional<int> quasi_periodicity_constant(const EdgePath& segment, int L) {
  const int n = static_cast<int>(segment.size());
  if (L <= 0 || n < L) return std::nullopt;
  std::map<Projection, std::vector<int>> occurrences;
  for (int i = 0; i + L <= n; ++i)
    occurrences[Projection(segment.edges.begin() + i, segment.edges.begin() + i + L)].push_back(i);
  // need[s]: shortest window starting at s that holds every word
  const int inf = std::numeric_limits<int>::max();
  std::vector<int> need(static_cast<std::size_t>(n - L + 1), 0);
  for (const auto& [w, pos] : occurrences) {
    std::size_t idx = 0;
    for (int s = 0; s + L <= n; ++s) {
      while (idx < pos.size() && pos[idx] < s) ++idx;
      int& slot = need[static_cast<std::size_t>(s)];
      if (idx == pos.size()) slot = inf;
      else if (slot != inf) slot = std::max(slot, pos[idx] - s + L);
    }
  }
  int best = -1;
  for (int window = L; window <= n; ++window) {
    bool ok = true;
    for (int s = 0; s + window <= n && ok; ++s)
      if (need[static_cast<std::size_t>(s)] > window) ok = false;
    if (ok) {
      best = window;
      break;
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

StabilizationVerdict stabilizes_language(const GraphMap& h, const LaminaryLanguage& lang, double C) {
  StabilizationVerdict v;
  v.below_bound = C < lip_qvol_bcc(h).bcc - 1e-12;
  const std::size_t L = static_cast<std::size_t>(lang.depth);
  for (const auto& [w, info] : lang.words) {
    EdgePath img = f_sharp_c(h, info.witness, C);
    if (img.empty()) {
      ++v.skipped;
      continue;
    }
    ++v.checked;
    bool ok = true;
    if (img.size() <= L) {
      ok = lang.contains(img.edges);
    } else {
      for (std::size_t i = 0; i + L <= img.size() && ok; ++i)
        ok = lang.contains(Projection(img.edges.begin() + static_cast<std::ptrdiff_t>(i),
                                      img.edges.begin() + static_cast<std::ptrdiff_t>(i + L)));
    }
    if (!ok) {
      ++v.failed;
      if (v.ok) {
        v.ok = false;
        v.failing_word = w;
        v.failing_image = img.edges;
      }
    }
  }
  return v;
}

}  // namespace fpaut
