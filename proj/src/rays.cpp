#include "fpaut/rays.hpp"

#include <algorithm>

namespace fpaut {

namespace {

std::vector<Syllable> syllable_alphabet(const FreeProduct& fp) {
  std::vector<Syllable> out;
  for (int j = 1; j <= fp.free_rank(); ++j) {
    out.emplace_back(FreeLetter{j, 1});
    out.emplace_back(FreeLetter{j, -1});
  }
  for (const auto& h : fp.factors()) {
    if (h.is_finite()) {
      for (const auto& x : h.elements()) out.emplace_back(x);
    } else {
      for (std::size_t j = 0; j < h.generator_count(); ++j) {
        out.emplace_back(*h.generator(j));
        out.emplace_back(h.inverse(*h.generator(j)));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Reduced words of exactly n syllables, in increasing order.
std::vector<Word> words_of_length(const std::vector<Syllable>& alphabet, int n) {
  std::vector<Word> cur{Word{}};
  for (int i = 0; i < n; ++i) {
    std::vector<Word> next;
    for (const auto& w : cur)
      for (const auto& s : alphabet) {
        if (!w.empty() && interacts(w.back(), s)) continue;
        Word x = w;
        x.push_back(s);
        next.push_back(std::move(x));
      }
    cur = std::move(next);
  }
  return cur;
}

std::size_t edges_cancelled(const MarkedGraph& g, const EdgePath& p, const EdgePath& q) {
  EdgePath j = join(g, p, q);
  return (j.size() - tighten(g, j).size()) / 2;
}

Word segment_word(const FreeProduct& fp, const FpEndomorphism& phi, const Word& u) {
  return multiply(fp, inverse(fp, u), apply(fp, phi, u));
}

double singular_max(const MarkedGraph& g, const BrickSplitting& s) {
  double m = 0.0;
  for (const auto& b : s.bricks)
    if (b.tag == BrickTag::singular) m = std::max(m, length(g, b.path));
  return m;
}

std::size_t find_sub(const std::vector<OrientedEdge>& hay, const std::vector<OrientedEdge>& needle, std::size_t from,
                     std::size_t limit) {
  if (needle.empty()) return from;
  auto end = hay.begin() + static_cast<std::ptrdiff_t>(std::min(limit, hay.size()));
  auto it = std::search(hay.begin() + static_cast<std::ptrdiff_t>(from), end, needle.begin(), needle.end());
  return it == end ? SIZE_MAX : static_cast<std::size_t>(it - hay.begin());
}

}  // namespace

BrickSplitting adapted_splitting(const GraphMap& g, const EdgePath& segment, const std::vector<NPathClass>& classes,
                                 int K) {
  const MarkedGraph& gr = g.graph();
  if (segment.empty()) throw RayError("cannot split a path without edges");
  std::vector<Projection> pieces;
  for (const auto& c : classes) {
    pieces.push_back(c.projection);
    pieces.push_back(reversed_projection(c.projection));
  }
  std::stable_sort(pieces.begin(), pieces.end(), [](const Projection& a, const Projection& b) { return a.size() > b.size(); });

  BrickSplitting s;
  const std::size_t n = segment.size();
  std::size_t i = 0;
  while (i < n) {
    std::size_t end = i;
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& p : pieces)
        if (end + p.size() <= n && std::equal(p.begin(), p.end(), segment.edges.begin() + static_cast<std::ptrdiff_t>(end))) {
          end += p.size();
          grew = true;
          break;
        }
    }
    if (i > 0) s.junctions.push_back(segment.turns[i - 1]);
    if (end > i) {
      s.bricks.push_back({subpath(gr, segment, i, end), BrickTag::singular});
      i = end;
    } else {
      s.bricks.push_back({subpath(gr, segment, i, i + 1), BrickTag::regular});
      ++i;
    }
  }
  s.bricks.front().path.lead = segment.lead;
  s.bricks.back().path.trail = segment.trail;
  if (s.bricks.front().tag != BrickTag::regular) throw RayError("first brick of the adapted splitting is not an edge");
  SplitVerdict v = split_check(g, segment, s, K);
  if (!v.ok) throw RayError("adapted splitting fails the split check: " + v.reason, v.k);
  return s;
}

BaseVertex find_base_vertex(const GraphMap& f, const std::vector<NPathClass>& classes, const BaseSearch& search) {
  const MarkedGraph& gr = f.graph();
  const FreeProduct& fp = gr.fp();
  if (f.vertex_image(gr.basepoint()) != gr.basepoint()) throw RayError("the map must fix the basepoint");
  std::vector<GraphMap> gs;
  std::vector<FpEndomorphism> phis;
  for (int m = 1; m <= search.power_cap; ++m) {
    gs.push_back(power(f, m));
    phis.push_back(induced_endomorphism(gs.back()));
  }
  auto alphabet = syllable_alphabet(fp);
  for (int len = 1; len <= search.radius; ++len)
    for (const Word& u : words_of_length(alphabet, len))
      for (int m = 1; m <= search.power_cap; ++m) {
        const GraphMap& g = gs[static_cast<std::size_t>(m - 1)];
        Word s0 = segment_word(fp, phis[static_cast<std::size_t>(m - 1)], u);
        if (s0.empty() || concat(fp, u, s0).cancellation != 0) continue;
        EdgePath seg = path_of_word(gr, s0);
        EdgePath next = g.sharp(seg);
        if (edges_cancelled(gr, seg, next) != 0 || concat(fp, s0, word(gr, next)).cancellation != 0) continue;
        try {
          adapted_splitting(g, seg, classes, 4);
        } catch (const RayError&) {
          continue;
        }
        bool grows = true;
        EdgePath a = seg;
        for (int k = 0; k < search.probes && grows; ++k) {
          EdgePath b = g.sharp(a);
          grows = b.size() > a.size();
          a = std::move(b);
        }
        if (grows) return {u, m};
      }
  throw RayError("no base vertex within radius " + std::to_string(search.radius) + " and power cap " +
                 std::to_string(search.power_cap));
}

AttractiveRay::AttractiveRay(const GraphMap& f, BaseVertex base, int levels)
    : f_(f), g_(power(f, base.power)), base_(std::move(base)) {
  const MarkedGraph& gr = f_.graph();
  Word s0 = segment_word(gr.fp(), induced_endomorphism(g_), base_.offset);
  if (s0.empty()) throw RayError("the base vertex is fixed");
  if (concat(gr.fp(), base_.offset, s0).cancellation != 0) throw RayError("offset and first segment cancel", 0);
  segments_.push_back({0, path_of_word(gr, s0), 0});
  extend_to(levels);
}

void AttractiveRay::extend_to(int levels) {
  const MarkedGraph& gr = f_.graph();
  while (this->levels() < levels) {
    const EdgePath& last = segments_.back().path;
    int k = static_cast<int>(segments_.size());
    SegmentRecord r{k, g_.sharp(last), 0};
    r.cancellation = edges_cancelled(gr, last, r.path);
    if (r.cancellation != 0) throw RayError("segments cancel at level " + std::to_string(k), k);
    segments_.push_back(std::move(r));
  }
}

EdgePath AttractiveRay::path(std::size_t edges) const {
  const MarkedGraph& gr = f_.graph();
  EdgePath p = segments_.front().path;
  for (std::size_t k = 1; k < segments_.size() && p.size() < edges; ++k) append(gr, p, segments_[k].path);
  return p;
}

Word AttractiveRay::word() const {
  const MarkedGraph& gr = f_.graph();
  Word w = base_.offset;
  for (const auto& s : segments_) {
    Concatenation c = concat(gr.fp(), w, fpaut::word(gr, s.path));
    if (c.cancellation != 0) throw RayError("segment words cancel", s.k);
    w = std::move(c.word);
  }
  return w;
}

Ray AttractiveRay::ray() const {
  struct State {
    GraphMap g;
    EdgePath last;
    int level;
  };
  auto st = std::make_shared<State>(State{g_, segments_.back().path, levels()});
  return Ray(word(), [st](const Word&) {
    st->last = st->g.sharp(st->last);
    ++st->level;
    return fpaut::word(st->g.graph(), st->last);
  });
}

SingularReport max_singular_length(const AttractiveRay& ray, const std::vector<NPathClass>& classes, int levels) {
  AttractiveRay r = ray;
  r.extend_to(levels);
  const GraphMap& g = r.iterate();
  const MarkedGraph& gr = g.graph();
  SingularReport out;
  BrickSplitting iterated = adapted_splitting(g, r.segments()[0].path, classes, 0);
  for (int k = 0; k <= levels; ++k) {
    if (k > 0) iterated = map_splitting(g, iterated);
    BrickSplitting fresh = adapted_splitting(g, r.segments()[static_cast<std::size_t>(k)].path, classes, 0);
    out.per_level.push_back(std::max(singular_max(gr, fresh), singular_max(gr, iterated)));
  }
  out.ell0 = *std::max_element(out.per_level.begin(), out.per_level.end());
  const std::size_t half = out.per_level.size() / 2;
  double early = 0.0, late = 0.0;
  for (std::size_t i = 0; i < out.per_level.size(); ++i) (i < half ? early : late) = std::max(i < half ? early : late, out.per_level[i]);
  out.bounded = half == 0 || late <= early + 1e-12;
  return out;
}

OccurrenceEvidence occurrence_in_regular_brick(const AttractiveRay& ray, const LaminaryLanguage& lang,
                                               const std::vector<NPathClass>& classes, const EdgePath& u,
                                               const GraphMap& h, double C, std::size_t budget) {
  if (u.empty() || static_cast<int>(u.size()) > lang.depth || !lang.contains(u.edges))
    throw RayError("u is not in the laminary language");
  AttractiveRay r = ray;
  while (r.path(budget).size() < budget && r.levels() < 40) r.extend_to(r.levels() + 1);
  const GraphMap& g = r.iterate();
  const MarkedGraph& gr = g.graph();
  const double ell0 = max_singular_length(r, classes, r.levels()).ell0;
  EdgePath P = r.path(budget);
  const std::size_t limit = std::min(budget, P.size());

  // pump: the first occurrence of u followed by one far enough away
  OccurrenceEvidence ev;
  ev.scanned = limit;
  const std::size_t n = u.size();
  std::size_t i = find_sub(P.edges, u.edges, 0, limit);
  bool pumped = false;
  for (; i != SIZE_MAX && !pumped; i = find_sub(P.edges, u.edges, i + 1, limit))
    for (std::size_t j = find_sub(P.edges, u.edges, i + n + 1, limit); j != SIZE_MAX;
         j = find_sub(P.edges, u.edges, j + 1, limit)) {
      EdgePath u0 = subpath(gr, P, i + n, j);
      if (length(gr, h.sharp(u0)) > ell0 + 2 * C) {
        ev.pumped = subpath(gr, P, i, j + n);
        pumped = true;
        break;
      }
    }
  if (!pumped)
    throw RayError("language too shallow: no u0 with |h_#(u0)| > " + std::to_string(ell0 + 2 * C) + " within " +
                   std::to_string(limit) + " edges");
  ev.image = f_sharp_c(h, ev.pumped, C);
  if (ev.image.empty()) throw RayError("trimmed image of the pumped path is empty");
  EdgePath uc = f_sharp_c(h, subpath(gr, ev.pumped, 0, n), C);
  ev.trivial = uc.empty();
  std::size_t t = ev.trivial ? 0 : find_sub(ev.image.edges, uc.edges, 0, SIZE_MAX);

  // iterated bricks g^k_#(b_i) laid out along the ray
  struct Interval {
    std::size_t start, end;
    BrickTag tag;
    int level;
    std::size_t index;
  };
  std::vector<Interval> intervals;
  BrickSplitting cur = adapted_splitting(g, r.segments()[0].path, classes, 0);
  std::size_t offset = 0;
  for (int k = 0; k <= r.levels() && offset < limit; ++k) {
    if (k > 0) cur = map_splitting(g, cur);
    for (std::size_t b = 0; b < cur.bricks.size(); ++b) {
      std::size_t len = cur.bricks[b].path.size();
      intervals.push_back({offset, offset + len, cur.bricks[b].tag, k, b});
      offset += len;
    }
  }

  for (std::size_t p = find_sub(P.edges, ev.image.edges, 0, limit); p != SIZE_MAX;
       p = find_sub(P.edges, ev.image.edges, p + 1, limit)) {
    if (ev.trivial) {
      ev.found = true;
      ev.position = p;
      return ev;
    }
    if (t == SIZE_MAX) break;
    std::size_t q = p + t, qe = q + uc.size();
    auto it = std::upper_bound(intervals.begin(), intervals.end(), q,
                               [](std::size_t x, const Interval& iv) { return x < iv.start; });
    if (it == intervals.begin()) continue;
    --it;
    if (it->tag == BrickTag::regular && qe <= it->end) {
      ev.found = true;
      ev.position = q;
      ev.level = it->level;
      ev.brick = it->index;
      return ev;
    }
  }
  return ev;
}

bool preserves_factors(const FpAutomorphism& psi) {
  const auto& fi = psi.forward().factor_images;
  for (std::size_t i = 0; i < fi.size(); ++i)
    if (fi[i].target != static_cast<int>(i) + 1) return false;
  return true;
}

bool in_factor_direction(const FpAutomorphism& psi) {
  const FreeProduct& fp = psi.fp();
  for (int j = 1; j <= fp.free_rank(); ++j)
    if (psi.forward().free_images[static_cast<std::size_t>(j - 1)] != Word{FreeLetter{j, 1}}) return false;
  if (!preserves_factors(psi)) return false;
  const auto& fi = psi.forward().factor_images;
  for (std::size_t i = 0; i < fi.size(); ++i) {
    const Word& c = fi[i].conjugator;
    if (c.empty()) continue;
    if (c.size() != 1 || is_free(c[0]) || as_factor(c[0]).factor != static_cast<int>(i) + 1) return false;
  }
  return true;
}

std::optional<long> order_of(const FpAutomorphism& psi, long cap) {
  FpAutomorphism cur = psi;
  for (long n = 1; n <= cap; ++n) {
    if (is_identity(cur)) return n;
    cur = compose(psi, cur);
  }
  return std::nullopt;
}

StabReport stab_check(const FpAutomorphism& psi, const Ray& x, std::size_t depth, long order_cap) {
  StabReport r;
  r.fix = fixes_boundary_point(psi, x, depth);
  r.order_cap = order_cap;
  r.order = order_of(psi, order_cap);
  r.preserves_factors = preserves_factors(psi);
  r.factor_direction = in_factor_direction(psi);
  r.contradicts = r.fix.fixed && r.order && *r.order > 1 && r.preserves_factors;
  return r;
}

}  // namespace fpaut
