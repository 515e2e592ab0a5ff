#include "fpaut/autos.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace fpaut {

Word apply(const FreeProduct& fp, const FpEndomorphism& f, const Syllable& s) {
  if (is_free(s)) {
    const auto& l = as_free(s);
    const Word& img = f.free_images.at(static_cast<std::size_t>(l.index - 1));
    return l.sign > 0 ? img : inverse(fp, img);
  }
  const auto& h = as_factor(s);
  const FactorImage& fi = f.factor_images.at(static_cast<std::size_t>(h.factor - 1));
  MaybeElement a = apply_factor_aut(fp.factor(h.factor), fp.factor(fi.target), fi.twist, h);
  if (!a) return {};
  Word raw = fi.conjugator;
  raw.push_back(std::move(*a));
  Word tail = inverse(fp, fi.conjugator);
  raw.insert(raw.end(), tail.begin(), tail.end());
  return reduce(fp, raw);
}

Word apply(const FreeProduct& fp, const FpEndomorphism& f, const Word& w) {
  Word raw;
  for (const auto& s : w) {
    Word img = apply(fp, f, s);
    raw.insert(raw.end(), img.begin(), img.end());
  }
  return reduce(fp, raw);
}

FpEndomorphism compose(const FreeProduct& fp, const FpEndomorphism& outer, const FpEndomorphism& inner) {
  FpEndomorphism c;
  for (const auto& img : inner.free_images) c.free_images.push_back(apply(fp, outer, img));
  for (std::size_t i = 0; i < inner.factor_images.size(); ++i) {
    const FactorImage& fi = inner.factor_images[i];
    const FactorImage& fo = outer.factor_images.at(static_cast<std::size_t>(fi.target - 1));
    FactorImage r;
    r.target = fo.target;
    r.conjugator = multiply(fp, apply(fp, outer, fi.conjugator), fo.conjugator);
    r.twist = compose(fp.factor(static_cast<int>(i) + 1), fp.factor(fi.target), fp.factor(fo.target),
                      fo.twist, fi.twist);
    c.factor_images.push_back(std::move(r));
  }
  return c;
}

FpAutomorphism::FpAutomorphism(std::shared_ptr<const FreeProduct> fp, FpEndomorphism forward,
                               FpEndomorphism backward)
    : fp_(std::move(fp)), forward_(std::move(forward)), backward_(std::move(backward)) {}

namespace {

FpEndomorphism inner_endo(const FreeProduct& fp, const Word& u) {
  FpEndomorphism e;
  Word ui = inverse(fp, u);
  for (int j = 1; j <= fp.free_rank(); ++j)
    e.free_images.push_back(reduce(fp, [&] {
      Word raw = u;
      raw.push_back(FreeLetter{j, 1});
      raw.insert(raw.end(), ui.begin(), ui.end());
      return raw;
    }()));
  for (const auto& h : fp.factors())
    e.factor_images.push_back(FactorImage{h.id(), u, FactorAutomorphism::identity(h)});
  return e;
}

}  // namespace

FpAutomorphism FpAutomorphism::identity(std::shared_ptr<const FreeProduct> fp) {
  FpEndomorphism e = inner_endo(*fp, {});
  return FpAutomorphism(fp, e, e);
}

FpAutomorphism FpAutomorphism::inner(std::shared_ptr<const FreeProduct> fp, const Word& u) {
  Word ru = reduce(*fp, u);
  FpEndomorphism f = inner_endo(*fp, ru);
  FpEndomorphism b = inner_endo(*fp, fpaut::inverse(*fp, ru));
  return FpAutomorphism(fp, std::move(f), std::move(b));
}

Word generators(const FreeProduct& fp) {
  Word g;
  for (int j = 1; j <= fp.free_rank(); ++j) g.push_back(FreeLetter{j, 1});
  for (const auto& h : fp.factors())
    for (std::size_t k = 0; k < h.generator_count(); ++k)
      if (MaybeElement e = h.generator(k)) g.push_back(*e);
  return g;
}

namespace {

std::string check_shape(const FreeProduct& fp, const FpEndomorphism& e, const char* which) {
  if (e.free_images.size() != static_cast<std::size_t>(fp.free_rank()))
    return std::string(which) + ": wrong number of free generator images";
  if (e.factor_images.size() != fp.factor_count())
    return std::string(which) + ": wrong number of factor entries";
  std::set<int> targets;
  for (std::size_t i = 0; i < e.factor_images.size(); ++i) {
    const auto& fi = e.factor_images[i];
    const int src = static_cast<int>(i) + 1;
    if (fi.target < 1 || fi.target > static_cast<int>(fp.factor_count()))
      return std::string(which) + ": factor " + std::to_string(src) + " has no valid target";
    targets.insert(fi.target);
    if (fi.twist.source != src || fi.twist.target != fi.target)
      return std::string(which) + ": twist of factor " + std::to_string(src) + " has wrong source/target";
    if (!is_reduced(fi.conjugator))
      return std::string(which) + ": conjugator of factor " + std::to_string(src) + " is not reduced";
    FactorAutVerdict v = verify_factor_aut(fp.factor(src), fp.factor(fi.target), fi.twist);
    if (!v.ok) return std::string(which) + ": twist of factor " + std::to_string(src) + ": " + v.witness;
  }
  if (targets.size() != e.factor_images.size()) return std::string(which) + ": factor targets are not a permutation";
  for (const auto& w : e.free_images)
    if (!is_reduced(w)) return std::string(which) + ": free generator image is not reduced";
  return {};
}

}  // namespace

AutVerdict verify(const FpAutomorphism& phi) {
  const FreeProduct& fp = phi.fp();
  for (auto [e, name] : {std::pair{&phi.forward(), "map"}, std::pair{&phi.backward(), "inverse"}})
    if (std::string err = check_shape(fp, *e, name); !err.empty()) return {false, err};
  for (const auto& g : generators(fp)) {
    Word one{g};
    Word back = apply(fp, phi.backward(), apply(fp, phi.forward(), one));
    if (back != one) return {false, "inverse after map: " + format(fp, g) + " -> " + format(fp, back)};
    Word fwd = apply(fp, phi.forward(), apply(fp, phi.backward(), one));
    if (fwd != one) return {false, "map after inverse: " + format(fp, g) + " -> " + format(fp, fwd)};
  }
  return {};
}

FpAutomorphism compose(const FpAutomorphism& phi, const FpAutomorphism& psi) {
  const FreeProduct& fp = phi.fp();
  return FpAutomorphism(phi.fp_ptr(), compose(fp, phi.forward(), psi.forward()),
                        compose(fp, psi.backward(), phi.backward()));
}

FpAutomorphism power(const FpAutomorphism& phi, long k) {
  FpAutomorphism base = k < 0 ? phi.inverse() : phi;
  long n = k < 0 ? -k : k;
  FpAutomorphism out = FpAutomorphism::identity(phi.fp_ptr());
  for (long i = 0; i < n; ++i) out = compose(base, out);
  return out;
}

bool equal_on_generators(const FpAutomorphism& a, const FpAutomorphism& b) {
  for (const auto& g : generators(a.fp()))
    if (a.image(g) != b.image(g)) return false;
  return true;
}

bool is_identity(const FpAutomorphism& a) {
  for (const auto& g : generators(a.fp()))
    if (a.image(g) != Word{g}) return false;
  return true;
}

std::size_t cancellation_margin(const FpAutomorphism& phi) {
  const FreeProduct& fp = phi.fp();
  double lip = 1.0;
  for (const auto& img : phi.forward().free_images) lip = std::max(lip, static_cast<double>(img.size()));
  for (const auto& fi : phi.forward().factor_images)
    lip = std::max(lip, 2.0 * static_cast<double>(fi.conjugator.size()) + 1.0);
  double qvol = fp.free_rank() + 0.5 * static_cast<double>(fp.factor_count());
  // one extra syllable: a factor merge replaces the last kept syllable
  return static_cast<std::size_t>(std::ceil(lip * qvol)) + 1;
}

Ray boundary_apply(const FpAutomorphism& phi, const Ray& x) {
  const std::size_t margin = cancellation_margin(phi);
  auto source_depth = std::make_shared<std::size_t>(8);
  return Ray({}, [phi, x, margin, source_depth](const Word& current) -> Word {
    const std::size_t need = current.size() + 1;
    for (int round = 0; round < 24; ++round) {
      Word img = phi.apply(x.prefix(*source_depth));
      if (img.size() >= need + margin) {
        std::size_t stable = img.size() - margin;
        if (!std::equal(current.begin(), current.end(), img.begin()))
          throw WordError("boundary image prefixes are not nested");
        return Word(img.begin() + static_cast<std::ptrdiff_t>(current.size()),
                    img.begin() + static_cast<std::ptrdiff_t>(stable));
      }
      *source_depth *= 2;
    }
    return {};
  });
}

FixVerdict fixes_boundary_point(const FpAutomorphism& phi, const Ray& x, std::size_t depth) {
  FixVerdict v;
  v.depth = depth;
  Ray img = boundary_apply(phi, x);
  Word a = img.prefix(depth);
  Word b = x.prefix(depth);
  for (std::size_t i = 0; i < depth; ++i)
    if (a[i] != b[i]) {
      v.fixed = false;
      v.diverges_at = i + 1;
      break;
    }
  return v;
}

std::string to_string(FixedPointKind k) {
  switch (k) {
    case FixedPointKind::attractive: return "attractive";
    case FixedPointKind::repulsive_under_inverse: return "repulsive-under-inverse";
    case FixedPointKind::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

// Y agrees with X on exactly `window` syllables and continues at random.
Ray perturbed(std::shared_ptr<const FreeProduct> fpp, const Ray& x, std::size_t window, std::uint64_t seed) {
  const FreeProduct& fp = *fpp;
  auto rng = std::make_shared<std::mt19937_64>(seed);
  Word seed_word = x.prefix(window);
  const Syllable next = x.at(window);
  Syllable s = next;
  for (int attempt = 0; s == next; ++attempt) {
    if (attempt > 1000) throw WordError("cannot perturb the ray");
    s = random_syllable(fp, *rng, seed_word.empty() ? nullptr : &seed_word.back());
  }
  seed_word.push_back(s);
  return Ray(std::move(seed_word), [rng, fpp](const Word& current) {
    Word tail;
    const Syllable* prev = &current.back();
    for (int i = 0; i < 16; ++i) {
      tail.push_back(random_syllable(*fpp, *rng, prev));
      prev = &tail.back();
    }
    return tail;
  });
}

std::vector<std::size_t> attraction_probe(const FpAutomorphism& phi, const Ray& x, const ClassifyOptions& o,
                                          std::uint64_t salt) {
  std::vector<std::size_t> best;
  const std::size_t target = 2 * o.window;
  for (std::size_t s = 0; s < o.samples; ++s) {
    Ray y = perturbed(phi.fp_ptr(), x, o.window, o.seed * 1000003ULL + salt * 7919ULL + s);
    std::size_t top = 0;
    for (std::size_t n = 0; n < o.iterations && top < target; ++n) {
      y = boundary_apply(phi, y);
      top = std::max(top, common_prefix(y, x, target).size());
    }
    best.push_back(top);
  }
  return best;
}

}  // namespace

Classification classify_fixed_point(const FpAutomorphism& phi, const Ray& x, const ClassifyOptions& o) {
  Classification c;
  c.fix = fixes_boundary_point(phi, x, o.depth);
  if (!c.fix.fixed) return c;
  const std::size_t target = 2 * o.window;
  auto all_reach = [&](const std::vector<std::size_t>& v) {
    return !v.empty() && std::all_of(v.begin(), v.end(), [&](std::size_t a) { return a >= target; });
  };
  c.forward_agreement = attraction_probe(phi, x, o, 1);
  if (all_reach(c.forward_agreement)) {
    c.kind = FixedPointKind::attractive;
    return c;
  }
  c.inverse_agreement = attraction_probe(phi.inverse(), x, o, 2);
  if (all_reach(c.inverse_agreement)) c.kind = FixedPointKind::repulsive_under_inverse;
  return c;
}

}  // namespace fpaut
