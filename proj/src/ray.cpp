#include "fpaut/ray.hpp"

#include <cmath>

namespace fpaut {

Ray::Ray(Word seed, Extender extender)
    : impl_(std::make_shared<Impl>(Impl{std::move(seed), std::move(extender)})) {
  if (!is_reduced(impl_->memo)) throw WordError("ray seed is not reduced");
}

std::size_t Ray::materialized() const { return impl_ ? impl_->memo.size() : 0; }

const Word& Ray::prefix_at_least(std::size_t n) const {
  if (!impl_) throw WordError("empty ray handle");
  Word& memo = impl_->memo;
  while (memo.size() < n) {
    if (!impl_->extend) throw RayStagnation("ray has no extender", memo.size());
    Word tail = impl_->extend(memo);
    if (tail.empty()) throw RayStagnation("ray extender made no progress", memo.size());
    if (!memo.empty() && interacts(memo.back(), tail.front()))
      throw WordError("ray extension is not reduced at position " + std::to_string(memo.size()));
    if (!is_reduced(tail)) throw WordError("ray extension is not reduced");
    memo.insert(memo.end(), tail.begin(), tail.end());
  }
  return memo;
}

Word Ray::prefix(std::size_t n) const {
  const Word& memo = prefix_at_least(n);
  return Word(memo.begin(), memo.begin() + static_cast<std::ptrdiff_t>(n));
}

Ray eventually_periodic_ray(Word prefix, Word period) {
  if (period.empty()) throw WordError("empty period");
  Word check = prefix;
  check.insert(check.end(), period.begin(), period.end());
  check.insert(check.end(), period.begin(), period.end());
  if (!is_reduced(check)) throw WordError("periodic ray is not reduced");
  return Ray(std::move(prefix), [period](const Word&) { return period; });
}

Ray rational_ray(const FreeProduct& fp, const Word& u) {
  if (!is_hyperbolic(fp, u)) throw WordError("elliptic word " + format(fp, u) + " has no boundary limit");
  CyclicReduction cr = cyclic_reduce(fp, u);
  return eventually_periodic_ray(cr.conjugator, cr.core);
}

Distance boundary_distance(const Word& a, const Word& b, std::size_t depth) {
  if (a == b) return {0.0, false};
  std::size_t k = common_prefix(a, b, depth).size();
  bool truncated = k >= depth;
  return {std::exp(-static_cast<double>(k)), truncated};
}

Distance boundary_distance(const Ray& a, const Ray& b, std::size_t depth) {
  if (a.same_as(b)) return {0.0, false};
  std::size_t k = common_prefix(a, b, depth).size();
  return {std::exp(-static_cast<double>(k)), k >= depth};
}

std::optional<RationalEvidence> detect_rational(const Ray& x, std::size_t depth, std::size_t max_period) {
  Word p = x.prefix(depth);
  for (std::size_t period = 1; period <= max_period && period < depth; ++period) {
    std::size_t start = depth - period;
    while (start > 0 && p[start - 1] == p[start - 1 + period]) --start;
    std::size_t tail = depth - start;
    if (tail >= std::max(depth / 2, 2 * period))
      return RationalEvidence{Word(p.begin() + static_cast<std::ptrdiff_t>(start),
                                   p.begin() + static_cast<std::ptrdiff_t>(start + period)),
                              start};
  }
  return std::nullopt;
}

}  // namespace fpaut
