#pragma once

// Points of the boundary as lazily extended infinite reduced words.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>

#include "fpaut/words.hpp"

namespace fpaut {

class RayStagnation : public std::runtime_error {
 public:
  RayStagnation(const std::string& what, std::size_t depth)
      : std::runtime_error(what + " (probe depth " + std::to_string(depth) + ")"), depth_(depth) {}
  std::size_t depth() const { return depth_; }

 private:
  std::size_t depth_;
};

/// A handle on a memoized prefix buffer. Copies share the buffer, so a
/// Ray and its copies must stay on one thread.
class Ray {
 public:
  /// Given the materialized prefix, returns the syllables to append.
  /// Returning nothing is reported as stagnation.
  using Extender = std::function<Word(const Word& current)>;

  Ray() = default;
  Ray(Word seed, Extender extender);

  /// Exactly n syllables.
  Word prefix(std::size_t n) const;
  /// The memo buffer after extending it to at least n syllables.
  const Word& prefix_at_least(std::size_t n) const;
  const Syllable& at(std::size_t i) const { return prefix_at_least(i + 1)[i]; }
  std::size_t materialized() const;

  bool same_as(const Ray& other) const { return impl_ && impl_ == other.impl_; }

 private:
  struct Impl {
    Word memo;
    Extender extend;
  };
  std::shared_ptr<Impl> impl_;
};

/// The periodic ray prefix . period^infinity.
Ray eventually_periodic_ray(Word prefix, Word period);

/// u^infinity, realized as c . core^infinity from cyclic_reduce(u).
Ray rational_ray(const FreeProduct& fp, const Word& u);

inline Word prefix_of(const Word& w, std::size_t n) {
  return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(std::min(n, w.size())));
}
inline Word prefix_of(const Ray& r, std::size_t n) { return r.prefix(n); }

/// A ^ B cut at depth n.
template <class A, class B>
Word common_prefix(const A& a, const B& b, std::size_t n) {
  Word pa = prefix_of(a, n);
  Word pb = prefix_of(b, n);
  std::size_t k = 0;
  while (k < pa.size() && k < pb.size() && pa[k] == pb[k]) ++k;
  pa.resize(k);
  return pa;
}

struct Distance {
  double value = 0.0;
  bool truncated = false;  // agreement reached the probe depth; value is an upper bound
};

Distance boundary_distance(const Word& a, const Word& b, std::size_t depth);
Distance boundary_distance(const Ray& a, const Ray& b, std::size_t depth);

struct RationalEvidence {
  Word period;
  std::size_t start = 0;  // syllables before the periodic tail
};

/// Smallest period p <= max_period such that a tail of the depth-prefix of
/// length >= max(depth/2, 2p) is p-periodic.
std::optional<RationalEvidence> detect_rational(const Ray& x, std::size_t depth, std::size_t max_period);

}  // namespace fpaut
