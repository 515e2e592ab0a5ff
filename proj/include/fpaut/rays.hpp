#pragma once

// Attractive fixed rays of a train-track map, their brick splittings, and
// finite-depth stabilizer experiments.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpaut/autos.hpp"
#include "fpaut/lamination.hpp"
#include "fpaut/n_paths.hpp"
#include "fpaut/train_track.hpp"

namespace fpaut {

class RayError : public std::runtime_error {
 public:
  RayError(const std::string& what, int level = -1) : std::runtime_error(what), level_(level) {}
  int level() const { return level_; }

 private:
  int level_;
};

/// The vertex u.* of the cover together with the power m of f used.
struct BaseVertex {
  Word offset;
  int power = 1;
};

struct BaseSearch {
  int radius = 2;     // offset length in syllables
  int power_cap = 4;
  int probes = 3;     // growth checks on the segment
};

/// Smallest offset first (length, then syllable order), then the least m:
/// g = f^m moves v, u . [v, g(v)] is reduced, [v, g(v)] . [g(v), g^2(v)]
/// does not cancel, the adapted splitting of [v, g(v)] opens with an edge
/// and the segments grow for `probes` iterations. f must fix the basepoint.
BaseVertex find_base_vertex(const GraphMap& f, const std::vector<NPathClass>& classes, const BaseSearch& search);

/// Bricks are single edges (regular) and maximal runs of N-paths from
/// `classes` (singular). Throws RayError when the first brick is singular or
/// split_check fails at depth K under g.
BrickSplitting adapted_splitting(const GraphMap& g, const EdgePath& segment, const std::vector<NPathClass>& classes,
                                 int K = 4);

struct SegmentRecord {
  int k = 0;
  EdgePath path;  // [g^k(v), g^{k+1}(v)]
  std::size_t cancellation = 0;  // edges lost at the junction with segment k-1
};

class AttractiveRay {
 public:
  /// Builds segments 0..levels. Throws RayError on junction cancellation.
  AttractiveRay(const GraphMap& f, BaseVertex base, int levels);

  const GraphMap& map() const { return f_; }
  const GraphMap& iterate() const { return g_; }
  const BaseVertex& base() const { return base_; }
  const std::vector<SegmentRecord>& segments() const { return segments_; }
  int levels() const { return static_cast<int>(segments_.size()) - 1; }

  void extend_to(int levels);
  /// Segments concatenated until at least `edges` edges (or all built ones).
  EdgePath path(std::size_t edges = SIZE_MAX) const;
  /// The offset followed by the words of the built segments.
  Word word() const;
  /// The full ray, extended on demand.
  Ray ray() const;

 private:
  GraphMap f_;
  GraphMap g_;
  BaseVertex base_;
  std::vector<SegmentRecord> segments_;
};

struct SingularReport {
  double ell0 = 0.0;
  std::vector<double> per_level;  // max singular length over fresh and iterated splittings
  bool bounded = true;            // no growth in the second half of the levels
};

SingularReport max_singular_length(const AttractiveRay& ray, const std::vector<NPathClass>& classes, int levels);

struct OccurrenceEvidence {
  bool found = false;
  bool trivial = false;  // h_{#,C}(u) is empty
  std::size_t position = 0;  // edge index in the ray path of h_{#,C}(u)
  int level = 0;             // segment holding the regular brick
  std::size_t brick = 0;
  EdgePath pumped;  // U = u u0 u
  EdgePath image;   // h_{#,C}(U)
  std::size_t scanned = 0;
};

/// Pumps u inside the ray path to U = u u0 u with |h_#(u0)| > ell0 + 2C,
/// then scans the first `budget` edges of the ray for h_{#,C}(U) and an
/// occurrence of h_{#,C}(u) inside one iterated regular brick. Throws
/// RayError when u is outside the language or the ray is too short to pump.
OccurrenceEvidence occurrence_in_regular_brick(const AttractiveRay& ray, const LaminaryLanguage& lang,
                                               const std::vector<NPathClass>& classes, const EdgePath& u,
                                               const GraphMap& h, double C, std::size_t budget);

struct StabReport {
  FixVerdict fix;
  std::optional<long> order;  // nullopt when above the cap
  long order_cap = 12;
  bool factor_direction = false;  // free generators fixed, factors twisted in place
  bool preserves_factors = false;
  bool contradicts = false;       // fixed, finite order > 1, preserves factors
};

/// Every factor goes to a conjugate of itself.
bool preserves_factors(const FpAutomorphism& psi);
/// Free generators fixed, factors twisted in place, each conjugator empty
/// or one syllable of its own factor.
bool in_factor_direction(const FpAutomorphism& psi);
std::optional<long> order_of(const FpAutomorphism& psi, long cap);

StabReport stab_check(const FpAutomorphism& psi, const Ray& x, std::size_t depth, long order_cap = 12);

}  // namespace fpaut
