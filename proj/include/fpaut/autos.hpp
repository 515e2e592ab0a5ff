#pragma once

// Automorphisms of G preserving the factor system, acting on words and on
// the boundary.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fpaut/ray.hpp"
#include "fpaut/words.hpp"

namespace fpaut {

/// h in H_i  |->  conjugator . twist(h) . conjugator^-1, twist(h) in H_target.
struct FactorImage {
  int target = 0;
  Word conjugator;
  FactorAutomorphism twist;
};

struct FpEndomorphism {
  std::vector<Word> free_images;          // index j-1 for b_j
  std::vector<FactorImage> factor_images;  // index i-1 for H_i
};

Word apply(const FreeProduct& fp, const FpEndomorphism& f, const Syllable& s);
Word apply(const FreeProduct& fp, const FpEndomorphism& f, const Word& w);

/// outer after inner.
FpEndomorphism compose(const FreeProduct& fp, const FpEndomorphism& outer, const FpEndomorphism& inner);

/// An endomorphism together with its declared inverse. Construction does
/// not verify; call verify().
class FpAutomorphism {
 public:
  FpAutomorphism(std::shared_ptr<const FreeProduct> fp, FpEndomorphism forward, FpEndomorphism backward);

  static FpAutomorphism identity(std::shared_ptr<const FreeProduct> fp);
  /// g |-> u g u^-1
  static FpAutomorphism inner(std::shared_ptr<const FreeProduct> fp, const Word& u);

  const FreeProduct& fp() const { return *fp_; }
  const std::shared_ptr<const FreeProduct>& fp_ptr() const { return fp_; }
  const FpEndomorphism& forward() const { return forward_; }
  const FpEndomorphism& backward() const { return backward_; }

  Word apply(const Word& w) const { return fpaut::apply(*fp_, forward_, w); }
  Word image(const Syllable& s) const { return fpaut::apply(*fp_, forward_, s); }
  FpAutomorphism inverse() const { return FpAutomorphism(fp_, backward_, forward_); }

 private:
  std::shared_ptr<const FreeProduct> fp_;
  FpEndomorphism forward_;
  FpEndomorphism backward_;
};

struct AutVerdict {
  bool ok = true;
  std::string witness;
};

/// Factor targets form a permutation, every twist verifies, and both
/// compositions with the declared inverse fix every generator.
AutVerdict verify(const FpAutomorphism& phi);

/// phi after psi.
FpAutomorphism compose(const FpAutomorphism& phi, const FpAutomorphism& psi);
FpAutomorphism power(const FpAutomorphism& phi, long k);

/// Generators of G: every b_j and every generator of every factor.
Word generators(const FreeProduct& fp);
bool equal_on_generators(const FpAutomorphism& a, const FpAutomorphism& b);
bool is_identity(const FpAutomorphism& a);

/// Lip * qvol for the rose representative determined by phi, rounded up:
/// Lip = max(|phi(b_j)|, 2|t_i| + 1), qvol = q + r/2. Bounds the syllables
/// lost at any junction phi(P) . phi(Q) with PQ reduced.
std::size_t cancellation_margin(const FpAutomorphism& phi);

/// The ray boundary-phi(X). A prefix of phi(P) is emitted once it is at least
/// the margin away from the end of phi(P).
Ray boundary_apply(const FpAutomorphism& phi, const Ray& x);

struct FixVerdict {
  bool fixed = true;
  std::size_t diverges_at = 0;  // 1-based syllable index when !fixed
  std::size_t depth = 0;
};

FixVerdict fixes_boundary_point(const FpAutomorphism& phi, const Ray& x, std::size_t depth);

enum class FixedPointKind { attractive, repulsive_under_inverse, inconclusive };
std::string to_string(FixedPointKind k);

struct Classification {
  FixedPointKind kind = FixedPointKind::inconclusive;
  std::vector<std::size_t> forward_agreement;  // best |phi^n(Y) ^ X| per sample, capped at 2N
  std::vector<std::size_t> inverse_agreement;
  FixVerdict fix;
};

struct ClassifyOptions {
  std::size_t depth = 200;
  std::size_t window = 10;
  std::size_t samples = 20;
  std::size_t iterations = 5;
  std::uint64_t seed = 1;
};

/// Perturbs X after N syllables and iterates: attractive evidence needs
/// every sample to reach agreement 2N within the iteration budget. The
/// declared inverse gets the same test.
Classification classify_fixed_point(const FpAutomorphism& phi, const Ray& x, const ClassifyOptions& options);

}  // namespace fpaut
