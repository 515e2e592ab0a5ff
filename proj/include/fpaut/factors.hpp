#pragma once

// Elliptic factor groups H_i: cyclic groups, groups given by a
// multiplication table, and finitely generated free groups.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fpaut {

enum class FactorKind { cyclic, table, free };

/// An element of a factor group. Never the identity: the identity is
/// represented out of band by an empty std::optional.
///
/// Payload layout by kind:
///   cyclic  {e}          the power a^e, 0 < e < modulus
///   table   {i}          the table index i, i != identity index
///   free    {l1,l2,...}  freely reduced letters, +j / -j for x_j^{+-1}
struct FactorElement {
  int factor = 0;
  std::vector<int> data;

  friend bool operator==(const FactorElement&, const FactorElement&) = default;
  friend auto operator<=>(const FactorElement&, const FactorElement&) = default;
};

/// Element or identity marker.
using MaybeElement = std::optional<FactorElement>;

class FactorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FactorGroup {
 public:
  static FactorGroup cyclic(int id, int modulus, std::string generator);
  /// `table[i][j]` is the index of the product of elements i and j.
  /// `generators` are element indices; every element must be a product of
  /// them. Throws FactorError when the table is not a group.
  static FactorGroup table(int id, std::vector<std::vector<int>> table,
                           std::vector<int> generators,
                           std::vector<std::string> generator_names);
  static FactorGroup free(int id, std::vector<std::string> generators);

  int id() const { return id_; }
  FactorKind kind() const { return kind_; }
  bool is_finite() const { return kind_ != FactorKind::free; }
  /// Group order; only for finite kinds.
  std::size_t order() const;
  int modulus() const { return modulus_; }

  std::size_t generator_count() const { return names_.size(); }
  const std::vector<std::string>& generator_names() const { return names_; }
  MaybeElement generator(std::size_t j) const;

  /// All non-identity elements in a fixed order; finite kinds only.
  std::vector<FactorElement> elements() const;

  MaybeElement multiply(const MaybeElement& x, const MaybeElement& y) const;
  FactorElement inverse(const FactorElement& x) const;
  MaybeElement power(const MaybeElement& x, long exponent) const;

  /// Writes x as a product of generator powers (generator index, exponent).
  std::vector<std::pair<int, long>> as_generator_word(const FactorElement& x) const;

  /// Builds the element for a generator word; returns nullopt for identity.
  MaybeElement from_generator_word(const std::vector<std::pair<int, long>>& word) const;

  bool is_valid(const FactorElement& x) const;

  /// Text form without the factor suffix, e.g. "a^3", "a2.a1^-1".
  std::string format(const FactorElement& x) const;

 private:
  FactorGroup() = default;
  void check_member(const FactorElement& x) const;

  int id_ = 0;
  FactorKind kind_ = FactorKind::cyclic;
  std::vector<std::string> names_;
  int modulus_ = 0;
  // table kind
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<int> table_generators_;
  int identity_ = 0;
  std::vector<std::vector<std::pair<int, long>>> shortest_word_;
};

/// Multiplication with the identity marker: `elem_mul` in the factor layer.
MaybeElement elem_mul(const FactorGroup& group, const FactorElement& x,
                      const FactorElement& y);

/// An isomorphism H_source -> H_target given by generator images, together
/// with its declared inverse.
struct FactorAutomorphism {
  int source = 0;
  int target = 0;
  std::vector<MaybeElement> images;          // per source generator
  std::vector<MaybeElement> inverse_images;  // per target generator

  static FactorAutomorphism identity(const FactorGroup& group);
  FactorAutomorphism inverse() const;
};

/// Image of x under the homomorphic extension of the generator images.
MaybeElement apply_factor_aut(const FactorGroup& source, const FactorGroup& target,
                              const FactorAutomorphism& alpha, const FactorElement& x);

MaybeElement apply_factor_aut(const FactorGroup& source, const FactorGroup& target,
                              const FactorAutomorphism& alpha, const MaybeElement& x);

/// `outer` after `inner`; both declared inverses are composed in reverse.
FactorAutomorphism compose(const FactorGroup& inner_source, const FactorGroup& middle,
                           const FactorGroup& outer_target, const FactorAutomorphism& outer,
                           const FactorAutomorphism& inner);

struct FactorAutVerdict {
  bool ok = true;
  std::string witness;  // e.g. "a -> a^4" for the first generator not fixed
};

/// Checks that alpha and its declared inverse compose to the identity on
/// generators in both orders. Finite kinds additionally get an exhaustive
/// homomorphism and bijectivity check.
FactorAutVerdict verify_factor_aut(const FactorGroup& source, const FactorGroup& target,
                                   const FactorAutomorphism& alpha);

}  // namespace fpaut
