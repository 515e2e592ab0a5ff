#pragma once

// Reduced words in G = H_1 * ... * H_r * F_q.

#include <compare>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fpaut/factors.hpp"

namespace fpaut {

/// b_index^sign, index in 1..q.
struct FreeLetter {
  int index = 1;
  int sign = 1;

  friend bool operator==(const FreeLetter&, const FreeLetter&) = default;
  // positive letter sorts before its inverse
  friend std::strong_ordering operator<=>(const FreeLetter& x, const FreeLetter& y) {
    if (auto c = x.index <=> y.index; c != 0) return c;
    return y.sign <=> x.sign;
  }
};

using Syllable = std::variant<FreeLetter, FactorElement>;
using Word = std::vector<Syllable>;

class WordError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t column)
      : std::runtime_error(what + " (column " + std::to_string(column) + ")"), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// The decomposition: free rank q and factors H_1..H_r (ids 1-based).
class FreeProduct {
 public:
  FreeProduct() = default;
  FreeProduct(int free_rank, std::vector<FactorGroup> factors);

  int free_rank() const { return free_rank_; }
  std::size_t factor_count() const { return factors_.size(); }
  const std::vector<FactorGroup>& factors() const { return factors_; }
  const FactorGroup& factor(int id) const;

 private:
  int free_rank_ = 0;
  std::vector<FactorGroup> factors_;
};

inline bool is_free(const Syllable& s) { return std::holds_alternative<FreeLetter>(s); }
inline const FreeLetter& as_free(const Syllable& s) { return std::get<FreeLetter>(s); }
inline const FactorElement& as_factor(const Syllable& s) { return std::get<FactorElement>(s); }

/// True when x and y would cancel or merge if adjacent.
bool interacts(const Syllable& x, const Syllable& y);
bool is_reduced(const Word& w);

Syllable inverse(const FreeProduct& fp, const Syllable& s);
Word inverse(const FreeProduct& fp, const Word& w);

Word reduce(const FreeProduct& fp, const Word& raw);

struct Concatenation {
  Word word;
  std::size_t cancellation = 0;
};

/// reduce(u v) together with the number of junction steps: one per
/// cancelled free pair, one per factor merge, one more when a merge gives
/// the identity.
Concatenation concat(const FreeProduct& fp, const Word& u, const Word& v);

/// reduce(u v).
Word multiply(const FreeProduct& fp, const Word& u, const Word& v);
Word power(const FreeProduct& fp, const Word& w, long k);

struct CyclicReduction {
  Word core;
  Word conjugator;  // w = conjugator . core . conjugator^-1
};

CyclicReduction cyclic_reduce(const FreeProduct& fp, const Word& w);
bool is_cyclically_reduced(const Word& w);
bool is_hyperbolic(const FreeProduct& fp, const Word& w);

/// Raw syllables as written; identity factor tokens are dropped.
Word parse_syllables(const FreeProduct& fp, std::string_view text);
/// reduce(parse_syllables(text)).
Word parse_word(const FreeProduct& fp, std::string_view text);

std::string format(const FreeProduct& fp, const Syllable& s);
/// Space-separated syllables; "1" for the empty word.
std::string format(const FreeProduct& fp, const Word& w);

/// A uniformly chosen syllable that does not interact with `prev`.
Syllable random_syllable(const FreeProduct& fp, std::mt19937_64& rng, const Syllable* prev);
/// Reduced word of exactly `length` syllables.
Word random_word(const FreeProduct& fp, std::size_t length, std::mt19937_64& rng);

}  // namespace fpaut
