#pragma once

// Slow, independent reimplementations used to cross-check the library.

#include <optional>
#include <variant>
#include <vector>

#include "fpaut/words.hpp"

namespace oracle {

using namespace fpaut;

// Rescans from the left after every rewrite.
inline Word naive_reduce(const FreeProduct& fp, Word w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const Syllable& x = w[i];
      const Syllable& y = w[i + 1];
      if (is_free(x) && is_free(y)) {
        if (as_free(x).index == as_free(y).index && as_free(x).sign == -as_free(y).sign) {
          w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
          changed = true;
          break;
        }
      } else if (!is_free(x) && !is_free(y) && as_factor(x).factor == as_factor(y).factor) {
        MaybeElement m = fp.factor(as_factor(x).factor).multiply(as_factor(x), as_factor(y));
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        if (m) w.insert(w.begin() + static_cast<std::ptrdiff_t>(i), *m);
        changed = true;
        break;
      }
    }
  }
  return w;
}

// Rose path of a word: free letter -> loop e_j, factor element x of H_i ->
// h_i (x) h_i^-1. Counts the edge pairs removed while tightening.
struct Edge {
  int id;
  int sign;
};
using Token = std::variant<Edge, FactorElement>;

inline std::size_t rose_tightening_steps(const FreeProduct& fp, const Word& w) {
  std::vector<Token> t;
  for (const auto& s : w) {
    if (is_free(s)) {
      t.push_back(Edge{as_free(s).index, as_free(s).sign});
    } else {
      int hid = 1000 + as_factor(s).factor;
      t.push_back(Edge{hid, 1});
      t.push_back(as_factor(s));
      t.push_back(Edge{hid, -1});
    }
  }
  std::size_t steps = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      if (std::holds_alternative<Edge>(t[i]) && std::holds_alternative<Edge>(t[i + 1])) {
        auto a = std::get<Edge>(t[i]), b = std::get<Edge>(t[i + 1]);
        if (a.id == b.id && a.sign == -b.sign) {
          t.erase(t.begin() + static_cast<std::ptrdiff_t>(i), t.begin() + static_cast<std::ptrdiff_t>(i) + 2);
          ++steps;
          changed = true;
          break;
        }
      } else if (!std::holds_alternative<Edge>(t[i]) && !std::holds_alternative<Edge>(t[i + 1])) {
        const auto& x = std::get<FactorElement>(t[i]);
        const auto& y = std::get<FactorElement>(t[i + 1]);
        MaybeElement m = fp.factor(x.factor).multiply(x, y);
        t.erase(t.begin() + static_cast<std::ptrdiff_t>(i), t.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        if (m) t.insert(t.begin() + static_cast<std::ptrdiff_t>(i), *m);
        changed = true;
        break;
      }
    }
  }
  return steps;
}

// Tries every prefix c of w as conjugator and keeps the shortest cyclically
// reduced c^-1 w c.
inline std::pair<Word, Word> brute_cyclic_reduce(const FreeProduct& fp, const Word& w) {
  std::optional<std::pair<Word, Word>> best;
  for (std::size_t k = 0; k <= w.size(); ++k) {
    Word c(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
    Word raw = inverse(fp, c);
    raw.insert(raw.end(), w.begin(), w.end());
    raw.insert(raw.end(), c.begin(), c.end());
    Word core = naive_reduce(fp, raw);
    if (!is_cyclically_reduced(core)) continue;
    if (!best || core.size() < best->first.size()) best = std::pair{core, c};
  }
  return *best;
}

}  // namespace oracle
