#pragma once

// Hand-built copies of the bundled instances, independent of the YAML loader.

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "fpaut/autos.hpp"
#include "fpaut/words.hpp"

namespace fx {

using namespace fpaut;

inline std::shared_ptr<const FreeProduct> fp_a() {
  return std::make_shared<const FreeProduct>(2, std::vector{FactorGroup::cyclic(1, 5, "a")});
}

inline std::shared_ptr<const FreeProduct> fp_b() {
  return std::make_shared<const FreeProduct>(2, std::vector{FactorGroup::free(1, {"a1", "a2"})});
}

inline Word w(const FreeProduct& fp, const std::string& text) { return parse_word(fp, text); }

struct FactorSpec {
  int target;
  std::string conjugator;
  std::vector<std::string> images;          // generator images in the target, word syntax
  std::vector<std::string> inverse_images;  // declared inverse twist
};

inline MaybeElement element(const FreeProduct& fp, int factor, const std::string& text) {
  Word x = parse_word(fp, text);
  if (x.empty()) return std::nullopt;
  if (x.size() != 1 || is_free(x[0]) || as_factor(x[0]).factor != factor)
    throw std::runtime_error("not an element of factor " + std::to_string(factor) + ": " + text);
  return as_factor(x[0]);
}

inline FpEndomorphism endo(const FreeProduct& fp, const std::vector<std::string>& free_images,
                           const std::vector<FactorSpec>& factors) {
  FpEndomorphism e;
  for (const auto& s : free_images) e.free_images.push_back(parse_word(fp, s));
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    FactorImage fi;
    fi.target = f.target;
    fi.conjugator = parse_word(fp, f.conjugator);
    fi.twist.source = static_cast<int>(i) + 1;
    fi.twist.target = f.target;
    for (const auto& t : f.images) fi.twist.images.push_back(element(fp, f.target, t));
    for (const auto& t : f.inverse_images) fi.twist.inverse_images.push_back(element(fp, static_cast<int>(i) + 1, t));
    e.factor_images.push_back(fi);
  }
  return e;
}

inline FactorSpec swap_inverse(const FactorSpec& f, int source) {
  return FactorSpec{source, "", f.inverse_images, f.images};
}

inline FpAutomorphism phi_a(std::shared_ptr<const FreeProduct> fp) {
  FactorSpec id{1, "", {"a"}, {"a"}};
  return FpAutomorphism(fp, endo(*fp, {"b2 a", "b1 b2"}, {id}), endo(*fp, {"b2 a B1", "b1 a^4"}, {id}));
}

// a -> a^k on Z/5 with inverse a -> a^kinv, free generators fixed.
inline FpAutomorphism twist_a(std::shared_ptr<const FreeProduct> fp, int k, int kinv) {
  FactorSpec f{1, "", {"a^" + std::to_string(k)}, {"a^" + std::to_string(kinv)}};
  return FpAutomorphism(fp, endo(*fp, {"b1", "b2"}, {f}), endo(*fp, {"b1", "b2"}, {swap_inverse(f, 1)}));
}

inline FpAutomorphism phi_b(std::shared_ptr<const FreeProduct> fp) {
  FactorSpec id{1, "", {"a1", "a2"}, {"a1", "a2"}};
  return FpAutomorphism(fp, endo(*fp, {"b2 a1", "b1 b2"}, {id}), endo(*fp, {"b2 a1 B1", "b1 a1^-1"}, {id}));
}

// a1 -> a1, a2 -> a2 a1
inline FpAutomorphism psi_b(std::shared_ptr<const FreeProduct> fp) {
  FactorSpec f{1, "", {"a1", "a2.a1"}, {"a1", "a2.a1^-1"}};
  return FpAutomorphism(fp, endo(*fp, {"b1", "b2"}, {f}), endo(*fp, {"b1", "b2"}, {swap_inverse(f, 1)}));
}

inline FpAutomorphism swap_b(std::shared_ptr<const FreeProduct> fp) {
  FactorSpec f{1, "", {"a2", "a1"}, {"a2", "a1"}};
  return FpAutomorphism(fp, endo(*fp, {"b1", "b2"}, {f}), endo(*fp, {"b1", "b2"}, {f}));
}

// Oracle for the attracting ray: iterate g on b1 and keep the common part of
// consecutive iterates, which must be nested.
inline Word iterate_prefix(const FpAutomorphism& g, const Word& start, std::size_t length) {
  Word cur = start;
  while (cur.size() < length + 8) {
    Word next = g.apply(cur);
    if (next.size() < cur.size() || !std::equal(cur.begin(), cur.end(), next.begin()))
      throw std::runtime_error("iterates are not nested");
    cur = next;
  }
  cur.resize(length);
  return cur;
}

}  // namespace fx
