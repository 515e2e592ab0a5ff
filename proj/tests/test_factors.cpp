#include <doctest.h>

#include <random>
#include <set>

#include "fpaut/factors.hpp"

using namespace fpaut;

namespace {

FactorElement c5(int e) { return {1, {e}}; }

// S3 as permutations of {0,1,2}, indices in lexicographic order of the
// permutation tuples; generators (0 1) and (0 1 2).
FactorGroup s3() {
  std::vector<std::vector<int>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<std::vector<int>> table(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      std::vector<int> p(3);
      for (int k = 0; k < 3; ++k) p[k] = perms[i][perms[j][k]];
      table[i][j] = static_cast<int>(std::find(perms.begin(), perms.end(), p) - perms.begin());
    }
  return FactorGroup::table(1, table, {2, 3}, {"s", "r"});
}

FactorAutomorphism cyclic_aut(int k, int kinv) {
  return FactorAutomorphism{1, 1, {c5(k)}, {c5(kinv)}};
}

}  // namespace

TEST_CASE("elem_mul on cyclic and free factors") {
  FactorGroup h = FactorGroup::cyclic(1, 5, "a");
  CHECK_FALSE(elem_mul(h, c5(2), c5(3)).has_value());
  CHECK(elem_mul(h, c5(2), c5(2)) == MaybeElement(c5(4)));

  FactorGroup f = FactorGroup::free(1, {"a1", "a2"});
  CHECK_FALSE(elem_mul(f, FactorElement{1, {1}}, FactorElement{1, {-1}}).has_value());
  CHECK(elem_mul(f, FactorElement{1, {2, 1}}, FactorElement{1, {-1, 2}}) == MaybeElement(FactorElement{1, {2, 2}}));
}

TEST_CASE("elem_mul rejects mismatched factors") {
  FactorGroup h = FactorGroup::cyclic(1, 5, "a");
  CHECK_THROWS_AS(elem_mul(h, c5(1), FactorElement{2, {1}}), FactorError);
}

TEST_CASE("apply_factor_aut") {
  FactorGroup h = FactorGroup::cyclic(1, 5, "a");
  CHECK(apply_factor_aut(h, h, FactorAutomorphism::identity(h), c5(3)) == MaybeElement(c5(3)));
  // a -> a^2 sends a^3 to a^6 = a
  CHECK(apply_factor_aut(h, h, cyclic_aut(2, 3), c5(3)) == MaybeElement(c5(6 % 5)));

  FactorGroup f = FactorGroup::free(1, {"a1", "a2"});
  FactorAutomorphism psi{1, 1, {FactorElement{1, {1}}, FactorElement{1, {2, 1}}},
                         {FactorElement{1, {1}}, FactorElement{1, {2, -1}}}};
  CHECK(apply_factor_aut(f, f, psi, FactorElement{1, {2}}) == MaybeElement(FactorElement{1, {2, 1}}));
  CHECK(f.format(FactorElement{1, {2, 1}}) == "a2.a1");
}

TEST_CASE("verify_factor_aut") {
  FactorGroup h = FactorGroup::cyclic(1, 5, "a");
  CHECK(verify_factor_aut(h, h, FactorAutomorphism::identity(h)).ok);
  CHECK(verify_factor_aut(h, h, cyclic_aut(2, 3)).ok);
  auto bad = verify_factor_aut(h, h, cyclic_aut(2, 2));
  CHECK_FALSE(bad.ok);
  CHECK(bad.witness == "a -> a^4");

  FactorGroup f = FactorGroup::free(1, {"a1", "a2"});
  FactorAutomorphism psi{1, 1, {FactorElement{1, {1}}, FactorElement{1, {2, 1}}},
                         {FactorElement{1, {1}}, FactorElement{1, {2, -1}}}};
  CHECK(verify_factor_aut(f, f, psi).ok);
  psi.inverse_images[1] = FactorElement{1, {2}};
  CHECK_FALSE(verify_factor_aut(f, f, psi).ok);
}

TEST_CASE("table groups are validated") {
  CHECK_THROWS_AS(FactorGroup::table(1, {{0, 1}, {1, 1}}, {1}, {"x"}), FactorError);
  CHECK_THROWS_AS(FactorGroup::table(1, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, {0}, {"x"}), FactorError);
  FactorGroup g = s3();
  CHECK(g.order() == 6);
  CHECK(g.elements().size() == 5);
}

TEST_CASE("exhaustive associativity on small finite factors") {
  std::vector<FactorGroup> groups;
  for (int m = 2; m <= 12; ++m) groups.push_back(FactorGroup::cyclic(1, m, "a"));
  groups.push_back(s3());
  for (const auto& g : groups) {
    std::vector<MaybeElement> all{std::nullopt};
    for (auto& e : g.elements()) all.emplace_back(e);
    for (const auto& x : all)
      for (const auto& y : all)
        for (const auto& z : all)
          REQUIRE(g.multiply(g.multiply(x, y), z) == g.multiply(x, g.multiply(y, z)));
  }
}

TEST_CASE("automorphisms of finite factors are bijections") {
  FactorGroup h = FactorGroup::cyclic(1, 5, "a");
  for (int k = 1; k < 5; ++k) {
    int kinv = 1;
    while ((k * kinv) % 5 != 1) ++kinv;
    FactorAutomorphism a = cyclic_aut(k, kinv);
    REQUIRE(verify_factor_aut(h, h, a).ok);
    std::set<MaybeElement> images;
    for (auto& e : h.elements()) images.insert(apply_factor_aut(h, h, a, e));
    CHECK(images.size() == 4);
    CHECK_FALSE(images.count(std::nullopt));
  }
  // conjugation by r in S3
  FactorGroup g = s3();
  MaybeElement r = g.generator(1), s = g.generator(0);
  MaybeElement ri = g.inverse(*r);
  auto conj = [&](const MaybeElement& x) { return g.multiply(g.multiply(r, x), ri); };
  FactorAutomorphism c{1, 1, {conj(s), conj(r)}, {g.multiply(g.multiply(ri, s), r), g.multiply(g.multiply(ri, r), r)}};
  REQUIRE(verify_factor_aut(g, g, c).ok);
  std::set<MaybeElement> images;
  for (auto& e : g.elements()) images.insert(apply_factor_aut(g, g, c, e));
  CHECK(images.size() == 5);
}

TEST_CASE("verify accepts exactly the inverse pairs on cyclic(7)") {
  FactorGroup h = FactorGroup::cyclic(1, 7, "a");
  for (int k = 1; k < 7; ++k)
    for (int j = 1; j < 7; ++j) {
      FactorAutomorphism a{1, 1, {FactorElement{1, {k}}}, {FactorElement{1, {j}}}};
      CHECK(verify_factor_aut(h, h, a).ok == ((k * j) % 7 == 1));
    }
}

TEST_CASE("free factor power and inverse") {
  FactorGroup f = FactorGroup::free(1, {"a1", "a2"});
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> letter(-2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> raw;
    for (int i = 0; i < 6; ++i) {
      int l = letter(rng);
      if (l != 0) raw.push_back(l);
    }
    MaybeElement x;
    for (int l : raw) x = f.multiply(x, FactorElement{1, {l}});
    if (!x) continue;
    CHECK(f.is_valid(*x));
    CHECK_FALSE(f.multiply(x, f.inverse(*x)).has_value());
    CHECK(f.power(x, 3) == f.multiply(x, f.multiply(x, x)));
    CHECK(f.from_generator_word(f.as_generator_word(*x)) == x);
  }
}
