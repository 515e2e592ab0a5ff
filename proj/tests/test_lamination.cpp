#include <doctest.h>

#include <map>
#include <set>
#include <string>

#include "graph_fixtures.hpp"
#include "fpaut/lamination.hpp"
#include "fpaut/train_track.hpp"

using namespace fpaut;

namespace {

// Substitution on edge names, ignoring turn data. Exact for maps whose
// iterates never need tightening.
std::vector<std::string> substitute(const std::map<std::string, std::vector<std::string>>& rule,
                                    const std::vector<std::string>& p) {
  std::vector<std::string> out;
  for (const auto& e : p) {
    const auto& img = rule.at(e);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

std::string flip(const std::string& e) {
  std::string r = e;
  r[0] = static_cast<char>(std::isupper(static_cast<unsigned char>(r[0])) ? std::tolower(r[0]) : std::toupper(r[0]));
  return r;
}

std::map<std::string, std::vector<std::string>> rule_a() {
  std::map<std::string, std::vector<std::string>> r{
      {"e1", {"e2", "h", "H"}}, {"e2", {"e1", "e2"}}, {"h", {"h"}}};
  std::map<std::string, std::vector<std::string>> full = r;
  for (const auto& [e, img] : r) {
    std::vector<std::string> rev;
    for (auto it = img.rbegin(); it != img.rend(); ++it) rev.push_back(flip(*it));
    full[flip(e)] = rev;
  }
  return full;
}

std::set<std::string> oracle_language(int L, int levels) {
  auto rule = rule_a();
  std::set<std::string> out;
  for (std::string e : {"e1", "e2", "h"}) {
    std::vector<std::string> p{e};
    for (int k = 1; k <= levels; ++k) {
      p = substitute(rule, p);
      for (std::size_t i = 0; i < p.size(); ++i) {
        std::string fwd, bwd;
        for (std::size_t j = i; j < p.size() && static_cast<int>(j - i) < L; ++j) {
          fwd += (fwd.empty() ? "" : " ") + p[j];
          bwd = flip(p[j]) + (bwd.empty() ? "" : " ") + bwd;
          out.insert(fwd);
          out.insert(bwd);
        }
      }
    }
  }
  return out;
}

std::set<std::string> keys(const MarkedGraph& g, const LaminaryLanguage& lang) {
  std::set<std::string> out;
  for (const auto& [p, w] : lang.words) out.insert(format_edges(g, p));
  return out;
}

// Direct window scan over all candidate widths.
std::optional<int> oracle_qp(const std::vector<OrientedEdge>& s, int L) {
  const int n = static_cast<int>(s.size());
  if (n < L) return std::nullopt;
  std::set<Projection> words;
  for (int i = 0; i + L <= n; ++i) words.insert(Projection(s.begin() + i, s.begin() + i + L));
  for (int w = L; w <= n; ++w) {
    bool all = true;
    for (int start = 0; start + w <= n && all; ++start) {
      std::set<Projection> seen;
      for (int i = start; i + L <= start + w; ++i) seen.insert(Projection(s.begin() + i, s.begin() + i + L));
      all = seen.size() == words.size();
    }
    if (all) return w;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("small languages") {
  auto g = fx::rose(fx::fp_a());
  GraphMap f = fx::f_a(g);
  LaminaryLanguage one = generate_language(f, 1, 4);
  CHECK(keys(*g, one) == std::set<std::string>{"E1", "E2", "H", "e1", "e2", "h"});
  CHECK(generate_language(f, 0, 4).words.empty());
  LaminaryLanguage id = generate_language(GraphMap::identity(g), 3, 6);
  CHECK(id.words.size() == 6);
  CHECK(id.saturation == 1);
}

TEST_CASE("language matches the substitution oracle") {
  auto g = fx::rose(fx::fp_a());
  GraphMap f = fx::f_a(g);
  for (int L = 1; L <= 6; ++L) {
    LaminaryLanguage lang = generate_language(f, L, 20);
    REQUIRE(lang.saturation);
    CHECK(*lang.saturation <= 20);
    CHECK(keys(*g, lang) == oracle_language(L, lang.levels));
  }
}

TEST_CASE("language is closed under subpaths and reversal") {
  auto g = fx::rose(fx::fp_a());
  LaminaryLanguage lang = generate_language(fx::f_a(g), 6, 20);
  for (const auto& [p, w] : lang.words) {
    CHECK(lang.contains(reversed_projection(p)));
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j <= p.size(); ++j)
        CHECK(lang.contains(Projection(p.begin() + static_cast<std::ptrdiff_t>(i), p.begin() + static_cast<std::ptrdiff_t>(j))));
    CHECK(w.witness.edges == p);
  }
  auto counts = lang.counts_by_length();
  CHECK(counts.size() == 6);
  CHECK(counts[0] == 6);
}

TEST_CASE("language of f and f squared agree once saturated") {
  auto g = fx::rose(fx::fp_a());
  GraphMap f = fx::f_a(g);
  for (int L = 2; L <= 6; L += 2) {
    auto a = keys(*g, generate_language(f, L, 20));
    auto b = keys(*g, generate_language(power(f, 2), L, 20));
    CHECK(a == b);
  }
}

TEST_CASE("generation property") {
  auto g = fx::rose(fx::fp_a());
  GraphMap f = fx::f_a(g);
  GenerationVerdict v4 = check_generation_property(generate_language(f, 4, 20), f, 15);
  CHECK(v4.ok);
  CHECK(v4.max_k <= 10);
  CHECK(v4.skipped == std::vector<int>{2});
  GenerationVerdict v6 = check_generation_property(generate_language(f, 6, 20), f, 15);
  CHECK(v6.ok);
  CHECK(v6.max_k <= 15);

  LaminaryLanguage empty;
  empty.graph = g;
  CHECK(check_generation_property(empty, f, 15).ok);

  GraphMap red = fx::f_red(g);
  GenerationVerdict bad = check_generation_property(generate_language(red, 2, 20), red, 15);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.failing_edge);
  CHECK(g->edge_name(*bad.failing_edge) == "e1");
}

TEST_CASE("quasi-periodicity") {
  auto g = fx::rose(fx::fp_a());
  std::string text;
  for (int i = 0; i < 20; ++i) text += "e1 e2 ";
  EdgePath periodic = parse_path(*g, text, 0);
  CHECK(quasi_periodicity_constant(periodic, 2) == 3);
  CHECK(quasi_periodicity_constant(periodic, 2) == oracle_qp(periodic.edges, 2));

  EdgePath leaf = iterate_edge(fx::f_a(g), forward(0), 8);
  auto q = quasi_periodicity_constant(leaf, 3);
  REQUIRE(q);
  CHECK(*q <= 60);
  CHECK(quasi_periodicity_constant(parse_path(*g, "e1", 0), 3) == std::nullopt);

  std::optional<int> prev;
  for (int L = 1; L <= 6; ++L) {
    auto cur = quasi_periodicity_constant(leaf, L);
    CHECK(cur == oracle_qp(leaf.edges, L));
    if (prev && cur) CHECK(*cur >= *prev);
    prev = cur;
  }
}

TEST_CASE("language stabilization") {
  auto ga = fx::rose(fx::fp_a());
  GraphMap f = fx::f_a(ga);
  LaminaryLanguage lang = generate_language(f, 6, 20);
  StabilizationVerdict own = stabilizes_language(f, lang, lip_qvol_bcc(f).bcc);
  CHECK(own.ok);
  CHECK(own.failed == 0);
  CHECK(own.checked + own.skipped == lang.words.size());
  CHECK_FALSE(own.below_bound);

  StabilizationVerdict id = stabilizes_language(GraphMap::identity(ga), lang, 0.0);
  CHECK(id.ok);
  CHECK(id.checked == lang.words.size());

  StabilizationVerdict red = stabilizes_language(fx::f_red(ga), lang, 0.0);
  CHECK_FALSE(red.ok);
  CHECK(red.below_bound);

  auto gb = fx::rose(fx::fp_b());
  LaminaryLanguage lb = generate_language(fx::f_b(gb), 6, 20);
  StabilizationVerdict twist = stabilizes_language(fx::h_psi(gb), lb, 1.0);
  CHECK(twist.ok);
  CHECK(twist.failed == 0);
}
