// Acceptance run: one PASS/FAIL line per criterion. The whole report is
// produced twice and compared byte for byte for the determinism criterion.

#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "graph_fixtures.hpp"
#include "fpaut/cli.hpp"
#include "fpaut/instance.hpp"
#include "fpaut/rays.hpp"
#include "fpaut/spectrum.hpp"

using namespace fpaut;
using Clock = std::chrono::steady_clock;

namespace {

struct Result {
  int id;
  std::string title;
  bool pass = true;
  std::vector<std::string> notes;

  void need(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back((ok ? "" : "FAILED ") + what);
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", x);
  return buf;
}

Instance load(const std::string& name) { return load_instance_file(resolve_instance(name, FPAUT_INSTANCE_DIR)); }

std::vector<NPathClass> classes_of(const GraphMap& f) { return find_n_paths(f, 6).classes; }

AttractiveRay ray_of(const GraphMap& f, int levels) {
  return AttractiveRay(f, find_base_vertex(f, classes_of(f), {2, 4, 3}), levels);
}

Result criterion1(const Instance& a) {
  Result r{1, "train track and PF eigenvalue on instance A"};
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  r.need(std::abs(golden * golden - golden - 1.0) < 1e-12, "oracle root of x^2 - x - 1");
  auto t = Clock::now();
  std::ostringstream out, err;
  int code = cli::run({"traincheck", "fA"}, out, err);
  const double elapsed = seconds_since(t);
  const std::string text = out.str();
  r.need(code == 0, "traincheck fA exits 0");
  r.need(text.find("\ntrain-track: yes\n") != std::string::npos, "train-track: yes at K = 12");
  r.need(text.find("\nPF: 1.618033988750\n") != std::string::npos, "PF line 1.618033988750");
  TrainTrackVerdict tt = is_train_track(a.map("fA"), 12);
  r.need(tt.train_track && tt.iterations == 12, "library verdict, 12 iterates reduced");
  const double pf = transition_spectrum(a.map("fA")).pf;
  r.need(std::abs(pf - golden) <= 1e-9, "|PF - golden ratio| <= 1e-9");
  r.need(elapsed < 1.0, "runtime under 1 s");
  return r;
}

Result criterion2(const Instance& a) {
  Result r{2, "O-irreducibility"};
  const MarkedGraph& g = a.map("fA").graph();
  IrreducibilityVerdict v = o_irreducibility_check(a.map("fA"));
  r.need(v.irreducible, "fA irreducible");
  bool h_axis_free = false;
  for (const auto& s : v.invariant)
    if (format_edge_set(g, s.edges) == "{h}") h_axis_free = !s.hyperbolic;
  r.need(h_axis_free && v.invariant.size() == 1, "only invariant subgraph {h}, axis-free");
  IrreducibilityVerdict red = o_irreducibility_check(a.map("fRed"));
  r.need(!red.irreducible, "fRed rejected");
  r.need(red.witness && red.witness->hyperbolic && red.witness->reason.find("circuit") != std::string::npos,
         "fRed witness " + (red.witness ? format_edge_set(g, red.witness->edges) + " " + red.witness->reason : "none"));
  return r;
}

Result criterion3(const Instance& a, const Instance& b) {
  Result r{3, "ray construction with m = 2"};
  for (const Instance* inst : {&a, &b}) {
    const GraphMap& f = inst->map(inst == &a ? "fA" : "fB");
    AttractiveRay ray = ray_of(f, 12);
    r.need(ray.base().power == 2, inst->name + " m = 2");
    std::size_t cancelled = 0;
    for (const auto& s : ray.segments()) cancelled += s.cancellation;
    r.need(ray.levels() == 12 && cancelled == 0, inst->name + " segments 0..12 attach with zero cancellation");
  }
  auto hand = fx::fp_b();
  Word oracle = fx::iterate_prefix(fpaut::power(fx::phi_b(hand), 2), parse_word(*hand, "b1"), 200);
  Word mine = ray_of(b.map("fB"), 4).ray().prefix(200);
  r.need(mine.size() == 200 && mine == prefix_of(oracle, 200), "instance B prefix equals nested iterates to 200 syllables");
  r.need(format(*b.fp, prefix_of(mine, 8)) == "b1 b2 a1@1 b2 a1@1 b1 b2 a1@1", "prefix b1 b2 a1 b2 a1 b1 b2 a1");
  return r;
}

Result criterion4(const Instance& a, const Instance& b) {
  Result r{4, "brick invariants through k = 8"};
  for (const Instance* inst : {&a, &b}) {
    const GraphMap& f = inst->map(inst == &a ? "fA" : "fB");
    auto classes = classes_of(f);
    AttractiveRay ray = ray_of(f, 8);
    const GraphMap& g = ray.iterate();
    const MarkedGraph& gr = g.graph();
    const double ell0 = max_singular_length(ray, classes, 8).ell0;
    r.need(std::abs(ell0 - 1.0) < 1e-12, inst->name + " ell0 = 1");
    BrickSplitting iterated = adapted_splitting(g, ray.segments()[0].path, classes, 0);
    std::size_t splittings = 0, failures = 0;
    for (int k = 0; k <= 8; ++k) {
      const EdgePath& seg = ray.segments()[static_cast<std::size_t>(k)].path;
      if (k > 0) iterated = map_splitting(g, iterated);
      BrickSplitting fresh = adapted_splitting(g, seg, classes, 0);
      if (fresh.bricks.front().path.size() != 1 || fresh.bricks.front().tag != BrickTag::regular) ++failures;
      for (const BrickSplitting* sp : {&fresh, &iterated}) {
        ++splittings;
        bool ok = sp->bricks.front().tag == BrickTag::regular;
        for (std::size_t i = 0; i < sp->bricks.size(); ++i) {
          if (sp->bricks[i].tag != BrickTag::singular) continue;
          ok = ok && length(gr, sp->bricks[i].path) <= ell0 + 1e-12;
          if (i + 1 < sp->bricks.size()) ok = ok && sp->bricks[i + 1].tag == BrickTag::regular;
        }
        ok = ok && assemble(gr, *sp).edges == seg.edges;
        ok = ok && split_check(f, seg, *sp, 4).ok;
        if (!ok) ++failures;
      }
    }
    r.need(failures == 0, inst->name + " " + std::to_string(splittings) + " splittings, " + std::to_string(failures) +
                              " violations");
  }
  return r;
}

Result criterion5(const Instance& a) {
  Result r{5, "laminary language"};
  const GraphMap& f = a.map("fA");
  LaminaryLanguage lang = generate_language(f, 6, 20);
  r.need(lang.saturation && *lang.saturation <= 20,
         "saturation at L = 6: " + (lang.saturation ? std::to_string(*lang.saturation) : std::string("none")));
  auto q = quasi_periodicity_constant(iterate_edge(f, forward(0), 8), 3);
  r.need(q && *q <= 60, "L' for L = 3 on f^8(e1): " + (q ? std::to_string(*q) : std::string("none")));
  GenerationVerdict gen = check_generation_property(lang, f, 15);
  r.need(gen.ok && gen.max_k <= 15, "generation property, max k " + std::to_string(gen.max_k));
  return r;
}

Result criterion6(const Instance& a, const Instance& b) {
  Result r{6, "stabilization of the language"};
  const GraphMap& f = a.map("fA");
  const double C = lip_qvol_bcc(f).bcc;
  r.need(std::abs(C - 5.0) < 1e-12, "bcc(fA) = " + num(C));
  for (int L : {6, 14}) {
    StabilizationVerdict v = stabilizes_language(f, generate_language(f, L, 20), C);
    r.need(v.failed == 0, "fA, L = " + std::to_string(L) + ": checked " + std::to_string(v.checked) + ", failed " +
                              std::to_string(v.failed));
  }
  const GraphMap& fb = b.map("fB");
  const GraphMap& h = b.map("hPsi");
  const double Cb = lip_qvol_bcc(h).bcc;
  r.need(Cb > 0.0, "bcc(hPsi) = " + num(Cb));
  for (int L : {6, 14}) {
    StabilizationVerdict v = stabilizes_language(h, generate_language(fb, L, 20), Cb);
    r.need(v.failed == 0, "hPsi on the fB language, L = " + std::to_string(L) + ": checked " +
                              std::to_string(v.checked) + ", failed " + std::to_string(v.failed));
  }
  return r;
}

Result criterion7(const Instance& a, const Instance& b) {
  Result r{7, "stabilizer experiments"};
  Ray xb = ray_of(b.map("fB"), 4).ray();
  StabReport psi = stab_check(b.automorphism("psi"), xb, 500);
  r.need(psi.fix.fixed && psi.factor_direction, "B psi fixed to depth 500, factor-direction yes");
  StabReport swap = stab_check(b.automorphism("psi_swap"), xb, 500);
  r.need(!swap.fix.fixed && swap.fix.diverges_at <= 5,
         "B psi_swap diverges at " + std::to_string(swap.fix.diverges_at));
  Ray xa = ray_of(a.map("fA"), 4).ray();
  for (const char* t : {"twist2", "twist3", "twist4"}) {
    StabReport s = stab_check(a.automorphism(t), xa, 500);
    r.need(!s.fix.fixed && s.fix.diverges_at <= 4 && !s.contradicts,
           std::string("A ") + t + " diverges at " + std::to_string(s.fix.diverges_at) + ", contradicts " +
               (s.contradicts ? "yes" : "no"));
  }
  StabReport sq = stab_check(fpaut::power(a.automorphism("phiA"), 2), xa, 500);
  r.need(sq.fix.fixed && !sq.factor_direction, "A phiA^2 fixed to depth 500, factor-direction no");
  return r;
}

Result criterion8(const Instance& a) {
  Result r{8, "rational points"};
  Word u = parse_word(*a.fp, "b1 b2");
  r.need(fixes_boundary_point(FpAutomorphism::inner(a.fp, u), rational_ray(*a.fp, u), 1000).fixed,
         "inner b1 b2 fixes (b1 b2)^infinity to depth 1000");
  Ray xa = ray_of(a.map("fA"), 4).ray();
  FixVerdict ia = fixes_boundary_point(FpAutomorphism::inner(a.fp, parse_word(*a.fp, "a")), xa, 200);
  r.need(!ia.fixed && ia.diverges_at <= 2, "inner a diverges on X_A at " + std::to_string(ia.diverges_at));
  r.need(!detect_rational(xa, 200, 20), "X_A aperiodic at depth 200, max period 20");
  return r;
}

Ray random_ray(const FreeProduct& fp, Word start, std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  if (start.empty()) start.push_back(random_syllable(fp, *rng, nullptr));
  return Ray(start, [rng, &fp](const Word& cur) { return Word{random_syllable(fp, *rng, &cur.back())}; });
}

Result criterion9(const Instance& a, const Instance& b) {
  Result r{9, "ultrametric and cancellation properties"};
  std::mt19937_64 rng(9);
  std::size_t bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Ray x = random_ray(*a.fp, {}, rng());
    Ray y = random_ray(*a.fp, x.prefix(rng() % 60 + 1), rng());
    Ray z = random_ray(*a.fp, (trial % 2 ? x : y).prefix(rng() % 60 + 1), rng());
    std::size_t xy = common_prefix(x, y, 100).size(), yz = common_prefix(y, z, 100).size();
    std::size_t xz = common_prefix(x, z, 100).size();
    double dxz = boundary_distance(x, z, 100).value;
    double dmax = std::max(boundary_distance(x, y, 100).value, boundary_distance(y, z, 100).value);
    if (xz < std::min(xy, yz) || dxz > dmax + 1e-15) ++bad;
  }
  r.need(bad == 0, "1000 depth-100 ray triples, " + std::to_string(bad) + " violations");
  for (const Instance* inst : {&a, &b}) {
    const GraphMap& f = inst->map(inst == &a ? "fA" : "fB");
    const MarkedGraph& g = f.graph();
    const double bcc = lip_qvol_bcc(f).bcc;
    double worst = 0.0;
    int done = 0;
    while (done < 1000) {
      EdgePath p = fx::random_path(g, rng, 1 + rng() % 8);
      EdgePath q = fx::random_path(g, rng, 1 + rng() % 8);
      if (p.end != q.start) continue;
      p.trail.reset();
      q.lead.reset();
      if (!is_reduced(g, join(g, p, q))) continue;
      ++done;
      worst = std::max(worst, cancelled_length(g, f.sharp(p), f.sharp(q)));
    }
    r.need(worst <= bcc + 1e-9, inst->name + " 1000 concatenations, worst cancellation " + num(worst) + " <= bcc " +
                                    num(bcc));
  }
  return r;
}

std::vector<Result> suite() {
  Instance a = load("A");
  Instance b = load("B");
  return {criterion1(a),    criterion2(a), criterion3(a, b), criterion4(a, b), criterion5(a),
          criterion6(a, b), criterion7(a, b), criterion8(a),    criterion9(a, b)};
}

std::string render(const std::vector<Result>& results) {
  std::ostringstream out;
  for (const auto& r : results) {
    out << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << " " << r.title << "\n";
    for (const auto& n : r.notes) out << "    " << n << "\n";
  }
  return out.str();
}

}  // namespace

int main() {
  auto t = Clock::now();
  std::string first, second;
  bool crashed = false;
  try {
    first = render(suite());
    second = render(suite());
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << "\n";
    crashed = true;
  }
  const double elapsed = seconds_since(t);
  std::cout << first;
  const bool same = !crashed && first == second;
  const bool fast = elapsed < 60.0;
  std::cout << "criterion 10: " << (same && fast ? "PASS" : "FAIL") << " determinism\n"
            << "    " << (same ? "" : "FAILED ") << "two runs byte-identical (" << first.size() << " bytes)\n"
            << "    " << (fast ? "" : "FAILED ") << "two full runs in " << std::fixed << std::setprecision(1) << elapsed
            << " s, under 60 s\n";
  const bool all = !crashed && same && fast && first.find(": FAIL") == std::string::npos;
  std::cout << (all ? "OK" : "FAIL") << "\n";
  return all ? 0 : 1;
}
