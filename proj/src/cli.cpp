#include "fpaut/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <optional>

#include "fpaut/instance.hpp"
#include "fpaut/rays.hpp"
#include "fpaut/spectrum.hpp"

namespace fpaut::cli {

namespace {

std::string real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", x);
  return buf;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

// Line-oriented report mirrored into a JSON object for --dump.
class Report {
 public:
  explicit Report(std::ostream& out) : out_(out) {}

  void line(const std::string& key, const std::string& value) {
    out_ << key << ": " << value << "\n";
    json_[key] = value;
  }
  void header(const std::string& table, const std::vector<std::string>& columns) {
    out_ << table << ":";
    for (const auto& c : columns) out_ << " " << c;
    out_ << "\n";
    columns_[table] = columns;
    json_[table] = nlohmann::json::array();
  }
  void row(const std::string& table, const std::vector<std::string>& cells) {
    out_ << " ";
    nlohmann::json obj;
    const auto& cols = columns_.at(table);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out_ << " " << cells[i];
      obj[cols.at(i)] = cells[i];
    }
    out_ << "\n";
    json_[table].push_back(obj);
  }
  void check(bool passed) { ok_ = ok_ && passed; }
  bool ok() const { return ok_; }

  int finish(const std::string& dump) {
    out_ << (ok_ ? "OK" : "FAIL") << "\n";
    json_["status"] = ok_ ? "OK" : "FAIL";
    if (!dump.empty()) {
      std::ofstream f(dump);
      f << json_.dump(2) << "\n";
    }
    return ok_ ? ExitCode::ok : ExitCode::check_failed;
  }

 private:
  std::ostream& out_;
  nlohmann::json json_ = nlohmann::json::object();
  std::map<std::string, std::vector<std::string>> columns_;
  bool ok_ = true;
};

struct Options {
  std::string instance = "A";
  std::optional<std::size_t> depth;
  std::optional<int> kmax;
  std::optional<int> levels;
  std::optional<int> radius;
  std::optional<int> power_cap;
  std::optional<long> order_cap;
  std::optional<std::uint64_t> seed;
  std::string dump;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_word(const FreeProduct& fp, const Word& w) { return w.empty() ? "1" : format(fp, w); }

Word read_word(const FreeProduct& fp, const std::string& text) {
  try {
    return parse_word(fp, text);
  } catch (const ParseError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw ValidationError(e.what());
  }
}

// A name from the instance, "inner:<word>", either optionally raised to
// "^k".
FpAutomorphism resolve_aut(const Instance& inst, const std::string& spec) {
  std::string base = spec;
  long k = 1;
  auto caret = spec.rfind('^');
  if (caret != std::string::npos && spec.rfind("inner:", 0) != 0) {
    try {
      std::size_t used = 0;
      k = std::stol(spec.substr(caret + 1), &used);
      if (used != spec.size() - caret - 1) throw std::invalid_argument("power");
      base = spec.substr(0, caret);
    } catch (const std::logic_error&) {
      throw ParseError("bad automorphism power in '" + spec + "'", caret + 1);
    }
  }
  FpAutomorphism a = base.rfind("inner:", 0) == 0 ? FpAutomorphism::inner(inst.fp, read_word(*inst.fp, base.substr(6)))
                                                  : inst.automorphism(base);
  return k == 1 ? a : power(a, k);
}

const GraphMap& resolve_map(const Instance& inst, const std::string& name, std::string* ray_name = nullptr) {
  if (inst.maps.count(name)) return inst.map(name);
  auto r = inst.rays.find(name);
  if (r != inst.rays.end()) {
    if (ray_name) *ray_name = name;
    return inst.map(r->second.map);
  }
  throw ValidationError("unknown map '" + name + "'");
}

struct RayContext {
  Ray ray;
  std::optional<AttractiveRay> attractive;
};

RayContext resolve_ray(const Instance& inst, const Options& o, const std::string& spec) {
  if (spec.rfind("rational:", 0) == 0) {
    Word u = read_word(*inst.fp, spec.substr(9));
    if (!is_hyperbolic(*inst.fp, u)) throw ValidationError("'" + spec.substr(9) + "' is not hyperbolic");
    return {rational_ray(*inst.fp, u), std::nullopt};
  }
  auto it = inst.rays.find(spec);
  if (it == inst.rays.end()) throw ValidationError("unknown ray '" + spec + "'");
  const RaySpec& rs = it->second;
  const GraphMap& f = inst.map(rs.map);
  BaseSearch search{o.radius.value_or(rs.radius), o.power_cap.value_or(rs.power_cap), 3};
  auto classes = find_n_paths(f, inst.experiments.npath_depth).classes;
  AttractiveRay r(f, find_base_vertex(f, classes, search), o.levels.value_or(rs.levels));
  Ray x = r.ray();
  return {x, r};
}

int cmd_reduce(const Instance& inst, Report& rep, const std::string& text) {
  Word w = read_word(*inst.fp, text);
  rep.line("reduced", format_word(*inst.fp, w));
  rep.line("length", std::to_string(w.size()));
  return 0;
}

int cmd_apply(const Instance& inst, Report& rep, const std::string& aut, const std::string& text) {
  FpAutomorphism a = resolve_aut(inst, aut);
  Word w = read_word(*inst.fp, text);
  Word img = a.apply(w);
  rep.line("word", format_word(*inst.fp, w));
  rep.line("image", format_word(*inst.fp, img));
  rep.line("length", std::to_string(img.size()));
  return 0;
}

int cmd_orbit(const Instance& inst, Report& rep, const std::string& aut, const std::string& text, int k) {
  FpAutomorphism a = resolve_aut(inst, aut);
  Word w = read_word(*inst.fp, text);
  rep.header("orbit", {"n", "length", "word"});
  for (int n = 0; n <= k; ++n) {
    rep.row("orbit", {std::to_string(n), std::to_string(w.size()), format_word(*inst.fp, w)});
    if (n < k) w = a.apply(w);
  }
  return 0;
}

int cmd_rational(const Instance& inst, const Options& o, Report& rep, const std::string& text) {
  const FreeProduct& fp = *inst.fp;
  Word u = read_word(fp, text);
  CyclicReduction cr = cyclic_reduce(fp, u);
  bool hyp = is_hyperbolic(fp, u);
  rep.line("word", format_word(fp, u));
  rep.line("core", format_word(fp, cr.core));
  rep.line("conjugator", format_word(fp, cr.conjugator));
  rep.line("hyperbolic", yes(hyp));
  rep.check(hyp);
  if (!hyp) return 0;
  const std::size_t depth = o.depth.value_or(inst.experiments.rational_depth);
  Ray x = rational_ray(fp, u);
  rep.line("prefix", format_word(fp, x.prefix(std::min<std::size_t>(depth, 24))));
  FixVerdict v = fixes_boundary_point(FpAutomorphism::inner(inst.fp, u), x, depth);
  rep.line("fixed-by-inner", v.fixed ? "fixed-to-depth " + std::to_string(depth) : "diverges-at " + std::to_string(v.diverges_at));
  rep.check(v.fixed);
  auto period = detect_rational(x, depth, 20);
  rep.line("period", period ? format_word(fp, period->period) : "none");
  return 0;
}

int cmd_traincheck(const Instance& inst, const Options& o, Report& rep, const std::string& name) {
  const GraphMap& f = resolve_map(inst, name);
  const MarkedGraph& g = f.graph();
  const int K = inst.experiments.traincheck_k;
  rep.line("map", name);

  TrainTrackVerdict tt = is_train_track(f, K);
  rep.line("train-track", yes(tt.train_track));
  rep.line("iterations", std::to_string(tt.iterations));
  if (!tt.train_track) {
    rep.line("failure", tt.failure);
    if (tt.witness) rep.line("witness", format_turn(g, *tt.witness));
  }
  rep.check(tt.train_track);
  rep.header("gates", {"vertex", "count", "classes"});
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::string cls;
    for (const auto& c : tt.gates.classes[static_cast<std::size_t>(v)]) {
      cls += cls.empty() ? "{" : " {";
      for (std::size_t i = 0; i < c.size(); ++i) cls += (i ? ", " : "") + g.edge_name(c[i]);
      cls += "}";
    }
    auto n = tt.gates.gate_count(g, v);
    rep.row("gates", {g.vertices()[static_cast<std::size_t>(v)].name, n ? std::to_string(*n) : "infinite", cls});
  }

  Spectrum sp = transition_spectrum(f);
  rep.line("PF", real(sp.pf));
  CancellationBound cb = lip_qvol_bcc(f);
  rep.line("Lip", real(cb.lip));
  rep.line("qvol", real(cb.qvol));
  rep.line("bcc", real(cb.bcc));

  IrreducibilityVerdict ir = o_irreducibility_check(f);
  rep.header("invariant", {"edges", "kind", "reason"});
  for (const auto& s : ir.invariant)
    rep.row("invariant", {format_edge_set(g, s.edges), s.hyperbolic ? "hyperbolic" : "axis-free", s.reason});
  rep.line("o-irreducible", yes(ir.irreducible));
  if (ir.witness) rep.line("reducing-witness", format_edge_set(g, ir.witness->edges) + " " + ir.witness->reason);
  rep.check(ir.irreducible);

  const int L = o.depth ? static_cast<int>(*o.depth) : inst.experiments.npath_depth;
  NPathReport np = find_n_paths(f, L);
  rep.header("n-paths", {"class", "representative"});
  for (std::size_t i = 0; i < np.classes.size(); ++i)
    rep.row("n-paths", {std::to_string(i + 1), format(g, np.classes[i].representative)});
  rep.line("stable at scale " + std::to_string(L), yes(np.classes.size() <= 1));
  rep.check(np.classes.size() <= 1);

  auto realized = inst.realizes.find(name);
  if (realized != inst.realizes.end()) {
    MatedVerdict mv = mated_check(f, inst.automorphism(realized->second));
    rep.line("mated", realized->second + " " + yes(mv.mated));
    rep.check(mv.mated);
  }
  return 0;
}

int first_growing_edge(const GenerationVerdict& gen, const MarkedGraph& g) {
  for (int e = 0; e < g.edge_count(); ++e)
    if (std::find(gen.skipped.begin(), gen.skipped.end(), e) == gen.skipped.end()) return e;
  return 0;
}

int cmd_lamination(const Instance& inst, const Options& o, Report& rep, const std::string& name) {
  const GraphMap& f = resolve_map(inst, name);
  const MarkedGraph& g = f.graph();
  const int L = o.depth ? static_cast<int>(*o.depth) : inst.experiments.lamination_depth;
  const int kmax = o.kmax.value_or(inst.experiments.lamination_kmax);
  LaminaryLanguage lang = generate_language(f, L, kmax);
  rep.line("map", name);
  rep.line("depth", std::to_string(L));
  rep.header("words", {"length", "count"});
  auto counts = lang.counts_by_length();
  for (std::size_t i = 0; i < counts.size(); ++i) rep.row("words", {std::to_string(i + 1), std::to_string(counts[i])});
  rep.line("saturation", lang.saturation ? std::to_string(*lang.saturation) : "none within " + std::to_string(kmax));
  rep.check(lang.saturation.has_value());

  GenerationVerdict gen = check_generation_property(lang, f, inst.experiments.generation_kcap);
  rep.line("generation", gen.ok ? "yes, max k " + std::to_string(gen.max_k) : "no");
  if (!gen.skipped.empty()) rep.line("generation-skipped", format_edge_set(g, gen.skipped));
  if (gen.failing_edge) rep.line("generation-failing-edge", g.edge_name(*gen.failing_edge));
  if (gen.failing_word) rep.line("generation-failing-word", format_edges(g, *gen.failing_word));
  rep.check(gen.ok);

  const int e = first_growing_edge(gen, g);
  const int k = o.levels.value_or(8);
  EdgePath leaf = iterate_edge(f, forward(e), k);
  const std::string seg = "f^" + std::to_string(k) + "(" + g.edge_name(forward(e)) + ")";
  rep.line("leaf-segment", seg + ", " + std::to_string(leaf.size()) + " edges");
  rep.line("sample-leaf", format(g, subpath(g, leaf, 0, std::min<std::size_t>(leaf.size(), 2 * static_cast<std::size_t>(L)))));
  rep.header("quasi-periodicity " + seg, {"L", "L'"});
  for (int l = 1; l <= L; ++l) {
    auto q = quasi_periodicity_constant(leaf, l);
    rep.row("quasi-periodicity " + seg, {std::to_string(l), q ? std::to_string(*q) : "none"});
  }

  const double C = lip_qvol_bcc(f).bcc;
  StabilizationVerdict st = stabilizes_language(f, lang, C);
  rep.line("stabilizes-own-language", yes(st.ok) + ", C " + real(C) + ", checked " + std::to_string(st.checked) +
                                          ", skipped " + std::to_string(st.skipped) + ", failed " +
                                          std::to_string(st.failed));
  rep.check(st.ok);
  for (const auto& [hname, h] : inst.maps) {
    if (hname == name || &h.graph() != &g) continue;
    if (transition_spectrum(h).pf > 1.0 + 1e-9) continue;
    StabilizationVerdict other = stabilizes_language(h, lang, std::max(C, lip_qvol_bcc(h).bcc));
    rep.line("stabilized-by " + hname, yes(other.ok) + ", checked " + std::to_string(other.checked) + ", failed " +
                                           std::to_string(other.failed));
  }
  return 0;
}

int cmd_ray(const Instance& inst, const Options& o, Report& rep, const std::string& name) {
  std::string ray_name;
  const GraphMap& f = resolve_map(inst, name, &ray_name);
  const MarkedGraph& g = f.graph();
  const FreeProduct& fp = *inst.fp;
  RaySpec rs;
  if (!ray_name.empty()) rs = inst.rays.at(ray_name);
  else {
    rs.levels = inst.experiments.ray_levels;
    rs.radius = inst.experiments.radius;
    rs.power_cap = inst.experiments.power_cap;
  }
  const int levels = o.levels.value_or(rs.levels);
  auto classes = find_n_paths(f, inst.experiments.npath_depth).classes;
  BaseVertex base = find_base_vertex(f, classes, {o.radius.value_or(rs.radius), o.power_cap.value_or(rs.power_cap), 3});
  AttractiveRay r(f, base, levels);
  rep.line("map", name);
  rep.line("base-offset", format_word(fp, base.offset));
  rep.line("power", std::to_string(base.power));

  rep.header("segments", {"k", "length", "cancellation"});
  bool clean = true;
  for (const auto& s : r.segments()) {
    rep.row("segments", {std::to_string(s.k), std::to_string(s.path.size()), std::to_string(s.cancellation)});
    clean = clean && s.cancellation == 0;
  }
  rep.check(clean);

  const GraphMap& gm = r.iterate();
  rep.header("splittings", {"k", "bricks", "singular", "first", "split-check"});
  bool splits = true;
  for (const auto& s : r.segments()) {
    const int K = s.k <= 4 ? 4 : 0;
    BrickSplitting sp = adapted_splitting(gm, s.path, classes, 0);
    std::size_t singular = 0;
    for (const auto& b : sp.bricks) singular += b.tag == BrickTag::singular;
    std::string verdict = "skipped";
    if (K > 0) {
      SplitVerdict v = split_check(gm, s.path, sp, K);
      verdict = v.ok ? "ok K=" + std::to_string(K) : "fails at k=" + std::to_string(v.k) + ": " + v.reason;
      splits = splits && v.ok;
    }
    rep.row("splittings", {std::to_string(s.k), std::to_string(sp.bricks.size()), std::to_string(singular),
                           sp.bricks.front().tag == BrickTag::regular ? "regular" : "singular", verdict});
  }
  rep.check(splits);

  const int shown_level = std::min(levels, 2);
  BrickSplitting shown = adapted_splitting(gm, r.segments()[static_cast<std::size_t>(shown_level)].path, classes, 0);
  const std::string table = "bricks level " + std::to_string(shown_level);
  rep.header(table, {"index", "tag", "length", "path"});
  for (std::size_t i = 0; i < shown.bricks.size(); ++i) {
    const Brick& b = shown.bricks[i];
    rep.row(table, {std::to_string(i), b.tag == BrickTag::regular ? "regular" : "singular", real(length(g, b.path)),
                    format(g, b.path)});
  }

  SingularReport sr = max_singular_length(r, classes, levels);
  rep.line("ell0", real(sr.ell0));
  double worst = 0.0;
  for (double x : sr.per_level) worst = std::max(worst, x);
  rep.line("max-singular", real(worst));
  rep.line("singular-bounded", yes(sr.bounded && worst <= sr.ell0 + 1e-12));
  rep.check(sr.bounded && worst <= sr.ell0 + 1e-12);
  rep.line("prefix", format_word(fp, prefix_of(r.word(), 24)));
  return 0;
}

int cmd_classify(const Instance& inst, const Options& o, Report& rep, const std::string& aut, const std::string& spec) {
  FpAutomorphism a = resolve_aut(inst, aut);
  RayContext x = resolve_ray(inst, o, spec);
  ClassifyOptions co;
  co.depth = o.depth.value_or(co.depth);
  co.seed = o.seed.value_or(inst.experiments.seed);
  Classification c = classify_fixed_point(a, x.ray, co);
  rep.line("automorphism", aut);
  rep.line("ray", spec);
  rep.line("fixed", c.fix.fixed ? "fixed-to-depth " + std::to_string(c.fix.depth)
                                : "diverges-at " + std::to_string(c.fix.diverges_at));
  rep.check(c.fix.fixed);
  if (!c.fix.fixed) return 0;
  auto join = [](const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
    return s.empty() ? std::string("-") : s;
  };
  rep.line("forward-agreement", join(c.forward_agreement));
  rep.line("inverse-agreement", join(c.inverse_agreement));
  rep.line("classification", to_string(c.kind));
  return 0;
}

int cmd_stabcheck(const Instance& inst, const Options& o, Report& rep, const std::string& aut, const std::string& spec) {
  FpAutomorphism a = resolve_aut(inst, aut);
  RayContext x = resolve_ray(inst, o, spec);
  const std::size_t depth = o.depth.value_or(inst.experiments.stab_depth);
  const long cap = o.order_cap.value_or(inst.experiments.order_cap);
  StabReport s = stab_check(a, x.ray, depth, cap);
  rep.line("automorphism", aut);
  rep.line("ray", spec);
  if (s.fix.fixed) rep.line("fixed-to-depth", std::to_string(depth));
  else rep.line("diverges-at", std::to_string(s.fix.diverges_at));
  rep.line("order", s.order ? std::to_string(*s.order) : "above " + std::to_string(cap));
  rep.line("preserves-factors", yes(s.preserves_factors));
  rep.line("factor-direction", yes(s.factor_direction));
  rep.line("contradicts", yes(s.contradicts));
  rep.line("note", s.fix.fixed ? "agreement to finite depth is evidence, not proof"
                               : "divergence is a proof that the point is moved");
  rep.check(s.fix.fixed && !s.contradicts);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with automorphisms of free products", "fpaut"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  app.add_option("--instance,-i", o.instance, "instance file, stem or alias")->capture_default_str();
  app.add_option("--depth", o.depth, "probe depth");
  app.add_option("--kmax", o.kmax, "iterate cap for the language");
  app.add_option("--levels", o.levels, "ray levels, or the iterate used for the leaf segment");
  app.add_option("--radius", o.radius, "base vertex search radius");
  app.add_option("--power-cap", o.power_cap, "largest power tried for the base vertex");
  app.add_option("--order-cap", o.order_cap, "largest order searched");
  app.add_option("--seed", o.seed, "seed for randomized probes");
  app.add_option("--dump", o.dump, "write a JSON copy of the report");

  std::string a1, a2, a3;
  int steps = 0;
  auto* reduce = app.add_subcommand("reduce", "normal form of a word");
  reduce->add_option("word", a1)->required();
  auto* apply = app.add_subcommand("apply", "image of a word");
  apply->add_option("aut", a1)->required();
  apply->add_option("word", a2)->required();
  auto* orbit = app.add_subcommand("orbit", "iterated images of a word");
  orbit->add_option("aut", a1)->required();
  orbit->add_option("word", a2)->required();
  orbit->add_option("k", steps)->required();
  auto* rational = app.add_subcommand("rational", "the boundary point u^infinity");
  rational->add_option("word", a1)->required();
  auto* traincheck = app.add_subcommand("traincheck", "train-track and irreducibility report for a map");
  traincheck->add_option("map", a1)->required();
  auto* lamination = app.add_subcommand("lamination", "laminary language of a map");
  lamination->add_option("map", a1)->required();
  auto* ray = app.add_subcommand("ray", "attractive fixed ray and its bricks");
  ray->add_option("map", a1)->required();
  auto* classify = app.add_subcommand("classify", "attractive or repulsive evidence at a fixed ray");
  classify->add_option("aut", a1)->required();
  classify->add_option("ray", a2)->required();
  auto* stabcheck = app.add_subcommand("stabcheck", "finite-depth stabilizer experiment");
  stabcheck->add_option("aut", a1)->required();
  stabcheck->add_option("ray", a2)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ExitCode::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::parse_error;
  }

  try {
    Instance inst = load_instance_file(resolve_instance(o.instance, FPAUT_INSTANCE_DIR));
    Report rep(out);
    rep.line("instance", inst.name);
    if (reduce->parsed()) cmd_reduce(inst, rep, a1);
    else if (apply->parsed()) cmd_apply(inst, rep, a1, a2);
    else if (orbit->parsed()) cmd_orbit(inst, rep, a1, a2, steps);
    else if (rational->parsed()) cmd_rational(inst, o, rep, a1);
    else if (traincheck->parsed()) cmd_traincheck(inst, o, rep, a1);
    else if (lamination->parsed()) cmd_lamination(inst, o, rep, a1);
    else if (ray->parsed()) cmd_ray(inst, o, rep, a1);
    else if (classify->parsed()) cmd_classify(inst, o, rep, a1, a2);
    else if (stabcheck->parsed()) cmd_stabcheck(inst, o, rep, a1, a2);
    return rep.finish(o.dump);
  } catch (const InstanceError& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == InstanceError::Kind::parse ? ExitCode::parse_error : ExitCode::validation_error;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::parse_error;
  } catch (const RayError& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::check_failed;
  } catch (const RayStagnation& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::check_failed;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::validation_error;
  }
}

}  // namespace fpaut::cli
