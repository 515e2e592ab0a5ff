#include "fpaut/instance.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fpaut {

InstanceError::InstanceError(Kind kind, const std::string& what, int line, int column)
    : std::runtime_error(line >= 0 ? what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                                   : what),
      kind_(kind),
      line_(line),
      column_(column) {}

const FpAutomorphism& Instance::automorphism(const std::string& name) const {
  auto it = automorphisms.find(name);
  if (it == automorphisms.end()) throw InstanceError(InstanceError::Kind::validation, "unknown automorphism '" + name + "'");
  return it->second;
}

const GraphMap& Instance::map(const std::string& name) const {
  auto it = maps.find(name);
  if (it == maps.end()) throw InstanceError(InstanceError::Kind::validation, "unknown map '" + name + "'");
  return it->second;
}

namespace {

using Kind = InstanceError::Kind;

[[noreturn]] void fail(Kind kind, const YAML::Node& at, const std::string& what) {
  const YAML::Mark m = at.Mark();
  if (m.is_null()) throw InstanceError(kind, what);
  throw InstanceError(kind, what, m.line + 1, m.column + 1);
}

const YAML::Node need(const YAML::Node& parent, const char* key) {
  YAML::Node n = parent[key];
  if (!n) fail(Kind::parse, parent, std::string("missing key '") + key + "'");
  return n;
}

template <class T>
T as(const YAML::Node& n, const char* what) {
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    fail(Kind::parse, n, std::string("expected ") + what);
  }
}

std::string text(const YAML::Node& n) { return n.IsNull() ? std::string() : as<std::string>(n, "a string"); }

Word word_at(const FreeProduct& fp, const YAML::Node& n) {
  std::string s = text(n);
  try {
    return parse_word(fp, s);
  } catch (const ParseError& e) {
    fail(Kind::parse, n, e.what());
  } catch (const std::runtime_error& e) {
    fail(Kind::parse, n, e.what());
  }
}

MaybeElement element_at(const FreeProduct& fp, int factor, const YAML::Node& n) {
  Word w = word_at(fp, n);
  if (w.empty()) return std::nullopt;
  if (w.size() != 1 || is_free(w[0]) || as_factor(w[0]).factor != factor)
    fail(Kind::validation, n, "'" + text(n) + "' is not an element of factor " + std::to_string(factor));
  return as_factor(w[0]);
}

FactorGroup factor_at(const YAML::Node& n) {
  int id = as<int>(need(n, "id"), "a factor id");
  std::string kind = as<std::string>(need(n, "kind"), "a factor kind");
  try {
    if (kind == "cyclic") return FactorGroup::cyclic(id, as<int>(need(n, "order"), "an order"), as<std::string>(need(n, "generator"), "a name"));
    if (kind == "free") return FactorGroup::free(id, as<std::vector<std::string>>(need(n, "generators"), "a list of names"));
    if (kind == "table")
      return FactorGroup::table(id, as<std::vector<std::vector<int>>>(need(n, "table"), "a multiplication table"),
                                as<std::vector<int>>(need(n, "generators"), "generator indices"),
                                as<std::vector<std::string>>(need(n, "names"), "generator names"));
  } catch (const FactorError& e) {
    fail(Kind::validation, n, e.what());
  }
  fail(Kind::parse, n, "unknown factor kind '" + kind + "'");
}

FactorAutomorphism twist_at(const FreeProduct& fp, const YAML::Node& n, int source, int target) {
  FactorAutomorphism t;
  t.source = source;
  t.target = target;
  for (const auto& x : need(n, "images")) t.images.push_back(element_at(fp, target, x));
  for (const auto& x : need(n, "inverse")) t.inverse_images.push_back(element_at(fp, source, x));
  return t;
}

FpEndomorphism endo_at(const Instance& inst, const YAML::Node& n, const FpEndomorphism* forward) {
  const FreeProduct& fp = *inst.fp;
  FpEndomorphism e;
  YAML::Node free = need(n, "free");
  if (!free.IsSequence() || static_cast<int>(free.size()) != fp.free_rank())
    fail(Kind::validation, free, "need one image per free generator");
  for (const auto& x : free) e.free_images.push_back(word_at(fp, x));
  const int r = static_cast<int>(fp.factor_count());
  e.factor_images.resize(static_cast<std::size_t>(r));
  YAML::Node factors = n["factors"];
  for (int i = 1; i <= r; ++i) {
    FactorImage& fi = e.factor_images[static_cast<std::size_t>(i - 1)];
    YAML::Node spec = factors && factors.IsMap() ? factors[std::to_string(i)] : YAML::Node();
    fi.target = spec && spec["target"] ? as<int>(spec["target"], "a factor id") : i;
    if (fi.target < 1 || fi.target > r) fail(Kind::validation, spec, "factor target out of range");
    if (spec && spec["conjugator"]) fi.conjugator = word_at(fp, spec["conjugator"]);
    if (forward) {
      // the declared inverse twists the other way
      for (int j = 1; j <= r; ++j)
        if (forward->factor_images[static_cast<std::size_t>(j - 1)].target == i) {
          fi.twist = forward->factor_images[static_cast<std::size_t>(j - 1)].twist.inverse();
          if (!(spec && spec["target"])) fi.target = j;
        }
      continue;
    }
    if (spec && spec["twist"]) {
      std::string name = text(spec["twist"]);
      auto it = inst.twists.find(name);
      if (it == inst.twists.end()) fail(Kind::validation, spec["twist"], "unknown twist '" + name + "'");
      fi.twist = it->second;
    } else if (spec && spec["images"]) {
      fi.twist = twist_at(fp, spec, i, fi.target);
    } else {
      if (fi.target != i) fail(Kind::validation, spec, "a factor moved to another factor needs a twist");
      fi.twist = FactorAutomorphism::identity(fp.factor(i));
    }
    if (fi.twist.source != i || fi.twist.target != fi.target)
      fail(Kind::validation, spec, "twist does not map factor " + std::to_string(i) + " to factor " + std::to_string(fi.target));
  }
  return e;
}

std::shared_ptr<const MarkedGraph> graph_at(const Instance& inst, const YAML::Node& n) {
  if (n.IsScalar()) {
    if (text(n) != "rose") fail(Kind::parse, n, "a graph is 'rose' or a vertex/edge block");
    return std::make_shared<const MarkedGraph>(MarkedGraph::rose(inst.fp));
  }
  std::vector<GraphVertex> vs;
  std::map<std::string, int> index;
  for (const auto& v : need(n, "vertices")) {
    GraphVertex gv{as<std::string>(need(v, "name"), "a vertex name"), v["factor"] ? as<int>(v["factor"], "a factor id") : 0};
    index[gv.name] = static_cast<int>(vs.size());
    vs.push_back(gv);
  }
  auto vertex = [&](const YAML::Node& x) {
    auto it = index.find(text(x));
    if (it == index.end()) fail(Kind::validation, x, "unknown vertex '" + text(x) + "'");
    return it->second;
  };
  std::vector<GraphEdge> es;
  for (const auto& e : need(n, "edges")) {
    GraphEdge ge;
    ge.name = as<std::string>(need(e, "name"), "an edge name");
    ge.tail = vertex(need(e, "from"));
    ge.head = vertex(need(e, "to"));
    ge.length = e["length"] ? as<double>(e["length"], "a length") : 1.0;
    ge.in_tree = e["tree"] ? as<bool>(e["tree"], "true or false") : false;
    if (e["label"]) ge.label = word_at(*inst.fp, e["label"]);
    es.push_back(ge);
  }
  int base = n["basepoint"] ? vertex(n["basepoint"]) : 0;
  try {
    return std::make_shared<const MarkedGraph>(inst.fp, vs, es, base);
  } catch (const GraphError& e) {
    fail(Kind::validation, n, e.what());
  }
}

GraphMap map_at(const Instance& inst, const std::string& name, const YAML::Node& n) {
  std::string gname = as<std::string>(need(n, "graph"), "a graph name");
  auto git = inst.graphs.find(gname);
  if (git == inst.graphs.end()) fail(Kind::validation, n["graph"], "unknown graph '" + gname + "'");
  const auto& g = git->second;
  std::vector<int> vs(static_cast<std::size_t>(g->vertex_count()));
  for (int v = 0; v < g->vertex_count(); ++v) vs[static_cast<std::size_t>(v)] = v;
  if (YAML::Node vi = n["vertices"]) {
    for (auto it = vi.begin(); it != vi.end(); ++it) {
      try {
        vs[static_cast<std::size_t>(g->vertex_by_name(text(it->first)))] = g->vertex_by_name(text(it->second));
      } catch (const GraphError& e) {
        fail(Kind::validation, it->first, e.what());
      }
    }
  }
  std::vector<FactorAutomorphism> ts(static_cast<std::size_t>(g->vertex_count()));
  if (YAML::Node tw = n["twists"]) {
    for (auto it = tw.begin(); it != tw.end(); ++it) {
      auto t = inst.twists.find(text(it->second));
      if (t == inst.twists.end()) fail(Kind::validation, it->second, "unknown twist '" + text(it->second) + "'");
      try {
        ts[static_cast<std::size_t>(g->vertex_by_name(text(it->first)))] = t->second;
      } catch (const GraphError& e) {
        fail(Kind::validation, it->first, e.what());
      }
    }
  }
  YAML::Node edges = need(n, "edges");
  std::vector<EdgePath> es;
  for (int e = 0; e < g->edge_count(); ++e) {
    const std::string& en = g->edges()[static_cast<std::size_t>(e)].name;
    YAML::Node img = edges[en];
    if (!img) fail(Kind::validation, edges, "map " + name + " has no image for edge " + en);
    int start = vs[static_cast<std::size_t>(g->origin(forward(e)))];
    try {
      es.push_back(parse_path(*g, text(img), start));
    } catch (const ParseError& err) {
      fail(Kind::parse, img, err.what());
    } catch (const std::runtime_error& err) {
      fail(Kind::validation, img, err.what());
    }
  }
  try {
    return GraphMap(g, vs, es, ts);
  } catch (const std::runtime_error& e) {
    fail(Kind::validation, n, "map " + name + ": " + e.what());
  }
}

void experiments_at(Experiments& x, const YAML::Node& n) {
  if (!n) return;
  auto get = [&](const char* key, auto& slot) {
    if (n[key]) slot = as<std::decay_t<decltype(slot)>>(n[key], "a number");
  };
  get("traincheck_k", x.traincheck_k);
  get("npath_depth", x.npath_depth);
  get("lamination_depth", x.lamination_depth);
  get("lamination_kmax", x.lamination_kmax);
  get("generation_kcap", x.generation_kcap);
  get("ray_levels", x.ray_levels);
  get("radius", x.radius);
  get("power_cap", x.power_cap);
  get("stab_depth", x.stab_depth);
  get("order_cap", x.order_cap);
  get("rational_depth", x.rational_depth);
  get("seed", x.seed);
}

}  // namespace

Instance parse_instance(const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(source);
  } catch (const YAML::ParserException& e) {
    throw InstanceError(Kind::parse, e.msg, e.mark.line + 1, e.mark.column + 1);
  }
  if (!root.IsMap()) throw InstanceError(Kind::parse, "instance file must be a mapping");
  Instance inst;
  inst.name = text(need(root, "name"));
  if (root["aliases"]) inst.aliases = as<std::vector<std::string>>(root["aliases"], "a list of names");

  YAML::Node dec = need(root, "decomposition");
  std::vector<FactorGroup> factors;
  if (YAML::Node fs = dec["factors"])
    for (const auto& f : fs) factors.push_back(factor_at(f));
  try {
    inst.fp = std::make_shared<const FreeProduct>(as<int>(need(dec, "free_rank"), "a rank"), factors);
  } catch (const std::runtime_error& e) {
    fail(Kind::validation, dec, e.what());
  }

  if (YAML::Node tw = root["twists"]) {
    for (auto it = tw.begin(); it != tw.end(); ++it) {
      int factor = as<int>(need(it->second, "factor"), "a factor id");
      if (factor < 1 || factor > static_cast<int>(inst.fp->factor_count())) fail(Kind::validation, it->second, "no such factor");
      int target = it->second["target"] ? as<int>(it->second["target"], "a factor id") : factor;
      FactorAutomorphism t = twist_at(*inst.fp, it->second, factor, target);
      FactorAutVerdict v = verify_factor_aut(inst.fp->factor(factor), inst.fp->factor(target), t);
      if (!v.ok) fail(Kind::validation, it->second, "twist " + text(it->first) + " is not an isomorphism: " + v.witness);
      inst.twists[text(it->first)] = t;
    }
  }

  if (YAML::Node auts = root["automorphisms"]) {
    for (auto it = auts.begin(); it != auts.end(); ++it) {
      std::string name = text(it->first);
      FpEndomorphism fwd = endo_at(inst, it->second, nullptr);
      FpEndomorphism bwd = endo_at(inst, need(it->second, "inverse"), &fwd);
      FpAutomorphism a(inst.fp, fwd, bwd);
      AutVerdict v = verify(a);
      if (!v.ok) fail(Kind::validation, it->second, "automorphism " + name + " does not verify: " + v.witness);
      inst.automorphisms.emplace(name, a);
    }
  }

  if (YAML::Node gs = root["graphs"])
    for (auto it = gs.begin(); it != gs.end(); ++it) inst.graphs[text(it->first)] = graph_at(inst, it->second);

  if (YAML::Node ms = root["maps"]) {
    for (auto it = ms.begin(); it != ms.end(); ++it) {
      std::string name = text(it->first);
      GraphMap f = map_at(inst, name, it->second);
      if (YAML::Node r = it->second["realizes"]) {
        std::string aut = text(r);
        auto a = inst.automorphisms.find(aut);
        if (a == inst.automorphisms.end()) fail(Kind::validation, r, "unknown automorphism '" + aut + "'");
        MatedVerdict mv = mated_check(f, a->second);
        if (!mv.mated) fail(Kind::validation, r, "map " + name + " does not realize " + aut + ": " + mv.witness);
        try {
          induced_automorphism(f, a->second);
        } catch (const GraphError& e) {
          fail(Kind::validation, r, e.what());
        }
        inst.realizes[name] = aut;
      }
      inst.maps.emplace(name, std::move(f));
    }
  }

  experiments_at(inst.experiments, root["experiments"]);

  if (YAML::Node rs = root["rays"]) {
    for (auto it = rs.begin(); it != rs.end(); ++it) {
      RaySpec s;
      s.map = as<std::string>(need(it->second, "map"), "a map name");
      if (!inst.maps.count(s.map)) fail(Kind::validation, it->second["map"], "unknown map '" + s.map + "'");
      s.levels = it->second["levels"] ? as<int>(it->second["levels"], "a level count") : inst.experiments.ray_levels;
      s.radius = it->second["radius"] ? as<int>(it->second["radius"], "a radius") : inst.experiments.radius;
      s.power_cap = it->second["power_cap"] ? as<int>(it->second["power_cap"], "a power cap") : inst.experiments.power_cap;
      inst.rays[text(it->first)] = s;
    }
  }
  return inst;
}

Instance load_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError(Kind::parse, "cannot read instance file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::filesystem::path resolve_instance(const std::string& name, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(name)) return name;
  fs::path stem = dir / (name + ".yaml");
  if (fs::is_regular_file(stem)) return stem;
  if (fs::is_directory(dir)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
      if (e.path().extension() == ".yaml") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
      try {
        YAML::Node n = YAML::LoadFile(p.string());
        if (n["aliases"])
          for (const auto& a : n["aliases"])
            if (a.as<std::string>() == name) return p;
      } catch (const YAML::Exception&) {
      }
    }
  }
  throw InstanceError(Kind::parse, "no instance named '" + name + "'");
}

}  // namespace fpaut
