#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "graph_fixtures.hpp"
#include "fpaut/cli.hpp"
#include "fpaut/instance.hpp"

using namespace fpaut;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

std::string last_line(const std::string& text) {
  std::string s = text;
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s.substr(s.rfind('\n') + 1);
}

std::filesystem::path scratch(const std::string& name, const std::string& body) {
  auto p = std::filesystem::temp_directory_path() / ("fpaut_test_" + name + ".yaml");
  std::ofstream(p) << body;
  return p;
}

const char* kHeader =
    "name: t\n"
    "decomposition:\n"
    "  free_rank: 2\n"
    "  factors: [{id: 1, kind: cyclic, order: 5, generator: a}]\n";

}  // namespace

TEST_CASE("bundled instances load and match the hand-built fixtures") {
  Instance a = load_instance_file(resolve_instance("A", FPAUT_INSTANCE_DIR));
  CHECK(a.name == "cyclic5");
  CHECK(equal_on_generators(a.automorphism("phiA"), fx::phi_a(a.fp)));
  CHECK(equal_on_generators(a.automorphism("twist2"), fx::twist_a(a.fp, 2, 3)));
  auto g = fx::rose(a.fp);
  GraphMap fa = fx::f_a(g);
  for (int d = 0; d < 6; ++d) CHECK(a.map("fA").image(d).edges == fa.image(d).edges);
  CHECK(a.realizes.at("fA") == "phiA");

  Instance b = load_instance_file(resolve_instance("f2factor", FPAUT_INSTANCE_DIR));
  CHECK(b.aliases == std::vector<std::string>{"B"});
  CHECK(equal_on_generators(b.automorphism("psi"), fx::psi_b(b.fp)));
  CHECK(equal_on_generators(b.automorphism("psi_swap"), fx::swap_b(b.fp)));
  CHECK(b.rays.at("rayB").map == "fB");
}

TEST_CASE("instance errors carry positions and kinds") {
  try {
    parse_instance("name: x\ndecomposition: [1,\n");
    FAIL("no error");
  } catch (const InstanceError& e) {
    CHECK(e.kind() == InstanceError::Kind::parse);
    CHECK(e.line() >= 2);
  }
  try {
    parse_instance(std::string(kHeader) +
                   "automorphisms:\n  phi:\n    free: [\"b2 a\", \"b1 b2\"]\n"
                   "    inverse: {free: [\"b2 a B1\", \"b1 a^3\"]}\n");
    FAIL("no error");
  } catch (const InstanceError& e) {
    CHECK(e.kind() == InstanceError::Kind::validation);
    CHECK(e.line() == 7);
  }
  try {
    parse_instance(std::string(kHeader) + "automorphisms:\n  phi:\n    free: [\"b2 q\", \"b1\"]\n    inverse: {free: [b1, b2]}\n");
    FAIL("no error");
  } catch (const InstanceError& e) {
    CHECK(e.kind() == InstanceError::Kind::parse);
    CHECK(e.line() == 7);
  }
  // the map does not realize the automorphism it names
  CHECK_THROWS_AS(parse_instance(std::string(kHeader) +
                                 "automorphisms:\n  id: {free: [b1, b2], inverse: {free: [b1, b2]}}\n"
                                 "graphs: {rose: rose}\n"
                                 "maps:\n  f: {graph: rose, edges: {e1: e2, e2: e1, h: h}, realizes: id}\n"),
                  InstanceError);
  CHECK_THROWS_AS(parse_instance(std::string(kHeader) + "rays: {r: {map: nothing}}\n"), InstanceError);
}

TEST_CASE("reduce and apply") {
  Result r = run({"reduce", "b1 B1"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "reduced: 1"));
  CHECK(last_line(r.out) == "OK");

  r = run({"apply", "phiA", "b1 b2"});
  CHECK(has_line(r.out, "image: b2 a@1 b1 b2"));
  r = run({"apply", "phiA^-1", "b2 a@1 b1 b2"});
  CHECK(has_line(r.out, "image: b1 b2"));
  r = run({"apply", "inner:b1", "a"});
  CHECK(has_line(r.out, "image: b1 a@1 B1"));
  r = run({"orbit", "phiA", "b1", "4"});
  CHECK(r.out.find("  4 8 b1 b2 a@1 b2 a@1 b1 b2 a@1") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"reduce", "b1 ("}).code == cli::parse_error);
  CHECK(run({"apply", "nothing", "b1"}).code == cli::validation_error);
  CHECK(run({"apply", "phiA^x", "b1"}).code == cli::parse_error);
  CHECK(run({"frobnicate"}).code == cli::parse_error);
  CHECK(run({"--instance", "no-such-instance", "reduce", "b1"}).code == cli::parse_error);

  auto bad = scratch("bad", "name: x\ndecomposition:\n  free_rank: [\n");
  Result r = run({"--instance", bad.string(), "reduce", "b1"});
  CHECK(r.code == cli::parse_error);
  CHECK(r.err.find("line ") != std::string::npos);
  auto invalid = scratch("invalid", std::string(kHeader) + "rays: {r: {map: nothing}}\n");
  r = run({"--instance", invalid.string(), "reduce", "b1"});
  CHECK(r.code == cli::validation_error);
  CHECK(r.err.find("nothing") != std::string::npos);
}

TEST_CASE("traincheck reports") {
  Result r = run({"traincheck", "fA"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "train-track: yes"));
  CHECK(has_line(r.out, "PF: 1.618033988750"));
  CHECK(has_line(r.out, "bcc: 5.000000000000"));
  CHECK(has_line(r.out, "o-irreducible: yes"));
  CHECK(has_line(r.out, "mated: phiA yes"));

  r = run({"traincheck", "fRed"});
  CHECK(r.code == cli::check_failed);
  CHECK(has_line(r.out, "o-irreducible: no"));
  CHECK(r.out.find("reducing-witness: {e1} contains a circuit") != std::string::npos);
  CHECK(last_line(r.out) == "FAIL");

  r = run({"-i", "B", "traincheck", "fB"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "PF: 1.618033988750"));
}

TEST_CASE("lamination and ray reports") {
  Result r = run({"lamination", "fA"});
  CHECK(r.code == 0);
  CHECK(r.out.find("saturation: ") != std::string::npos);
  CHECK(r.out.find("generation: yes") != std::string::npos);

  r = run({"ray", "rayA", "--levels", "4"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "base-offset: b1"));
  CHECK(has_line(r.out, "power: 2"));
  CHECK(has_line(r.out, "  4 123 0"));
  CHECK(has_line(r.out, "ell0: 1.000000000000"));
  CHECK(has_line(r.out, "  1 singular 1.000000000000 h (a@1) H"));
}

TEST_CASE("stabilizer commands") {
  Result r = run({"-i", "B", "stabcheck", "psi_swap", "rayB", "--depth", "500"});
  CHECK(r.code == cli::check_failed);
  CHECK(has_line(r.out, "diverges-at: 3"));
  CHECK(has_line(r.out, "order: 2"));

  r = run({"-i", "B", "stabcheck", "psi", "rayB"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "fixed-to-depth: 500"));
  CHECK(has_line(r.out, "factor-direction: yes"));

  r = run({"classify", "phiA^2", "rayA"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "classification: attractive"));

  r = run({"stabcheck", "inner:b1 b2", "rational:b1 b2", "--depth", "1000"});
  CHECK(r.code == 0);
  r = run({"rational", "a"});
  CHECK(r.code == cli::check_failed);
  CHECK(has_line(r.out, "hyperbolic: no"));
}

TEST_CASE("reports are deterministic and dump the same content") {
  auto dump = std::filesystem::temp_directory_path() / "fpaut_test_dump.json";
  std::vector<std::string> args{"ray", "rayA", "--levels", "5", "--dump", dump.string()};
  Result a = run(args);
  std::ifstream in(dump);
  nlohmann::json j = nlohmann::json::parse(in);
  Result b = run(args);
  CHECK(a.out == b.out);
  CHECK(j["status"] == "OK");
  CHECK(j["power"] == "2");
  CHECK(j["segments"].size() == 6);
  CHECK(j["segments"][5]["cancellation"] == "0");
}
