#pragma once

// YAML instance files: a free product, named automorphisms, marked graphs,
// graph maps, rays and experiment parameters.

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpaut/autos.hpp"
#include "fpaut/graph_map.hpp"

namespace fpaut {

class InstanceError : public std::runtime_error {
 public:
  enum class Kind { parse, validation };
  InstanceError(Kind kind, const std::string& what, int line = -1, int column = -1);
  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  Kind kind_;
  int line_;
  int column_;
};

struct RaySpec {
  std::string map;
  int levels = 6;
  int radius = 2;
  int power_cap = 4;
};

/// Defaults used when a command line leaves a parameter out.
struct Experiments {
  int traincheck_k = 12;
  int npath_depth = 6;
  int lamination_depth = 6;
  int lamination_kmax = 20;
  int generation_kcap = 15;
  int ray_levels = 6;
  int radius = 2;
  int power_cap = 4;
  std::size_t stab_depth = 500;
  long order_cap = 12;
  std::size_t rational_depth = 40;
  std::uint64_t seed = 1;
};

struct Instance {
  std::string name;
  std::vector<std::string> aliases;
  std::shared_ptr<const FreeProduct> fp;
  std::map<std::string, FactorAutomorphism> twists;
  std::map<std::string, FpAutomorphism> automorphisms;
  std::map<std::string, std::shared_ptr<const MarkedGraph>> graphs;
  std::map<std::string, GraphMap> maps;
  std::map<std::string, std::string> realizes;  // map name -> automorphism name
  std::map<std::string, RaySpec> rays;
  Experiments experiments;

  const FpAutomorphism& automorphism(const std::string& name) const;
  const GraphMap& map(const std::string& name) const;
};

/// Throws InstanceError: parse for malformed YAML or words, validation for
/// unresolved names, automorphisms that fail verify() and maps that do not
/// realize the automorphism they name.
Instance parse_instance(const std::string& text);
Instance load_instance_file(const std::filesystem::path& path);

/// A file path, a file stem in `dir`, or an alias declared inside a file there.
std::filesystem::path resolve_instance(const std::string& name, const std::filesystem::path& dir);

}  // namespace fpaut
