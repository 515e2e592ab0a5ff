#pragma once

// Periodic Nielsen paths of period one, found by bounded enumeration.

#include <cstddef>
#include <vector>

#include "fpaut/graph_map.hpp"

namespace fpaut {

/// f_#(p) and p have the same projection.
bool is_n_path(const GraphMap& f, const EdgePath& p);

struct NPathClass {
  std::vector<OrientedEdge> projection;  // the smaller of p and its reverse
  EdgePath representative;
};

struct NPathReport {
  int max_edges = 0;
  std::size_t examined = 0;
  std::size_t found = 0;  // N-paths of any kind
  std::vector<NPathClass> classes;  // indivisible, up to reversal
};

/// All reduced paths with at most L edges. At a finite vertex group every
/// element is tried as a turn; at an infinite one the generators and their
/// inverses.
NPathReport find_n_paths(const GraphMap& f, int L);

}  // namespace fpaut
