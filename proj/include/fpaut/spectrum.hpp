#pragma once

// Transition matrices, Perron-Frobenius roots and invariant subgraphs.

#include <optional>
#include <string>
#include <vector>

#include "fpaut/graph_map.hpp"

namespace fpaut {

using Matrix = std::vector<std::vector<long long>>;

/// M[i][j] counts occurrences of edge i (either orientation) in f(e_j).
Matrix transition_matrix(const GraphMap& f);

/// Strongly connected components of the edge graph i -> j when M[j][i] > 0,
/// in topological order.
std::vector<std::vector<int>> irreducible_blocks(const Matrix& m);

/// Largest eigenvalue of a non-negative irreducible block, by power
/// iteration on B + I until the Collatz-Wielandt bounds agree to `tol`.
double perron_root(const Matrix& m, const std::vector<int>& block, double tol = 1e-12);

struct Spectrum {
  Matrix matrix;
  std::vector<std::vector<int>> blocks;
  int dominant = -1;  // index into blocks
  double pf = 0.0;
};

Spectrum transition_spectrum(const GraphMap& f);

struct InvariantSubgraph {
  std::vector<int> edges;  // sorted edge indices
  bool hyperbolic = false;
  std::string reason;  // why it carries, or fails to carry, a hyperbolic element
};

struct IrreducibilityVerdict {
  bool irreducible = true;
  std::vector<InvariantSubgraph> invariant;  // proper, non-empty, in order of size
  std::optional<InvariantSubgraph> witness;  // smallest hyperbolic one
};

/// A subgraph carries a hyperbolic element when it contains a circuit or
/// a component meeting two vertices with non-trivial groups.
InvariantSubgraph describe_subgraph(const MarkedGraph& g, std::vector<int> edges);

/// Enumerates proper f-invariant edge sets (at most 20 edges).
IrreducibilityVerdict o_irreducibility_check(const GraphMap& f);

std::string format_edge_set(const MarkedGraph& g, const std::vector<int>& edges);

}  // namespace fpaut
