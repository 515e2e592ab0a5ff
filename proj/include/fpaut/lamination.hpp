#pragma once

// Depth-bounded laminary language of a train-track map.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fpaut/graph_map.hpp"

namespace fpaut {

using Projection = std::vector<OrientedEdge>;

struct LanguageWord {
  EdgePath witness;  // with turn data, as it occurred
  int k = 0;         // first iterate that produced it
  OrientedEdge edge = 0;
};

/// Quotient paths of at most `depth` edges occurring in some f^k_#(e),
/// closed under subpaths and reversal. Length counts edges.
struct LaminaryLanguage {
  std::shared_ptr<const MarkedGraph> graph;
  int depth = 0;
  int levels = 0;                 // iterates computed
  std::optional<int> saturation;  // first k with S_k = S_{k+1}
  std::map<Projection, LanguageWord> words;

  bool contains(const Projection& p) const { return words.count(p) > 0; }
  /// Entry i counts the words with i+1 edges.
  std::vector<std::size_t> counts_by_length() const;
};

/// Subpaths of f^k_#(e) for every edge e and 1 <= k <= kmax, cumulative over
/// k; stops at the first k whose level adds nothing.
LaminaryLanguage generate_language(const GraphMap& f, int L, int kmax);

/// Adds every subpath of p with at most L edges, and its reverse.
void add_subpaths(const MarkedGraph& g, LaminaryLanguage& lang, const EdgePath& p, int k, OrientedEdge edge);

struct GenerationVerdict {
  bool ok = true;
  int max_k = 0;
  std::vector<int> skipped;  // edges whose orbit stays in an elliptic subgraph
  std::optional<OrientedEdge> failing_edge;
  std::optional<Projection> failing_word;
};

/// Every word occurs in f^k_#(e), either orientation, for some k <= kcap and
/// every edge e. Edges whose images stay inside a subgraph carrying no
/// hyperbolic element are skipped: they never grow.
GenerationVerdict check_generation_property(const LaminaryLanguage& lang, const GraphMap& f, int kcap);

/// Least window L' such that every length-L subpath of the segment occurs
/// in every window of L' consecutive edges.
std::optional<int> quasi_periodicity_constant(const EdgePath& segment, int L);

struct StabilizationVerdict {
  bool ok = true;
  std::size_t checked = 0;
  std::size_t skipped = 0;  // trimmed image empty
  std::size_t failed = 0;
  bool below_bound = false;  // C below the cancellation bound of h
  std::optional<Projection> failing_word;
  std::optional<Projection> failing_image;
};

/// h_{#,C} sends every word of the language back into it; images longer
/// than the depth are checked through their windows of depth edges.
StabilizationVerdict stabilizes_language(const GraphMap& h, const LaminaryLanguage& lang, double C);

/// f^k_#(e).
EdgePath iterate_edge(const GraphMap& f, OrientedEdge e, int k);

}  // namespace fpaut
