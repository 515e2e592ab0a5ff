#pragma once

// Gates, train-track verification, bounded cancellation and splittings.

#include <optional>
#include <string>
#include <vector>

#include "fpaut/graph_map.hpp"

namespace fpaut {

/// Germs are oriented edges, based at their origin. Two germs at a vertex
/// share a gate when Df^k identifies them for some k <= K. At a factor
/// vertex the germs g.d for different g in the vertex group are never
/// identified, so a turn there is legal when its element is non-trivial.
struct Gates {
  std::vector<int> gate_of;  // per oriented edge; ids are global
  std::vector<std::vector<std::vector<OrientedEdge>>> classes;  // per vertex
  int iterations = 0;

  bool same_gate(OrientedEdge a, OrientedEdge b) const {
    return gate_of.at(static_cast<std::size_t>(a)) == gate_of.at(static_cast<std::size_t>(b));
  }
  /// Germ classes times the order of the vertex group; nullopt when infinite.
  std::optional<std::size_t> gate_count(const MarkedGraph& g, int v) const;
};

/// Df(d): the first edge of f(d). Throws GraphError when an edge collapses.
OrientedEdge derivative(const GraphMap& f, OrientedEdge d);
Gates gates_from_map(const GraphMap& f, int K);

/// The turn from incoming edge `in` through `element` into `out`.
bool is_legal_turn(const MarkedGraph& g, const Gates& gates, OrientedEdge in, const MaybeElement& element,
                   OrientedEdge out);

struct TurnRecord {
  OrientedEdge edge = 0;      // whose image contains the turn
  std::size_t position = 0;   // index of the turn inside the image
  OrientedEdge in = 0;
  MaybeElement element;
  OrientedEdge out = 0;
  bool legal = true;
};

std::string format_turn(const MarkedGraph& g, const TurnRecord& t);

struct TrainTrackVerdict {
  bool train_track = true;
  std::string failure;  // empty on success
  std::optional<TurnRecord> witness;
  std::vector<TurnRecord> certificate;
  Gates gates;
  int iterations = 0;  // k up to which f^k(e) was seen reduced
};

/// Legal reduced edge images, the germ condition, two gates at every vertex,
/// and f^k(e) reduced without tightening for k <= K.
TrainTrackVerdict is_train_track(const GraphMap& f, int K);

struct CancellationBound {
  double lip = 0.0;
  double qvol = 0.0;
  double bcc = 0.0;
};

CancellationBound lip_qvol_bcc(const GraphMap& f);

/// Removes whole edges from each end until at least C is gone from that end.
EdgePath trim(const MarkedGraph& g, const EdgePath& p, double C);
EdgePath f_sharp_c(const GraphMap& f, const EdgePath& p, double C);

/// Length of the overlap cancelled when tightening p . q.
double cancelled_length(const MarkedGraph& g, const EdgePath& p, const EdgePath& q,
                        const MaybeElement& junction = std::nullopt);

enum class BrickTag { regular, singular };

struct Brick {
  EdgePath path;
  BrickTag tag = BrickTag::regular;
};

struct BrickSplitting {
  std::vector<Brick> bricks;
  std::vector<MaybeElement> junctions;  // element between brick i and i+1
  int level = 0;
};

EdgePath assemble(const MarkedGraph& g, const BrickSplitting& s);

struct SplitVerdict {
  bool ok = true;
  int k = 0;                 // first failing iterate
  std::size_t junction = 0;  // index of the failing junction
  std::string reason;
};

/// For k <= K, f^k_#(w) is the concatenation of the f^k_#(bricks) with no
/// cancellation at any junction.
SplitVerdict split_check(const GraphMap& f, const EdgePath& w, const BrickSplitting& s, int K);

/// Image of a splitting under f_#: bricks map brick by brick.
BrickSplitting map_splitting(const GraphMap& f, const BrickSplitting& s);

}  // namespace fpaut
