#pragma once

// Deletion-contraction on the sheaf level.  Contracting a non-loop,
// non-bridge edge e removes one family from the arrangement; putting it back
// subdivides the coarse complex generically, and the sheaves R^i fit into
//
//   0 -> R^i(fine) -> R^i(coarse, refined) -> R^(i-1)(cap) -> 0
//
// where the cap is the arrangement of the deletion on e's subtorus.  This
// module builds that sequence stalk by stalk, certifies it, and pushes it
// through the snake lemma.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hths/arrangement.hpp"
#include "hths/graph.hpp"
#include "hths/sheaf.hpp"

namespace hths {

class DelconError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BalloonSetup {
  MultiGraph graph;
  EdgeId edge{};
  /// Arrangement of the graph.
  TorusComplex fine;
  /// Same families and shifts without e: the arrangement of the contraction.
  TorusComplex coarse;
  /// e's subtorus: the arrangement of the deletion.
  RestrictedComplex cap;
  /// Fine cell -> coarse cell.
  std::vector<std::size_t> map;
};

/// Requires a connected graph and an edge that is neither a loop nor a
/// bridge.  The result must stay where it is while sheaves built on it live.
BalloonSetup balloon_setup(const MultiGraph& g, EdgeId e, std::uint64_t seed = 0, std::size_t max_dim = 3);

/// Per-cell components between two sheaves on the same complex.
struct SheafMap {
  std::vector<QMatrix> components;
};

struct ShortExactSeq {
  std::size_t degree = 0;
  CellularSheaf A;  // R^i on the fine complex
  CellularSheaf B;  // R^i of the coarse complex, pulled back
  CellularSheaf C;  // B / A
  SheafMap first;
  SheafMap second;
  /// Right inverse of `second` on every stalk.
  SheafMap section;
  /// R^(i-1) on the cap (empty for i = 0) and, per cap cell, the isomorphism
  /// from its stalk onto the C stalk of the embedded fine cell.
  CellularSheaf cap_sheaf;
  std::vector<QMatrix> cap_iso;
};

/// Builds and certifies the sequence for R^i, 0 <= i <= n: stalkwise
/// exactness, naturality of both maps, and a restriction-compatible
/// isomorphism from C to the cap sheaf extended by zero.
ShortExactSeq build_ses(const BalloonSetup& setup, std::size_t i);

struct LesNode {
  std::string label;
  std::size_t dim = 0;
  /// Rank of the map to the next node (0 after the last node).
  std::size_t out_rank = 0;
};

struct LongExactSeq {
  std::vector<LesNode> nodes;
};

/// H^k(A) -> H^k(B) -> H^k(C) -> H^(k+1)(A) -> ..., with the connecting maps
/// computed by lifting, applying the coboundary and pulling back.  Throws if
/// the cochain-level sequence is not exact or a node fails rank-exactness.
LongExactSeq snake_les(const ShortExactSeq& ses);

/// Rank-exactness at every node.
bool is_rank_exact(const LongExactSeq& les);

struct SmalldelconReport {
  bool holds = false;
  BettiTable whole;       // the graph, T^n
  BettiTable contracted;  // g / e, T^n
  BettiTable deleted;     // g \ e with bridges removed, T^(n-1)
};

/// h^k(R^i)(g) = h^k(R^i)(g/e) + h^(k-1)(R^(i-1))(g\e) for all k and i, with
/// the three tables computed independently.  Requires b1 >= 2, no
/// disconnecting vertex and e a non-loop edge at a degree-2 vertex.
SmalldelconReport smalldelcon_report(const MultiGraph& g, EdgeId e, std::uint64_t seed = 0);
bool verify_smalldelcon(const MultiGraph& g, EdgeId e, std::uint64_t seed = 0);

/// Dimension-level check of the long exact sequence of total cohomologies
/// ... -> H^d(g) -> H^d(g/e) -> H^(d-1)(g\e) -> H^(d+1)(g) -> ...:
/// the alternating sum vanishes and consecutive ranks can be chosen.
bool total_les_check(const MultiGraph& g, EdgeId e, std::uint64_t seed = 0);

/// Same check on given dimension sequences.
bool les_dimensions_feasible(const std::vector<std::size_t>& dims);

}  // namespace hths
