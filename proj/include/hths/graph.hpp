#pragma once

// Finite multigraphs with loops and stable edge identifiers, together with the
// graph operations that drive the hyperplane arrangements: cycle space,
// deletion and contraction, bridges, spanning trees, blocks at disconnecting
// vertices and base graphs.

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hths/exactq.hpp"

namespace hths {

enum class EdgeId : std::uint32_t {};

constexpr std::uint32_t to_index(EdgeId id) { return static_cast<std::uint32_t>(id); }

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  std::size_t tail = 0;
  std::size_t head = 0;
  EdgeId id{};

  bool is_loop() const { return tail == head; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

class MultiGraph {
 public:
  MultiGraph() = default;
  explicit MultiGraph(std::size_t vertex_count) : vertex_count_(vertex_count) {}
  /// Edges get ids 0, 1, ... in the order given.
  MultiGraph(std::size_t vertex_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Appends an edge; the id must be unused.
  void add_edge(std::size_t tail, std::size_t head, EdgeId id);
  EdgeId add_edge(std::size_t tail, std::size_t head);

  bool has_edge(EdgeId id) const;
  const Edge& edge(EdgeId id) const;
  std::size_t edge_position(EdgeId id) const;

  /// Loops count twice.
  std::size_t degree(std::size_t v) const;
  bool is_connected() const;

  friend bool operator==(const MultiGraph&, const MultiGraph&) = default;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
};

/// Fundamental cycles of a deterministic spanning tree and the per-edge
/// pairing vectors against them.
struct CycleBasis {
  std::vector<EdgeId> spanning_tree_edges;
  /// Non-tree edge generating each fundamental cycle, in cycle order.
  std::vector<EdgeId> cycle_generators;
  /// cycles[j][p] is the coefficient of the edge at position p in cycle j.
  std::vector<std::vector<int>> cycles;
  /// normals[p][j] = <[e_p], c_j>, indexed by edge position.
  std::vector<std::vector<int>> normals;

  std::size_t dimension() const { return cycles.size(); }
};

/// Edge count - vertex count + 1.  Requires a connected graph.
std::size_t betti1(const MultiGraph& g);

/// Breadth-first spanning tree from vertex 0, scanning incident edges by
/// increasing id; one fundamental cycle per non-tree edge (loops included),
/// oriented along that edge.
CycleBasis fundamental_cycle_basis(const MultiGraph& g);

MultiGraph delete_edge(const MultiGraph& g, EdgeId e);
/// Merges the endpoints of e into the lower-numbered one; the higher vertex
/// index disappears and later indices shift down.  Other edge ids are kept.
MultiGraph contract_edge(const MultiGraph& g, EdgeId e);

bool is_bridge(const MultiGraph& g, EdgeId e);
/// Contracts bridges until none remain.
MultiGraph remove_bridges(const MultiGraph& g);
/// Identifies one vertex of every component with vertex 0.  The cycle space
/// (and so the arrangement) is unchanged.
MultiGraph join_components(const MultiGraph& g);

/// Matrix-tree theorem: a cofactor of the Laplacian.  Loops are ignored.
Integer spanning_tree_count(const MultiGraph& g);

/// Maximal decomposition at disconnecting vertices.  Every loop is its own
/// block.  Edge ids are preserved, vertices are renumbered in increasing
/// order of their original index.
std::vector<MultiGraph> disconnecting_blocks(const MultiGraph& g);
bool has_disconnecting_vertex(const MultiGraph& g);

struct BaseGraph {
  MultiGraph graph;
  /// Degree-2 vertices absorbed into each surviving edge, keyed by edge id.
  std::map<EdgeId, std::size_t> absorbed;
};

/// Repeatedly contracts the lowest-id edge at the lowest-index degree-2
/// vertex.  Cycles end at the single loop.
BaseGraph base_graph(const MultiGraph& g);

/// Non-loop contractions (edge ids, applied in order) taking g to the theta
/// graph with b1(g) + 1 edges.
std::vector<EdgeId> reduce_to_theta(const MultiGraph& g);

/// Theta graph on two vertices with k parallel edges.
MultiGraph theta_graph(std::size_t k);
/// Cycle with m edges (m = 1 is a single loop).
MultiGraph cycle_graph(std::size_t m);
MultiGraph complete_graph(std::size_t n);

std::string to_json(const MultiGraph& g);
/// Parses {"vertices": N, "edges": [[tail, head], ...]}.
MultiGraph graph_from_json(const std::string& text);
MultiGraph load_graph(const std::string& path);

}  // namespace hths
