#include "hths/graph.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hths {

MultiGraph::MultiGraph(std::size_t vertex_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges)
    : vertex_count_(vertex_count) {
  for (auto [t, h] : edges) add_edge(t, h);
}

void MultiGraph::add_edge(std::size_t tail, std::size_t head, EdgeId id) {
  if (tail >= vertex_count_ || head >= vertex_count_) throw GraphError("edge endpoint out of range");
  if (has_edge(id)) throw GraphError("duplicate edge id " + std::to_string(to_index(id)));
  edges_.push_back({tail, head, id});
}

EdgeId MultiGraph::add_edge(std::size_t tail, std::size_t head) {
  std::uint32_t next = 0;
  for (const auto& e : edges_) next = std::max(next, to_index(e.id) + 1);
  add_edge(tail, head, EdgeId{next});
  return EdgeId{next};
}

bool MultiGraph::has_edge(EdgeId id) const {
  return std::any_of(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.id == id; });
}

std::size_t MultiGraph::edge_position(EdgeId id) const {
  for (std::size_t p = 0; p < edges_.size(); ++p)
    if (edges_[p].id == id) return p;
  throw GraphError("no edge with id " + std::to_string(to_index(id)));
}

const Edge& MultiGraph::edge(EdgeId id) const { return edges_[edge_position(id)]; }

std::size_t MultiGraph::degree(std::size_t v) const {
  std::size_t d = 0;
  for (const auto& e : edges_) d += (e.tail == v) + (e.head == v);
  return d;
}

namespace {

std::vector<std::size_t> component_labels(const MultiGraph& g) {
  std::vector<std::size_t> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& e : g.edges()) parent[find(e.tail)] = find(e.head);
  std::vector<std::size_t> label(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) label[v] = find(v);
  return label;
}

void require_connected(const MultiGraph& g, const char* what) {
  if (!g.is_connected()) throw GraphError(std::string(what) + ": graph is not connected");
}

// Incident (edge position, other endpoint) pairs sorted by edge id.
std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incidence(const MultiGraph& g) {
  std::vector<std::size_t> order(g.edge_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return g.edges()[a].id < g.edges()[b].id; });
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(g.vertex_count());
  for (auto p : order) {
    const Edge& e = g.edges()[p];
    adj[e.tail].push_back({p, e.head});
    if (!e.is_loop()) adj[e.head].push_back({p, e.tail});
  }
  return adj;
}

}  // namespace

bool MultiGraph::is_connected() const {
  if (vertex_count_ == 0) return false;
  auto label = component_labels(*this);
  return std::all_of(label.begin(), label.end(), [&](std::size_t l) { return l == label[0]; });
}

std::size_t betti1(const MultiGraph& g) {
  require_connected(g, "betti1");
  return g.edge_count() + 1 - g.vertex_count();
}

CycleBasis fundamental_cycle_basis(const MultiGraph& g) {
  require_connected(g, "fundamental_cycle_basis");
  const std::size_t nv = g.vertex_count(), ne = g.edge_count();
  auto adj = incidence(g);

  // parent_edge[v] = position of the tree edge reaching v.
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent_edge(nv, none), parent_vertex(nv, none), depth(nv, 0);
  std::vector<bool> seen(nv, false), in_tree(ne, false);
  std::queue<std::size_t> queue;
  queue.push(0);
  seen[0] = true;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop();
    for (auto [p, w] : adj[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      in_tree[p] = true;
      parent_edge[w] = p;
      parent_vertex[w] = v;
      depth[w] = depth[v] + 1;
      queue.push(w);
    }
  }

  CycleBasis cb;
  std::vector<std::size_t> non_tree;
  for (std::size_t p = 0; p < ne; ++p) {
    if (in_tree[p])
      cb.spanning_tree_edges.push_back(g.edges()[p].id);
    else
      non_tree.push_back(p);
  }
  std::sort(cb.spanning_tree_edges.begin(), cb.spanning_tree_edges.end());
  std::sort(non_tree.begin(), non_tree.end(),
            [&](std::size_t a, std::size_t b) { return g.edges()[a].id < g.edges()[b].id; });

  // Tree edge at position p traversed from child to parent contributes -1 if
  // the edge is oriented parent->child.
  auto step_up = [&](std::size_t v, std::vector<int>& cycle, int direction) {
    std::size_t p = parent_edge[v];
    int oriented_down = g.edges()[p].head == v ? 1 : -1;
    cycle[p] += direction * -oriented_down;
    return parent_vertex[v];
  };

  for (std::size_t p : non_tree) {
    const Edge& e = g.edges()[p];
    std::vector<int> cycle(ne, 0);
    cycle[p] = 1;
    // Close the cycle: walk head -> lca (upwards) then lca -> tail (downwards).
    std::size_t a = e.head, b = e.tail;
    while (depth[a] > depth[b]) a = step_up(a, cycle, 1);
    std::vector<std::size_t> down_path;
    while (depth[b] > depth[a]) {
      down_path.push_back(b);
      b = parent_vertex[b];
    }
    while (a != b) {
      a = step_up(a, cycle, 1);
      down_path.push_back(b);
      b = parent_vertex[b];
    }
    // Traversing parent->child along an edge is the reverse of step_up.
    for (std::size_t v : down_path) step_up(v, cycle, -1);
    cb.cycle_generators.push_back(e.id);
    cb.cycles.push_back(std::move(cycle));
  }

  cb.normals.assign(ne, std::vector<int>(cb.cycles.size(), 0));
  for (std::size_t j = 0; j < cb.cycles.size(); ++j)
    for (std::size_t p = 0; p < ne; ++p) cb.normals[p][j] = cb.cycles[j][p];
  return cb;
}

MultiGraph delete_edge(const MultiGraph& g, EdgeId id) {
  g.edge_position(id);
  MultiGraph out(g.vertex_count());
  for (const auto& e : g.edges())
    if (e.id != id) out.add_edge(e.tail, e.head, e.id);
  return out;
}

MultiGraph contract_edge(const MultiGraph& g, EdgeId id) {
  const Edge& c = g.edge(id);
  if (c.is_loop()) throw GraphError("cannot contract loop " + std::to_string(to_index(id)));
  const std::size_t keep = std::min(c.tail, c.head), gone = std::max(c.tail, c.head);
  auto relabel = [&](std::size_t v) {
    if (v == gone) return keep;
    return v > gone ? v - 1 : v;
  };
  MultiGraph out(g.vertex_count() - 1);
  for (const auto& e : g.edges())
    if (e.id != id) out.add_edge(relabel(e.tail), relabel(e.head), e.id);
  return out;
}

bool is_bridge(const MultiGraph& g, EdgeId id) {
  const Edge& e = g.edge(id);
  if (e.is_loop()) return false;
  auto before = component_labels(g);
  auto after = component_labels(delete_edge(g, id));
  return after[e.tail] != after[e.head] && before[e.tail] == before[e.head];
}

MultiGraph remove_bridges(const MultiGraph& g) {
  require_connected(g, "remove_bridges");
  MultiGraph cur = g;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : cur.edges()) {
      if (is_bridge(cur, e.id)) {
        cur = contract_edge(cur, e.id);
        changed = true;
        break;
      }
    }
  }
  return cur;
}

MultiGraph join_components(const MultiGraph& g) {
  if (g.vertex_count() == 0) return MultiGraph(1);
  auto label = component_labels(g);
  std::vector<std::size_t> roots;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (label[v] == v) roots.push_back(v);
  // Merge every component root into vertex 0's component root.
  std::vector<std::size_t> target(g.vertex_count());
  std::iota(target.begin(), target.end(), 0);
  for (auto r : roots)
    if (r != label[0]) target[r] = label[0];
  std::vector<std::size_t> new_index(g.vertex_count());
  std::size_t next = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (target[v] == v) new_index[v] = next++;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) new_index[v] = new_index[target[v]];
  MultiGraph out(next);
  for (const auto& e : g.edges()) out.add_edge(new_index[e.tail], new_index[e.head], e.id);
  return out;
}

Integer spanning_tree_count(const MultiGraph& g) {
  require_connected(g, "spanning_tree_count");
  const std::size_t n = g.vertex_count();
  if (n == 1) return 1;
  QMatrix lap(n - 1, n - 1);
  for (const auto& e : g.edges()) {
    if (e.is_loop()) continue;
    const std::size_t a = e.tail, b = e.head;
    if (a > 0) lap(a - 1, a - 1) += 1;
    if (b > 0) lap(b - 1, b - 1) += 1;
    if (a > 0 && b > 0) {
      lap(a - 1, b - 1) -= 1;
      lap(b - 1, a - 1) -= 1;
    }
  }
  Rational det = determinant(lap);
  return det.get_num();
}

std::vector<MultiGraph> disconnecting_blocks(const MultiGraph& g) {
  require_connected(g, "disconnecting_blocks");
  const std::size_t nv = g.vertex_count();
  std::vector<std::vector<std::size_t>> block_edges;  // edge positions

  for (std::size_t p = 0; p < g.edge_count(); ++p)
    if (g.edges()[p].is_loop()) block_edges.push_back({p});

  // Hopcroft-Tarjan on non-loop edges, with an edge stack.  The edge used to
  // enter a vertex is skipped by position so parallel edges act as back edges.
  auto adj = incidence(g);
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> disc(nv, unvisited), low(nv, 0);
  std::vector<std::size_t> edge_stack;
  std::size_t timer = 0;
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t v, std::size_t via) {
    disc[v] = low[v] = timer++;
    for (auto [p, w] : adj[v]) {
      if (g.edges()[p].is_loop() || p == via) continue;
      if (disc[w] == unvisited) {
        edge_stack.push_back(p);
        dfs(w, p);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= disc[v]) {
          std::vector<std::size_t> block;
          while (true) {
            std::size_t q = edge_stack.back();
            edge_stack.pop_back();
            block.push_back(q);
            if (q == p) break;
          }
          block_edges.push_back(std::move(block));
        }
      } else if (disc[w] < disc[v]) {
        edge_stack.push_back(p);
        low[v] = std::min(low[v], disc[w]);
      }
    }
  };
  dfs(0, unvisited);

  if (block_edges.size() <= 1) return {g};

  std::vector<MultiGraph> blocks;
  for (auto& positions : block_edges) {
    std::sort(positions.begin(), positions.end());
    std::set<std::size_t> verts;
    for (auto p : positions) {
      verts.insert(g.edges()[p].tail);
      verts.insert(g.edges()[p].head);
    }
    std::map<std::size_t, std::size_t> index;
    for (auto v : verts) index.emplace(v, index.size());
    MultiGraph b(verts.size());
    for (auto p : positions) {
      const Edge& e = g.edges()[p];
      b.add_edge(index[e.tail], index[e.head], e.id);
    }
    blocks.push_back(std::move(b));
  }
  // Deterministic order: by smallest edge id in each block.
  std::sort(blocks.begin(), blocks.end(),
            [](const MultiGraph& a, const MultiGraph& b) { return a.edges().front().id < b.edges().front().id; });
  return blocks;
}

bool has_disconnecting_vertex(const MultiGraph& g) { return disconnecting_blocks(g).size() > 1; }

BaseGraph base_graph(const MultiGraph& g) {
  require_connected(g, "base_graph");
  if (has_disconnecting_vertex(g)) throw GraphError("base_graph: graph has a disconnecting vertex");
  BaseGraph out{g, {}};
  for (const auto& e : g.edges()) out.absorbed[e.id] = 0;
  while (true) {
    const MultiGraph& cur = out.graph;
    bool contracted = false;
    for (std::size_t v = 0; v < cur.vertex_count() && !contracted; ++v) {
      if (cur.degree(v) != 2) continue;
      std::vector<EdgeId> inc;
      for (const auto& e : cur.edges())
        if (e.tail == v || e.head == v) inc.push_back(e.id);
      if (inc.size() != 2) continue;  // a lone loop: the cycle has been used up
      std::sort(inc.begin(), inc.end());
      const EdgeId gone = inc[0], survivor = inc[1];
      out.absorbed[survivor] += out.absorbed[gone] + 1;
      out.absorbed.erase(gone);
      out.graph = contract_edge(cur, gone);
      contracted = true;
    }
    if (!contracted) break;
  }
  return out;
}

namespace {

bool is_theta(const MultiGraph& g) {
  if (g.vertex_count() != 2) return false;
  return std::none_of(g.edges().begin(), g.edges().end(), [](const Edge& e) { return e.is_loop(); });
}

// A contraction is loop-free when e has no parallel partner.
bool contraction_keeps_loops_out(const MultiGraph& g, const Edge& e) {
  return std::count_if(g.edges().begin(), g.edges().end(), [&](const Edge& f) {
           return (f.tail == e.tail && f.head == e.head) || (f.tail == e.head && f.head == e.tail);
         }) == 1;
}

bool search_theta(const MultiGraph& g, std::vector<EdgeId>& steps) {
  if (is_theta(g)) return true;
  if (g.vertex_count() <= 2) return false;
  for (const auto& e : g.edges()) {
    if (e.is_loop() || !contraction_keeps_loops_out(g, e)) continue;
    MultiGraph next = contract_edge(g, e.id);
    if (has_disconnecting_vertex(next)) continue;
    steps.push_back(e.id);
    if (search_theta(next, steps)) return true;
    steps.pop_back();
  }
  return false;
}

}  // namespace

std::vector<EdgeId> reduce_to_theta(const MultiGraph& g) {
  require_connected(g, "reduce_to_theta");
  if (has_disconnecting_vertex(g)) throw GraphError("reduce_to_theta: graph has a disconnecting vertex");
  if (g.edge_count() == 0 || std::any_of(g.edges().begin(), g.edges().end(), [](const Edge& e) { return e.is_loop(); }))
    throw GraphError("reduce_to_theta: graph must have at least one edge and no loops");
  std::vector<EdgeId> steps;
  if (!search_theta(g, steps)) throw GraphError("reduce_to_theta: no loop-free contraction sequence found");
  return steps;
}

MultiGraph theta_graph(std::size_t k) {
  MultiGraph g(2);
  for (std::size_t i = 0; i < k; ++i) g.add_edge(0, 1);
  return g;
}

MultiGraph cycle_graph(std::size_t m) {
  if (m == 0) throw GraphError("cycle_graph: need at least one edge");
  MultiGraph g(m);
  for (std::size_t i = 0; i < m; ++i) g.add_edge(i, (i + 1) % m);
  return g;
}

MultiGraph complete_graph(std::size_t n) {
  MultiGraph g(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

std::string to_json(const MultiGraph& g) {
  nlohmann::json j;
  j["vertices"] = g.vertex_count();
  j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges()) j["edges"].push_back({e.tail, e.head});
  return j.dump();
}

MultiGraph graph_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw GraphError(std::string("malformed graph JSON: ") + err.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges") || !j["vertices"].is_number_unsigned() ||
      !j["edges"].is_array())
    throw GraphError("graph JSON must have an unsigned \"vertices\" count and an \"edges\" array");
  MultiGraph g(j["vertices"].get<std::size_t>());
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
      throw GraphError("each edge must be a [tail, head] pair of vertex indices");
    g.add_edge(e[0].get<std::size_t>(), e[1].get<std::size_t>());
  }
  return g;
}

MultiGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return graph_from_json(ss.str());
}

}  // namespace hths
