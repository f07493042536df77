#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "hths/graph.hpp"
#include "support.hpp"

using namespace hths;
using hths::test::fixture;

namespace {

using Vec = std::vector<int>;

// Normalise a set of normals under the signed permutations of coordinates and
// per-vector sign, so two cycle bases can be compared.
bool same_up_to_signed_permutation(std::vector<Vec> a, std::vector<Vec> b) {
  if (a.size() != b.size() || a.empty()) return a.size() == b.size();
  std::size_t n = a.front().size();
  auto normalise = [](Vec v) {
    for (int x : v)
      if (x != 0) {
        if (x < 0)
          for (auto& y : v) y = -y;
        break;
      }
    return v;
  };
  std::multiset<Vec> target;
  for (auto& v : b) target.insert(normalise(v));
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (unsigned signs = 0; signs < (1u << n); ++signs) {
      std::multiset<Vec> got;
      for (const auto& v : a) {
        Vec w(n);
        for (std::size_t j = 0; j < n; ++j) w[j] = ((signs >> j) & 1u) ? -v[perm[j]] : v[perm[j]];
        got.insert(normalise(w));
      }
      if (got == target) return true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::vector<Vec> nonzero_normals(const MultiGraph& g) {
  std::vector<Vec> out;
  for (const auto& v : fundamental_cycle_basis(g).normals)
    if (std::any_of(v.begin(), v.end(), [](int x) { return x != 0; })) out.push_back(v);
  return out;
}

}  // namespace

TEST_CASE("first Betti numbers") {
  CHECK(betti1(theta_graph(3)) == 2);
  CHECK(betti1(theta_graph(4)) == 3);
  CHECK(betti1(complete_graph(4)) == 3);
  CHECK(betti1(cycle_graph(1)) == 1);
  CHECK(betti1(fixture("tree")) == 0);
  CHECK(betti1(fixture("wedge_loop_theta3")) == 3);
  CHECK_THROWS_AS(betti1(MultiGraph(2)), GraphError);
}

TEST_CASE("theta cycle basis pairs to the expected forms") {
  auto normals = nonzero_normals(theta_graph(3));
  CHECK(same_up_to_signed_permutation(normals, {{1, 0}, {-1, 1}, {0, 1}}));
  auto loop = fundamental_cycle_basis(cycle_graph(1));
  REQUIRE(loop.normals.size() == 1);
  CHECK(loop.normals[0] == Vec{1});
}

TEST_CASE("fundamental cycles are closed") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    MultiGraph g = test::random_graph(rng);
    CycleBasis cb = fundamental_cycle_basis(g);
    CHECK(cb.dimension() == betti1(g));
    CHECK(cb.spanning_tree_edges.size() == g.vertex_count() - 1);
    for (const auto& cycle : cb.cycles) {
      std::vector<long> boundary(g.vertex_count(), 0);
      for (std::size_t p = 0; p < g.edge_count(); ++p) {
        boundary[g.edges()[p].head] += cycle[p];
        boundary[g.edges()[p].tail] -= cycle[p];
      }
      CHECK(std::all_of(boundary.begin(), boundary.end(), [](long x) { return x == 0; }));
    }
    // Bridges lie on no cycle.
    for (std::size_t p = 0; p < g.edge_count(); ++p) {
      bool zero = std::all_of(cb.normals[p].begin(), cb.normals[p].end(), [](int x) { return x == 0; });
      CHECK(zero == is_bridge(g, g.edges()[p].id));
    }
  }
}

TEST_CASE("spanning tree counts") {
  CHECK(spanning_tree_count(theta_graph(3)) == 3);
  CHECK(spanning_tree_count(theta_graph(4)) == 4);
  CHECK(spanning_tree_count(complete_graph(4)) == 16);
  CHECK(spanning_tree_count(cycle_graph(5)) == 5);
  CHECK(spanning_tree_count(cycle_graph(1)) == 1);
  CHECK(spanning_tree_count(fixture("figure8")) == 1);
  CHECK(spanning_tree_count(fixture("theta3_sub")) == 5);
  CHECK(spanning_tree_count(fixture("tree")) == 1);
}

TEST_CASE("property: spanning trees satisfy deletion-contraction") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 150; ++trial) {
    MultiGraph g = test::random_graph(rng);
    for (const auto& e : g.edges()) {
      Integer t = spanning_tree_count(g);
      if (e.is_loop())
        CHECK(t == spanning_tree_count(delete_edge(g, e.id)));
      else if (is_bridge(g, e.id))
        CHECK(t == spanning_tree_count(contract_edge(g, e.id)));
      else
        CHECK(t == spanning_tree_count(delete_edge(g, e.id)) + spanning_tree_count(contract_edge(g, e.id)));
    }
  }
}

TEST_CASE("deletion and contraction keep edge ids") {
  MultiGraph g = fixture("theta3_sub");
  MultiGraph d = delete_edge(g, EdgeId{2});
  CHECK(d.edge_count() == 3);
  CHECK_FALSE(d.has_edge(EdgeId{2}));
  MultiGraph c = contract_edge(g, EdgeId{0});
  CHECK(c.vertex_count() == 2);
  CHECK(c.has_edge(EdgeId{1}));
  CHECK(c.has_edge(EdgeId{3}));
  CHECK_FALSE(c.has_edge(EdgeId{0}));
  CHECK_THROWS_AS(contract_edge(fixture("figure8"), EdgeId{0}), GraphError);
  CHECK_THROWS_AS(delete_edge(g, EdgeId{9}), GraphError);
}

TEST_CASE("bridges") {
  MultiGraph db = fixture("dumbbell");
  CHECK(is_bridge(db, EdgeId{1}));
  CHECK_FALSE(is_bridge(db, EdgeId{0}));
  MultiGraph r = remove_bridges(db);
  CHECK(r.vertex_count() == 1);
  CHECK(r.edge_count() == 2);
  CHECK(remove_bridges(fixture("tree")).edge_count() == 0);
  CHECK(betti1(remove_bridges(fixture("tree"))) == 0);
}

TEST_CASE("join components keeps the cycle space") {
  MultiGraph g(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
  MultiGraph j = join_components(g);
  REQUIRE(j.is_connected());
  CHECK(betti1(j) == 2);
  CHECK(j.edge_count() == 4);
}

TEST_CASE("blocks at disconnecting vertices") {
  CHECK(disconnecting_blocks(fixture("figure8")).size() == 2);
  CHECK(disconnecting_blocks(fixture("dumbbell")).size() == 3);
  CHECK(disconnecting_blocks(fixture("wedge_loop_theta3")).size() == 2);
  CHECK(disconnecting_blocks(theta_graph(3)).size() == 1);
  CHECK(disconnecting_blocks(complete_graph(4)).size() == 1);
  CHECK(has_disconnecting_vertex(fixture("figure8")));
  CHECK_FALSE(has_disconnecting_vertex(fixture("theta3_sub")));
  CHECK_FALSE(has_disconnecting_vertex(cycle_graph(1)));

  auto blocks = disconnecting_blocks(fixture("wedge_loop_theta3"));
  CHECK(blocks[0].edge_count() == 1);
  CHECK(blocks[1].edge_count() == 3);
  CHECK(betti1(blocks[1]) == 2);
}

TEST_CASE("property: blocks partition the edges and add up the cycle space") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    MultiGraph g = test::random_graph(rng);
    auto blocks = disconnecting_blocks(g);
    std::size_t edges = 0, b1 = 0;
    for (const auto& b : blocks) {
      REQUIRE(b.is_connected());
      edges += b.edge_count();
      b1 += betti1(b);
      if (blocks.size() > 1) CHECK_FALSE(has_disconnecting_vertex(b));
    }
    CHECK(edges == g.edge_count());
    CHECK(b1 == betti1(g));
  }
}

TEST_CASE("base graphs") {
  BaseGraph b = base_graph(fixture("theta3_sub"));
  CHECK(b.graph.vertex_count() == 2);
  CHECK(b.graph.edge_count() == 3);
  CHECK(b.absorbed.at(EdgeId{1}) == 1);
  CHECK(b.absorbed.at(EdgeId{2}) == 0);

  BaseGraph c5 = base_graph(cycle_graph(5));
  CHECK(c5.graph.edge_count() == 1);
  CHECK(c5.graph.edges()[0].is_loop());
  CHECK(c5.absorbed.begin()->second == 4);

  BaseGraph s12 = base_graph(fixture("theta3_sub12"));
  CHECK(s12.graph.edge_count() == 3);
  CHECK(s12.absorbed.at(EdgeId{1}) == 1);
  CHECK(s12.absorbed.at(EdgeId{4}) == 2);
  CHECK(s12.absorbed.at(EdgeId{5}) == 0);

  CHECK(base_graph(complete_graph(4)).graph == complete_graph(4));
  CHECK_THROWS_AS(base_graph(fixture("figure8")), GraphError);
}

TEST_CASE("reduction to theta graphs") {
  auto c4 = reduce_to_theta(cycle_graph(4));
  CHECK(c4.size() == 2);
  CHECK(reduce_to_theta(theta_graph(3)).empty());

  MultiGraph k4 = complete_graph(4);
  auto steps = reduce_to_theta(k4);
  for (EdgeId e : steps) {
    k4 = contract_edge(k4, e);
    CHECK_FALSE(has_disconnecting_vertex(k4));
  }
  CHECK(k4.vertex_count() == 2);
  CHECK(k4.edge_count() == 4);

  CHECK_THROWS_AS(reduce_to_theta(fixture("figure8")), GraphError);
}

TEST_CASE("graph json") {
  MultiGraph g = fixture("theta3_sub");
  CHECK(graph_from_json(to_json(g)) == g);
  CHECK_THROWS_AS(graph_from_json("not json"), GraphError);
  CHECK_THROWS_AS(graph_from_json(R"({"vertices": 2, "edges": [[0, 2]]})"), GraphError);
  CHECK_THROWS_AS(graph_from_json(R"({"vertices": 2})"), GraphError);
  CHECK_THROWS_AS(graph_from_json(R"({"vertices": 2, "edges": [[0]]})"), GraphError);
  CHECK_THROWS_AS(load_graph("/nonexistent/graph.json"), GraphError);
}

TEST_CASE("degrees count loops twice") {
  MultiGraph db = fixture("dumbbell");
  CHECK(db.degree(0) == 3);
  CHECK(fixture("figure8").degree(0) == 4);
}
