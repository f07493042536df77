#pragma once

#include <random>
#include <string>
#include <vector>

#include "hths/graph.hpp"

namespace hths::test {

inline MultiGraph fixture(const std::string& name) {
  return load_graph(std::string(HTHS_FIXTURE_DIR) + "/" + name + ".json");
}

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {
      "loop", "c2", "c3", "c4", "c5", "figure8", "dumbbell", "theta3", "theta4", "theta3_sub",
      "theta3_sub2", "theta3_sub11", "theta3_sub12", "wedge_loop_theta3", "k4", "tree"};
  return names;
}

/// Random connected multigraph with loops allowed, first Betti number <= 3.
inline MultiGraph random_graph(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> vcount(1, 5);
  std::size_t v = vcount(rng);
  MultiGraph g(v);
  for (std::size_t i = 1; i < v; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    g.add_edge(pick(rng), i);
  }
  std::uniform_int_distribution<std::size_t> extra(0, 3), any(0, v - 1);
  for (std::size_t k = extra(rng); k > 0; --k) g.add_edge(any(rng), any(rng));
  return g;
}

}  // namespace hths::test
