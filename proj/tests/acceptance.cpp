// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if any
// fails.  Every comparison is exact.

#include <algorithm>
#include <chrono>
#include <exception>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hths/delcon.hpp"
#include "hths/formulas.hpp"
#include "support.hpp"

using namespace hths;
using hths::test::fixture;
using hths::test::fixture_names;

namespace {

// Collects the first failure message of a criterion.
struct Probe {
  std::ostringstream why;
  bool ok = true;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why << what;
    }
  }
};

bool eligible(const MultiGraph& g, const Edge& e) { return !e.is_loop() && !is_bridge(g, e.id); }

PoincarePolynomial poly(std::vector<std::uint64_t> c) { return PoincarePolynomial(std::move(c)); }

void criterion1(Probe& p) {
  TorusComplex c = complex_for_graph(fixture("theta3"));
  CochainComplex cc = cochain_complex(build_Rif(c, 1));
  const QMatrix& d1 = cc.coboundary.at(1);
  p.require(d1.rows() == 6 && d1.cols() == 6, "delta^1 is not 6x6");
  p.require(rank(d1) == 4, "delta^1 rank is not 4");
  p.require(cohomology(cc) == std::vector<std::size_t>{0, 2, 2}, "H^k(R^1) is not (0,2,2)");
  QMatrix reference{{1, 0, 0, 0, -1, 0},  {0, 0, 1, 0, 1, 0},  {-1, 1, 0, 0, 1, -1},
                  {0, 0, -1, 1, -1, 1}, {0, -1, 0, 0, 0, 1}, {0, 0, 0, -1, 0, -1}};
  p.require(rank(reference) == 4, "reference matrix rank is not 4");
}

void criterion2(Probe& p) {
  MultiGraph g = fixture("theta3");
  PoincarePolynomial got = computed_poincare(g);
  p.require(got == poly({1, 2, 3, 2, 3}), "computed " + got.to_string());
  p.require(g.edge_count() == 3 && spanning_tree_count(g) == 3, "|E| or t(G) is not 3");
  // Non-disconnecting branch with |E| = 3, t = 3.
  p.require(poincare_b2(g) == poly({1, 2, 3, 2, 3}), "closed form disagrees");
}

void criterion3(Probe& p) {
  for (std::uint64_t m = 1; m <= 5; ++m) {
    PoincarePolynomial got = computed_poincare(m == 1 ? fixture("loop") : fixture("c" + std::to_string(m)));
    p.require(got == poly({1, 1, m}), "C_" + std::to_string(m) + " gives " + got.to_string());
  }
}

void criterion4(Probe& p) {
  MultiGraph f8 = fixture("figure8");
  p.require(computed_poincare(f8) == poly({1, 2, 3, 2, 1}), "figure-eight gives " + computed_poincare(f8).to_string());
  p.require(has_disconnecting_vertex(f8) && poincare_b2(f8) == poly({1, 2, 3, 2, 1}), "figure-eight closed form");

  MultiGraph sub = fixture("theta3_sub");
  Integer t = spanning_tree_count(sub);
  p.require(t == 5, "matrix-tree count of subdivided theta is not 5");
  std::uint64_t e = sub.edge_count();
  PoincarePolynomial branch2 = poly({1, 2, e, e - 1, t.get_ui()});
  p.require(computed_poincare(sub) == branch2, "subdivided theta gives " + computed_poincare(sub).to_string());
  p.require(branch2 == poly({1, 2, 4, 3, 5}), "branch formula evaluates to " + branch2.to_string());
}

void criterion5(Probe& p) {
  std::size_t seen = 0;
  for (const auto& name : fixture_names()) {
    MultiGraph g = fixture(name);
    if (!has_disconnecting_vertex(g)) continue;
    ++seen;
    p.require(computed_poincare(g) == block_product_poincare(g), name + ": product over blocks differs");
  }
  p.require(seen >= 3, "fewer than three disconnecting-vertex fixtures");
}

void criterion6(Probe& p) {
  for (const auto& name : fixture_names()) {
    auto start = std::chrono::steady_clock::now();
    TreeLemmaReport r = tree_lemma_report(fixture(name));
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    p.require(r.top_betti == r.top_cells && Integer(r.top_cells) == r.spanning_trees, name + ": counts differ");
    if (name == "theta4") p.require(r.top_betti == 4, "theta4 top Betti number is not 4");
    if (name == "k4") {
      p.require(r.top_betti == 16, "K4 top Betti number is not 16");
      p.require(secs < 60.0, "K4 took " + std::to_string(secs) + " s");
    }
  }
}

void criterion7(Probe& p) {
  for (const auto& name : fixture_names()) {
    MultiGraph g = fixture(name);
    for (const Edge& e : g.edges()) {
      if (!eligible(g, e)) continue;
      std::string where = name + " edge " + std::to_string(to_index(e.id));
      try {
        BalloonSetup setup = balloon_setup(g, e.id);
        p.require(is_generic_subdivision(setup.fine, setup.coarse, setup.map), where + ": subdivision not generic");
        for (std::size_t i = 0; i <= setup.fine.dimension(); ++i) {
          ShortExactSeq ses = build_ses(setup, i);
          p.require(is_rank_exact(snake_les(ses)), where + ": long exact sequence");
          auto hc = cohomology(ses.C);
          std::vector<std::size_t> cap(hc.size(), 0);
          if (i > 0) {
            auto h = cohomology(ses.cap_sheaf);
            std::copy(h.begin(), h.end(), cap.begin());
          }
          p.require(hc == cap, where + ": quotient and cap cohomology differ");
        }
      } catch (const std::exception& ex) {
        p.require(false, where + ": " + ex.what());
      }
    }
  }
}

void criterion8(Probe& p) {
  for (const char* name : {"theta3_sub", "theta3_sub2"}) {
    MultiGraph g = fixture(name);
    std::size_t checked = 0;
    for (const Edge& e : g.edges()) {
      if (e.is_loop() || (g.degree(e.tail) != 2 && g.degree(e.head) != 2)) continue;
      ++checked;
      p.require(verify_smalldelcon(g, e.id), std::string(name) + " edge " + std::to_string(to_index(e.id)));
    }
    p.require(checked >= 2, std::string(name) + ": no degree-2 edges");
  }
}

void criterion9(Probe& p) {
  for (const auto& name : fixture_names()) {
    MultiGraph g = fixture(name);
    TorusComplex c = complex_for_graph(g);
    std::size_t n = c.dimension();
    p.require(c.euler_characteristic() == (n == 0 ? 1 : 0), name + ": Euler characteristic");
    for (std::size_t i = 0; i <= n; ++i) {
      CochainComplex cc = cochain_complex(build_Rif(c, i));
      for (std::size_t k = 0; k + 1 < cc.coboundary.size(); ++k)
        p.require((cc.coboundary[k + 1] * cc.coboundary[k]).is_zero(), name + ": coboundary squares to nonzero");
    }
    BettiTable t = betti_table(c);
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t k = 0; k < i; ++k) p.require(t.at(i, k) == 0, name + ": nonzero below the diagonal");
    p.require(t.at(0, 0) == 1, name + ": h^0 is not 1");
    if (n >= 1) p.require(t.at(0, 1) == betti1(g), name + ": h^1 is not b1");
    for (std::uint64_t seed : {1u, 2u, 3u})
      p.require(compute_betti_table(g, seed) == t, name + ": table depends on seed " + std::to_string(seed));

    for (const Edge& e : g.edges()) {
      if (is_bridge(g, e.id)) continue;
      std::string where = name + " edge " + std::to_string(to_index(e.id));
      RestrictedComplex r = restrict_to_family(c, e.id);
      p.require(r.complex.f_vector() == complex_for_graph(remove_bridges(delete_edge(g, e.id))).f_vector(),
                where + ": restriction f-vector");
      if (e.is_loop()) continue;
      BalloonSetup setup = balloon_setup(g, e.id);
      for (std::size_t i = 0; i <= n; ++i) {
        CellularSheaf coarse = build_Rif(setup.coarse, i);
        p.require(cohomology(refine_sheaf(coarse, setup.fine, setup.map)) == cohomology(coarse),
                  where + ": refinement changes cohomology");
      }
    }
  }
}

void criterion10(Probe& p) {
  std::size_t seen = 0;
  for (const auto& name : fixture_names()) {
    MultiGraph g = fixture(name);
    if (has_disconnecting_vertex(g) || betti1(g) < 2) continue;
    ++seen;
    BettiTable t = compute_betti_table(g);
    for (std::size_t i = 0; i <= t.n; ++i)
      p.require(intermsofbase_table(g, i) == t.table[i], name + ": degree " + std::to_string(i));
  }
  p.require(seen >= 5, "too few eligible fixtures");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Probe&)>>> criteria = {
      {"theta R^1 coboundary 6x6 of rank 4, H = (0,2,2); reference matrix rank 4", criterion1},
      {"theta total polynomial 1+2y+3y^2+2y^3+3y^4 matches the closed form", criterion2},
      {"cycles C_1..C_5 give 1+y+my^2", criterion3},
      {"figure-eight and subdivided theta closed forms", criterion4},
      {"product over blocks at disconnecting vertices", criterion5},
      {"top Betti number = top cells = spanning trees; K4 under 60 s", criterion6},
      {"short and long exact sequences for every eligible edge", criterion7},
      {"degree-2 split on singly and doubly subdivided theta", criterion8},
      {"property suite", criterion9},
      {"base-graph recursion agrees with direct computation", criterion10},
  };
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Probe p;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[k].second(p);
    } catch (const std::exception& ex) {
      p.require(false, std::string("exception: ") + ex.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && p.ok;
    std::cout << (p.ok ? "PASS" : "FAIL") << " " << (k + 1) << ": " << criteria[k].first;
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs;
    std::cout << " (" << t.str() << " s)";
    if (!p.ok) std::cout << " -- " << p.why.str();
    std::cout << "\n";
  }
  return all ? 0 : 1;
}
