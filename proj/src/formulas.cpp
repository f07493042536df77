#include "hths/formulas.hpp"

#include <algorithm>

namespace hths {

namespace {

std::uint64_t to_u64(const Integer& z) {
  if (!z.fits_ulong_p()) throw FormulaError("coefficient out of range");
  return z.get_ui();
}

MultiGraph bridgeless(const MultiGraph& g) {
  if (!g.is_connected()) throw FormulaError("graph is not connected");
  return remove_bridges(g);
}

}  // namespace

PoincarePolynomial::PoincarePolynomial(std::vector<std::uint64_t> c) : coefficients(std::move(c)) {
  while (!coefficients.empty() && coefficients.back() == 0) coefficients.pop_back();
}

std::string PoincarePolynomial::to_string() const {
  if (coefficients.empty()) return "0";
  std::string out;
  for (std::size_t d = 0; d < coefficients.size(); ++d) {
    std::uint64_t c = coefficients[d];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (d == 0 || c != 1) out += std::to_string(c);
    if (d >= 1) out += "y";
    if (d >= 2) out += "^" + std::to_string(d);
  }
  return out;
}

PoincarePolynomial operator*(const PoincarePolynomial& a, const PoincarePolynomial& b) {
  if (a.coefficients.empty() || b.coefficients.empty()) return {};
  std::vector<std::uint64_t> c(a.coefficients.size() + b.coefficients.size() - 1, 0);
  for (std::size_t i = 0; i < a.coefficients.size(); ++i)
    for (std::size_t j = 0; j < b.coefficients.size(); ++j) c[i + j] += a.coefficients[i] * b.coefficients[j];
  return PoincarePolynomial(std::move(c));
}

PoincarePolynomial poincare_b1(const MultiGraph& g) {
  MultiGraph h = bridgeless(g);
  if (betti1(h) != 1) throw FormulaError("poincare_b1: first Betti number is not 1");
  return PoincarePolynomial({1, 1, h.edge_count()});
}

PoincarePolynomial poincare_b2(const MultiGraph& g) {
  MultiGraph h = bridgeless(g);
  if (betti1(h) != 2) throw FormulaError("poincare_b2: first Betti number is not 2");
  std::uint64_t e = h.edge_count();
  std::uint64_t t = to_u64(spanning_tree_count(h));
  if (has_disconnecting_vertex(h)) return PoincarePolynomial({1, 2, e + 1, e, t});
  return PoincarePolynomial({1, 2, e, e - 1, t});
}

PoincarePolynomial poincare_product(const std::vector<PoincarePolynomial>& blocks) {
  PoincarePolynomial p({1});
  for (const auto& b : blocks) p = p * b;
  return p;
}

std::optional<PoincarePolynomial> closed_form_poincare(const MultiGraph& g) {
  MultiGraph h = bridgeless(g);
  switch (betti1(h)) {
    case 0:
      return PoincarePolynomial({1});
    case 1:
      return poincare_b1(h);
    case 2:
      return poincare_b2(h);
    default:
      break;
  }
  auto blocks = disconnecting_blocks(h);
  if (blocks.size() == 1) return std::nullopt;
  std::vector<PoincarePolynomial> parts;
  for (const auto& b : blocks) {
    auto p = closed_form_poincare(b);
    if (!p) return std::nullopt;
    parts.push_back(*p);
  }
  return poincare_product(parts);
}

PoincarePolynomial to_polynomial(const BettiTable& t) { return PoincarePolynomial(total_poincare(t)); }

PoincarePolynomial computed_poincare(const MultiGraph& g, std::uint64_t seed, std::size_t max_dim) {
  return to_polynomial(compute_betti_table(g, seed, max_dim));
}

PoincarePolynomial block_product_poincare(const MultiGraph& g, std::uint64_t seed) {
  std::vector<PoincarePolynomial> parts;
  for (const auto& b : disconnecting_blocks(bridgeless(g))) parts.push_back(computed_poincare(b, seed));
  return poincare_product(parts);
}

std::vector<std::size_t> intermsofbase_table(const MultiGraph& g, std::size_t i, std::uint64_t seed) {
  if (!g.is_connected()) throw FormulaError("intermsofbase_table: graph is not connected");
  if (has_disconnecting_vertex(g)) throw FormulaError("intermsofbase_table: graph has a disconnecting vertex");
  std::size_t n = betti1(g);
  if (n < 2) throw FormulaError("intermsofbase_table: first Betti number is below 2");
  if (i > n) throw FormulaError("intermsofbase_table: degree exceeds the torus dimension");

  BaseGraph base = base_graph(g);
  std::vector<std::pair<EdgeId, std::size_t>> chains;
  for (const auto& [e, count] : base.absorbed)
    if (count > 0) chains.emplace_back(e, count);

  std::vector<std::size_t> out(n + 1, 0);
  for (std::size_t p = 0; p <= chains.size(); ++p) {
    if (p > i) break;
    for (const auto& A : subsets(chains.size(), p)) {
      MultiGraph minor = base.graph;
      std::size_t weight = 1;
      for (std::size_t a : A) {
        minor = delete_edge(minor, chains[a].first);
        weight *= chains[a].second;
      }
      BettiTable t = compute_betti_table(remove_bridges(join_components(minor)), seed);
      for (std::size_t k = p; k <= n; ++k) {
        std::size_t ii = i - p, kk = k - p;
        if (ii <= t.n && kk <= t.n) out[k] += weight * t.table[ii][kk];
      }
    }
  }
  return out;
}

TreeLemmaReport tree_lemma_report(const MultiGraph& g, std::uint64_t seed) {
  if (!g.is_connected()) throw FormulaError("tree lemma: graph is not connected");
  TorusComplex c = complex_for_graph(g, seed);
  std::size_t n = c.dimension();
  TreeLemmaReport r;
  r.top_betti = cohomology(build_Rif(c, n)).at(n);
  r.top_cells = c.f_vector().at(n);
  r.spanning_trees = spanning_tree_count(g);
  r.holds = r.top_betti == r.top_cells && Integer(static_cast<unsigned long>(r.top_cells)) == r.spanning_trees;
  return r;
}

bool verify_tree_lemma(const MultiGraph& g, std::uint64_t seed) { return tree_lemma_report(g, seed).holds; }

}  // namespace hths
