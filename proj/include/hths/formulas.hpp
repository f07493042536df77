#pragma once

// Closed forms for the total Poincare polynomial when b1 <= 2, the product
// rule over blocks at disconnecting vertices, the recursion over degree-2
// vertices, and the spanning-tree count of the top cohomology.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hths/graph.hpp"
#include "hths/sheaf.hpp"

namespace hths {

class FormulaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PoincarePolynomial {
  /// Index = degree in y; no trailing zeros.
  std::vector<std::uint64_t> coefficients;

  PoincarePolynomial() = default;
  explicit PoincarePolynomial(std::vector<std::uint64_t> c);

  std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
  std::uint64_t operator[](std::size_t d) const { return d < coefficients.size() ? coefficients[d] : 0; }
  /// "1+2y+3y^2".
  std::string to_string() const;

  friend bool operator==(const PoincarePolynomial&, const PoincarePolynomial&) = default;
  friend PoincarePolynomial operator*(const PoincarePolynomial& a, const PoincarePolynomial& b);
};

/// Bridges are contracted first; the remaining graph must have b1 = 1.
/// 1 + y + |E| y^2.
PoincarePolynomial poincare_b1(const MultiGraph& g);

/// Bridges are contracted first; the remaining graph must have b1 = 2.
/// With a disconnecting vertex: 1 + 2y + (|E|+1)y^2 + |E|y^3 + t y^4,
/// otherwise 1 + 2y + |E|y^2 + (|E|-1)y^3 + t y^4, t = number of spanning trees.
PoincarePolynomial poincare_b2(const MultiGraph& g);

PoincarePolynomial poincare_product(const std::vector<PoincarePolynomial>& blocks);

/// Closed form when one is known: b1 <= 2, or a product of such blocks.
std::optional<PoincarePolynomial> closed_form_poincare(const MultiGraph& g);

/// Total Poincare polynomial from the sheaf computation.
PoincarePolynomial computed_poincare(const MultiGraph& g, std::uint64_t seed = 0, std::size_t max_dim = 3);
PoincarePolynomial to_polynomial(const BettiTable& t);

/// Product of the computed polynomials of the blocks at disconnecting vertices.
PoincarePolynomial block_product_poincare(const MultiGraph& g, std::uint64_t seed = 0);

/// dim H^k(R^i) for k = 0..n rebuilt from the base graph: every set A of
/// base edges that absorbed degree-2 vertices contributes the table of the
/// base graph minus A, shifted by |A| in both indices, times the product of
/// the absorbed counts.  Requires a connected graph without disconnecting
/// vertices and with b1 >= 2.
std::vector<std::size_t> intermsofbase_table(const MultiGraph& g, std::size_t i, std::uint64_t seed = 0);

struct TreeLemmaReport {
  bool holds = false;
  std::size_t top_betti = 0;  // h^n(R^n)
  std::size_t top_cells = 0;  // number of n-cells
  Integer spanning_trees;
};

TreeLemmaReport tree_lemma_report(const MultiGraph& g, std::uint64_t seed = 0);
bool verify_tree_lemma(const MultiGraph& g, std::uint64_t seed = 0);

}  // namespace hths
