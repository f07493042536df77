#pragma once

// Cellular sheaves of finite-dimensional Q-vector spaces on a TorusComplex,
// their cochain complexes and cohomology, and the sheaves R^i that carry the
// cohomology of the Hitchin fibration: on a cell sigma the stalk of R^i is
// the i-th exterior power of the direction space H_sigma.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hths/arrangement.hpp"
#include "hths/exactq.hpp"
#include "hths/graph.hpp"

namespace hths {

class SheafError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sheaf on a face poset.  restrictions[f] is the map from the stalk of
/// faces()[f].face to the stalk of faces()[f].coface (columns index the face
/// stalk).  The complex must outlive the sheaf.
struct CellularSheaf {
  const TorusComplex* complex = nullptr;
  std::vector<std::size_t> stalk_dims;
  std::vector<QMatrix> restrictions;

  std::size_t stalk_dim(std::size_t cell) const { return stalk_dims.at(cell); }
  /// Composite restriction from `from` to a cell `to` containing it in its
  /// closure; the identity when they agree.
  QMatrix restriction_between(std::size_t from, std::size_t to) const;
};

struct CochainComplex {
  /// dims[k] = dim C^k for k = 0..n.
  std::vector<std::size_t> dims;
  /// coboundary[k] : C^k -> C^(k+1), for k = 0..n-1.
  std::vector<QMatrix> coboundary;
  /// Offset of each cell's stalk inside C^(dim cell).
  std::vector<std::size_t> offset;
};

struct BettiTable {
  std::size_t n = 0;
  /// table[i][k] = dim H^k(T^n, R^i).
  std::vector<std::vector<std::size_t>> table;

  std::size_t at(std::size_t i, std::size_t k) const { return table.at(i).at(k); }
  friend bool operator==(const BettiTable&, const BettiTable&) = default;
};

/// R^i on the complex.  Requires 0 <= i <= n.
CellularSheaf build_Rif(const TorusComplex& c, std::size_t i);

/// Coboundaries in cell-id order, with delta^(k+1) delta^k = 0 verified.
CochainComplex cochain_complex(const CellularSheaf& s);

/// dim H^k for k = 0..n.
std::vector<std::size_t> cohomology(const CochainComplex& cc);
std::vector<std::size_t> cohomology(const CellularSheaf& s);

BettiTable betti_table(const TorusComplex& c);
/// Coefficient of y^d is the sum of table[i][k] over i + k = d.
std::vector<std::uint64_t> total_poincare(const BettiTable& t);

/// Pullback along a subdivision map: the stalk at a fine cell alpha is the
/// coarse stalk at map[alpha].
CellularSheaf refine_sheaf(const CellularSheaf& coarse, const TorusComplex& fine, const std::vector<std::size_t>& map);

/// Betti table of the arrangement attached to a connected graph.
BettiTable compute_betti_table(const MultiGraph& g, std::uint64_t seed = 0, std::size_t max_dim = 3);

/// {"n": n, "table": [[...]], "poincare": [...]}.
std::string betti_to_json(const BettiTable& t);

/// Coordinates of the basis of `inner` in the basis of `outer` (outer.dim x
/// inner.dim).  Requires inner to be contained in outer.
QMatrix inclusion_matrix(const QSubspace& inner, const QSubspace& outer);

}  // namespace hths
