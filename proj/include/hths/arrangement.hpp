#pragma once

// Periodic hyperplane arrangements on the torus T^n = R^n / Z^n and the
// regular cell decompositions they induce.
//
// A family {x : <v, x> = shift (mod 1)} is one connected subtorus when v is
// primitive.  Cells are Z^n-orbits of the relatively open faces of the lifted
// arrangement in R^n.  Each cell records its direction subspace (the linear
// span of the face), the families it lies on, and a lift point: the fractional
// part of the barycenter of a lifted copy.
//
// Orientation convention: every cell is oriented by the reduced echelon basis
// of its direction subspace.  For a facet pair sigma <1 tau, with u pointing
// from the barycenter of sigma to the barycenter of tau inside one lift,
// [sigma : tau] is the sign of det(u, B_sigma) written in B_tau coordinates.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hths/exactq.hpp"
#include "hths/graph.hpp"

namespace hths {

class ArrangementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HyperplaneFamily {
  EdgeId edge{};
  std::vector<long> normal;
  /// In [0, 1).
  Rational shift;
};

struct ShiftVector {
  std::vector<Rational> shifts;
  friend bool operator==(const ShiftVector&, const ShiftVector&) = default;
};

struct Cell {
  std::size_t id = 0;
  std::size_t dim = 0;
  /// H_sigma: the tangent space of the cell, of dimension dim.
  QSubspace direction;
  /// Edge ids of the families whose subtori contain the cell, sorted.
  std::vector<EdgeId> hyperplane_set;
  /// A point of the relative interior of one lift, with coordinates in [0, 1).
  QVector lift;
};

/// One facet incidence sigma <1 tau.  A pair may occur more than once when a
/// lifted cell meets two translates of the same face (as on a circle with a
/// single marked point).
struct FaceIncidence {
  std::size_t face = 0;
  std::size_t coface = 0;
  int incidence = 0;
  /// From the face's barycenter to the coface's barycenter in a common lift.
  QVector inward;
};

class TorusComplex {
 public:
  TorusComplex() = default;
  TorusComplex(std::size_t n, std::vector<Cell> cells, std::vector<FaceIncidence> faces,
               std::vector<HyperplaneFamily> families);

  std::size_t dimension() const { return n_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(std::size_t id) const { return cells_.at(id); }
  const std::vector<FaceIncidence>& faces() const { return faces_; }
  const std::vector<HyperplaneFamily>& families() const { return families_; }

  std::vector<std::size_t> f_vector() const;
  std::vector<std::size_t> cells_of_dim(std::size_t k) const;
  /// Indices into faces() with the given coface / face.
  const std::vector<std::size_t>& facets_of(std::size_t cell) const { return facets_.at(cell); }
  const std::vector<std::size_t>& cofacets_of(std::size_t cell) const { return cofacets_.at(cell); }
  long euler_characteristic() const;
  /// True when `face` lies in the closure of `cell` (including equality).
  bool is_face_of(std::size_t face, std::size_t cell) const;
  /// All cells in the closure of `cell`, itself included.
  std::vector<std::size_t> closure(std::size_t cell) const;

  /// The cell whose relative interior contains the point (coordinates taken
  /// mod 1).  Requires the families to be set.
  std::size_t locate(const QVector& point) const;

 private:
  std::size_t n_ = 0;
  std::vector<Cell> cells_;
  std::vector<FaceIncidence> faces_;
  std::vector<HyperplaneFamily> families_;
  std::vector<std::vector<std::size_t>> facets_;
  std::vector<std::vector<std::size_t>> cofacets_;
  std::map<QVector, std::size_t> by_lift_;
};

/// One family per non-bridge edge, normal = pairing against the fundamental
/// cycles.  Shifts are left at zero.
std::vector<HyperplaneFamily> build_families(const MultiGraph& g);

/// Simple arrangement: wherever a set of family components meets, their
/// normals are linearly independent.
bool is_simple(const std::vector<HyperplaneFamily>& families, const ShiftVector& shifts);

/// Deterministic search over shifts p/q for increasing primes q; draws are
/// seeded from `seed`.  Throws after `max_candidates` rejected vectors.
ShiftVector choose_shifts(const std::vector<HyperplaneFamily>& families, std::uint64_t seed,
                          std::size_t max_candidates = 20000);

std::vector<HyperplaneFamily> with_shifts(std::vector<HyperplaneFamily> families, const ShiftVector& shifts);

/// Cell decomposition of T^n cut out by the families.  Rejects non-simple
/// arrangements, normals that fail to span when n > 0, and n > max_dim.
TorusComplex build_complex(const std::vector<HyperplaneFamily>& families, const ShiftVector& shifts, std::size_t n,
                           std::size_t max_dim = 3);

/// Families, shifts and complex for a connected graph.
TorusComplex complex_for_graph(const MultiGraph& g, std::uint64_t seed = 0, std::size_t max_dim = 3);

struct RestrictedComplex {
  TorusComplex complex;
  /// Restricted cell id -> ambient cell id.
  std::vector<std::size_t> embedding;
};

/// The closed subcomplex on one family's subtorus, rewritten as a complex on
/// T^(n-1) in an integral basis of the subtorus.
RestrictedComplex restrict_to_family(const TorusComplex& c, EdgeId family);

/// Fine cell -> coarse cell whose relative interior contains it.  `fine` must
/// carry the coarse families (same normals and shifts) plus at most one more.
std::vector<std::size_t> subdivision_map(const TorusComplex& fine, const TorusComplex& coarse);

/// Every fine cell that does not lie in a coarse cell of its own dimension
/// must sit in a coarse cell exactly one dimension up, and so must every cell
/// of its boundary.  Only cell dimensions and facet relations are consulted.
bool is_generic_subdivision(const TorusComplex& fine, const TorusComplex& coarse, const std::vector<std::size_t>& map);

/// Cell, face and family data as JSON.
std::string complex_to_json(const TorusComplex& c);

/// Columns of an integral unimodular matrix: columns 1..n-1 span the
/// lattice ker(v) cap Z^n and column 0 pairs to 1 with v.  v must be primitive.
std::vector<std::vector<long>> unimodular_completion(const std::vector<long>& v);

}  // namespace hths
