#include "hths/sheaf.hpp"

#include <set>

#include <json.hpp>

namespace hths {

QMatrix inclusion_matrix(const QSubspace& inner, const QSubspace& outer) {
  std::vector<QVector> cols;
  for (const auto& b : inner.basis()) cols.push_back(outer.coordinates(b));
  return QMatrix::from_columns(cols, outer.dim());
}

QMatrix CellularSheaf::restriction_between(std::size_t from, std::size_t to) const {
  if (from == to) return QMatrix::identity(stalk_dim(from));
  for (std::size_t f : complex->cofacets_of(from)) {
    std::size_t up = complex->faces()[f].coface;
    if (up == to) return restrictions[f];
    if (complex->is_face_of(up, to)) return restriction_between(up, to) * restrictions[f];
  }
  throw SheafError("restriction_between: cell " + std::to_string(from) + " is not a face of cell " +
                   std::to_string(to));
}

CellularSheaf build_Rif(const TorusComplex& c, std::size_t i) {
  if (i > c.dimension()) throw SheafError("build_Rif: degree exceeds the torus dimension");
  CellularSheaf s;
  s.complex = &c;
  for (const auto& cell : c.cells()) s.stalk_dims.push_back(binomial(cell.dim, i).get_ui());
  for (const auto& f : c.faces()) {
    const Cell& sigma = c.cell(f.face);
    const Cell& tau = c.cell(f.coface);
    if (s.stalk_dims[sigma.id] == 0) {
      s.restrictions.emplace_back(s.stalk_dims[tau.id], 0);
      continue;
    }
    // Wedge basis of each stalk comes from the echelon basis of H; Cauchy-Binet
    // makes the compound matrix the induced map on exterior powers.
    s.restrictions.push_back(compound(inclusion_matrix(sigma.direction, tau.direction), i));
  }
  return s;
}

CochainComplex cochain_complex(const CellularSheaf& s) {
  const TorusComplex& c = *s.complex;
  std::size_t n = c.dimension();
  CochainComplex cc;
  cc.dims.assign(n + 1, 0);
  cc.offset.assign(c.cells().size(), 0);
  for (const auto& cell : c.cells()) {
    cc.offset[cell.id] = cc.dims[cell.dim];
    cc.dims[cell.dim] += s.stalk_dims[cell.id];
  }
  for (std::size_t k = 0; k < n; ++k) cc.coboundary.emplace_back(cc.dims[k + 1], cc.dims[k]);
  for (std::size_t f = 0; f < c.faces().size(); ++f) {
    const auto& inc = c.faces()[f];
    std::size_t k = c.cell(inc.face).dim;
    cc.coboundary[k].add_block(cc.offset[inc.coface], cc.offset[inc.face], s.restrictions[f], inc.incidence);
  }
  for (std::size_t k = 0; k + 1 < n; ++k)
    if (!(cc.coboundary[k + 1] * cc.coboundary[k]).is_zero())
      throw SheafError("coboundary does not square to zero in degree " + std::to_string(k));
  return cc;
}

std::vector<std::size_t> cohomology(const CochainComplex& cc) {
  std::size_t n = cc.dims.size() - 1;
  std::vector<std::size_t> ranks(n, 0);
  for (std::size_t k = 0; k < n; ++k) ranks[k] = rank(cc.coboundary[k]);
  std::vector<std::size_t> h(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    std::size_t out = k < n ? ranks[k] : 0;
    std::size_t in = k > 0 ? ranks[k - 1] : 0;
    h[k] = cc.dims[k] - out - in;
  }
  return h;
}

std::vector<std::size_t> cohomology(const CellularSheaf& s) { return cohomology(cochain_complex(s)); }

BettiTable betti_table(const TorusComplex& c) {
  BettiTable t;
  t.n = c.dimension();
  for (std::size_t i = 0; i <= t.n; ++i) t.table.push_back(cohomology(build_Rif(c, i)));
  return t;
}

std::vector<std::uint64_t> total_poincare(const BettiTable& t) {
  std::vector<std::uint64_t> p(2 * t.n + 1, 0);
  for (std::size_t i = 0; i <= t.n; ++i)
    for (std::size_t k = 0; k <= t.n; ++k) p[i + k] += t.table[i][k];
  return p;
}

CellularSheaf refine_sheaf(const CellularSheaf& coarse, const TorusComplex& fine, const std::vector<std::size_t>& map) {
  if (map.size() != fine.cells().size()) throw SheafError("refine_sheaf: map has the wrong length");
  CellularSheaf s;
  s.complex = &fine;
  for (std::size_t a = 0; a < map.size(); ++a) s.stalk_dims.push_back(coarse.stalk_dim(map[a]));
  for (const auto& f : fine.faces()) s.restrictions.push_back(coarse.restriction_between(map[f.face], map[f.coface]));
  return s;
}

BettiTable compute_betti_table(const MultiGraph& g, std::uint64_t seed, std::size_t max_dim) {
  return betti_table(complex_for_graph(g, seed, max_dim));
}

std::string betti_to_json(const BettiTable& t) {
  nlohmann::json out;
  out["n"] = t.n;
  out["table"] = t.table;
  out["poincare"] = total_poincare(t);
  return out.dump();
}

}  // namespace hths
