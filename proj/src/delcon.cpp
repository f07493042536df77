#include "hths/delcon.hpp"

#include <algorithm>
#include <map>

namespace hths {

namespace {

QMatrix hconcat(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw LinearAlgebraError("hconcat: row counts differ");
  QMatrix m(a.rows(), a.cols() + b.cols());
  m.add_block(0, 0, a);
  m.add_block(0, a.cols(), b);
  return m;
}

QMatrix rows_of(const QMatrix& m, std::size_t from, std::size_t to) {
  std::vector<std::size_t> r, c;
  for (std::size_t i = from; i < to; ++i) r.push_back(i);
  for (std::size_t j = 0; j < m.cols(); ++j) c.push_back(j);
  return m.submatrix(r, c);
}

// Quotient of Q^b by the image of an injective phi, presented through the
// standard vectors that complete phi's columns to a basis: q kills the image,
// s = those standard vectors, q s = 1.
struct Cokernel {
  QMatrix q;
  QMatrix s;
};

Cokernel cokernel(const QMatrix& phi) {
  std::size_t b = phi.rows(), a = phi.cols();
  if (rank(phi) != a) throw DelconError("first map is not injective");
  if (b == a) return {QMatrix(0, b), QMatrix(b, 0)};
  Echelon ech = reduced_row_echelon(hconcat(phi, QMatrix::identity(b)));
  std::vector<QVector> extra;
  for (std::size_t p : ech.pivots) {
    if (p < a) continue;
    QVector e(b);
    e[p - a] = 1;
    extra.push_back(std::move(e));
  }
  QMatrix s = QMatrix::from_columns(extra, b);
  QMatrix inv = solve(hconcat(phi, s), QMatrix::identity(b));
  return {rows_of(inv, a, b), s};
}

QMatrix block_diagonal(const TorusComplex& c, std::size_t k, const std::vector<QMatrix>& parts,
                       const CochainComplex& rows_cc, const CochainComplex& cols_cc) {
  QMatrix m(rows_cc.dims[k], cols_cc.dims[k]);
  for (std::size_t id : c.cells_of_dim(k)) m.add_block(rows_cc.offset[id], cols_cc.offset[id], parts[id]);
  return m;
}

std::string cell_text(std::size_t id) { return "cell " + std::to_string(id); }

// Columns spanning the k-cocycles and k-coboundaries of a complex.
QMatrix cocycles(const CochainComplex& cc, std::size_t k) {
  if (k + 1 < cc.dims.size()) return kernel_basis(cc.coboundary[k]).basis_matrix();
  return QMatrix::identity(cc.dims[k]);
}

QMatrix coboundaries(const CochainComplex& cc, std::size_t k) {
  if (k == 0) return QMatrix(cc.dims[0], 0);
  return image_space(cc.coboundary[k - 1]).basis_matrix();
}

std::size_t rank_mod(const QMatrix& vectors, const QMatrix& modulo) {
  return rank(hconcat(vectors, modulo)) - modulo.cols();
}

std::size_t table_at(const BettiTable& t, long i, long k) {
  if (i < 0 || k < 0 || static_cast<std::size_t>(i) > t.n || static_cast<std::size_t>(k) > t.n) return 0;
  return t.table[i][k];
}

}  // namespace

BalloonSetup balloon_setup(const MultiGraph& g, EdgeId e, std::uint64_t seed, std::size_t max_dim) {
  if (!g.is_connected()) throw DelconError("balloon_setup: graph is not connected");
  if (g.edge(e).is_loop()) throw DelconError("balloon_setup: edge is a loop");
  if (is_bridge(g, e)) throw DelconError("balloon_setup: edge is a bridge");
  std::size_t n = betti1(g);
  auto families = build_families(g);
  auto shifts = choose_shifts(families, seed);

  BalloonSetup s;
  s.graph = g;
  s.edge = e;
  s.fine = build_complex(families, shifts, n, max_dim);
  std::vector<HyperplaneFamily> rest;
  ShiftVector rest_shifts;
  for (std::size_t i = 0; i < families.size(); ++i) {
    if (families[i].edge == e) continue;
    rest.push_back(families[i]);
    rest_shifts.shifts.push_back(shifts.shifts[i]);
  }
  s.coarse = build_complex(rest, rest_shifts, n, max_dim);
  s.cap = restrict_to_family(s.fine, e);
  s.map = subdivision_map(s.fine, s.coarse);
  if (!is_generic_subdivision(s.fine, s.coarse, s.map))
    throw DelconError("balloon_setup: subdivision is not generic");
  return s;
}

ShortExactSeq build_ses(const BalloonSetup& setup, std::size_t i) {
  const TorusComplex& fine = setup.fine;
  const TorusComplex& coarse = setup.coarse;
  std::size_t n = fine.dimension();
  if (i > n) throw DelconError("build_ses: degree exceeds the torus dimension");

  ShortExactSeq ses;
  ses.degree = i;
  ses.A = build_Rif(fine, i);
  ses.B = refine_sheaf(build_Rif(coarse, i), fine, setup.map);

  std::vector<Cokernel> quot;
  for (const auto& cell : fine.cells()) {
    const Cell& image = coarse.cell(setup.map[cell.id]);
    std::size_t a = ses.A.stalk_dim(cell.id), b = ses.B.stalk_dim(cell.id);
    QMatrix phi = a == 0 ? QMatrix(b, 0) : compound(inclusion_matrix(cell.direction, image.direction), i);
    try {
      quot.push_back(cokernel(phi));
    } catch (const DelconError& err) {
      throw DelconError(std::string(err.what()) + " at " + cell_text(cell.id));
    }
    ses.first.components.push_back(std::move(phi));
    ses.second.components.push_back(quot.back().q);
    ses.section.components.push_back(quot.back().s);
  }

  ses.C.complex = &fine;
  for (const auto& q : quot) ses.C.stalk_dims.push_back(q.q.rows());
  for (std::size_t f = 0; f < fine.faces().size(); ++f) {
    const auto& inc = fine.faces()[f];
    const QMatrix& rho_a = ses.A.restrictions[f];
    const QMatrix& rho_b = ses.B.restrictions[f];
    const auto& phi = ses.first.components;
    if (!(rho_b * phi[inc.face] == phi[inc.coface] * rho_a))
      throw DelconError("first map is not natural at " + cell_text(inc.face) + " < " + cell_text(inc.coface));
    const QMatrix& q_tau = quot[inc.coface].q;
    if (!(q_tau * rho_b * phi[inc.face]).is_zero())
      throw DelconError("quotient restriction is not well defined at " + cell_text(inc.face));
    QMatrix rho_c = q_tau * rho_b * quot[inc.face].s;
    if (!(rho_c * quot[inc.face].q == q_tau * rho_b))
      throw DelconError("second map is not natural at " + cell_text(inc.face) + " < " + cell_text(inc.coface));
    ses.C.restrictions.push_back(std::move(rho_c));
  }

  // C must be the cap sheaf R^(i-1), extended by zero.
  std::map<std::size_t, std::size_t> cap_of;
  for (std::size_t b = 0; b < setup.cap.embedding.size(); ++b) cap_of.emplace(setup.cap.embedding[b], b);
  for (const auto& cell : fine.cells()) {
    std::size_t expect = 0;
    if (cap_of.count(cell.id) && i >= 1) expect = binomial(cell.dim, i - 1).get_ui();
    if (ses.C.stalk_dim(cell.id) != expect)
      throw DelconError("quotient stalk has the wrong dimension at " + cell_text(cell.id));
  }
  if (i == 0) return ses;

  const TorusComplex& cap = setup.cap.complex;
  ses.cap_sheaf = build_Rif(cap, i - 1);
  const HyperplaneFamily* fam = nullptr;
  for (const auto& f : fine.families())
    if (f.edge == setup.edge) fam = &f;
  auto cols = unimodular_completion(fam->normal);
  QMatrix W(n, n - 1);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t r = 0; r < n; ++r) W(r, j - 1) = cols[j][r];

  for (const auto& beta : cap.cells()) {
    std::size_t alpha = setup.cap.embedding[beta.id];
    const QSubspace& big = coarse.cell(setup.map[alpha]).direction;
    // A direction of the coarse cell leaving e's subtorus, normalised so that
    // it pairs to 1 with e's normal.
    QVector normal_dir;
    for (const auto& b : big.basis()) {
      Rational t = 0;
      for (std::size_t r = 0; r < n; ++r) t += Rational(fam->normal[r]) * b[r];
      if (sgn(t) != 0) {
        normal_dir = b;
        for (auto& x : normal_dir) x /= t;
        break;
      }
    }
    if (normal_dir.empty()) throw DelconError("coarse cell does not cross the new family at " + cell_text(alpha));
    std::vector<QVector> coords{big.coordinates(normal_dir)};
    for (const auto& y : beta.direction.basis()) coords.push_back(big.coordinates(W * y));
    std::vector<QVector> images;
    for (const auto& T : subsets(beta.dim, i - 1)) {
      std::vector<QVector> chosen{coords[0]};
      for (std::size_t t : T) chosen.push_back(coords[t + 1]);
      images.push_back(compound(QMatrix::from_columns(chosen, big.dim()), i).column(0));
    }
    QMatrix psi = quot[alpha].q * QMatrix::from_columns(images, quot[alpha].q.cols());
    if (psi.rows() != psi.cols() || rank(psi) != psi.rows())
      throw DelconError("quotient is not isomorphic to the cap stalk at " + cell_text(alpha));
    ses.cap_iso.push_back(std::move(psi));
  }

  std::size_t cap_face = 0;
  for (std::size_t f = 0; f < fine.faces().size(); ++f) {
    const auto& inc = fine.faces()[f];
    auto a = cap_of.find(inc.face), b = cap_of.find(inc.coface);
    if (a == cap_of.end() || b == cap_of.end()) continue;
    const auto& cf = cap.faces().at(cap_face);
    if (cf.face != a->second || cf.coface != b->second) throw DelconError("cap faces out of step");
    if (!(ses.cap_iso[b->second] * ses.cap_sheaf.restrictions[cap_face] ==
          ses.C.restrictions[f] * ses.cap_iso[a->second]))
      throw DelconError("cap isomorphism does not commute with restriction at " + cell_text(inc.face));
    ++cap_face;
  }
  return ses;
}

LongExactSeq snake_les(const ShortExactSeq& ses) {
  const TorusComplex& c = *ses.A.complex;
  std::size_t n = c.dimension();
  CochainComplex ca = cochain_complex(ses.A), cb = cochain_complex(ses.B), cc = cochain_complex(ses.C);

  std::vector<QMatrix> phi, q, s;
  for (std::size_t k = 0; k <= n; ++k) {
    phi.push_back(block_diagonal(c, k, ses.first.components, cb, ca));
    q.push_back(block_diagonal(c, k, ses.second.components, cc, cb));
    s.push_back(block_diagonal(c, k, ses.section.components, cb, cc));
    std::string where = " in cochain degree " + std::to_string(k);
    if (rank(phi[k]) != ca.dims[k]) throw DelconError("cochain map A -> B is not injective" + where);
    if (rank(q[k]) != cc.dims[k]) throw DelconError("cochain map B -> C is not surjective" + where);
    if (!(q[k] * phi[k]).is_zero() || ca.dims[k] + cc.dims[k] != cb.dims[k])
      throw DelconError("cochain sequence is not exact" + where);
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!(cb.coboundary[k] * phi[k] == phi[k + 1] * ca.coboundary[k]))
      throw DelconError("A -> B is not a cochain map");
    if (!(cc.coboundary[k] * q[k] == q[k + 1] * cb.coboundary[k]))
      throw DelconError("B -> C is not a cochain map");
  }

  auto ha = cohomology(ca), hb = cohomology(cb), hc = cohomology(cc);
  std::size_t i = ses.degree;
  std::string ri = "R^" + std::to_string(i);
  std::string rc = i == 0 ? "0" : "R^" + std::to_string(i - 1);
  LongExactSeq les;
  for (std::size_t k = 0; k <= n; ++k) {
    std::string h = "H^" + std::to_string(k);
    std::size_t f_rank = rank_mod(phi[k] * cocycles(ca, k), coboundaries(cb, k));
    std::size_t g_rank = rank_mod(q[k] * cocycles(cb, k), coboundaries(cc, k));
    std::size_t d_rank = 0;
    if (k < n) {
      QMatrix pushed = cb.coboundary[k] * (s[k] * cocycles(cc, k));
      QMatrix pulled = solve(phi[k + 1], pushed);
      d_rank = rank_mod(pulled, coboundaries(ca, k + 1));
    }
    les.nodes.push_back({h + "(fine," + ri + ")", ha[k], f_rank});
    les.nodes.push_back({h + "(coarse," + ri + ")", hb[k], g_rank});
    les.nodes.push_back({h + "(cap," + rc + ")", hc[k], d_rank});
  }
  if (!is_rank_exact(les)) throw DelconError("long exact sequence fails rank-exactness");
  return les;
}

bool is_rank_exact(const LongExactSeq& les) {
  std::size_t incoming = 0;
  for (const auto& node : les.nodes) {
    if (incoming + node.out_rank != node.dim) return false;
    incoming = node.out_rank;
  }
  return incoming == 0;
}

SmalldelconReport smalldelcon_report(const MultiGraph& g, EdgeId e, std::uint64_t seed) {
  if (!g.is_connected()) throw DelconError("smalldelcon: graph is not connected");
  const Edge& edge = g.edge(e);
  if (edge.is_loop()) throw DelconError("smalldelcon: edge is a loop");
  if (betti1(g) < 2) throw DelconError("smalldelcon: first Betti number is below 2");
  if (g.degree(edge.tail) != 2 && g.degree(edge.head) != 2)
    throw DelconError("smalldelcon: edge is not incident to a degree-2 vertex");
  if (has_disconnecting_vertex(g)) throw DelconError("smalldelcon: graph has a disconnecting vertex");

  SmalldelconReport r;
  r.whole = compute_betti_table(g, seed);
  r.contracted = compute_betti_table(contract_edge(g, e), seed);
  r.deleted = compute_betti_table(remove_bridges(delete_edge(g, e)), seed);
  r.holds = true;
  for (long i = 0; i <= static_cast<long>(r.whole.n); ++i)
    for (long k = 0; k <= static_cast<long>(r.whole.n); ++k)
      if (table_at(r.whole, i, k) != table_at(r.contracted, i, k) + table_at(r.deleted, i - 1, k - 1))
        r.holds = false;
  return r;
}

bool verify_smalldelcon(const MultiGraph& g, EdgeId e, std::uint64_t seed) {
  return smalldelcon_report(g, e, seed).holds;
}

bool les_dimensions_feasible(const std::vector<std::size_t>& dims) {
  std::size_t prev = 0;
  for (std::size_t d : dims) {
    if (d < prev) return false;
    prev = d - prev;
  }
  return prev == 0;
}

bool total_les_check(const MultiGraph& g, EdgeId e, std::uint64_t seed) {
  if (g.edge(e).is_loop() || is_bridge(g, e)) throw DelconError("total_les_check: edge is a loop or a bridge");
  auto whole = total_poincare(compute_betti_table(g, seed));
  auto contracted = total_poincare(compute_betti_table(contract_edge(g, e), seed));
  auto deleted = total_poincare(compute_betti_table(remove_bridges(delete_edge(g, e)), seed));
  auto at = [](const std::vector<std::uint64_t>& p, long d) -> std::size_t {
    return d < 0 || static_cast<std::size_t>(d) >= p.size() ? 0 : p[d];
  };
  std::vector<std::size_t> dims;
  long alternating = 0;
  for (long d = 0; d <= static_cast<long>(whole.size()); ++d) {
    std::size_t x = at(whole, d), y = at(contracted, d), z = at(deleted, d - 1);
    dims.insert(dims.end(), {x, y, z});
    long term = static_cast<long>(x) - static_cast<long>(y) + static_cast<long>(z);
    alternating += (d % 2 == 0) ? term : -term;
  }
  return alternating == 0 && les_dimensions_feasible(dims);
}

}  // namespace hths
