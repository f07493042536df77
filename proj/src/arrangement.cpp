#include "hths/arrangement.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hths {

namespace {

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational frac(const Rational& q) { return q - Rational(floor_of(q)); }

QVector frac(const QVector& v) {
  QVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = frac(v[i]);
  return out;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw ArrangementError("integer out of range");
  return z.get_si();
}

long gcd_of(const std::vector<long>& v) {
  long g = 0;
  for (long x : v) g = std::gcd(g, x);
  return g;
}

std::string rational_text(const Rational& q) { return q.get_str(); }

// Cached per-arrangement data: rational normals and the inverse of every
// nonsingular n x n minor of the normal matrix.
class Geometry {
 public:
  Geometry(const std::vector<HyperplaneFamily>& families, std::size_t n) : n_(n) {
    for (const auto& f : families) {
      QVector v(n);
      for (std::size_t j = 0; j < n; ++j) v[j] = f.normal.at(j);
      normals_.push_back(std::move(v));
      shifts_.push_back(f.shift);
    }
    if (n == 0) return;
    for (const auto& J : subsets(normals_.size(), n)) {
      QMatrix m(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = normals_[J[r]][c];
      Rational d = determinant(m);
      if (sgn(d) == 0) continue;
      QMatrix inv = solve(m, QMatrix::identity(n));
      Integer ad = abs(d.get_num());
      inverses_.emplace(J, Minor{std::move(inv), to_long(ad)});
    }
  }

  std::size_t size() const { return normals_.size(); }
  std::size_t dim() const { return n_; }

  Rational level(std::size_t e, const QVector& x) const {
    Rational t = -shifts_[e];
    for (std::size_t j = 0; j < n_; ++j) t += normals_[e][j] * x[j];
    return t;
  }

  // Even 2m when the point lies on the m-th hyperplane of the family, odd
  // 2m+1 when it lies strictly between the m-th and (m+1)-th.
  std::vector<long> code(const QVector& x) const {
    std::vector<long> c(size());
    for (std::size_t e = 0; e < size(); ++e) {
      Rational t = level(e, x);
      long m = to_long(floor_of(t));
      c[e] = is_integer(t) ? 2 * m : 2 * m + 1;
    }
    return c;
  }

  bool in_closure(const std::vector<long>& c, const QVector& x) const {
    for (std::size_t e = 0; e < size(); ++e) {
      Rational t = level(e, x);
      if (c[e] % 2 == 0) {
        if (t != Rational(c[e] / 2)) return false;
      } else {
        long m = (c[e] - 1) / 2;
        if (t < m || t > m + 1) return false;
      }
    }
    return true;
  }

  // Vertices of the polytope {x : level_e(x) satisfies the closed code
  // constraint}, by intersecting every admissible choice of n tight
  // constraints.
  std::vector<QVector> closure_vertices(const std::vector<long>& c) const {
    std::vector<std::size_t> even, odd;
    for (std::size_t e = 0; e < size(); ++e) (c[e] % 2 == 0 ? even : odd).push_back(e);
    if (even.size() > n_) return {};
    std::size_t k = n_ - even.size();
    std::set<QVector> found;
    for (const auto& pick : subsets(odd.size(), k)) {
      std::vector<std::size_t> J = even;
      for (std::size_t p : pick) J.push_back(odd[p]);
      std::sort(J.begin(), J.end());
      auto it = inverses_.find(J);
      if (it == inverses_.end()) continue;
      for (unsigned mask = 0; mask < (1u << k); ++mask) {
        QVector rhs(n_);
        for (std::size_t r = 0; r < n_; ++r) {
          std::size_t e = J[r];
          long m;
          if (c[e] % 2 == 0) {
            m = c[e] / 2;
          } else {
            std::size_t slot = std::find(odd.begin(), odd.end(), e) - odd.begin();
            std::size_t bit = std::find(pick.begin(), pick.end(), slot) - pick.begin();
            m = (c[e] - 1) / 2 + ((mask >> bit) & 1u);
          }
          rhs[r] = shifts_[e] + m;
        }
        QVector x = it->second.inverse * rhs;
        if (in_closure(c, x)) found.insert(std::move(x));
      }
    }
    return {found.begin(), found.end()};
  }

  // All points of T^n (in [0,1)^n) where n families meet.
  std::vector<QVector> torus_vertices() const {
    std::set<QVector> out;
    for (const auto& [J, minor] : inverses_) {
      std::vector<long> m(n_, 0);
      // Z^n / V_J Z^n has |det| classes, each represented in [0, |det|)^n.
      while (true) {
        QVector rhs(n_);
        for (std::size_t r = 0; r < n_; ++r) rhs[r] = shifts_[J[r]] + m[r];
        out.insert(frac(minor.inverse * rhs));
        std::size_t pos = 0;
        while (pos < n_ && ++m[pos] == minor.det) m[pos++] = 0;
        if (pos == n_) break;
      }
    }
    return {out.begin(), out.end()};
  }

  std::vector<std::size_t> through(const QVector& x) const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < size(); ++e)
      if (is_integer(level(e, x))) out.push_back(e);
    return out;
  }

  const QVector& normal(std::size_t e) const { return normals_[e]; }

 private:
  struct Minor {
    QMatrix inverse;
    long det;
  };
  std::size_t n_;
  std::vector<QVector> normals_;
  std::vector<Rational> shifts_;
  std::map<std::vector<std::size_t>, Minor> inverses_;
};

QVector barycenter(const std::vector<QVector>& pts, std::size_t n) {
  QVector b(n);
  for (const auto& p : pts)
    for (std::size_t j = 0; j < n; ++j) b[j] += p[j];
  Rational count(static_cast<long>(pts.size()));
  for (auto& x : b) x /= count;
  return b;
}

QVector subtract(const QVector& a, const QVector& b) {
  QVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

int incidence_sign(const QSubspace& tau, const QSubspace& sigma, const QVector& inward) {
  std::size_t k = tau.dim();
  std::vector<QVector> cols;
  cols.push_back(tau.coordinates(inward));
  for (const auto& b : sigma.basis()) cols.push_back(tau.coordinates(b));
  Rational d = determinant(QMatrix::from_columns(cols, k));
  if (sgn(d) == 0) throw ArrangementError("degenerate facet incidence");
  return sgn(d);
}

QSubspace direction_of(const Geometry& geo, const std::vector<long>& c) {
  std::vector<QVector> rows;
  for (std::size_t e = 0; e < geo.size(); ++e)
    if (c[e] % 2 == 0) rows.push_back(geo.normal(e));
  if (rows.empty()) return QSubspace::whole(geo.dim());
  return kernel_basis(QMatrix::from_rows(rows, geo.dim()));
}

std::optional<std::size_t> locate_in(const Geometry& geo, const std::map<QVector, std::size_t>& by_lift,
                                     const QVector& point) {
  if (geo.dim() == 0) return by_lift.empty() ? std::nullopt : std::optional<std::size_t>(0);
  auto verts = geo.closure_vertices(geo.code(frac(point)));
  if (verts.empty()) return std::nullopt;
  auto it = by_lift.find(frac(barycenter(verts, geo.dim())));
  if (it == by_lift.end()) return std::nullopt;
  return it->second;
}

void validate(const std::vector<HyperplaneFamily>& families, std::size_t n) {
  for (const auto& f : families) {
    if (f.normal.size() != n) throw ArrangementError("family normal has the wrong length");
    if (gcd_of(f.normal) != 1) throw ArrangementError("family normal is zero or not primitive");
  }
}

}  // namespace

TorusComplex::TorusComplex(std::size_t n, std::vector<Cell> cells, std::vector<FaceIncidence> faces,
                           std::vector<HyperplaneFamily> families)
    : n_(n), cells_(std::move(cells)), faces_(std::move(faces)), families_(std::move(families)) {
  facets_.assign(cells_.size(), {});
  cofacets_.assign(cells_.size(), {});
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    facets_.at(faces_[i].coface).push_back(i);
    cofacets_.at(faces_[i].face).push_back(i);
  }
  for (const auto& c : cells_) by_lift_.emplace(c.lift, c.id);
}

std::vector<std::size_t> TorusComplex::f_vector() const {
  std::vector<std::size_t> f(n_ + 1, 0);
  for (const auto& c : cells_) ++f.at(c.dim);
  return f;
}

std::vector<std::size_t> TorusComplex::cells_of_dim(std::size_t k) const {
  std::vector<std::size_t> out;
  for (const auto& c : cells_)
    if (c.dim == k) out.push_back(c.id);
  return out;
}

long TorusComplex::euler_characteristic() const {
  long chi = 0;
  for (const auto& c : cells_) chi += (c.dim % 2 == 0) ? 1 : -1;
  return chi;
}

std::vector<std::size_t> TorusComplex::closure(std::size_t cell) const {
  std::set<std::size_t> seen{cell};
  std::vector<std::size_t> stack{cell};
  while (!stack.empty()) {
    std::size_t c = stack.back();
    stack.pop_back();
    for (std::size_t f : facets_.at(c))
      if (seen.insert(faces_[f].face).second) stack.push_back(faces_[f].face);
  }
  return {seen.begin(), seen.end()};
}

bool TorusComplex::is_face_of(std::size_t face, std::size_t cell) const {
  auto cl = closure(cell);
  return std::binary_search(cl.begin(), cl.end(), face);
}

std::size_t TorusComplex::locate(const QVector& point) const {
  if (point.size() != n_) throw ArrangementError("locate: point has the wrong dimension");
  Geometry geo(families_, n_);
  auto id = locate_in(geo, by_lift_, point);
  if (!id) throw ArrangementError("locate: point is not covered by the complex");
  return *id;
}

std::vector<HyperplaneFamily> build_families(const MultiGraph& g) {
  CycleBasis basis = fundamental_cycle_basis(g);
  std::vector<HyperplaneFamily> out;
  for (std::size_t p = 0; p < g.edge_count(); ++p) {
    std::vector<long> v(basis.normals[p].begin(), basis.normals[p].end());
    if (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; })) continue;
    out.push_back({g.edges()[p].id, std::move(v), Rational(0)});
  }
  return out;
}

std::vector<HyperplaneFamily> with_shifts(std::vector<HyperplaneFamily> families, const ShiftVector& shifts) {
  if (shifts.shifts.size() != families.size()) throw ArrangementError("shift vector has the wrong length");
  for (std::size_t i = 0; i < families.size(); ++i) families[i].shift = frac(shifts.shifts[i]);
  return families;
}

bool is_simple(const std::vector<HyperplaneFamily>& families, const ShiftVector& shifts) {
  if (shifts.shifts.size() != families.size()) throw ArrangementError("shift vector has the wrong length");
  if (families.empty()) return true;
  std::size_t n = families.front().normal.size();
  // Non-simple exactly when some circuit S of normals (a minimal dependent
  // set, with primitive integer relation y) has all of its subtori meeting,
  // which happens iff y . s is an integer.
  for (std::size_t size = 2; size <= std::min(families.size(), n + 1); ++size) {
    for (const auto& S : subsets(families.size(), size)) {
      QMatrix m(size, n);
      for (std::size_t r = 0; r < size; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = families[S[r]].normal[c];
      if (rank(m) != size - 1) continue;
      QSubspace rel = kernel_basis(m.transpose());
      QVector y = rel.basis().front();
      if (std::any_of(y.begin(), y.end(), [](const Rational& q) { return sgn(q) == 0; })) continue;
      Integer den = 1;
      for (const auto& q : y) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
      Rational dot = 0;
      Integer g = 0;
      for (std::size_t r = 0; r < size; ++r) {
        Integer yi = Rational(y[r] * den).get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), yi.get_mpz_t());
        dot += Rational(yi) * shifts.shifts[S[r]];
      }
      dot /= Rational(g);
      if (is_integer(dot)) return false;
    }
  }
  return true;
}

ShiftVector choose_shifts(const std::vector<HyperplaneFamily>& families, std::uint64_t seed,
                          std::size_t max_candidates) {
  std::mt19937_64 rng(seed);
  auto is_prime = [](long q) {
    for (long d = 2; d * d <= q; ++d)
      if (q % d == 0) return false;
    return true;
  };
  constexpr std::size_t kDrawsPerPrime = 64;
  std::size_t tried = 0;
  for (long q = 5; tried < max_candidates; ++q) {
    if (!is_prime(q)) continue;
    std::uniform_int_distribution<long> pick(0, q - 1);
    for (std::size_t a = 0; a < kDrawsPerPrime && tried < max_candidates; ++a, ++tried) {
      ShiftVector s;
      for (std::size_t i = 0; i < families.size(); ++i) s.shifts.emplace_back(pick(rng), q);
      for (auto& x : s.shifts) x.canonicalize();
      if (is_simple(families, s)) return s;
    }
  }
  throw ArrangementError("choose_shifts: no simple shift vector within the search bound");
}

TorusComplex build_complex(const std::vector<HyperplaneFamily>& raw, const ShiftVector& shifts, std::size_t n,
                           std::size_t max_dim) {
  if (n > max_dim) throw ArrangementError("torus dimension " + std::to_string(n) + " exceeds the limit " +
                                          std::to_string(max_dim));
  validate(raw, n);
  auto families = with_shifts(raw, shifts);
  if (n == 0) {
    if (!families.empty()) throw ArrangementError("families on a point");
    return TorusComplex(0, {Cell{0, 0, QSubspace(0), {}, {}}}, {}, {});
  }
  {
    std::vector<QVector> rows;
    for (const auto& f : families) rows.emplace_back(f.normal.begin(), f.normal.end());
    if (rows.empty() || rank(QMatrix::from_rows(rows, n)) != n)
      throw ArrangementError("family normals do not span");
  }
  if (!is_simple(families, shifts)) throw ArrangementError("arrangement is not simple");

  Geometry geo(families, n);
  struct Pending {
    std::vector<long> code;  // of the lift containing the key point
  };
  std::map<QVector, Pending> found;
  std::set<std::pair<QVector, std::vector<int>>> visited;

  for (const auto& x0 : geo.torus_vertices()) {
    auto at = geo.through(x0);
    if (at.size() != n) throw ArrangementError("arrangement is not simple at a vertex");
    auto base = geo.code(x0);
    std::vector<int> pattern(n, -1);
    while (true) {
      if (!visited.count({x0, pattern})) {
        auto c = base;
        for (std::size_t r = 0; r < n; ++r) c[at[r]] += pattern[r];
        auto verts = geo.closure_vertices(c);
        if (verts.empty()) throw ArrangementError("empty face in a vertex star");
        QVector key = frac(barycenter(verts, n));
        if (!found.count(key)) found.emplace(key, Pending{geo.code(key)});
        // The same torus cell is seen from each of its vertices; mark them all.
        for (const auto& v : verts) {
          auto vat = geo.through(v);
          std::vector<int> vp;
          for (std::size_t e : vat) vp.push_back(static_cast<int>(c[e] - 2 * to_long(floor_of(geo.level(e, v)))));
          visited.insert({frac(v), std::move(vp)});
        }
      }
      std::size_t pos = 0;
      while (pos < n && pattern[pos] == 1) pattern[pos++] = -1;
      if (pos == n) break;
      ++pattern[pos];
    }
  }

  // Ids ordered by dimension, then by lift.
  std::vector<std::pair<std::size_t, QVector>> order;
  for (const auto& [key, p] : found) {
    std::size_t evens = std::count_if(p.code.begin(), p.code.end(), [](long c) { return c % 2 == 0; });
    order.emplace_back(n - evens, key);
  }
  std::sort(order.begin(), order.end());
  std::map<QVector, std::size_t> id_of;
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& key = order[i].second;
    const auto& code = found.at(key).code;
    Cell cell;
    cell.id = i;
    cell.dim = order[i].first;
    cell.direction = direction_of(geo, code);
    for (std::size_t e = 0; e < families.size(); ++e)
      if (code[e] % 2 == 0) cell.hyperplane_set.push_back(families[e].edge);
    std::sort(cell.hyperplane_set.begin(), cell.hyperplane_set.end());
    cell.lift = key;
    id_of.emplace(key, i);
    cells.push_back(std::move(cell));
  }

  std::vector<FaceIncidence> faces;
  for (const auto& tau : cells) {
    const auto& code = found.at(tau.lift).code;
    for (std::size_t e = 0; e < families.size(); ++e) {
      if (code[e] % 2 == 0) continue;
      for (long step : {-1L, 1L}) {
        auto c = code;
        c[e] += step;
        auto verts = geo.closure_vertices(c);
        if (verts.empty()) continue;
        QVector b = barycenter(verts, n);
        if (geo.code(b) != c) continue;  // only touches the closure in a smaller face
        auto it = id_of.find(frac(b));
        if (it == id_of.end()) throw ArrangementError("facet missing from the cell list");
        const Cell& sigma = cells[it->second];
        QVector u = subtract(tau.lift, b);
        faces.push_back({sigma.id, tau.id, incidence_sign(tau.direction, sigma.direction, u), std::move(u)});
      }
    }
  }
  std::sort(faces.begin(), faces.end(), [](const FaceIncidence& a, const FaceIncidence& b) {
    return std::tie(a.coface, a.face, a.inward) < std::tie(b.coface, b.face, b.inward);
  });
  return TorusComplex(n, std::move(cells), std::move(faces), std::move(families));
}

TorusComplex complex_for_graph(const MultiGraph& g, std::uint64_t seed, std::size_t max_dim) {
  if (!g.is_connected()) throw GraphError("graph is not connected");
  std::size_t n = betti1(g);
  if (n > max_dim)
    throw ArrangementError("first Betti number " + std::to_string(n) + " exceeds the limit " + std::to_string(max_dim));
  auto families = build_families(g);
  auto shifts = choose_shifts(families, seed);
  return build_complex(families, shifts, n, max_dim);
}

std::vector<std::vector<long>> unimodular_completion(const std::vector<long>& v) {
  std::size_t n = v.size();
  if (gcd_of(v) != 1) throw ArrangementError("unimodular_completion: vector is not primitive");
  std::vector<std::vector<long>> cols(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) cols[i][i] = 1;
  std::vector<long> a = v;
  auto axpy = [&](std::size_t dst, std::size_t src, long q) {
    a[dst] -= q * a[src];
    for (std::size_t r = 0; r < n; ++r) cols[dst][r] -= q * cols[src][r];
  };
  while (true) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] != 0 && (piv == n || std::labs(a[i]) < std::labs(a[piv]))) piv = i;
    bool done = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == piv || a[j] == 0) continue;
      axpy(j, piv, a[j] / a[piv]);
      done = false;
    }
    if (done) {
      if (a[piv] < 0) {
        a[piv] = -a[piv];
        for (auto& x : cols[piv]) x = -x;
      }
      std::swap(cols[0], cols[piv]);
      return cols;
    }
  }
}

RestrictedComplex restrict_to_family(const TorusComplex& c, EdgeId family) {
  const auto& fams = c.families();
  std::size_t fi = fams.size();
  for (std::size_t i = 0; i < fams.size(); ++i) {
    if (fams[i].edge != family) continue;
    if (fi != fams.size()) throw ArrangementError("restrict_to_family: family has several components");
    fi = i;
  }
  if (fi == fams.size()) throw ArrangementError("restrict_to_family: no such family");
  std::size_t n = c.dimension();
  const auto& v = fams[fi].normal;
  const Rational& s = fams[fi].shift;

  auto cols = unimodular_completion(v);
  QMatrix U(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t r = 0; r < n; ++r) U(r, j) = cols[j][r];
  QMatrix Uinv = solve(U, QMatrix::identity(n));
  QVector lambda0 = U.column(0);
  QVector p0(n);
  for (std::size_t r = 0; r < n; ++r) p0[r] = s * lambda0[r];

  // Vectors in ker(v) to coordinates along the columns 1..n-1 of U.
  auto to_sub = [&](const QVector& z) {
    QVector w = Uinv * z;
    if (sgn(w[0]) != 0) throw ArrangementError("restrict_to_family: vector leaves the subtorus");
    return QVector(w.begin() + 1, w.end());
  };
  auto pair_v = [&](const QVector& x) {
    Rational t = 0;
    for (std::size_t r = 0; r < n; ++r) t += Rational(v[r]) * x[r];
    return t;
  };

  RestrictedComplex out;
  std::map<std::size_t, std::size_t> new_id;
  std::vector<Cell> cells;
  for (const auto& cell : c.cells()) {
    if (!std::binary_search(cell.hyperplane_set.begin(), cell.hyperplane_set.end(), family)) continue;
    QVector z = subtract(cell.lift, p0);
    Rational m = pair_v(z);
    if (!is_integer(m)) throw ArrangementError("restrict_to_family: cell is not on the subtorus");
    for (std::size_t r = 0; r < n; ++r) z[r] -= m * lambda0[r];
    Cell nc;
    nc.id = cells.size();
    nc.dim = cell.dim;
    std::vector<QVector> dirs;
    for (const auto& b : cell.direction.basis()) dirs.push_back(to_sub(b));
    nc.direction = QSubspace::span(dirs, n - 1);
    for (EdgeId e : cell.hyperplane_set)
      if (e != family) nc.hyperplane_set.push_back(e);
    nc.lift = frac(to_sub(z));
    new_id.emplace(cell.id, nc.id);
    out.embedding.push_back(cell.id);
    cells.push_back(std::move(nc));
  }

  std::vector<FaceIncidence> faces;
  for (const auto& f : c.faces()) {
    auto a = new_id.find(f.face), b = new_id.find(f.coface);
    if (a == new_id.end() || b == new_id.end()) continue;
    QVector u = to_sub(f.inward);
    int sign = incidence_sign(cells[b->second].direction, cells[a->second].direction, u);
    faces.push_back({a->second, b->second, sign, std::move(u)});
  }

  std::vector<HyperplaneFamily> families;
  for (std::size_t i = 0; i < fams.size(); ++i) {
    if (i == fi) continue;
    std::vector<long> w(n - 1, 0);
    for (std::size_t j = 1; j < n; ++j)
      for (std::size_t r = 0; r < n; ++r) w[j - 1] += fams[i].normal[r] * cols[j][r];
    long g = gcd_of(w);
    if (g == 0) continue;
    Rational shift = fams[i].shift;
    for (std::size_t r = 0; r < n; ++r) shift -= Rational(fams[i].normal[r]) * p0[r];
    for (auto& x : w) x /= g;
    // <w, y> = shift (mod 1) splits into g parallel subtori.
    for (long j = 0; j < g; ++j) families.push_back({fams[i].edge, w, frac((shift + j) / Rational(g))});
  }
  out.complex = TorusComplex(n - 1, std::move(cells), std::move(faces), std::move(families));
  return out;
}

std::vector<std::size_t> subdivision_map(const TorusComplex& fine, const TorusComplex& coarse) {
  if (fine.dimension() != coarse.dimension()) throw ArrangementError("subdivision_map: dimensions differ");
  const auto& ff = fine.families();
  std::size_t matched = 0;
  for (const auto& f : coarse.families()) {
    bool ok = std::any_of(ff.begin(), ff.end(), [&](const HyperplaneFamily& g) {
      return g.edge == f.edge && g.normal == f.normal && g.shift == f.shift;
    });
    if (!ok) throw ArrangementError("subdivision_map: coarse family missing from the fine arrangement");
    ++matched;
  }
  if (ff.size() > matched + 1) throw ArrangementError("subdivision_map: more than one extra family");

  std::size_t n = coarse.dimension();
  Geometry geo(coarse.families(), n);
  std::map<QVector, std::size_t> by_lift;
  for (const auto& cell : coarse.cells()) by_lift.emplace(cell.lift, cell.id);
  std::vector<std::size_t> map;
  for (const auto& cell : fine.cells()) {
    auto id = locate_in(geo, by_lift, cell.lift);
    if (!id) throw ArrangementError("subdivision_map: fine cell not covered");
    if (coarse.cell(*id).dim < cell.dim) throw ArrangementError("subdivision_map: fine cell larger than its image");
    map.push_back(*id);
  }
  return map;
}

bool is_generic_subdivision(const TorusComplex& fine, const TorusComplex& coarse, const std::vector<std::size_t>& map) {
  if (map.size() != fine.cells().size()) return false;
  auto jump = [&](std::size_t a) -> long {
    return static_cast<long>(coarse.cell(map[a]).dim) - static_cast<long>(fine.cell(a).dim);
  };
  for (const auto& cell : fine.cells()) {
    long j = jump(cell.id);
    if (j < 0 || j > 1) return false;
    if (j == 0) continue;
    for (std::size_t b : fine.closure(cell.id))
      if (jump(b) != 1) return false;
  }
  return true;
}

std::string complex_to_json(const TorusComplex& c) {
  using nlohmann::json;
  auto vec = [](const QVector& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(rational_text(q));
    return a;
  };
  json out;
  out["n"] = c.dimension();
  out["f_vector"] = c.f_vector();
  out["euler_characteristic"] = c.euler_characteristic();
  json fams = json::array();
  for (const auto& f : c.families())
    fams.push_back({{"edge", to_index(f.edge)}, {"normal", f.normal}, {"shift", rational_text(f.shift)}});
  out["families"] = fams;
  json cells = json::array();
  for (const auto& cell : c.cells()) {
    json hs = json::array();
    for (EdgeId e : cell.hyperplane_set) hs.push_back(to_index(e));
    json dir = json::array();
    for (const auto& b : cell.direction.basis()) dir.push_back(vec(b));
    cells.push_back(
        {{"id", cell.id}, {"dim", cell.dim}, {"lift", vec(cell.lift)}, {"hyperplanes", hs}, {"direction", dir}});
  }
  out["cells"] = cells;
  json faces = json::array();
  for (const auto& f : c.faces())
    faces.push_back({{"face", f.face}, {"coface", f.coface}, {"incidence", f.incidence}});
  out["faces"] = faces;
  return out.dump(2);
}

}  // namespace hths
