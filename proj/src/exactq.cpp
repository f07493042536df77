#include "hths/exactq.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace hths {

QMatrix::QMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw LinearAlgebraError("QMatrix: ragged initializer");
    for (long v : r) data_.emplace_back(v);
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols) {
  QMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw LinearAlgebraError("QMatrix::from_rows: length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& cols, std::size_t rows) {
  QMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw LinearAlgebraError("QMatrix::from_columns: length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

QVector QMatrix::column(std::size_t c) const {
  QVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

void QMatrix::add_block(std::size_t r0, std::size_t c0, const QMatrix& block, const Rational& scale) {
  if (r0 + block.rows() > rows_ || c0 + block.cols() > cols_)
    throw LinearAlgebraError("QMatrix::add_block: block out of range");
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (std::size_t c = 0; c < block.cols(); ++c) (*this)(r0 + r, c0 + c) += scale * block(r, c);
}

QMatrix QMatrix::submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  QMatrix m(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) m(r, c) = (*this)(rows[r], cols[c]);
  return m;
}

bool operator==(const QMatrix& a, const QMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw LinearAlgebraError("QMatrix product: dimension mismatch");
  QMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
    }
  return p;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw LinearAlgebraError("QMatrix sum: dimension mismatch");
  QMatrix s = a;
  for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] += b.data_[i];
  return s;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw LinearAlgebraError("QMatrix difference: dimension mismatch");
  QMatrix s = a;
  for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] -= b.data_[i];
  return s;
}

QVector operator*(const QMatrix& a, const QVector& v) {
  if (a.cols_ != v.size()) throw LinearAlgebraError("QMatrix * vector: dimension mismatch");
  QVector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
  return out;
}

std::string QMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) {
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
    os << "]\n";
  }
  return os.str();
}

Echelon reduced_row_echelon(QMatrix m) {
  Echelon e;
  std::size_t lead = 0;
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t p = lead;
    while (p < rows && sgn(m(p, c)) == 0) ++p;
    if (p == rows) continue;
    if (p != lead)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(lead, j));
    Rational inv = 1 / m(lead, c);
    for (std::size_t j = c; j < cols; ++j) m(lead, j) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead || sgn(m(r, c)) == 0) continue;
      Rational f = m(r, c);
      for (std::size_t j = c; j < cols; ++j) m(r, j) -= f * m(lead, j);
    }
    e.pivots.push_back(c);
    ++lead;
  }
  e.rref = std::move(m);
  return e;
}

std::size_t rank(const QMatrix& m) {
  if (m.empty()) return 0;
  return reduced_row_echelon(m).pivots.size();
}

std::size_t image_dim(const QMatrix& m) { return rank(m); }

QSubspace kernel_basis(const QMatrix& m) {
  const std::size_t cols = m.cols();
  if (m.rows() == 0) return QSubspace::whole(cols);
  Echelon e = reduced_row_echelon(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<QVector> gens;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVector v(cols);
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rref(r, f);
    gens.push_back(std::move(v));
  }
  return QSubspace::span(gens, cols);
}

QSubspace image_space(const QMatrix& m) {
  std::vector<QVector> cols;
  cols.reserve(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  return QSubspace::span(cols, m.rows());
}

Rational determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) throw LinearAlgebraError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  QMatrix a = m;
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(a(r, c)) == 0) continue;
      Rational f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

QVector solve(const QMatrix& m, const QVector& b) {
  if (b.size() != m.rows()) throw LinearAlgebraError("solve: right-hand side has wrong length");
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  Echelon e = reduced_row_echelon(std::move(aug));
  QVector x(m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == m.cols()) throw LinearAlgebraError("solve: inconsistent system");
    x[e.pivots[r]] = e.rref(r, m.cols());
  }
  return x;
}

QMatrix solve(const QMatrix& m, const QMatrix& b) {
  if (b.rows() != m.rows()) throw LinearAlgebraError("solve: right-hand side has wrong height");
  QMatrix aug(m.rows(), m.cols() + b.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) aug(r, m.cols() + c) = b(r, c);
  }
  Echelon e = reduced_row_echelon(std::move(aug));
  QMatrix x(m.cols(), b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] >= m.cols()) throw LinearAlgebraError("solve: inconsistent system");
    for (std::size_t c = 0; c < b.cols(); ++c) x(e.pivots[r], c) = e.rref(r, m.cols() + c);
  }
  return x;
}

QSubspace QSubspace::span(const std::vector<QVector>& vectors, std::size_t ambient_dim) {
  QSubspace s(ambient_dim);
  if (vectors.empty()) return s;
  Echelon e = reduced_row_echelon(QMatrix::from_rows(vectors, ambient_dim));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    auto row = e.rref.row(r);
    s.basis_.emplace_back(row.begin(), row.end());
  }
  s.pivots_ = std::move(e.pivots);
  return s;
}

QSubspace QSubspace::whole(std::size_t ambient_dim) {
  std::vector<QVector> gens;
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    QVector v(ambient_dim);
    v[i] = 1;
    gens.push_back(std::move(v));
  }
  return span(gens, ambient_dim);
}

QMatrix QSubspace::basis_matrix() const { return QMatrix::from_columns(basis_, ambient_); }

QVector QSubspace::coordinates(const QVector& v) const {
  if (v.size() != ambient_) throw LinearAlgebraError("QSubspace::coordinates: wrong length");
  // In RREF the coordinate along row r is simply the entry at its pivot.
  QVector coords(basis_.size());
  QVector residual = v;
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    coords[r] = v[pivots_[r]];
    for (std::size_t j = 0; j < ambient_; ++j) residual[j] -= coords[r] * basis_[r][j];
  }
  for (const auto& x : residual)
    if (sgn(x) != 0) throw LinearAlgebraError("QSubspace::coordinates: vector not in subspace");
  return coords;
}

bool QSubspace::contains(const QVector& v) const {
  try {
    coordinates(v);
    return true;
  } catch (const LinearAlgebraError&) {
    return false;
  }
}

bool QSubspace::contains(const QSubspace& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const QVector& v) { return contains(v); });
}

QSubspace QSubspace::intersect(const QSubspace& other) const {
  if (ambient_ != other.ambient_) throw LinearAlgebraError("QSubspace::intersect: ambient mismatch");
  // x = A a = B b  <=>  [A | -B] (a, b) = 0.
  const std::size_t da = dim(), db = other.dim();
  QMatrix joint(ambient_, da + db);
  for (std::size_t r = 0; r < ambient_; ++r) {
    for (std::size_t c = 0; c < da; ++c) joint(r, c) = basis_[c][r];
    for (std::size_t c = 0; c < db; ++c) joint(r, da + c) = -other.basis_[c][r];
  }
  QSubspace k = kernel_basis(joint);
  std::vector<QVector> gens;
  for (const auto& sol : k.basis()) {
    QVector x(ambient_);
    for (std::size_t c = 0; c < da; ++c)
      for (std::size_t r = 0; r < ambient_; ++r) x[r] += sol[c] * basis_[c][r];
    gens.push_back(std::move(x));
  }
  return span(gens, ambient_);
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

Integer binomial(std::size_t n, std::size_t k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

QMatrix compound(const QMatrix& m, std::size_t k) {
  if (k > std::min(m.rows(), m.cols()))
    throw LinearAlgebraError("compound: order " + std::to_string(k) + " exceeds matrix size");
  if (k == 0) return QMatrix::identity(1);
  const auto row_sets = subsets(m.rows(), k);
  const auto col_sets = subsets(m.cols(), k);
  QMatrix c(row_sets.size(), col_sets.size());
  for (std::size_t i = 0; i < row_sets.size(); ++i)
    for (std::size_t j = 0; j < col_sets.size(); ++j) c(i, j) = determinant(m.submatrix(row_sets[i], col_sets[j]));
  return c;
}

}  // namespace hths
