#pragma once

// Exact rational linear algebra.  Every quantity in the pipeline is an
// integer or a rational number, so nothing here touches floating point.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hths {

using Integer = mpz_class;
/// GMP keeps mpq values canonical: gcd(|num|, den) = 1 and den > 0.
using Rational = mpq_class;
using QVector = std::vector<Rational>;

class LinearAlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major matrix over Q.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  QMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);
  static QMatrix from_columns(const std::vector<QVector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  QVector column(std::size_t c) const;

  QMatrix transpose() const;
  bool is_zero() const;

  /// Copies `block` into this matrix with its top-left corner at (r0, c0),
  /// adding to whatever is already there.
  void add_block(std::size_t r0, std::size_t c0, const QMatrix& block, const Rational& scale = 1);
  QMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;

  friend bool operator==(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
  friend QVector operator*(const QMatrix& a, const QVector& v);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// A linear subspace of Q^ambient_dim held by its reduced row-echelon basis.
/// The representation is canonical, so equality of subspaces is equality of
/// the stored bases.
class QSubspace {
 public:
  QSubspace() = default;
  explicit QSubspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  /// Span of the given vectors (which need not be independent).
  static QSubspace span(const std::vector<QVector>& vectors, std::size_t ambient_dim);
  static QSubspace whole(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<QVector>& basis() const { return basis_; }
  /// Pivot column of each basis row, strictly increasing.
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Basis vectors as the columns of an ambient_dim x dim matrix.
  QMatrix basis_matrix() const;

  bool contains(const QVector& v) const;
  bool contains(const QSubspace& other) const;
  /// Coordinates of v in the echelon basis.  Throws if v is not in the span.
  QVector coordinates(const QVector& v) const;

  QSubspace intersect(const QSubspace& other) const;

  friend bool operator==(const QSubspace& a, const QSubspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<QVector> basis_;
  std::vector<std::size_t> pivots_;
};

/// Result of Gauss-Jordan elimination: the RREF and its pivot columns.
struct Echelon {
  QMatrix rref;
  std::vector<std::size_t> pivots;
};

Echelon reduced_row_echelon(QMatrix m);

std::size_t rank(const QMatrix& m);
std::size_t image_dim(const QMatrix& m);
/// Right null space {x : m x = 0} in canonical form.
QSubspace kernel_basis(const QMatrix& m);
/// Column space of m.
QSubspace image_space(const QMatrix& m);
Rational determinant(const QMatrix& m);

/// Solves m x = b for one solution x; throws when the system is inconsistent.
QVector solve(const QMatrix& m, const QVector& b);
/// Solves m X = b column by column.
QMatrix solve(const QMatrix& m, const QMatrix& b);

/// Lexicographically ordered size-k subsets of {0, ..., n-1}.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k);
Integer binomial(std::size_t n, std::size_t k);

/// The k-th compound matrix: entries are the k x k minors of m with rows and
/// columns indexed by lexicographically ordered k-subsets.  The 0-th compound
/// is the 1 x 1 identity.
QMatrix compound(const QMatrix& m, std::size_t k);

}  // namespace hths
