#include <doctest.h>

#include <random>

#include "hths/exactq.hpp"

using namespace hths;

namespace {

QMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo = -3, long hi = 3) {
  std::uniform_int_distribution<long> d(lo, hi);
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST_CASE("reference coboundary of the three-edge theta graph has rank 4") {
  QMatrix m{{1, 0, 0, 0, -1, 0},  {0, 0, 1, 0, 1, 0},  {-1, 1, 0, 0, 1, -1},
            {0, 0, -1, 1, -1, 1}, {0, -1, 0, 0, 0, 1}, {0, 0, 0, -1, 0, -1}};
  CHECK(rank(m) == 4);
  CHECK(kernel_basis(m).dim() == 2);
}

TEST_CASE("kernel of a single row") {
  QMatrix m{{1, 1}};
  CHECK(kernel_basis(m) == QSubspace::span({{Rational(1), Rational(-1)}}, 2));
  CHECK(kernel_basis(QMatrix(0, 3)) == QSubspace::whole(3));
}

TEST_CASE("second compound of a 3x2 matrix") {
  QMatrix m{{1, 0}, {0, 1}, {1, 1}};
  QMatrix c = compound(m, 2);
  CHECK(c == QMatrix{{1}, {1}, {-1}});
  CHECK(compound(m, 0) == QMatrix{{1}});
  CHECK(compound(m, 1) == m);
  CHECK_THROWS_AS(compound(m, 3), LinearAlgebraError);
}

TEST_CASE("rational arithmetic is exact") {
  Rational third(1, 3);
  CHECK(third + third + third == 1);
  QMatrix h(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) h(i, j) = Rational(1, static_cast<long>(i + j + 1));
  CHECK(determinant(h) == Rational(1, 2160));
}

TEST_CASE("solve") {
  QMatrix m{{2, 1}, {1, 3}};
  QVector x = solve(m, QVector{Rational(3), Rational(5)});
  CHECK(m * x == QVector{Rational(3), Rational(5)});
  QMatrix singular{{1, 2}, {2, 4}};
  CHECK_THROWS_AS(solve(singular, QVector{Rational(1), Rational(0)}), LinearAlgebraError);
  QVector y = solve(singular, QVector{Rational(1), Rational(2)});
  CHECK(singular * y == QVector{Rational(1), Rational(2)});
}

TEST_CASE("subsets and binomials") {
  auto s = subsets(4, 2);
  REQUIRE(s.size() == 6);
  CHECK(s.front() == std::vector<std::size_t>{0, 1});
  CHECK(s[1] == std::vector<std::size_t>{0, 2});
  CHECK(s.back() == std::vector<std::size_t>{2, 3});
  CHECK(subsets(3, 0).size() == 1);
  CHECK(subsets(2, 3).empty());
  CHECK(binomial(6, 3) == 20);
  CHECK(binomial(2, 5) == 0);
}

TEST_CASE("subspace coordinates, containment and intersection") {
  QSubspace plane = QSubspace::span({{Rational(1), Rational(1), Rational(0)}, {Rational(0), Rational(1), Rational(1)}}, 3);
  CHECK(plane.dim() == 2);
  QVector v{Rational(2), Rational(5), Rational(3)};
  REQUIRE(plane.contains(v));
  QVector c = plane.coordinates(v);
  CHECK(plane.basis_matrix() * c == v);
  CHECK_THROWS_AS(plane.coordinates(QVector{Rational(1), Rational(0), Rational(0)}), LinearAlgebraError);
  QSubspace line = QSubspace::span({{Rational(1), Rational(0), Rational(-1)}}, 3);
  CHECK(plane.contains(line));
  QSubspace other = QSubspace::span({{Rational(1), Rational(0), Rational(0)}, {Rational(0), Rational(0), Rational(1)}}, 3);
  CHECK(plane.intersect(other) == line);
}

TEST_CASE("property: rank plus nullity equals the column count") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = rng() % 6, c = rng() % 6;
    QMatrix m = random_matrix(rng, r, c, -2, 2);
    QSubspace ker = kernel_basis(m);
    CHECK(rank(m) + ker.dim() == c);
    for (const auto& b : ker.basis()) CHECK((m * b) == QVector(r));
    CHECK(image_space(m).dim() == rank(m));
    CHECK(rank(m.transpose()) == rank(m));
  }
}

TEST_CASE("property: compounds are multiplicative and detect rank") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t a = 1 + rng() % 4, b = 1 + rng() % 4, c = 1 + rng() % 4;
    QMatrix x = random_matrix(rng, a, b), y = random_matrix(rng, b, c);
    for (std::size_t k = 0; k <= std::min({a, b, c}); ++k) CHECK(compound(x * y, k) == compound(x, k) * compound(y, k));
    std::size_t r = rank(x);
    if (r < std::min(a, b)) CHECK(compound(x, r + 1).is_zero());
    if (r > 0) CHECK_FALSE(compound(x, r).is_zero());
  }
}

TEST_CASE("property: determinant is multiplicative and matches the top compound") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng() % 4;
    QMatrix x = random_matrix(rng, n, n), y = random_matrix(rng, n, n);
    CHECK(determinant(x * y) == determinant(x) * determinant(y));
    CHECK(compound(x, n)(0, 0) == determinant(x));
  }
}

TEST_CASE("property: spans are canonical") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 60; ++trial) {
    QMatrix gens = random_matrix(rng, 3, 4);
    QMatrix mix = random_matrix(rng, 3, 3);
    if (determinant(mix) == 0) continue;
    QMatrix other = mix * gens;
    std::vector<QVector> a, b;
    for (std::size_t i = 0; i < 3; ++i) {
      a.emplace_back(gens.row(i).begin(), gens.row(i).end());
      b.emplace_back(other.row(i).begin(), other.row(i).end());
    }
    CHECK(QSubspace::span(a, 4) == QSubspace::span(b, 4));
  }
}
