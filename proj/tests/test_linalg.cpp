#include <doctest.h>

#include <cmath>
#include <random>

#include "cmpairs/linalg.hpp"
#include "cmpairs/types.hpp"

using namespace cmpairs;

namespace {

ComplexMatrix random_matrix(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = Complex{u(rng), u(rng)};
  }
  return m;
}

}  // namespace

TEST_CASE("determinant closed forms") {
  CHECK(det(ComplexMatrix::identity(4)) == Complex{1.0, 0.0});

  ComplexMatrix d(2, 2);
  d(0, 0) = Complex{2.0, 0.0};
  d(1, 1) = Complex{0.0, 3.0};
  CHECK(std::abs(det(d) - Complex{0.0, 6.0}) < 1e-15);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int rep = 0; rep < 20; ++rep) {
    ComplexMatrix m(2, 2);
    const Complex a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)}, e{u(rng), u(rng)};
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = e;
    CHECK(rel_err(det(m), a * e - b * c) < 1e-14);
  }

  ComplexMatrix z(3, 3);  // singular
  z(0, 0) = z(1, 0) = z(2, 0) = Complex{1.0, 0.0};
  CHECK(std::abs(det(z)) == 0.0);
}

TEST_CASE("determinant is multiplicative") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    const ComplexMatrix a = random_matrix(4, rng);
    const ComplexMatrix b = random_matrix(4, rng);
    CHECK(rel_err(det(matmul(a, b)), det(a) * det(b)) < 1e-12);
  }
}

TEST_CASE("linear solve round trip") {
  std::mt19937_64 rng(11);
  const ComplexMatrix a = random_matrix(5, rng);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> x(5);
  for (Complex& v : x) v = Complex{u(rng), u(rng)};
  std::vector<Complex> b(5);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) b[i] += a(i, j) * x[j];
  }
  const auto xs = solve(a, b);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(xs[i] - x[i]) < 1e-12);
}

TEST_CASE("eigenvalues of triangular and companion matrices") {
  // Known eigenvalues from the diagonal of a triangular matrix.
  ComplexMatrix t(3, 3);
  t(0, 0) = Complex{1.0, 1.0};
  t(1, 1) = Complex{-2.0, 0.5};
  t(2, 2) = Complex{0.3, -0.4};
  t(0, 1) = Complex{5.0, 0.0};
  t(0, 2) = Complex{-1.0, 2.0};
  t(1, 2) = Complex{0.7, 0.1};
  const auto eig = eigenvalues(t);
  const std::vector<Complex> expect{{1.0, 1.0}, {-2.0, 0.5}, {0.3, -0.4}};
  CHECK(match_multisets(eig, expect) < 1e-12);

  // Roots of z^4 = 1: equal-modulus spectrum (the hard case for QR).
  const std::vector<Complex> coeffs{{-1.0, 0.0}, {}, {}, {}, {1.0, 0.0}};
  const auto roots = poly_roots(coeffs);
  const std::vector<Complex> expect4{{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
  REQUIRE(roots.size() == 4);
  CHECK(match_multisets(roots, expect4) < 1e-10);
}

TEST_CASE("eigenvalue sum and product match trace and determinant") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 3 + int(rng() % 5);  // 3..7
    const ComplexMatrix m = random_matrix(n, rng);
    const auto eig = eigenvalues(m);
    REQUIRE(int(eig.size()) == n);
    Complex sum{0.0, 0.0}, prod{1.0, 0.0}, tr{0.0, 0.0};
    for (const Complex& e : eig) {
      sum += e;
      prod *= e;
    }
    for (int i = 0; i < n; ++i) tr += m(i, i);
    CHECK(std::abs(sum - tr) < 1e-10);
    CHECK(rel_err(prod, det(m)) < 1e-9);
  }
}

TEST_CASE("multiset matching picks the cost-minimising pairing") {
  const std::vector<Complex> a{{0.0, 0.0}, {1.0, 0.0}};
  const std::vector<Complex> b{{1.0, 0.01}, {0.0, 0.01}};
  CHECK(match_multisets(a, b) == doctest::Approx(0.01));
  CHECK_THROWS_AS(match_multisets(a, std::vector<Complex>{Complex{}}), std::invalid_argument);
}
