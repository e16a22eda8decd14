#pragma once

#include <span>
#include <vector>

#include "cmpairs/types.hpp"

namespace cmpairs {

// Dense row-major complex matrix, sized for the small Lax matrices used here.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}
  static ComplexMatrix identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Complex{1.0, 0.0};
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Complex& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Complex& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Complex> a_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

// a - z*I
ComplexMatrix shifted(const ComplexMatrix& a, Complex z);

// Determinant by LU factorisation with partial pivoting (by magnitude), row
// swaps tracked in the sign. Singular matrices give 0 up to roundoff.
Complex det(ComplexMatrix m);

// Solve a x = b by the same LU path.
std::vector<Complex> solve(ComplexMatrix a, std::vector<Complex> b);

// Eigenvalues via Hessenberg reduction and shifted complex QR iteration with
// deflation. Intended for the small matrices of this project (N <= ~16).
std::vector<Complex> eigenvalues(ComplexMatrix m, double tol = 1e-14, int max_iter = 2000);

// Roots of c[0] + c[1] z + ... + c[d] z^d via the companion matrix.
std::vector<Complex> poly_roots(std::span<const Complex> coeffs);

// Best pairing of two equal-size complex multisets, minimising the sum of
// distances over permutations (exhaustive; n <= 8). Returns the largest
// matched distance.
double match_multisets(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace cmpairs
