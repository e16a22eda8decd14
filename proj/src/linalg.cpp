#include "cmpairs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cmpairs {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

ComplexMatrix shifted(const ComplexMatrix& a, Complex z) {
  ComplexMatrix m = a;
  for (int i = 0; i < m.rows(); ++i) m(i, i) -= z;
  return m;
}

namespace {

// In-place LU with partial pivoting; returns the permutation sign, or 0 if a
// pivot vanished exactly. perm, when non-null, receives the row order.
double lu_decompose(ComplexMatrix& m, std::vector<int>* perm) {
  const int n = m.rows();
  double sign = 1.0;
  if (perm) {
    perm->resize(n);
    std::iota(perm->begin(), perm->end(), 0);
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(m(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(m(r, col));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      if (perm) std::swap((*perm)[piv], (*perm)[col]);
      sign = -sign;
    }
    const Complex inv = 1.0 / m(col, col);
    for (int r = col + 1; r < n; ++r) {
      const Complex f = m(r, col) * inv;
      m(r, col) = f;
      for (int j = col + 1; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return sign;
}

}  // namespace

Complex det(ComplexMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix must be square");
  const double sign = lu_decompose(m, nullptr);
  if (sign == 0.0) return Complex{0.0, 0.0};
  Complex d{sign, 0.0};
  for (int i = 0; i < m.rows(); ++i) d *= m(i, i);
  return d;
}

std::vector<Complex> solve(ComplexMatrix a, std::vector<Complex> b) {
  const int n = a.rows();
  if (a.cols() != n || int(b.size()) != n) throw std::invalid_argument("solve: shape mismatch");
  std::vector<int> perm;
  if (lu_decompose(a, &perm) == 0.0) throw std::runtime_error("solve: singular matrix");
  std::vector<Complex> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[perm[i]];
  for (int i = 1; i < n; ++i) {
    for (int j = 0; j < i; ++j) x[i] -= a(i, j) * x[j];
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= a(i, j) * x[j];
    x[i] /= a(i, i);
  }
  return x;
}

namespace {

void hessenberg(ComplexMatrix& a) {
  const int n = a.rows();
  for (int col = 0; col < n - 2; ++col) {
    // Householder on rows col+1..n-1 of column col.
    double norm = 0.0;
    for (int r = col + 1; r < n; ++r) norm += std::norm(a(r, col));
    norm = std::sqrt(norm);
    if (norm < 1e-300) continue;
    Complex alpha = a(col + 1, col);
    const double aa = std::abs(alpha);
    const Complex phase = aa > 0 ? alpha / aa : Complex{1.0, 0.0};
    const Complex v1 = alpha + phase * norm;
    std::vector<Complex> v(n, Complex{0.0, 0.0});
    v[col + 1] = v1;
    for (int r = col + 2; r < n; ++r) v[r] = a(r, col);
    double vnorm2 = 0.0;
    for (int r = col + 1; r < n; ++r) vnorm2 += std::norm(v[r]);
    if (vnorm2 < 1e-300) continue;
    // A <- (I - 2 v v*/|v|^2) A (I - 2 v v*/|v|^2)
    for (int j = 0; j < n; ++j) {
      Complex s{0.0, 0.0};
      for (int r = col + 1; r < n; ++r) s += std::conj(v[r]) * a(r, j);
      s *= 2.0 / vnorm2;
      for (int r = col + 1; r < n; ++r) a(r, j) -= v[r] * s;
    }
    for (int i = 0; i < n; ++i) {
      Complex s{0.0, 0.0};
      for (int r = col + 1; r < n; ++r) s += a(i, r) * v[r];
      s *= 2.0 / vnorm2;
      for (int r = col + 1; r < n; ++r) a(i, r) -= s * std::conj(v[r]);
    }
  }
}

Complex wilkinson_shift(const ComplexMatrix& a, int hi) {
  const Complex h00 = a(hi - 1, hi - 1), h01 = a(hi - 1, hi);
  const Complex h10 = a(hi, hi - 1), h11 = a(hi, hi);
  const Complex tr = h00 + h11;
  const Complex dt = h00 * h11 - h01 * h10;
  const Complex disc = std::sqrt(tr * tr - 4.0 * dt);
  const Complex l1 = 0.5 * (tr + disc);
  const Complex l2 = 0.5 * (tr - disc);
  return (std::abs(l1 - h11) < std::abs(l2 - h11)) ? l1 : l2;
}

}  // namespace

std::vector<Complex> eigenvalues(ComplexMatrix m, double tol, int max_iter) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues: matrix must be square");
  const int n = m.rows();
  std::vector<Complex> eig;
  eig.reserve(n);
  if (n == 0) return eig;
  hessenberg(m);

  int hi = n - 1;
  int iter = 0;
  int since_deflation = 0;
  while (hi > 0) {
    if (++iter > max_iter) throw std::runtime_error("eigenvalues: QR iteration did not converge");
    // Deflate converged subdiagonals.
    bool deflated = false;
    for (int k = hi; k > 0; --k) {
      const double off = std::abs(m(k, k - 1));
      const double scale = std::abs(m(k, k)) + std::abs(m(k - 1, k - 1));
      if (off <= tol * std::max(scale, 1e-30)) {
        m(k, k - 1) = Complex{0.0, 0.0};
        if (k == hi) {
          eig.push_back(m(hi, hi));
          --hi;
          deflated = true;
          since_deflation = 0;
        }
        break;
      }
    }
    if (deflated) continue;
    if (hi == 0) break;

    // Shifted QR sweep on the active block 0..hi via Givens rotations. An
    // occasional exceptional shift breaks the cycling that a pure Wilkinson
    // shift exhibits on symmetric spectra (e.g. roots of unity).
    Complex mu = wilkinson_shift(m, hi);
    if (++since_deflation % 16 == 0) {
      mu = m(hi, hi) + Complex{0.7351, 0.2846} * std::abs(m(hi, hi - 1));
    }
    for (int i = 0; i <= hi; ++i) m(i, i) -= mu;
    std::vector<std::pair<Complex, Complex>> rot(hi);  // (c, s) per column
    for (int k = 0; k < hi; ++k) {
      const Complex a0 = m(k, k), b0 = m(k + 1, k);
      const double r = std::sqrt(std::norm(a0) + std::norm(b0));
      Complex c{1.0, 0.0}, s{0.0, 0.0};
      if (r > 1e-300) {
        c = a0 / r;
        s = b0 / r;
      }
      rot[k] = {c, s};
      for (int j = k; j <= hi; ++j) {
        const Complex t1 = m(k, j), t2 = m(k + 1, j);
        m(k, j) = std::conj(c) * t1 + std::conj(s) * t2;
        m(k + 1, j) = -s * t1 + c * t2;
      }
    }
    for (int k = 0; k < hi; ++k) {
      const auto [c, s] = rot[k];
      for (int i = 0; i <= std::min(k + 2, hi); ++i) {
        const Complex t1 = m(i, k), t2 = m(i, k + 1);
        m(i, k) = t1 * c + t2 * s;
        m(i, k + 1) = -t1 * std::conj(s) + t2 * std::conj(c);
      }
    }
    for (int i = 0; i <= hi; ++i) m(i, i) += mu;
  }
  eig.push_back(m(0, 0));
  return eig;
}

std::vector<Complex> poly_roots(std::span<const Complex> coeffs) {
  // Trim negligible leading coefficients.
  int d = int(coeffs.size()) - 1;
  double scale = 0.0;
  for (const Complex& c : coeffs) scale = std::max(scale, std::abs(c));
  while (d > 0 && std::abs(coeffs[d]) < 1e-13 * scale) --d;
  if (d <= 0) return {};
  ComplexMatrix comp(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = Complex{1.0, 0.0};
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -coeffs[i] / coeffs[d];
  return eigenvalues(comp);
}

double match_multisets(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("match_multisets: size mismatch");
  const int n = int(a.size());
  if (n == 0) return 0.0;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best_sum = -1.0, best_max = 0.0;
  do {
    double sum = 0.0, mx = 0.0;
    for (int i = 0; i < n; ++i) {
      const double dd = std::abs(a[i] - b[perm[i]]);
      sum += dd;
      mx = std::max(mx, dd);
    }
    if (best_sum < 0.0 || sum < best_sum) {
      best_sum = sum;
      best_max = mx;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best_max;
}

}  // namespace cmpairs
