#include "cmpairs/elliptic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace cmpairs {

namespace {

constexpr double kPi = std::numbers::pi;

// log-derivatives of theta_1 from the raw derivative ratios r_k = theta^(k)/theta:
//   (log th)'    = r1
//   (log th)''   = r2 - r1^2
//   (log th)'''  = r3 - 3 r2 r1 + 2 r1^3
//   (log th)'''' = r4 - 4 r3 r1 - 3 r2^2 + 12 r2 r1^2 - 6 r1^4
//   (log th)^(5) = r5 - 5 r4 r1 - 10 r3 r2 + 20 r3 r1^2 + 30 r2^2 r1 - 60 r2 r1^3 + 24 r1^5
std::array<Complex, 6> log_theta_derivs(const std::array<Complex, 6>& t, int max_order) {
  std::array<Complex, 6> f{};
  Complex r1 = t[1] / t[0];
  Complex r2 = t[2] / t[0];
  Complex r3 = t[3] / t[0];
  f[1] = r1;
  f[2] = r2 - r1 * r1;
  if (max_order >= 3) f[3] = r3 - 3.0 * r2 * r1 + 2.0 * r1 * r1 * r1;
  if (max_order >= 4) {
    Complex r4 = t[4] / t[0];
    f[4] = r4 - 4.0 * r3 * r1 - 3.0 * r2 * r2 + 12.0 * r2 * r1 * r1 - 6.0 * r1 * r1 * r1 * r1;
    if (max_order >= 5) {
      Complex r5 = t[5] / t[0];
      f[5] = r5 - 5.0 * r4 * r1 - 10.0 * r3 * r2 + 20.0 * r3 * r1 * r1 + 30.0 * r2 * r2 * r1 -
             60.0 * r2 * r1 * r1 * r1 + 24.0 * r1 * r1 * r1 * r1 * r1;
    }
  }
  return f;
}

}  // namespace

Lattice::Lattice(Complex omega1, Complex omega2) : omega1_(omega1), omega2_(omega2) {
  tau_ = omega2_ / omega1_;
  if (!(tau_.imag() > 0.0)) {
    throw std::invalid_argument("Lattice: Im(omega2/omega1) must be positive");
  }
  i_pi_tau_ = kImagUnit * kPi * tau_;
  q_ = std::exp(i_pi_tau_);
  const double abs_q = std::abs(q_);

  // Truncation: keep terms until |q|^(K^2 - 1/4) * (2K+1)^5 < 1e-18 relative
  // to the leading term bound, covering all derivative orders used.
  int terms = 4;
  while (terms < 64 &&
         std::pow(abs_q, double(terms) * terms - 0.25) * std::pow(2.0 * terms + 1.0, 5.0) >= 1e-18) {
    ++terms;
  }
  if (terms >= 64) accuracy_warning_ = true;
  series_terms_ = std::min(terms + 2, 64);

  const auto th0 = theta1(Complex{0.0, 0.0}, 3);
  theta1_prime0_ = th0[1];
  eta1_ = -kPi * kPi * th0[3] / (12.0 * omega1_ * th0[1]);

  // Lattice invariants from Eisenstein q-series in Q = q^2.
  {
    const Complex Q = q_ * q_;
    Complex e4{1.0, 0.0}, e6{1.0, 0.0}, Qk{1.0, 0.0};
    for (int k = 1; k < 512; ++k) {
      Qk *= Q;
      if (std::abs(Qk) * std::pow(double(k), 5.0) < 1e-20) break;
      const double k3 = double(k) * k * k;
      e4 += 240.0 * k3 * Qk / (1.0 - Qk);
      e6 -= 504.0 * k3 * double(k) * k * Qk / (1.0 - Qk);
    }
    const Complex c = kPi / (2.0 * omega1_);
    const Complex c2 = c * c;
    g2_ = c2 * c2 * (4.0 / 3.0) * e4;
    g3_ = c2 * c2 * c2 * (8.0 / 27.0) * e6;
  }

  // eta2 is forced by the Legendre relation so the quasi-period bookkeeping
  // stays exactly self-consistent.
  eta2_ = (eta1_ * omega2_ - kImagUnit * kPi / 2.0) / omega1_;

  // Construction self-check: recompute eta2 independently on the modularly
  // transformed lattice (omega1~, omega2~) = (omega2, -omega1), whose nome is
  // exp(-i*pi/tau), and verify Legendre against it.
  {
    const Complex tau_s = -1.0 / tau_;
    const Complex q_s = std::exp(kImagUnit * kPi * tau_s);
    const double abs_qs = std::abs(q_s);
    int terms_s = 4;
    while (terms_s < 64 &&
           std::pow(abs_qs, double(terms_s) * terms_s - 0.25) * std::pow(2.0 * terms_s + 1.0, 5.0) >=
               1e-18) {
      ++terms_s;
    }
    Complex t1 = {0.0, 0.0}, t3 = {0.0, 0.0};
    for (int n = 0; n < terms_s + 2; ++n) {
      const Complex qp = std::exp(kImagUnit * kPi * tau_s * (n + 0.5) * (n + 0.5));
      const double odd = 2.0 * n + 1.0;
      const double sign = (n & 1) ? -1.0 : 1.0;
      t1 += 2.0 * sign * odd * qp;
      t3 -= 2.0 * sign * odd * odd * odd * qp;
    }
    const Complex eta2_indep = -kPi * kPi * t3 / (12.0 * omega2_ * t1);
    const Complex legendre = eta1_ * omega2_ - eta2_indep * omega1_;
    const Complex expected = kImagUnit * kPi / 2.0;
    if (std::abs(legendre - expected) > 1e-9 * std::max(1.0, std::abs(eta1_ * omega2_))) {
      std::ostringstream os;
      os << "Lattice: Legendre self-check failed, |defect| = " << std::abs(legendre - expected);
      throw std::runtime_error(os.str());
    }
  }

  const Complex p1 = 2.0 * omega1_, p2 = 2.0 * omega2_;
  const double det = p1.real() * p2.imag() - p1.imag() * p2.real();
  inv_cell_[0][0] = p2.imag() / det;
  inv_cell_[0][1] = -p2.real() / det;
  inv_cell_[1][0] = -p1.imag() / det;
  inv_cell_[1][1] = p1.real() / det;

  singular_radius_ = 1e-6 * std::min(std::abs(p1), std::abs(p2));
}

std::array<Complex, 6> Lattice::theta1(Complex u, int max_order) const {
  // theta_1(u) = -i sum_n (-1)^n [exp(A+) - exp(A-)],
  //   A+- = i*pi*tau*(n+1/2)^2 +- (2n+1)*i*u,
  // and the k-th u-derivative carries the weight (i(2n+1))^k with e- flipped
  // in sign for odd k. Pairing the exponents keeps every term bounded after
  // argument reduction, so nothing overflows even for thin lattices.
  std::array<Complex, 6> acc{};
  for (int n = 0; n < series_terms_; ++n) {
    const Complex base = i_pi_tau_ * ((n + 0.5) * (n + 0.5));
    const Complex arg = Complex(0.0, 2.0 * n + 1.0) * u;
    const Complex ep = std::exp(base + arg);
    const Complex em = std::exp(base - arg);
    const double sign = (n & 1) ? -1.0 : 1.0;
    Complex w{sign, 0.0};
    const Complex iodd{0.0, 2.0 * n + 1.0};
    for (int k = 0; k <= max_order; ++k) {
      acc[k] += w * ((k & 1) ? (ep + em) : (ep - em));
      w *= iodd;
    }
  }
  for (int k = 0; k <= max_order; ++k) acc[k] *= Complex{0.0, -1.0};
  return acc;
}

EllipticPoint Lattice::reduce(Complex x) const {
  EllipticPoint pt;
  pt.x = x;
  const double a = inv_cell_[0][0] * x.real() + inv_cell_[0][1] * x.imag();
  const double b = inv_cell_[1][0] * x.real() + inv_cell_[1][1] * x.imag();
  pt.m = std::lround(a);
  pt.n = std::lround(b);
  pt.reduced = x - 2.0 * double(pt.m) * omega1_ - 2.0 * double(pt.n) * omega2_;
  // Rounding in cell coordinates need not give the Euclidean-nearest lattice
  // point on skew lattices; scan the 3x3 neighbourhood for the true distance.
  double d = std::abs(pt.reduced);
  for (int mm = -1; mm <= 1; ++mm) {
    for (int nn = -1; nn <= 1; ++nn) {
      if (mm == 0 && nn == 0) continue;
      d = std::min(d, std::abs(pt.reduced - 2.0 * double(mm) * omega1_ - 2.0 * double(nn) * omega2_));
    }
  }
  pt.dist_to_lattice = d;
  return pt;
}

namespace {

EllipticPoint reduce_checked(const Lattice& lat, Complex x, const char* who) {
  EllipticPoint pt = lat.reduce(x);
  if (pt.dist_to_lattice <= lat.singular_radius()) {
    std::ostringstream os;
    os << who << ": argument within singular radius of a lattice point (dist = "
       << pt.dist_to_lattice << ", radius = " << lat.singular_radius() << ")";
    throw SingularArgument(os.str());
  }
  return pt;
}

}  // namespace

Complex wp(const Lattice& lat, Complex x, int order) {
  if (order < 0 || order > 3) throw InvalidOrder("wp: derivative order must be in 0..3");
  const EllipticPoint pt = reduce_checked(lat, x, "wp");
  const Complex u = kPi * pt.reduced / (2.0 * lat.omega1());
  const auto th = lat.theta1(u, 2 + order);
  const auto f = log_theta_derivs(th, 2 + order);
  const Complex c = kPi / (2.0 * lat.omega1());
  if (order == 0) return -lat.eta1() / lat.omega1() - c * c * f[2];
  Complex cp = c * c * c;
  for (int k = 1; k < order; ++k) cp *= c;
  return -cp * f[2 + order];
}

Complex zeta(const Lattice& lat, Complex x) {
  const EllipticPoint pt = reduce_checked(lat, x, "zeta");
  const Complex u = kPi * pt.reduced / (2.0 * lat.omega1());
  const auto th = lat.theta1(u, 1);
  return lat.eta1() * pt.reduced / lat.omega1() + kPi / (2.0 * lat.omega1()) * th[1] / th[0] +
         2.0 * double(pt.m) * lat.eta1() + 2.0 * double(pt.n) * lat.eta2();
}

Complex sigma(const Lattice& lat, Complex x) {
  const EllipticPoint pt = lat.reduce(x);  // sigma is entire: no singular refusal
  const Complex u = kPi * pt.reduced / (2.0 * lat.omega1());
  const auto th = lat.theta1(u, 0);
  Complex s = (2.0 * lat.omega1() / kPi) *
              std::exp(lat.eta1() * pt.reduced * pt.reduced / (2.0 * lat.omega1())) * th[0] /
              lat.theta1_prime0();
  if (pt.m != 0 || pt.n != 0) {
    // sigma(z + w) = (-1)^(m+n+mn) exp(eta_w (z + w/2)) sigma(z),
    // w = 2m*omega1 + 2n*omega2, eta_w = 2m*eta1 + 2n*eta2.
    const Complex w = 2.0 * double(pt.m) * lat.omega1() + 2.0 * double(pt.n) * lat.omega2();
    const Complex eta_w = 2.0 * double(pt.m) * lat.eta1() + 2.0 * double(pt.n) * lat.eta2();
    const long parity = pt.m + pt.n + pt.m * pt.n;
    const double sign = (parity % 2 != 0) ? -1.0 : 1.0;
    s *= sign * std::exp(eta_w * (pt.reduced + 0.5 * w));
  }
  return s;
}

Complex phi(const Lattice& lat, Complex x, Complex lambda, int order) {
  if (order < 0 || order > 2) throw InvalidOrder("phi: derivative order must be in 0..2");
  reduce_checked(lat, x, "phi(x)");
  reduce_checked(lat, lambda, "phi(lambda)");
  const Complex value =
      sigma(lat, x + lambda) * std::exp(-zeta(lat, lambda) * x) / (sigma(lat, lambda) * sigma(lat, x));
  if (order == 0) return value;
  // Derivatives via the logarithmic derivative zeta(x+lambda) - zeta(x) - zeta(lambda);
  // requires x + lambda off the singular set.
  const EllipticPoint ps = lat.reduce(x + lambda);
  if (ps.dist_to_lattice <= lat.singular_radius()) {
    throw SingularArgument("phi: x + lambda within singular radius (derivative form undefined)");
  }
  const Complex d = zeta(lat, x + lambda) - zeta(lat, x) - zeta(lat, lambda);
  if (order == 1) return value * d;
  return value * (d * d - wp(lat, x + lambda) + wp(lat, x));
}

}  // namespace cmpairs
