#pragma once

// Special functions, 1-D quadrature rules, finite differences and PSD tests
// shared by every other header in this library.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace msf {

using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

/// Thrown when a caller violates a documented precondition that we can detect.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

namespace numerics {

// ---------------------------------------------------------------------------
// Bessel functions J_nu for integer and half-integer orders.
//
// Orders are encoded as two_nu = 2*nu. Half-integer orders use the closed
// trigonometric forms of J_{1/2}, J_{3/2} plus upward recurrence when the
// argument dominates the order; otherwise the ascending series (evaluated in
// long double) is used. Integer orders use the ascending series for small u
// and the Hankel large-argument expansion beyond.
// ---------------------------------------------------------------------------

namespace detail {

inline long double bessel_series(double nu, long double u) {
  const long double q = u * u / 4.0L;
  long double term = std::exp(static_cast<long double>(nu) * std::log(u / 2.0L) -
                              std::lgamma(static_cast<long double>(nu) + 1.0L));
  long double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<long double>(k) * (static_cast<long double>(nu) + k));
    sum += term;
    if (std::fabs(term) < std::numeric_limits<long double>::epsilon() * std::fabs(sum)) break;
  }
  return sum;
}

// Hankel expansion J_nu(u) ~ sqrt(2/(pi u)) [P cos(chi) - Q sin(chi)],
// chi = u - (nu/2 + 1/4) pi. Truncated at the smallest term.
inline long double bessel_hankel(double nu, long double u) {
  const long double mu = 4.0L * nu * nu;
  long double p = 1.0L, q = (mu - 1.0L) / (8.0L * u);
  long double term = 1.0L;
  long double prev = std::fabs(term);
  for (int k = 1; k < 40; ++k) {
    const long double f1 = (mu - (4.0L * k - 3.0L) * (4.0L * k - 3.0L)) *
                           (mu - (4.0L * k - 1.0L) * (4.0L * k - 1.0L));
    term *= -f1 / ((2.0L * k - 1.0L) * (2.0L * k) * 64.0L * u * u);
    if (std::fabs(term) > prev) break;  // asymptotic series started diverging
    prev = std::fabs(term);
    p += term;
    const long double f2 = (mu - (4.0L * k - 1.0L) * (4.0L * k - 1.0L)) *
                           (mu - (4.0L * k + 1.0L) * (4.0L * k + 1.0L));
    q += term * f2 / ((mu - (4.0L * k - 1.0L) * (4.0L * k - 1.0L)) * (2.0L * k + 1.0L) * 8.0L * u);
    if (std::fabs(term) < 1e-20L) break;
  }
  const long double chi = u - (0.5L * nu + 0.25L) * static_cast<long double>(kPi);
  return std::sqrt(2.0L / (static_cast<long double>(kPi) * u)) *
         (p * std::cos(chi) - q * std::sin(chi));
}

inline long double bessel_halfint_trig(int two_nu, long double u) {
  const long double scale = std::sqrt(2.0L / (static_cast<long double>(kPi) * u));
  long double jm = scale * std::sin(u);                          // J_{1/2}
  if (two_nu == 1) return jm;
  long double j = scale * (std::sin(u) / u - std::cos(u));       // J_{3/2}
  for (int t = 3; t < two_nu; t += 2) {
    const long double next = (static_cast<long double>(t) / u) * j - jm;  // J_{nu+1}
    jm = j;
    j = next;
  }
  return j;
}

}  // namespace detail

/// J_nu(u) for nu = two_nu/2 >= 0 and u > 0.
inline double bessel_halfint(int two_nu, double u) {
  if (two_nu < 0) throw ContractViolation("bessel_halfint: order must be >= 0");
  if (!(u > 0.0)) throw std::domain_error("bessel_halfint: requires u > 0");
  const double nu = two_nu / 2.0;
  const long double ul = static_cast<long double>(u);
  if (two_nu % 2 == 1) {
    if (u < std::max(1.0, nu)) return static_cast<double>(detail::bessel_series(nu, ul));
    return static_cast<double>(detail::bessel_halfint_trig(two_nu, ul));
  }
  // The long-double series keeps cancellation below ~1e-13 relative up to
  // u = 16, where the Hankel expansion has already bottomed out near 1e-16.
  if (u < 16.0) return static_cast<double>(detail::bessel_series(nu, ul));
  return static_cast<double>(detail::bessel_hankel(nu, ul));
}

/// Regularized ratio J_nu(u)/u^nu, continuous through u = 0 where it equals
/// 1/(2^nu Gamma(nu+1)). Evaluation of the spherical closed forms goes
/// through this function so the origin needs no special casing upstream.
inline double bessel_ratio(int two_nu, double u) {
  if (two_nu < 0) throw ContractViolation("bessel_ratio: order must be >= 0");
  if (u < 0.0) throw std::domain_error("bessel_ratio: requires u >= 0");
  const double nu = two_nu / 2.0;
  if (u < 1e-3) {
    // Series for J_nu(u)/u^nu; three terms reach full precision here.
    const double q = u * u / 4.0;
    double term = std::exp(-nu * std::log(2.0) - std::lgamma(nu + 1.0));
    double sum = term;
    for (int k = 1; k <= 4; ++k) {
      term *= -q / (k * (nu + k));
      sum += term;
    }
    return sum;
  }
  return bessel_halfint(two_nu, u) / std::pow(u, nu);
}

// ---------------------------------------------------------------------------
// 1-D quadrature
// ---------------------------------------------------------------------------

/// Nodes and weights of a rule on an interval (or on angles).
struct Quadrature1D {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Gauss-Legendre rule on [-1, 1], exact for polynomials of degree 2*order-1.
inline Quadrature1D gauss_legendre(int order) {
  if (order < 1) throw ContractViolation("gauss_legendre: order must be >= 1");
  Quadrature1D q;
  q.nodes.resize(order);
  q.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev initial guess, then Newton on P_order.
    long double x = std::cos(static_cast<long double>(kPi) * (i + 0.75L) / (order + 0.5L));
    long double pp = 0.0L;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1.0L, p1 = x;
      if (order == 1) { p1 = x; }
      for (int k = 2; k <= order; ++k) {
        const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const long double pn = (order == 1) ? x : p1;
      const long double pnm1 = (order == 1) ? 1.0L : p0;
      pp = order * (x * pn - pnm1) / (x * x - 1.0L);
      const long double dx = pn / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    const long double w = 2.0L / ((1.0L - x * x) * pp * pp);
    q.nodes[i] = static_cast<double>(-x);
    q.nodes[order - 1 - i] = static_cast<double>(x);
    q.weights[i] = static_cast<double>(w);
    q.weights[order - 1 - i] = static_cast<double>(w);
  }
  if (order % 2 == 1) q.nodes[order / 2] = 0.0;
  return q;
}

/// Gauss-Chebyshev rule of the second kind: integrates f(c) sqrt(1-c^2) dc
/// over [-1, 1] exactly for polynomial f of degree 2*order-1.
inline Quadrature1D gauss_chebyshev2(int order) {
  if (order < 1) throw ContractViolation("gauss_chebyshev2: order must be >= 1");
  Quadrature1D q;
  q.nodes.resize(order);
  q.weights.resize(order);
  for (int k = 1; k <= order; ++k) {
    const double th = k * kPi / (order + 1);
    q.nodes[k - 1] = std::cos(th);
    q.weights[k - 1] = kPi / (order + 1) * std::sin(th) * std::sin(th);
  }
  return q;
}

/// int_0^pi exp(i u cos t) sin^k t dt, by Gauss-Legendre in t (the integrand
/// is entire, so the rule converges geometrically). Kept independent of
/// bessel_halfint so the two sides of the identity
/// 2^{k/2} sqrt(pi) Gamma((k+1)/2) J_{k/2}(u) / u^{k/2} cross-check each other.
inline Complex axial_integral(int k, double u) {
  if (k < 0) throw ContractViolation("axial_integral: k must be >= 0");
  const int order = std::max(32, static_cast<int>(std::ceil(std::fabs(u))) + 24);
  const Quadrature1D gl = gauss_legendre(order);
  Complex acc(0.0, 0.0);
  for (int i = 0; i < gl.nodes.size(); ++i) {
    const double t = (gl.nodes[i] + 1.0) * kPi / 2.0;
    acc += gl.weights[i] * (kPi / 2.0) * std::pow(std::sin(t), k) *
           std::exp(Complex(0.0, u * std::cos(t)));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Matrix predicates
// ---------------------------------------------------------------------------

inline double max_norm(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_norm(m - m.adjoint()) <= tol;
}

/// True iff the minimal eigenvalue of Hermitian M is >= -tol_eff, where
/// tol_eff = tol * max(1, max-norm of M). Non-Hermitian input (beyond the
/// same scaled tolerance) is a contract violation.
inline bool is_psd(const ComplexMatrix& m, double tol = 1e-9) {
  if (m.rows() != m.cols()) throw ContractViolation("is_psd: matrix must be square");
  const double tol_eff = tol * std::max(1.0, max_norm(m));
  if (!is_hermitian(m, tol_eff)) throw ContractViolation("is_psd: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(((m + m.adjoint()) / 2.0).eval(),
                                                  Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol_eff;
}

// ---------------------------------------------------------------------------
// Central finite differences with one Richardson level
// ---------------------------------------------------------------------------

constexpr double kDefaultFdStep = 1e-3;

using ScalarField = std::function<Complex(const Eigen::VectorXd&)>;

namespace detail {

inline Complex diff1(const ScalarField& f, const Eigen::VectorXd& x, int d, double h) {
  Eigen::VectorXd xp = x, xm = x;
  xp[d] += h;
  xm[d] -= h;
  return (f(xp) - f(xm)) / (2.0 * h);
}

inline Complex diff2(const ScalarField& f, const Eigen::VectorXd& x, int d, double h) {
  Eigen::VectorXd xp = x, xm = x;
  xp[d] += h;
  xm[d] -= h;
  return (f(xp) - 2.0 * f(x) + f(xm)) / (h * h);
}

inline Complex diff_mixed(const ScalarField& f, const Eigen::VectorXd& x, int d1, int d2,
                          double h) {
  Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
  xpp[d1] += h; xpp[d2] += h;
  xpm[d1] += h; xpm[d2] -= h;
  xmp[d1] -= h; xmp[d2] += h;
  xmm[d1] -= h; xmm[d2] -= h;
  return (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * h * h);
}

}  // namespace detail

/// Central-difference derivative of f at x with one Richardson extrapolation
/// level (steps h and h/2); total order of multi_index must be <= 2.
inline Complex central_diff_apply(const ScalarField& f, const Eigen::VectorXd& x,
                                  const std::vector<int>& multi_index,
                                  double h = kDefaultFdStep) {
  if (static_cast<Eigen::Index>(multi_index.size()) != x.size())
    throw ContractViolation("central_diff_apply: multi_index size mismatch");
  if (h <= 0.0) throw ContractViolation("central_diff_apply: h must be > 0");
  int total = 0;
  std::vector<int> dirs;
  for (size_t d = 0; d < multi_index.size(); ++d) {
    if (multi_index[d] < 0) throw ContractViolation("central_diff_apply: negative order");
    total += multi_index[d];
    for (int c = 0; c < multi_index[d]; ++c) dirs.push_back(static_cast<int>(d));
  }
  if (total > 2) throw ContractViolation("central_diff_apply: order must be <= 2");
  if (total == 0) return f(x);

  auto stencil = [&](double step) -> Complex {
    if (total == 1) return detail::diff1(f, x, dirs[0], step);
    if (dirs[0] == dirs[1]) return detail::diff2(f, x, dirs[0], step);
    return detail::diff_mixed(f, x, dirs[0], dirs[1], step);
  };
  const Complex coarse = stencil(h);
  const Complex fine = stencil(h / 2.0);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace numerics
}  // namespace msf
