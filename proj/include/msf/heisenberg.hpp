#pragma once

// Laguerre-type spherical functions for (U(1) x| H_1, U(1), chi_q) realized
// through truncated Fock-space matrix elements of the Schroedinger
// representation, plus the functional-equation verifier on H_1.

#include "msf/group_geometry.hpp"
#include "msf/numerics.hpp"

#include <functional>

namespace msf {

class TruncationError : public std::runtime_error {
 public:
  explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

namespace heis {

/// Point (z, t) of the Heisenberg group H_1 = C x R with product
/// (z,t)(z',t') = (z + z', t + t' + Im(z conj(z'))/2). The skew part of the
/// Hermitian product is the only choice that makes the center nontrivial.
struct HeisenbergPoint {
  Complex z{0.0, 0.0};
  double t = 0.0;
};

inline HeisenbergPoint heis_mul(const HeisenbergPoint& p, const HeisenbergPoint& q) {
  return {p.z + q.z, p.t + q.t + 0.5 * std::imag(p.z * std::conj(q.z))};
}

inline HeisenbergPoint heis_inverse(const HeisenbergPoint& p) { return {-p.z, -p.t}; }

inline HeisenbergPoint heis_identity() { return {Complex(0.0, 0.0), 0.0}; }

/// U(1) automorphism action e^{i theta} . (z, t) = (e^{i theta} z, t).
inline HeisenbergPoint heis_rotate(double theta, const HeisenbergPoint& p) {
  return {std::exp(Complex(0.0, theta)) * p.z, p.t};
}

// ---------------------------------------------------------------------------
// Fock-space matrix elements
// ---------------------------------------------------------------------------

/// Truncated Fock basis {z^m : 0 <= m <= N} with the lambda-dependent
/// normalization; N bounds the matrix size of pi_lambda(z, 0).
struct FockTruncation {
  double lambda;
  int truncation;

  FockTruncation(double lambda_, int n) : lambda(lambda_), truncation(n) {
    if (lambda == 0.0) throw ContractViolation("FockTruncation: lambda must be nonzero");
    if (n < 1) throw ContractViolation("FockTruncation: truncation must be >= 1");
  }
};

constexpr int kDefaultFockTruncation = 48;

namespace detail {

/// <e_l, D(alpha) e_m> for the displacement operator D(alpha) =
/// exp(alpha a+ - conj(alpha) a), via the normal-ordered series: the lowering
/// factor truncates the sum at min(l, m), so each entry is a finite sum.
inline Complex displacement_element(int l, int m, Complex alpha) {
  const double a2 = std::norm(alpha);
  Complex sum(0.0, 0.0);
  const Complex neg_conj = -std::conj(alpha);
  for (int k = std::min(l, m); k >= 0; --k) {
    const double lg = 0.5 * (std::lgamma(l + 1.0) + std::lgamma(m + 1.0)) - std::lgamma(k + 1.0) -
                      std::lgamma(l - k + 1.0) - std::lgamma(m - k + 1.0);
    sum += std::exp(lg) * std::pow(alpha, l - k) * std::pow(neg_conj, m - k);
  }
  return std::exp(-a2 / 2.0) * sum;
}

/// Discarded mass of column m beyond row n_trunc. The entries above the
/// truncation are themselves finite sums, so the tail is summed exactly; the
/// super-exponential decay makes 60 rows equivalent to the full tail.
inline double column_tail(int m, Complex alpha, int n_trunc) {
  double tail = 0.0;
  for (int l = n_trunc + 1; l <= n_trunc + 60; ++l)
    tail += std::norm(displacement_element(l, m, alpha));
  return tail;
}

inline Complex fock_alpha(double lambda, Complex z) {
  return std::sqrt(std::fabs(lambda) / 2.0) * (lambda > 0.0 ? z : std::conj(z));
}

}  // namespace detail

/// Matrix of pi_lambda(z, 0) on the truncated Fock basis. For lambda < 0 the
/// conjugate grading applies: the matrix is the entrywise conjugate of the
/// |lambda| matrix at conj(z). Throws TruncationError when the discarded
/// column tails exceed 1e-10.
inline ComplexMatrix fock_matrix(double lambda, Complex z, const FockTruncation& trunc) {
  if (lambda == 0.0) throw ContractViolation("fock_matrix: lambda must be nonzero");
  const int n = trunc.truncation;
  const Complex alpha = detail::fock_alpha(lambda, z);
  if (detail::column_tail(n / 2, alpha, n) > 1e-10)
    throw TruncationError("fock_matrix: |z|^2 |lambda| too large for truncation N = " +
                          std::to_string(n));
  ComplexMatrix out(n + 1, n + 1);
  for (int l = 0; l <= n; ++l)
    for (int m = 0; m <= n; ++m) {
      const Complex e = detail::displacement_element(l, m, alpha);
      out(l, m) = (lambda > 0.0) ? e : std::conj(e);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Laguerre-type spherical functions
// ---------------------------------------------------------------------------

/// Phi_{lambda,m}(z,t) = e^{i lambda t} <pi_lambda(z,0) e_m, e_m>; the partial
/// trace collapses to one diagonal matrix element because every isotypic
/// subspace of P_hol (x) V_chi is one-dimensional here.
inline Complex laguerre_spherical(double lambda, int m, const HeisenbergPoint& p,
                                  const FockTruncation& trunc) {
  if (lambda == 0.0) throw ContractViolation("laguerre_spherical: lambda must be nonzero");
  if (m < 0) throw ContractViolation("laguerre_spherical: degree must be >= 0");
  if (m > trunc.truncation)
    throw TruncationError("laguerre_spherical: degree exceeds truncation");
  const Complex alpha = detail::fock_alpha(lambda, p.z);
  if (detail::column_tail(m, alpha, trunc.truncation) > 1e-10)
    throw TruncationError("laguerre_spherical: truncation too small for this |z|");
  Complex elem = detail::displacement_element(m, m, alpha);
  if (lambda < 0.0) elem = std::conj(elem);
  return std::exp(Complex(0.0, lambda * p.t)) * elem;
}

using SphericalFn = std::function<Complex(const HeisenbergPoint&)>;

inline SphericalFn laguerre_fn(double lambda, int m,
                               int truncation = kDefaultFockTruncation) {
  FockTruncation trunc(lambda, truncation);
  return [lambda, m, trunc](const HeisenbergPoint& p) {
    return laguerre_spherical(lambda, m, p, trunc);
  };
}

/// Residual |d_tau int_K tau(k^-1) Phi(h (k.h')) chi_tau(k) dk - Phi(h') Phi(h)|
/// for K = U(1) and tau = chi_q, where tau(k^-1) chi_tau(k) = 1 identically.
inline double verify_heis_functional_equation(const SphericalFn& phi, const HeisenbergPoint& p,
                                              const HeisenbergPoint& p_prime,
                                              const geom::CircleQuadrature& rule) {
  Complex lhs(0.0, 0.0);
  for (Eigen::Index i = 0; i < rule.angles.size(); ++i)
    lhs += rule.weights[i] * phi(heis_mul(p, heis_rotate(rule.angles[i], p_prime)));
  const Complex rhs = phi(p_prime) * phi(p);
  return std::abs(lhs - rhs);
}

}  // namespace heis
}  // namespace msf
