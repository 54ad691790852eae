#pragma once

// Concrete SO(n) elements, Haar sampling, deterministic quadrature on SO(3),
// spheres and the circle, and the e_1-frame maps used by the analytic layers.

#include "msf/numerics.hpp"

#include <cstdint>
#include <random>

namespace msf {
namespace geom {

// ---------------------------------------------------------------------------
// Group elements
// ---------------------------------------------------------------------------

/// A special-orthogonal matrix, validated on construction:
/// ||Q^T Q - I||_max <= 1e-12 and det Q = +1 within 1e-12.
struct OrthogonalElement {
  Eigen::MatrixXd matrix;

  explicit OrthogonalElement(Eigen::MatrixXd m) : matrix(std::move(m)) {
    if (matrix.rows() != matrix.cols() || matrix.rows() < 1)
      throw ContractViolation("OrthogonalElement: matrix must be square");
    const double ortho_err =
        (matrix.transpose() * matrix - Eigen::MatrixXd::Identity(matrix.rows(), matrix.cols()))
            .cwiseAbs()
            .maxCoeff();
    if (ortho_err > 1e-12)
      throw ContractViolation("OrthogonalElement: not orthogonal (residual " +
                              std::to_string(ortho_err) + ")");
    const double det = matrix.determinant();
    if (std::fabs(det - 1.0) > 1e-12)
      throw ContractViolation("OrthogonalElement: determinant is not +1");
  }

  int dim() const { return static_cast<int>(matrix.rows()); }
};

// ---------------------------------------------------------------------------
// Haar sampling on SO(n)
// ---------------------------------------------------------------------------

/// Deterministic Haar sampler: Gaussian matrix, QR with the R-diagonal sign
/// correction, then a determinant fix by negating the last column (the map
/// O(n)^- -> SO(n) is measure preserving). Owns its RNG state.
class HaarSampler {
 public:
  HaarSampler(int n, std::uint64_t seed) : n_(n), seed_(seed), rng_(seed) {
    if (n < 1) throw ContractViolation("HaarSampler: n must be >= 1");
  }

  int dim() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  long count() const { return count_; }

  OrthogonalElement next() {
    ++count_;
    if (n_ == 1) return OrthogonalElement(Eigen::MatrixXd::Ones(1, 1));
    Eigen::MatrixXd a(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) a(i, j) = gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n_; ++j)
      if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    if (q.determinant() < 0.0) q.col(n_ - 1) = -q.col(n_ - 1);
    return OrthogonalElement(std::move(q));
  }

 private:
  // Box-Muller over explicit 53-bit uniforms; keeps the stream independent of
  // the standard library's distribution implementations.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do { u1 = uniform01(); } while (u1 <= 0.0);
    const double u2 = uniform01();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    spare_ = rad * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return rad * std::cos(2.0 * kPi * u2);
  }

  double uniform01() { return (rng_() >> 11) * 0x1.0p-53; }

  int n_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  long count_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline std::vector<OrthogonalElement> haar_samples(int n, int count, std::uint64_t seed) {
  if (count < 1) throw ContractViolation("haar_samples: count must be >= 1");
  HaarSampler sampler(n, seed);
  std::vector<OrthogonalElement> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(sampler.next());
  return out;
}

// ---------------------------------------------------------------------------
// Deterministic quadrature rules
// ---------------------------------------------------------------------------

/// Probability-normalized rule over a rotation group.
struct RotationQuadrature {
  std::vector<Eigen::Matrix3d> nodes;
  std::vector<double> weights;
};

/// Probability-normalized rule over S^{n-1}; nodes are rows.
struct SphereQuadrature {
  Eigen::MatrixXd nodes;
  Eigen::VectorXd weights;
  int band_limit = 0;  // polynomial degree integrated exactly
};

/// Uniform rule on U(1) angles.
struct CircleQuadrature {
  Eigen::VectorXd angles;
  Eigen::VectorXd weights;
};

inline CircleQuadrature circle_quadrature(int points) {
  if (points < 1) throw ContractViolation("circle_quadrature: points must be >= 1");
  CircleQuadrature q;
  q.angles.resize(points);
  q.weights = Eigen::VectorXd::Constant(points, 1.0 / points);
  for (int i = 0; i < points; ++i) q.angles[i] = 2.0 * kPi * i / points;
  return q;
}

inline Eigen::Matrix3d rot_z(double a) {
  Eigen::Matrix3d m;
  m << std::cos(a), -std::sin(a), 0.0, std::sin(a), std::cos(a), 0.0, 0.0, 0.0, 1.0;
  return m;
}

inline Eigen::Matrix3d rot_y(double b) {
  Eigen::Matrix3d m;
  m << std::cos(b), 0.0, std::sin(b), 0.0, 1.0, 0.0, -std::sin(b), 0.0, std::cos(b);
  return m;
}

/// Euler-angle product rule on SO(3): trapezoid in alpha and gamma, Gauss-
/// Legendre in cos(beta). Integrates matrix coefficients of irreps up to band
/// limit order-1 exactly; weights sum to 1.
inline RotationQuadrature so3_quadrature(int order) {
  if (order < 2) throw ContractViolation("so3_quadrature: order must be >= 2");
  const int m = 2 * order;
  const numerics::Quadrature1D gl = numerics::gauss_legendre(order);
  RotationQuadrature q;
  q.nodes.reserve(static_cast<size_t>(order) * m * m);
  q.weights.reserve(q.nodes.capacity());
  for (int ib = 0; ib < order; ++ib) {
    const double beta = std::acos(gl.nodes[ib]);
    const double wb = gl.weights[ib] / 2.0;
    for (int ia = 0; ia < m; ++ia) {
      const Eigen::Matrix3d za = rot_z(2.0 * kPi * ia / m);
      const Eigen::Matrix3d zy = za * rot_y(beta);
      for (int ig = 0; ig < m; ++ig) {
        q.nodes.push_back(zy * rot_z(2.0 * kPi * ig / m));
        q.weights.push_back(wb / (static_cast<double>(m) * m));
      }
    }
  }
  return q;
}

namespace detail {

inline SphereQuadrature sphere_rule_impl(int n, int level) {
  SphereQuadrature out;
  if (n == 2) {
    const int m = std::max(2 * level, 4);
    out.nodes.resize(m, 2);
    out.weights = Eigen::VectorXd::Constant(m, 1.0 / m);
    for (int i = 0; i < m; ++i) {
      const double th = 2.0 * kPi * i / m;
      out.nodes(i, 0) = std::cos(th);
      out.nodes(i, 1) = std::sin(th);
    }
    out.band_limit = 2 * level - 1;
    return out;
  }
  // Polar factor: weight (1 - c^2)^{(n-3)/2} dc on [-1, 1]. For odd n the
  // exponent is an integer and Gauss-Legendre absorbs it; for even n the
  // half power goes to the Chebyshev rule of the second kind.
  const int p = n - 3;
  numerics::Quadrature1D polar;
  Eigen::VectorXd wfac;
  if (p % 2 == 0) {
    polar = numerics::gauss_legendre(level);
    wfac = (1.0 - polar.nodes.array().square()).pow(p / 2).matrix();
  } else {
    polar = numerics::gauss_chebyshev2(level);
    wfac = (1.0 - polar.nodes.array().square()).pow((p - 1) / 2).matrix();
  }
  const Eigen::VectorXd wpolar = polar.weights.cwiseProduct(wfac);
  const double norm = wpolar.sum();

  const SphereQuadrature sub = sphere_rule_impl(n - 1, level);
  out.nodes.resize(polar.nodes.size() * sub.nodes.rows(), n);
  out.weights.resize(out.nodes.rows());
  Eigen::Index row = 0;
  for (Eigen::Index i = 0; i < polar.nodes.size(); ++i) {
    const double c = polar.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double w = wpolar[i] / norm;
    for (Eigen::Index k = 0; k < sub.nodes.rows(); ++k, ++row) {
      out.nodes(row, 0) = c;
      out.nodes.row(row).tail(n - 1) = s * sub.nodes.row(k);
      out.weights[row] = w * sub.weights[k];
    }
  }
  out.band_limit = std::min(2 * level - 1, sub.band_limit);
  return out;
}

}  // namespace detail

/// Recursive product rule on S^{n-1} with normalized surface measure; exact
/// for polynomial integrands of degree <= 2*level-1.
inline SphereQuadrature sphere_quadrature(int n, int level) {
  if (n < 2) throw ContractViolation("sphere_quadrature: n must be >= 2");
  if (level < 1) throw ContractViolation("sphere_quadrature: level must be >= 1");
  return detail::sphere_rule_impl(n, level);
}

// ---------------------------------------------------------------------------
// Frame maps
// ---------------------------------------------------------------------------

/// A k in SO(n) with k e_1 = xi/|xi|. Householder reflection moving e_1 (the
/// better-conditioned of the two choices), then a sign flip on the last
/// coordinate to restore det = +1. Depends only on the direction of xi.
inline OrthogonalElement rotation_to(const Eigen::VectorXd& xi) {
  const int n = static_cast<int>(xi.size());
  if (n < 1) throw ContractViolation("rotation_to: empty vector");
  const double norm = xi.norm();
  if (norm <= 0.0) throw std::invalid_argument("rotation_to: zero vector");
  const Eigen::VectorXd y = xi / norm;
  if (n == 1) {
    if (y[0] < 0.0) throw std::invalid_argument("rotation_to: -e_1 unreachable in SO(1)");
    return OrthogonalElement(Eigen::MatrixXd::Ones(1, 1));
  }
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(n);
  e1[0] = 1.0;
  Eigen::MatrixXd k(n, n);
  if (y[0] >= 0.0) {
    // H maps e_1 -> -y; append a reflection S with S e_1 = -e_1 so that
    // (H S) e_1 = y and det(H S) = +1.
    const Eigen::VectorXd u = (y + e1).normalized();
    const Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) - 2.0 * u * u.transpose();
    k = h;
    k.col(0) = -k.col(0);
  } else {
    const Eigen::VectorXd u = (y - e1).normalized();
    const Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) - 2.0 * u * u.transpose();
    k = h;
    k.col(n - 1) = -k.col(n - 1);
  }
  return OrthogonalElement(std::move(k));
}

/// Block-diagonal embedding SO(n-1) -> SO(n) fixing e_1.
inline OrthogonalElement stabilizer_embed(const OrthogonalElement& h) {
  const int m = h.dim();
  Eigen::MatrixXd k = Eigen::MatrixXd::Identity(m + 1, m + 1);
  k.block(1, 1, m, m) = h.matrix;
  return OrthogonalElement(std::move(k));
}

}  // namespace geom
}  // namespace msf
