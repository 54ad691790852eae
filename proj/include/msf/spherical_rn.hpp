#pragma once

// Bessel-type tau-spherical functions on R^n for K = SO(n) and tau the
// defining representation: the e_1-frame projections, the closed forms, the
// independent quadrature evaluation, and the spectrum embedding.

#include "msf/diffops.hpp"
#include "msf/group_geometry.hpp"
#include "msf/numerics.hpp"

#include <optional>
#include <variant>

namespace msf {
namespace rn {

// ---------------------------------------------------------------------------
// Labels
// ---------------------------------------------------------------------------

/// Label of a bounded spherical function Phi_{s e_1, j} for the defining
/// representation of SO(n). For s = 0 the only label is j = 1 (Phi = I);
/// for s > 0, j runs over 1..2 when n > 3 and 1..3 when n = 3.
struct BesselLabel {
  int n;
  double s;
  int j;

  BesselLabel(int n_, double s_, int j_) : n(n_), s(s_), j(j_) {
    if (n < 3) throw ContractViolation("BesselLabel: n must be >= 3");
    if (s < 0.0) throw ContractViolation("BesselLabel: s must be >= 0");
    const int jmax = block_count(n, s);
    if (j < 1 || j > jmax)
      throw ContractViolation("BesselLabel: j out of range for this (n, s)");
  }

  static int block_count(int n, double s) {
    if (s == 0.0) return 1;
    return (n == 3) ? 3 : 2;
  }

  int d_tau() const { return n; }
  int d_j() const {
    if (s == 0.0) return n;
    if (n == 3) return 1;
    return (j == 1) ? 1 : n - 1;
  }

  std::string to_string() const {
    return "Phi(n=" + std::to_string(n) + ",s=" + std::to_string(s) +
           ",j=" + std::to_string(j) + ")";
  }
};

/// Label of the scalar zonal spherical function for trivial tau.
struct TrivialLabel {
  int n;
  double s;
};

// ---------------------------------------------------------------------------
// Projections of the V-splitting at a direction
// ---------------------------------------------------------------------------

/// Orthogonal projections onto the K_xi-isotypic blocks of C^n, at y = xi/|xi|:
///   n > 3: [y y^T, I - y y^T]
///   n = 3: [y y^T, (I - y y^T + i I31(y))/2, (I - y y^T - i I31(y))/2]
inline std::vector<ComplexMatrix> projections(const Eigen::VectorXd& xi) {
  const int n = static_cast<int>(xi.size());
  if (n < 3) throw ContractViolation("projections: n must be >= 3");
  const double norm = xi.norm();
  if (norm <= 0.0) throw std::invalid_argument("projections: xi must be nonzero");
  const Eigen::VectorXd y = xi / norm;
  const ComplexMatrix yyT = (y * y.transpose()).cast<Complex>();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  if (n > 3) return {yyT, id - yyT};
  const ComplexMatrix i31 = ops::symbol_I31(y);
  const Complex i(0.0, 1.0);
  return {yyT, (id - yyT + i * i31) / 2.0, (id - yyT - i * i31) / 2.0};
}

inline ComplexMatrix projection_for(const BesselLabel& label, const Eigen::VectorXd& xi) {
  return projections(xi)[label.j - 1];
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

namespace detail {

inline double ratio(int two_nu, double u) { return numerics::bessel_ratio(two_nu, u); }

}  // namespace detail

/// Closed-form evaluation of Phi_{s,j}(x). The value depends only on |x| and
/// the direction of x; the limit at x = 0 (and the s = 0 label) is I.
inline ComplexMatrix phi_closed_form(const BesselLabel& label, const Eigen::VectorXd& x) {
  const int n = label.n;
  if (x.size() != n) throw ContractViolation("phi_closed_form: dimension mismatch");
  const double r = x.norm();
  const double s = label.s;
  if (s == 0.0 || r == 0.0) return ComplexMatrix::Identity(n, n);

  const double u = s * r;
  const double cn = n * std::pow(2.0, n / 2.0 - 1.0) * std::tgamma(n / 2.0);
  const double r_low = detail::ratio(n - 2, u);  // J_{n/2-1}(u)/u^{n/2-1}
  const double r_high = detail::ratio(n, u);     // J_{n/2}(u)/u^{n/2}
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix p1 = ((x / r) * (x / r).transpose()).cast<Complex>();

  if (label.j == 1) return cn * (r_low * p1 + r_high * (id - static_cast<double>(n) * p1));

  const ComplexMatrix even =
      cn / (n - 1.0) * (r_low * (id - p1) - r_high * (id - static_cast<double>(n) * p1));
  if (n > 3) return even;

  // n = 3: the skew term splits j = 2, 3; its sign pairs j = 2 with the curl
  // eigenvalue -s (the value is real, skew parts carry the distinction).
  const ComplexMatrix odd = (cn / 2.0) * s * r_high * ops::symbol_I31(x);
  return (label.j == 2) ? (even + odd).eval() : (even - odd).eval();
}

/// Zonal spherical function of the Gelfand pair (SO(n) x| R^n, SO(n)):
/// psi_s(x) = 2^{n/2-1} Gamma(n/2) J_{n/2-1}(s|x|)/(s|x|)^{n/2-1}.
inline Complex zonal_closed_form(const TrivialLabel& label, const Eigen::VectorXd& x) {
  const double u = label.s * x.norm();
  return std::pow(2.0, label.n / 2.0 - 1.0) * std::tgamma(label.n / 2.0) *
         detail::ratio(label.n - 2, u);
}

// ---------------------------------------------------------------------------
// Quadrature evaluation (the independent path)
// ---------------------------------------------------------------------------

struct PhiEvaluation {
  ComplexMatrix value;
  std::optional<std::string> warning;
};

/// Evaluates Phi_{s,j}(x) as (n/d_j) int_{S^{n-1}} e^{-i s r y.e_1} P_{j,y}
/// dsigma(y) in the canonical frame, conjugated back with rotation_to(x).
/// Emits a warning when the rule's band limit is below the oscillation scale.
inline PhiEvaluation phi_quadrature(const BesselLabel& label, const Eigen::VectorXd& x,
                                    const geom::SphereQuadrature& rule) {
  const int n = label.n;
  if (x.size() != n) throw ContractViolation("phi_quadrature: dimension mismatch");
  if (rule.nodes.cols() != n) throw ContractViolation("phi_quadrature: rule dimension mismatch");
  PhiEvaluation out;
  const double r = x.norm();
  if (label.s == 0.0 || r == 0.0) {
    out.value = ComplexMatrix::Identity(n, n);
    return out;
  }
  const double u = label.s * r;
  // e^{iu c} needs polynomial degree about u + margin before the rule resolves it.
  if (rule.band_limit < static_cast<int>(std::ceil(u)) + 20)
    out.warning = "band limit " + std::to_string(rule.band_limit) +
                  " may be too coarse for oscillation u = " + std::to_string(u);

  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < rule.nodes.rows(); ++i) {
    y = rule.nodes.row(i);
    const Complex phase = std::exp(Complex(0.0, -u * y[0]));
    const ComplexMatrix yyT = (y * y.transpose()).cast<Complex>();
    ComplexMatrix p;
    if (label.j == 1) {
      p = yyT;
    } else if (n > 3) {
      p = ComplexMatrix::Identity(n, n) - yyT;
    } else {
      const Complex ipm = (label.j == 2) ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
      p = (ComplexMatrix::Identity(3, 3) - yyT + ipm * ops::symbol_I31(y)) / 2.0;
    }
    acc += rule.weights[i] * phase * p;
  }
  acc *= static_cast<double>(n) / label.d_j();

  // Conjugate from the canonical frame back to x: Phi(x) = k Phi(r e_1) k^T
  // with k e_1 = x/r; tau(k) = k for the defining representation.
  const Eigen::MatrixXd k = geom::rotation_to(x).matrix;
  out.value = k.cast<Complex>() * acc * k.transpose().cast<Complex>();
  return out;
}

/// Monte-Carlo evaluation of the defining K-integral
/// (d_tau/d_j) int_K e^{-i xi.(k x)} tau(k^-1) P_{j,xi} tau(k) dk, xi = s e_1.
/// A slow cross-check of the sphere reduction, not a production path.
inline ComplexMatrix phi_group_integral_mc(const BesselLabel& label, const Eigen::VectorXd& x,
                                           geom::HaarSampler& sampler, int samples) {
  const int n = label.n;
  Eigen::VectorXd xi = Eigen::VectorXd::Zero(n);
  xi[0] = label.s;
  const ComplexMatrix p = projection_for(label, Eigen::VectorXd::Unit(n, 0));
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < samples; ++i) {
    const Eigen::MatrixXd k = sampler.next().matrix;
    const Complex phase = std::exp(Complex(0.0, -xi.dot(k * x)));
    acc += phase * (k.transpose().cast<Complex>() * p * k.cast<Complex>());
  }
  return acc * (static_cast<double>(label.d_tau()) / label.d_j() / samples);
}

/// Phi as a MatrixFn (closed-form backend).
inline MatrixFn phi_fn(const BesselLabel& label) {
  MatrixFn f;
  f.n = label.n;
  f.dim = label.n;
  f.eval = [label](const Eigen::VectorXd& x) { return phi_closed_form(label, x); };
  return f;
}

// ---------------------------------------------------------------------------
// Spectrum embedding
// ---------------------------------------------------------------------------

struct SpectrumPoint {
  std::vector<Complex> coordinates;
};

/// Eigenvalue tuple (lambda_D(Phi))_D for the generators: the scalar by which
/// Q(-i xi) acts on V_{j,xi}, extracted as Tr(Q P_j)/d_j with an eigenvector
/// residual check.
inline SpectrumPoint spectrum_embed(const BesselLabel& label,
                                    const std::vector<ops::InvariantOperator>& generators,
                                    double residual_tol = 1e-10) {
  const int n = label.n;
  Eigen::VectorXd xi = Eigen::VectorXd::Zero(n);
  xi[0] = label.s;
  SpectrumPoint pt;
  if (label.s == 0.0) {
    // Phi_{0,1} = I: every generator Q(0) = 0 acts by zero.
    pt.coordinates.assign(generators.size(), Complex(0.0, 0.0));
    return pt;
  }
  const ComplexMatrix p = projection_for(label, xi);
  for (const auto& gen : generators) {
    if (gen.n != n) throw ContractViolation("spectrum_embed: generator dimension mismatch");
    const ComplexMatrix q = ops::operator_symbol_at(gen, xi);
    if (numerics::max_norm(q * p - p * q) > residual_tol)
      throw std::runtime_error("spectrum_embed: symbol does not commute with the projection");
    const Complex lambda = (q * p).trace() / static_cast<double>(label.d_j());
    if (numerics::max_norm(q * p - lambda * p) > residual_tol * std::max(1.0, std::abs(lambda)))
      throw std::runtime_error(
          "spectrum_embed: Q(-i xi) is not scalar on V_j (wrong generator/projection pairing?)");
    pt.coordinates.push_back(lambda);
  }
  return pt;
}

/// Default generator family for the defining representation on R^n.
inline std::vector<ops::InvariantOperator> default_generators(int n) {
  if (n == 3) return {ops::delta_operator(3), ops::curl_operator()};
  return {ops::delta_operator(n), ops::grad_div_operator(n)};
}

struct InjectivityReport {
  std::vector<std::pair<BesselLabel, SpectrumPoint>> points;
  bool pairwise_distinct = true;
  std::optional<std::string> collision;
};

/// Evaluates the embedding on a label grid and asserts pairwise distinctness.
inline InjectivityReport spectrum_injectivity_scan(
    const std::vector<BesselLabel>& labels,
    const std::vector<ops::InvariantOperator>& generators, double separation = 1e-9) {
  InjectivityReport rep;
  for (const auto& label : labels) rep.points.emplace_back(label, spectrum_embed(label, generators));
  for (size_t i = 0; i < rep.points.size(); ++i)
    for (size_t j = i + 1; j < rep.points.size(); ++j) {
      double diff = 0.0;
      for (size_t c = 0; c < rep.points[i].second.coordinates.size(); ++c)
        diff = std::max(diff, std::abs(rep.points[i].second.coordinates[c] -
                                       rep.points[j].second.coordinates[c]));
      if (diff <= separation) {
        rep.pairwise_distinct = false;
        rep.collision = rep.points[i].first.to_string() + " and " +
                        rep.points[j].first.to_string() + " collide in the spectrum";
        return rep;
      }
    }
  return rep;
}

}  // namespace rn
}  // namespace msf
