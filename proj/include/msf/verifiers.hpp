#pragma once

// Property checkers shared across modules: equivariance, the functional
// equation on R^n, eigenfunction residuals, and positive-type testing.
// Every checker is deterministic given (seed, rule, inputs) and reports a
// machine-readable CheckReport.

#include "msf/diffops.hpp"
#include "msf/group_geometry.hpp"
#include "msf/numerics.hpp"

#include <variant>

namespace msf {
namespace verify {

struct CheckReport {
  std::string name;
  double max_residual = 0.0;
  double threshold = 0.0;
  bool passed = false;
  long samples = 0;
  std::uint64_t seed = 0;
  std::string rule;

  void finalize() { passed = max_residual <= threshold; }
};

// ---------------------------------------------------------------------------
// Equivariance: F(k.x) = tau(k) F(x) tau(k)^-1
// ---------------------------------------------------------------------------

using TauAction = std::function<ComplexMatrix(const Eigen::MatrixXd&)>;

inline TauAction defining_tau() {
  return [](const Eigen::MatrixXd& k) { return k.cast<Complex>().eval(); };
}

inline CheckReport check_equivariance(const MatrixFn& f, const TauAction& tau, int n_samples,
                                      const std::vector<Eigen::VectorXd>& points, double tol,
                                      std::uint64_t seed) {
  CheckReport rep;
  rep.name = "equivariance";
  rep.threshold = tol;
  rep.samples = static_cast<long>(n_samples) * points.size();
  rep.seed = seed;
  rep.rule = "haar-mc";
  geom::HaarSampler sampler(f.n, seed);
  for (int i = 0; i < n_samples; ++i) {
    const Eigen::MatrixXd k = sampler.next().matrix;
    const ComplexMatrix tk = tau(k);
    const ComplexMatrix tk_inv = tau(k.transpose());
    for (const auto& x : points) {
      const ComplexMatrix lhs = f(k * x);
      const ComplexMatrix rhs = tk * f(x) * tk_inv;
      rep.max_residual = std::max(rep.max_residual, numerics::max_norm(lhs - rhs));
    }
  }
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------
// Functional equation on R^n:
//   d_tau int_K tau(k^-1) Psi(x + k.x') chi_tau(k) dk = Psi(x') Psi(x)
// ---------------------------------------------------------------------------

/// Deterministic Euler-angle rule; n = 3 with the defining tau.
struct So3RuleCfg {
  int order = 24;
};

/// Monte Carlo over Haar samples of K. With rao_blackwell the SO(n-1)
/// stabilizer fiber is integrated in closed form (valid for n >= 4) and only
/// the orbit coordinate v = k.x'/|x'| is sampled; unbiased either way.
struct McHaarCfg {
  long samples = 200000;
  std::uint64_t seed = 0;
  bool rao_blackwell = true;
};

/// Monte Carlo in which the sample budget is spent on Haar-rotated copies of
/// a deterministic sphere rule applied to the fiber-reduced integrand
/// (n >= 4). Unbiased with variance only from content above the rule's band
/// limit, so it reaches quadrature-like accuracy at the same budget.
struct RotatedRuleCfg {
  long samples = 200000;
  std::uint64_t seed = 0;
  int level = 0;  // 0: choose from the oscillation scale
};

/// Trivial tau (d_tau = 1, chi = 1): the K-integral is exactly a sphere
/// integral; any n >= 2.
struct TrivialTauSphereCfg {
  int level = 32;
};

using FunctionalEqRule = std::variant<So3RuleCfg, McHaarCfg, RotatedRuleCfg, TrivialTauSphereCfg>;

namespace detail {

// Exact conditional expectation of tau(k^-1) chi_tau(k) over the stabilizer
// fiber {k : k w = v}, for the defining tau on R^n, n >= 4:
//   E[k^T tr(k) | k w = v] = (v.w) w v^T + (I - w w^T)(I - v v^T)/(n-1).
inline Eigen::MatrixXd fiber_moment(const Eigen::VectorXd& w, const Eigen::VectorXd& v) {
  const int n = static_cast<int>(w.size());
  const Eigen::MatrixXd pw = Eigen::MatrixXd::Identity(n, n) - w * w.transpose();
  const Eigen::MatrixXd pv = Eigen::MatrixXd::Identity(n, n) - v * v.transpose();
  return v.dot(w) * (w * v.transpose()) + pw * pv / (n - 1.0);
}

struct McAccumulator {
  ComplexMatrix sum;
  Eigen::MatrixXd sum_sq_re, sum_sq_im;
  long count = 0;

  explicit McAccumulator(int d)
      : sum(ComplexMatrix::Zero(d, d)),
        sum_sq_re(Eigen::MatrixXd::Zero(d, d)),
        sum_sq_im(Eigen::MatrixXd::Zero(d, d)) {}

  void add(const ComplexMatrix& g) {
    sum += g;
    sum_sq_re += g.real().cwiseAbs2();
    sum_sq_im += g.imag().cwiseAbs2();
    ++count;
  }

  ComplexMatrix mean() const { return sum / static_cast<double>(count); }

  double three_sigma() const {
    const ComplexMatrix m = mean();
    const Eigen::MatrixXd var_re = (sum_sq_re / count - m.real().cwiseAbs2()).cwiseMax(0.0);
    const Eigen::MatrixXd var_im = (sum_sq_im / count - m.imag().cwiseAbs2()).cwiseMax(0.0);
    return 3.0 * std::sqrt((var_re + var_im).maxCoeff() / count);
  }
};

}  // namespace detail

/// LHS of the functional equation for the defining tau, by the chosen rule.
/// Returns the value and, for Monte Carlo rules, a 3-sigma half width.
inline std::pair<ComplexMatrix, double> functional_eq_lhs(const MatrixFn& psi,
                                                          const Eigen::VectorXd& x,
                                                          const Eigen::VectorXd& x_prime,
                                                          const FunctionalEqRule& rule) {
  const int n = psi.n;
  if (x_prime.norm() == 0.0) return {psi(x), 0.0};  // the fiber average is Psi(x) exactly

  if (const auto* so3 = std::get_if<So3RuleCfg>(&rule)) {
    if (n != 3) throw ContractViolation("functional_eq_lhs: SO(3) rule needs n = 3");
    const geom::RotationQuadrature q = geom::so3_quadrature(so3->order);
    ComplexMatrix acc = ComplexMatrix::Zero(3, 3);
    for (size_t i = 0; i < q.nodes.size(); ++i) {
      const Eigen::Matrix3d& k = q.nodes[i];
      acc += q.weights[i] * k.trace() *
             (k.transpose().cast<Complex>() * psi(x + k * x_prime));
    }
    return {3.0 * acc, 0.0};
  }

  if (const auto* mc = std::get_if<McHaarCfg>(&rule)) {
    geom::HaarSampler sampler(n, mc->seed);
    detail::McAccumulator acc(n);
    if (mc->rao_blackwell && n >= 4) {
      const double rp = x_prime.norm();
      const Eigen::VectorXd w = x_prime / rp;
      for (long i = 0; i < mc->samples; ++i) {
        const Eigen::VectorXd v = sampler.next().matrix * w;
        acc.add(detail::fiber_moment(w, v).cast<Complex>() * psi(x + rp * v));
      }
    } else {
      for (long i = 0; i < mc->samples; ++i) {
        const Eigen::MatrixXd k = sampler.next().matrix;
        acc.add(k.trace() * (k.transpose().cast<Complex>() * psi(x + k * x_prime)));
      }
    }
    return {static_cast<double>(n) * acc.mean(), n * acc.three_sigma()};
  }

  if (const auto* rr = std::get_if<RotatedRuleCfg>(&rule)) {
    if (n < 4) throw ContractViolation("functional_eq_lhs: rotated rule needs n >= 4");
    const double rp = x_prime.norm();
    const Eigen::VectorXd w = x_prime / rp;
    int level = rr->level;
    if (level == 0) {
      // Enough polynomial degree for e^{i s |x + r' v|}-type oscillation.
      const double scale = (x.norm() + rp) * 4.0;
      level = std::max(12, static_cast<int>(std::ceil(scale)) + 10);
    }
    const geom::SphereQuadrature sq = geom::sphere_quadrature(n, level);
    const long batches = std::max<long>(1, rr->samples / static_cast<long>(sq.nodes.rows()));
    geom::HaarSampler sampler(n, rr->seed);
    detail::McAccumulator acc(n);
    Eigen::VectorXd v(n);
    for (long b = 0; b < batches; ++b) {
      const Eigen::MatrixXd rho = sampler.next().matrix;
      ComplexMatrix batch = ComplexMatrix::Zero(n, n);
      for (Eigen::Index i = 0; i < sq.nodes.rows(); ++i) {
        v = rho * sq.nodes.row(i).transpose();
        batch += sq.weights[i] * (detail::fiber_moment(w, v).cast<Complex>() * psi(x + rp * v));
      }
      acc.add(batch);
    }
    return {static_cast<double>(n) * acc.mean(),
            batches > 1 ? n * acc.three_sigma() : 0.0};
  }

  const auto& tt = std::get<TrivialTauSphereCfg>(rule);
  if (psi.dim != 1) throw ContractViolation("functional_eq_lhs: trivial tau expects 1x1 values");
  const geom::SphereQuadrature sq = geom::sphere_quadrature(n, tt.level);
  ComplexMatrix acc = ComplexMatrix::Zero(1, 1);
  const double rp = x_prime.norm();
  for (Eigen::Index i = 0; i < sq.nodes.rows(); ++i)
    acc += sq.weights[i] * psi(x + rp * sq.nodes.row(i).transpose());
  return {acc, 0.0};
}

inline CheckReport check_functional_equation_rn(
    const MatrixFn& psi, const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& pairs,
    const FunctionalEqRule& rule, double tol) {
  CheckReport rep;
  rep.name = "functional-equation-rn";
  rep.threshold = tol;
  double band = 0.0;
  for (const auto& [x, xp] : pairs) {
    const auto [lhs, sigma3] = functional_eq_lhs(psi, x, xp, rule);
    const ComplexMatrix rhs = psi(xp) * psi(x);
    rep.max_residual = std::max(rep.max_residual, numerics::max_norm(lhs - rhs));
    band = std::max(band, sigma3);
  }
  if (const auto* so3 = std::get_if<So3RuleCfg>(&rule)) {
    rep.rule = "so3-euler(order=" + std::to_string(so3->order) + ")";
    rep.samples = 4L * so3->order * so3->order * so3->order * pairs.size();
  } else if (const auto* mc = std::get_if<McHaarCfg>(&rule)) {
    rep.rule = std::string(mc->rao_blackwell ? "mc-haar-rb" : "mc-haar") +
               "(3sigma=" + std::to_string(band) + ")";
    rep.samples = mc->samples * static_cast<long>(pairs.size());
    rep.seed = mc->seed;
  } else if (const auto* rr = std::get_if<RotatedRuleCfg>(&rule)) {
    rep.rule = "mc-rotated-rule(3sigma=" + std::to_string(band) + ")";
    rep.samples = rr->samples * static_cast<long>(pairs.size());
    rep.seed = rr->seed;
  } else {
    rep.rule = "sphere(trivial-tau)";
    rep.samples = static_cast<long>(pairs.size());
  }
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------
// Eigenfunction residuals
// ---------------------------------------------------------------------------

inline CheckReport check_eigenfunction(const MatrixFn& psi, const ops::InvariantOperator& op,
                                       Complex expected,
                                       const std::vector<Eigen::VectorXd>& points, double tol,
                                       double h = numerics::kDefaultFdStep) {
  CheckReport rep;
  rep.name = "eigenfunction(" + op.name + ")";
  rep.threshold = tol;
  rep.samples = static_cast<long>(points.size());
  rep.rule = "central-diff(h=" + std::to_string(h) + ")";
  for (const auto& x : points) {
    const ComplexMatrix lhs = ops::apply_operator(op, psi, x, h);
    rep.max_residual =
        std::max(rep.max_residual, numerics::max_norm(lhs - expected * psi(x)));
  }
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------
// Positive type
// ---------------------------------------------------------------------------

/// Positive-type test over an abstract group: assembles the block Gram matrix
/// (F(x_j x_k^-1))_{jk} for each point set and tests it PSD; also checks
/// F(e) PSD, F(x^-1) = F(x)^*, and F(x)^* F(x) <= F(e)^2.
template <typename Point>
CheckReport check_positive_type(const std::function<ComplexMatrix(const Point&)>& f,
                                const std::function<Point(const Point&, const Point&)>& mul,
                                const std::function<Point(const Point&)>& inverse,
                                const Point& identity,
                                const std::vector<std::vector<Point>>& point_sets,
                                const std::vector<std::vector<Eigen::VectorXcd>>& vector_sets,
                                double tol) {
  CheckReport rep;
  rep.name = "positive-type";
  rep.threshold = tol;
  rep.rule = "block-gram";
  const ComplexMatrix fe = f(identity);
  const int d = static_cast<int>(fe.rows());

  auto psd_defect = [&](const ComplexMatrix& m) {
    const ComplexMatrix herm = (m + m.adjoint()) / 2.0;
    const double herm_err = numerics::max_norm(m - herm);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
    return std::max(herm_err, std::max(0.0, -es.eigenvalues().minCoeff()));
  };

  // (i) F(e) is positive semi-definite.
  rep.max_residual = std::max(rep.max_residual, psd_defect(fe));

  for (const auto& set : point_sets) {
    const int npts = static_cast<int>(set.size());
    ComplexMatrix gram(npts * d, npts * d);
    for (int j = 0; j < npts; ++j)
      for (int k = 0; k < npts; ++k)
        gram.block(j * d, k * d, d, d) = f(mul(set[j], inverse(set[k])));
    rep.max_residual = std::max(rep.max_residual, psd_defect(gram));
    rep.samples += npts;

    // Scalar Gram matrices (<F(x_j x_k^-1) v_k, v_j>) for supplied vectors.
    for (const auto& vecs : vector_sets) {
      if (static_cast<int>(vecs.size()) < npts) continue;
      ComplexMatrix scalar_gram(npts, npts);
      for (int j = 0; j < npts; ++j)
        for (int k = 0; k < npts; ++k)
          scalar_gram(j, k) =
              vecs[j].adjoint() * gram.block(j * d, k * d, d, d) * vecs[k];
      rep.max_residual = std::max(rep.max_residual, psd_defect(scalar_gram));
    }

    // (ii) and (v) on the sampled points.
    for (const auto& xpt : set) {
      const ComplexMatrix fx = f(xpt);
      rep.max_residual =
          std::max(rep.max_residual, numerics::max_norm(f(inverse(xpt)) - fx.adjoint()));
      rep.max_residual = std::max(rep.max_residual, psd_defect(fe * fe - fx.adjoint() * fx));
    }
  }
  rep.finalize();
  return rep;
}

}  // namespace verify
}  // namespace msf
