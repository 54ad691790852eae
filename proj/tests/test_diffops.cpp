#include "msf/diffops.hpp"

#include "msf/group_geometry.hpp"
#include "msf/spherical_rn.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace msf;
using namespace msf::ops;
using Catch::Matchers::WithinAbs;

namespace {

Eigen::Vector3d cross(const Eigen::Vector3d& a, const Eigen::Vector3d& b) { return a.cross(b); }

std::mt19937_64& rng() {
  static std::mt19937_64 gen(314159);
  return gen;
}

double uniform() { return (rng()() >> 11) * 0x1.0p-53 * 2.0 - 1.0; }

Eigen::VectorXd random_vec(int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform();
  return v;
}

}  // namespace

TEST_CASE("symbol_I31 is the cross-product matrix") {
  CHECK(numerics::max_norm(symbol_I31(Eigen::Vector3d::Zero())) == 0.0);

  const ComplexMatrix at_e1 = symbol_I31(Eigen::Vector3d::UnitX());
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected(1, 2) = -1.0;
  expected(2, 1) = 1.0;
  CHECK(numerics::max_norm(at_e1 - expected) == 0.0);

  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Vector3d x = random_vec(3), v = random_vec(3);
    const Eigen::Vector3d via_matrix = (symbol_I31(x) * v.cast<Complex>()).real();
    CHECK((via_matrix - cross(x, v)).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("symbol_In2 is traceless symmetric with the stated diagonal") {
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd x = random_vec(5);
    const ComplexMatrix q = symbol_In2(x, 5);
    CHECK_THAT(std::abs(q.trace()), WithinAbs(0.0, 1e-14));
    CHECK(numerics::max_norm(q - q.transpose()) == 0.0);
  }
  Eigen::VectorXd e1 = Eigen::VectorXd::Unit(4, 0);
  const ComplexMatrix q = symbol_In2(e1, 4);
  CHECK_THAT(std::abs(q(0, 0) - Complex(0.75, 0.0)), WithinAbs(0.0, 1e-15));
  for (int i = 1; i < 4; ++i)
    CHECK_THAT(std::abs(q(i, i) - Complex(-0.25, 0.0)), WithinAbs(0.0, 1e-15));
}

TEST_CASE("symbols are SO(n)-equivariant and homogeneous") {
  // Q(k x) = k Q(x) k^T for Haar samples; Q(c x) = c^deg Q(x).
  for (int n : {3, 4, 5}) {
    std::vector<InvariantOperator> gens = (n == 3)
        ? std::vector<InvariantOperator>{delta_operator(3), curl_operator()}
        : std::vector<InvariantOperator>{delta_operator(n), grad_div_operator(n)};
    geom::HaarSampler sampler(n, 2718);
    for (int trial = 0; trial < 34; ++trial) {
      const Eigen::MatrixXd k = sampler.next().matrix;
      const Eigen::VectorXd x = random_vec(n);
      for (const auto& op : gens) {
        const ComplexMatrix lhs = op.symbol(k * x);
        const ComplexMatrix rhs =
            k.cast<Complex>() * op.symbol(x) * k.transpose().cast<Complex>();
        CHECK(numerics::max_norm(lhs - rhs) <= 1e-12);
        const double c = 1.0 + std::fabs(uniform());
        CHECK(numerics::max_norm(op.symbol(c * x) - std::pow(c, op.degree) * op.symbol(x)) <=
              1e-12 * std::pow(c, op.degree) * std::max(1.0, x.squaredNorm()));
      }
    }
  }
}

TEST_CASE("apply_operator reproduces analytic derivatives") {
  const int n = 3;
  Eigen::VectorXd xi(n);
  xi << 0.9, -1.2, 0.4;

  MatrixFn wave;
  wave.n = n;
  wave.dim = n;
  wave.eval = [xi, n](const Eigen::VectorXd& x) {
    return (std::exp(Complex(0.0, -xi.dot(x))) * ComplexMatrix::Identity(n, n)).eval();
  };
  const Eigen::VectorXd x = random_vec(n);
  const ComplexMatrix lap = apply_operator(delta_operator(n), wave, x);
  const ComplexMatrix expected = -xi.squaredNorm() * wave(x);
  CHECK(numerics::max_norm(lap - expected) <= 1e-6);
}

TEST_CASE("curl annihilates gradient fields") {
  // Columns grad(phi_c) for scalar potentials phi_c.
  MatrixFn grads;
  grads.n = 3;
  grads.dim = 3;
  grads.eval = [](const Eigen::VectorXd& x) {
    ComplexMatrix m(3, 3);
    // phi_1 = sin(x1) x2, phi_2 = exp(x3) x1, phi_3 = x1 x2 x3.
    m.col(0) << std::cos(x[0]) * x[1], std::sin(x[0]), 0.0;
    m.col(1) << std::exp(x[2]), 0.0, std::exp(x[2]) * x[0];
    m.col(2) << x[1] * x[2], x[0] * x[2], x[0] * x[1];
    return m;
  };
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::VectorXd x = random_vec(3);
    CHECK(numerics::max_norm(apply_operator(curl_operator(), grads, x)) <= 1e-6);
  }
}

TEST_CASE("vector Laplacian identity links the three generators") {
  // delta F = grad div F - curl curl F on R^3.
  for (int trial = 0; trial < 4; ++trial) {
    const MatrixFn f = random_smooth_field(3, 3, 1000 + trial);
    const Eigen::VectorXd x = random_vec(3);
    const ComplexMatrix lhs = apply_operator(delta_operator(3), f, x, 1e-2);
    const ComplexMatrix rhs =
        apply_operator(grad_div_operator(3), f, x, 1e-2) -
        apply_operator(curl_operator(), applied_fn(curl_operator(), f, 1e-2), x, 1e-2);
    CHECK(numerics::max_norm(lhs - rhs) <= 1e-5);
  }
}

TEST_CASE("operator_symbol_at matches the spectral table") {
  const double s = 1.7;
  Eigen::VectorXd xi3 = s * Eigen::VectorXd::Unit(3, 0);

  const ComplexMatrix dsym = operator_symbol_at(delta_operator(3), xi3);
  CHECK(numerics::max_norm(dsym + s * s * ComplexMatrix::Identity(3, 3)) <= 1e-14);

  // curl at s e1: eigenvalue -s on e2 + i e3.
  const ComplexMatrix csym = operator_symbol_at(curl_operator(), xi3);
  Eigen::VectorXcd v(3);
  v << 0.0, 1.0, Complex(0.0, 1.0);
  CHECK((csym * v + s * v).cwiseAbs().maxCoeff() <= 1e-14);

  Eigen::VectorXd xi4 = s * Eigen::VectorXd::Unit(4, 0);
  const ComplexMatrix gsym = operator_symbol_at(grad_div_operator(4), xi4);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = -s * s;
  CHECK(numerics::max_norm(gsym - expected) <= 1e-14);
}

TEST_CASE("generator commutators vanish to the finite-difference floor") {
  const auto r3 = algebra_commutativity_probe({delta_operator(3), curl_operator()}, 3);
  CHECK(r3.max_residual <= 1e-4);
  const auto r4 = algebra_commutativity_probe({delta_operator(4), grad_div_operator(4)}, 3);
  CHECK(r4.max_residual <= 1e-4);
  const auto single = algebra_commutativity_probe({delta_operator(3)}, 3);
  CHECK(single.max_residual == 0.0);
}

TEST_CASE("invariant polynomials built from I and I31 reduce to the generator form") {
  // Every product of I, |x|^2 I and I31(x) of degree <= 4 must equal
  // p(|x|^2) I + q(|x|^2) I31(x) + r(|x|^2) I31(x)^2 with polynomial
  // coefficients; here I31^3 = -|x|^2 I31 closes the algebra.
  auto fit_ok = [](const std::function<ComplexMatrix(const Eigen::Vector3d&)>& elem) {
    // Sample points and solve least squares for p, q, r with deg <= 2 in |x|^2.
    std::vector<Eigen::Vector3d> pts;
    for (int i = 0; i < 24; ++i) pts.push_back(random_vec(3));
    Eigen::MatrixXd a(pts.size() * 9, 9);
    Eigen::VectorXd b(pts.size() * 9);
    for (size_t p = 0; p < pts.size(); ++p) {
      const Eigen::Vector3d& x = pts[p];
      const double t = x.squaredNorm();
      const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
      const ComplexMatrix i31 = symbol_I31(x);
      const ComplexMatrix i31sq = i31 * i31;
      const ComplexMatrix target = elem(x);
      for (int e = 0; e < 9; ++e) {
        const int r = e / 3, c = e % 3;
        for (int d = 0; d <= 2; ++d) {
          const double tp = std::pow(t, d);
          a(p * 9 + e, d) = tp * id(r, c).real();
          a(p * 9 + e, 3 + d) = tp * i31(r, c).real();
          a(p * 9 + e, 6 + d) = tp * i31sq(r, c).real();
        }
        b(p * 9 + e) = target(r, c).real();
      }
    }
    const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(b);
    return (a * coef - b).cwiseAbs().maxCoeff() <= 1e-9;
  };

  CHECK(fit_ok([](const Eigen::Vector3d& x) { return (symbol_I31(x) * symbol_I31(x)).eval(); }));
  CHECK(fit_ok([](const Eigen::Vector3d& x) {
    return (x.squaredNorm() * symbol_I31(x)).eval();
  }));
  CHECK(fit_ok([](const Eigen::Vector3d& x) {
    return (symbol_I31(x) * symbol_I31(x) * symbol_I31(x)).eval();
  }));
  CHECK(fit_ok([](const Eigen::Vector3d& x) {
    return (symbol_In2(x, 3) * 1.0).eval();  // x x^T - |x|^2/3 I, degree 2
  }));
}

TEST_CASE("closed-form spherical functions are joint eigenfunctions of delta") {
  for (int n : {3, 4}) {
    const double s = 1.4;
    for (int j = 1; j <= rn::BesselLabel::block_count(n, s); ++j) {
      const rn::BesselLabel label(n, s, j);
      const MatrixFn phi = rn::phi_fn(label);
      for (int trial = 0; trial < 3; ++trial) {
        const Eigen::VectorXd x = random_vec(n);
        const ComplexMatrix lhs = apply_operator(delta_operator(n), phi, x);
        CHECK(numerics::max_norm(lhs + s * s * phi(x)) <= 1e-5);
      }
    }
  }
}
