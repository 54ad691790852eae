#include "msf/numerics.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace msf;
using namespace msf::numerics;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("bessel_halfint matches reference values") {
  // Half-integer orders.
  CHECK_THAT(bessel_halfint(1, 1.0), WithinRel(0.67139670714180309042, 1e-13));
  CHECK_THAT(bessel_halfint(1, kPi / 2.0), WithinRel(2.0 / kPi, 1e-13));
  CHECK_THAT(bessel_halfint(3, 2.0), WithinRel(0.49129377868716234501, 1e-13));
  CHECK_THAT(bessel_halfint(5, 0.1), WithinRel(0.00016808871900334127033, 1e-12));
  CHECK_THAT(bessel_halfint(7, 2.0), WithinRel(0.068517549985127069605, 1e-12));
  CHECK_THAT(bessel_halfint(5, 40.0), WithinRel(-0.08751431140932354553, 1e-12));
  CHECK_THAT(bessel_halfint(1, 50.0), WithinRel(-0.029605831888924612568, 1e-12));
  CHECK_THAT(bessel_halfint(3, 7.5), WithinRel(-0.064553196129517588785, 1e-12));
  // Integer orders across the series/asymptotic crossover.
  CHECK_THAT(bessel_halfint(0, 11.9), WithinRel(0.02504944169958964508, 1e-12));
  CHECK_THAT(bessel_halfint(0, 12.1), WithinRel(0.069666773606807311849, 1e-12));
  CHECK_THAT(bessel_halfint(0, 14.5), WithinRel(0.087544868010376222906, 1e-12));
  CHECK_THAT(bessel_halfint(2, 12.0), WithinRel(-0.22344710449062761237, 1e-12));
  CHECK_THAT(bessel_halfint(6, 15.9), WithinRel(-0.063107408722164071801, 1e-12));
  CHECK_THAT(bessel_halfint(6, 16.1), WithinRel(-0.024286192497896176916, 1e-12));
  CHECK_THAT(bessel_halfint(4, 16.0), WithinRel(0.18619872094129220811, 1e-12));
  CHECK_THAT(bessel_halfint(0, 50.0), WithinRel(0.055812327669251815005, 1e-12));
  CHECK_THAT(bessel_halfint(8, 50.0), WithinRel(0.070840977281654952354, 1e-12));
  CHECK_THAT(bessel_halfint(2, 1.0), WithinRel(0.44005058574493351596, 1e-13));
  CHECK_THAT(bessel_halfint(4, 1.0), WithinRel(0.11490348493190048047, 1e-13));
  CHECK_THAT(bessel_halfint(8, 7.0), WithinRel(0.15779814466136791797, 1e-12));
}

TEST_CASE("bessel_halfint agrees with the axial-integral oracle") {
  // J_{1/2}(1) = (int_0^pi e^{i cos t} sin t dt) / (2^{1/2} sqrt(pi) Gamma(1)).
  const Complex integral = oracles::adaptive_quad(
      [](double t) { return std::exp(Complex(0.0, std::cos(t))) * std::sin(t); }, 0.0, kPi);
  const double expected = integral.real() / (std::sqrt(2.0) * std::sqrt(kPi));
  CHECK_THAT(bessel_halfint(1, 1.0), WithinRel(expected, 1e-11));
}

TEST_CASE("bessel_halfint rejects nonpositive arguments") {
  CHECK_THROWS_AS(bessel_halfint(1, 0.0), std::domain_error);
  CHECK_THROWS_AS(bessel_halfint(2, -1.0), std::domain_error);
}

TEST_CASE("bessel_ratio reaches the series limit at small u") {
  // J_nu(u)/u^nu -> 1/(2^nu Gamma(nu+1)).
  const double nu = 1.5;
  const double limit = 1.0 / (std::pow(2.0, nu) * std::tgamma(nu + 1.0));
  CHECK_THAT(bessel_ratio(3, 0.0), WithinRel(limit, 1e-14));
  CHECK_THAT(bessel_ratio(3, 1e-5), WithinRel(limit, 1e-9));
  // The series branch agrees with the direct quotient where both apply.
  for (double u : {0.9e-3, 0.99e-3}) {
    const double direct = bessel_halfint(3, u) / std::pow(u, 1.5);
    CHECK_THAT(bessel_ratio(3, u), WithinRel(direct, 1e-12));
  }
}

TEST_CASE("axial_integral closed values") {
  CHECK_THAT(axial_integral(2, 0.0).real(), WithinRel(kPi / 2.0, 1e-13));
  CHECK_THAT(axial_integral(0, 0.0).real(), WithinRel(kPi, 1e-13));
  CHECK_THAT(axial_integral(1, 2.0).real(), WithinRel(std::sin(2.0), 1e-13));
  CHECK_THAT(axial_integral(1, 2.0).imag(), WithinAbs(0.0, 1e-12));
}

TEST_CASE("axial_integral agrees with the Bessel identity form") {
  std::mt19937_64 rng(2024);
  auto u01 = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
  for (int trial = 0; trial < 20; ++trial) {
    const int k = static_cast<int>(rng() % 9);
    const double u = 0.05 + 19.95 * u01();
    const Complex lhs = axial_integral(k, u);
    const double rhs = std::pow(2.0, k / 2.0) * std::sqrt(kPi) * std::tgamma((k + 1) / 2.0) *
                       bessel_halfint(k, u) / std::pow(u, k / 2.0);
    CHECK_THAT(lhs.real(), WithinRel(rhs, 1e-9));
    CHECK_THAT(lhs.imag(), WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("gauss_legendre textbook rules") {
  const auto q1 = gauss_legendre(1);
  REQUIRE(q1.nodes.size() == 1);
  CHECK_THAT(q1.nodes[0], WithinAbs(0.0, 1e-15));
  CHECK_THAT(q1.weights[0], WithinRel(2.0, 1e-15));

  const auto q2 = gauss_legendre(2);
  CHECK_THAT(q2.nodes[1], WithinRel(1.0 / std::sqrt(3.0), 1e-14));
  CHECK_THAT(q2.weights[0], WithinRel(1.0, 1e-14));
}

TEST_CASE("gauss_legendre integrates sin^5 over [0, pi]") {
  const auto q = gauss_legendre(16);
  double acc = 0.0;
  for (int i = 0; i < q.nodes.size(); ++i) {
    const double t = (q.nodes[i] + 1.0) * kPi / 2.0;
    acc += q.weights[i] * kPi / 2.0 * std::pow(std::sin(t), 5);
  }
  CHECK_THAT(acc, WithinAbs(16.0 / 15.0, 1e-13));
}

TEST_CASE("gauss_legendre polynomial exactness") {
  // Exact for degree 2*order-1; reference from the monomial antiderivative.
  for (int order : {3, 5, 8}) {
    const auto q = gauss_legendre(order);
    for (int deg = 0; deg <= 2 * order - 1; ++deg) {
      double acc = 0.0;
      for (int i = 0; i < q.nodes.size(); ++i) acc += q.weights[i] * std::pow(q.nodes[i], deg);
      const double exact = (deg % 2 == 1) ? 0.0 : 2.0 / (deg + 1.0);
      CHECK_THAT(acc, WithinAbs(exact, 1e-13));
    }
  }
}

TEST_CASE("gauss_chebyshev2 integrates with the sqrt weight") {
  const auto q = gauss_chebyshev2(12);
  double acc = 0.0;
  for (int i = 0; i < q.nodes.size(); ++i) acc += q.weights[i] * q.nodes[i] * q.nodes[i];
  CHECK_THAT(acc, WithinAbs(kPi / 8.0, 1e-13));  // int c^2 sqrt(1-c^2) dc = pi/8
}

TEST_CASE("is_psd basics") {
  CHECK(is_psd(ComplexMatrix::Identity(3, 3), 1e-10));
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.0;
  neg(1, 1) = -0.5;
  CHECK_FALSE(is_psd(neg, 1e-10));

  ComplexMatrix non_herm = ComplexMatrix::Zero(2, 2);
  non_herm(0, 1) = 1.0;
  CHECK_THROWS_AS(is_psd(non_herm, 1e-10), ContractViolation);
}

TEST_CASE("is_psd holds on Gram matrices and is monotone under +eps I") {
  std::mt19937_64 rng(7);
  auto u = [&rng]() { return (rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  Eigen::MatrixXcd vecs(4, 6);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 6; ++j) vecs(i, j) = Complex(u(), u());
  const ComplexMatrix gram = vecs.adjoint() * vecs;
  CHECK(is_psd(gram, 1e-10));
  for (double eps : {0.0, 0.1, 2.0})
    CHECK(is_psd(gram + eps * ComplexMatrix::Identity(6, 6), 1e-10));
}

TEST_CASE("central differences on elementary functions") {
  Eigen::VectorXd x(2);
  x << 0.3, -0.8;
  ScalarField sq = [](const Eigen::VectorXd& p) { return Complex(p[0] * p[0], 0.0); };
  CHECK_THAT(central_diff_apply(sq, x, {2, 0}, 1e-2).real(), WithinAbs(2.0, 1e-8));

  Eigen::VectorXd origin = Eigen::VectorXd::Zero(1);
  ScalarField sine = [](const Eigen::VectorXd& p) { return Complex(std::sin(p[0]), 0.0); };
  CHECK_THAT(central_diff_apply(sine, origin, {1}).real(), WithinAbs(1.0, 1e-9));

  // Plane wave: d_j e^{-i xi.x} = -i xi_j e^{-i xi.x}.
  Eigen::VectorXd xi(2);
  xi << 1.3, -0.4;
  ScalarField wave = [xi](const Eigen::VectorXd& p) {
    return std::exp(Complex(0.0, -xi.dot(p)));
  };
  const Complex expected = Complex(0.0, -xi[0]) * wave(x);
  const Complex got = central_diff_apply(wave, x, {1, 0});
  CHECK_THAT(std::abs(got - expected), WithinAbs(0.0, 1e-8));
}

TEST_CASE("central differences are near-exact on low-degree polynomials") {
  std::mt19937_64 rng(11);
  auto u = [&rng]() { return (rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  for (int trial = 0; trial < 10; ++trial) {
    const double a = u(), b = u(), c = u(), d = u();
    ScalarField cubic = [=](const Eigen::VectorXd& p) {
      const double t = p[0];
      return Complex(a * t * t * t + b * t * t + c * t + d, 0.0);
    };
    Eigen::VectorXd x(1);
    x << u();
    CHECK_THAT(central_diff_apply(cubic, x, {1}).real(),
               WithinAbs(3 * a * x[0] * x[0] + 2 * b * x[0] + c, 1e-9));
    // Second derivatives divide rounding noise by h^2, so the exactness
    // guarantee holds at the coarser step.
    CHECK_THAT(central_diff_apply(cubic, x, {2}, 1e-2).real(),
               WithinAbs(6 * a * x[0] + 2 * b, 1e-9));
  }
}

TEST_CASE("central differences reject order above two") {
  ScalarField f = [](const Eigen::VectorXd&) { return Complex(0.0, 0.0); };
  Eigen::VectorXd x = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(central_diff_apply(f, x, {2, 1}), ContractViolation);
  CHECK_THROWS_AS(central_diff_apply(f, x, {1, 0}, -1.0), ContractViolation);
}
