#pragma once

// The invariant differential operators acting on End(C^n)-valued functions:
// Delta*I, curl (n = 3) and grad div (n > 3), their polynomial symbols, and
// finite-difference application plus the commutativity probe.

#include "msf/numerics.hpp"

#include <memory>
#include <random>

namespace msf {

/// dim x dim matrix-valued function of a point in R^dim.
struct MatrixFn {
  int n = 0;    // point dimension
  int dim = 0;  // matrix size
  std::function<ComplexMatrix(const Eigen::VectorXd&)> eval;

  ComplexMatrix operator()(const Eigen::VectorXd& x) const { return eval(x); }
};

namespace ops {

/// Skew symbol of curl on R^3; acts on vectors as x cross v.
inline ComplexMatrix symbol_I31(const Eigen::VectorXd& x) {
  if (x.size() != 3) throw ContractViolation("symbol_I31: defined on R^3");
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 1) = -x[2]; m(0, 2) = x[1];
  m(1, 0) = x[2];  m(1, 2) = -x[0];
  m(2, 0) = -x[1]; m(2, 1) = x[0];
  return m;
}

/// Traceless symmetric symbol x x^T - |x|^2/n I on R^n.
inline ComplexMatrix symbol_In2(const Eigen::VectorXd& x, int n) {
  if (n < 3) throw ContractViolation("symbol_In2: n must be >= 3");
  if (x.size() != n) throw ContractViolation("symbol_In2: dimension mismatch");
  Eigen::MatrixXd m = x * x.transpose();
  m -= (x.squaredNorm() / n) * Eigen::MatrixXd::Identity(n, n);
  return m.cast<Complex>();
}

/// A generator of the invariant-operator algebra: a homogeneous polynomial
/// symbol plus its differential action realized by central differences.
struct InvariantOperator {
  enum class Kind { Laplacian, Curl, GradDiv };

  std::string name;
  int n = 0;
  int degree = 0;
  Kind kind = Kind::Laplacian;
  std::function<ComplexMatrix(const Eigen::VectorXd&)> symbol;
};

inline InvariantOperator delta_operator(int n) {
  InvariantOperator op;
  op.name = "delta";
  op.n = n;
  op.degree = 2;
  op.kind = InvariantOperator::Kind::Laplacian;
  op.symbol = [n](const Eigen::VectorXd& x) {
    return (x.squaredNorm() * Eigen::MatrixXd::Identity(n, n)).cast<Complex>().eval();
  };
  return op;
}

inline InvariantOperator curl_operator() {
  InvariantOperator op;
  op.name = "curl";
  op.n = 3;
  op.degree = 1;
  op.kind = InvariantOperator::Kind::Curl;
  op.symbol = [](const Eigen::VectorXd& x) { return symbol_I31(x); };
  return op;
}

inline InvariantOperator grad_div_operator(int n) {
  InvariantOperator op;
  op.name = "grad_div";
  op.n = n;
  op.degree = 2;
  op.kind = InvariantOperator::Kind::GradDiv;
  // I_{n,2}(x) + |x|^2/n I = x x^T, the symbol of grad div.
  op.symbol = [](const Eigen::VectorXd& x) {
    return (x * x.transpose()).cast<Complex>().eval();
  };
  return op;
}

/// Symbol evaluated at -i xi: Q(-i xi) = (-i)^deg Q(xi) by homogeneity.
inline ComplexMatrix operator_symbol_at(const InvariantOperator& op, const Eigen::VectorXd& xi) {
  const Complex mi(0.0, -1.0);
  Complex factor(1.0, 0.0);
  for (int d = 0; d < op.degree; ++d) factor *= mi;
  return factor * op.symbol(xi);
}

/// Applies the operator to F at x by central differences (step h with one
/// Richardson level). curl acts column-wise on the matrix-valued F.
inline ComplexMatrix apply_operator(const InvariantOperator& op, const MatrixFn& f,
                                    const Eigen::VectorXd& x,
                                    double h = numerics::kDefaultFdStep) {
  const int n = op.n;
  if (f.n != n || x.size() != n) throw ContractViolation("apply_operator: dimension mismatch");
  const int d = f.dim;

  auto entry = [&](int r, int c) {
    return [&f, r, c](const Eigen::VectorXd& p) { return f(p)(r, c); };
  };
  auto deriv1 = [&](int r, int c, int dir) {
    std::vector<int> mi(n, 0);
    mi[dir] = 1;
    return numerics::central_diff_apply(entry(r, c), x, mi, h);
  };
  auto deriv2 = [&](int r, int c, int d1, int d2) {
    std::vector<int> mi(n, 0);
    mi[d1] += 1;
    mi[d2] += 1;
    return numerics::central_diff_apply(entry(r, c), x, mi, h);
  };

  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  switch (op.kind) {
    case InvariantOperator::Kind::Laplacian:
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          for (int dir = 0; dir < n; ++dir) out(r, c) += deriv2(r, c, dir, dir);
      return out;
    case InvariantOperator::Kind::Curl: {
      if (d != 3) throw ContractViolation("apply_operator: curl needs 3x3 values");
      for (int c = 0; c < 3; ++c) {
        out(0, c) = deriv1(2, c, 1) - deriv1(1, c, 2);
        out(1, c) = deriv1(0, c, 2) - deriv1(2, c, 0);
        out(2, c) = deriv1(1, c, 0) - deriv1(0, c, 1);
      }
      return out;
    }
    case InvariantOperator::Kind::GradDiv: {
      if (d != n) throw ContractViolation("apply_operator: grad div needs n x n values");
      for (int c = 0; c < d; ++c)
        for (int r = 0; r < d; ++r)
          for (int k = 0; k < n; ++k) out(r, c) += deriv2(k, c, r, k);
      return out;
    }
  }
  throw std::logic_error("apply_operator: unreachable");
}

/// Wraps "apply op to F" as a MatrixFn, so operators can be composed in the
/// commutator probe below.
inline MatrixFn applied_fn(const InvariantOperator& op, const MatrixFn& f, double h) {
  MatrixFn g;
  g.n = f.n;
  g.dim = f.dim;
  g.eval = [op, f, h](const Eigen::VectorXd& x) { return apply_operator(op, f, x, h); };
  return g;
}

struct CommutatorReport {
  double max_residual = 0.0;
  int trials = 0;
};

/// Smooth band-limited random field sum_k C_k exp(i w_k . x).
inline MatrixFn random_smooth_field(int n, int dim, std::uint64_t seed, int waves = 4) {
  std::mt19937_64 rng(seed);
  auto u = [&rng]() { return (rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  struct Wave {
    ComplexMatrix c;
    Eigen::VectorXd w;
  };
  auto data = std::make_shared<std::vector<Wave>>();
  for (int k = 0; k < waves; ++k) {
    Wave wave;
    wave.c = ComplexMatrix::Zero(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c0 = 0; c0 < dim; ++c0) wave.c(r, c0) = Complex(u(), u());
    wave.w = Eigen::VectorXd::Zero(n);
    for (int d = 0; d < n; ++d) wave.w[d] = u();
    data->push_back(std::move(wave));
  }
  MatrixFn f;
  f.n = n;
  f.dim = dim;
  f.eval = [data, dim](const Eigen::VectorXd& x) {
    ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
    for (const auto& wave : *data)
      acc += wave.c * std::exp(Complex(0.0, wave.w.dot(x)));
    return acc;
  };
  return f;
}

/// Max commutator residual ||(D1 D2 - D2 D1) F(x)|| over random smooth fields
/// and points. Nested finite differences put the noise floor near 1e-4 at the
/// default steps; h_outer trades truncation against rounding amplification.
inline CommutatorReport algebra_commutativity_probe(const std::vector<InvariantOperator>& gens,
                                                    int trials, std::uint64_t seed = 17,
                                                    double h_inner = 1e-2,
                                                    double h_outer = 1e-2) {
  CommutatorReport rep;
  rep.trials = trials;
  if (gens.size() < 2) return rep;  // single operator commutes with itself
  std::mt19937_64 rng(seed);
  auto u = [&rng]() { return (rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  const int n = gens.front().n;
  const int dim = (gens.front().kind == InvariantOperator::Kind::Curl) ? 3 : n;
  for (int t = 0; t < trials; ++t) {
    const MatrixFn f = random_smooth_field(n, dim, rng());
    Eigen::VectorXd x(n);
    for (int d = 0; d < n; ++d) x[d] = u();
    for (size_t i = 0; i < gens.size(); ++i)
      for (size_t j = i + 1; j < gens.size(); ++j) {
        const ComplexMatrix ab = apply_operator(gens[i], applied_fn(gens[j], f, h_inner), x, h_outer);
        const ComplexMatrix ba = apply_operator(gens[j], applied_fn(gens[i], f, h_inner), x, h_outer);
        rep.max_residual = std::max(rep.max_residual, numerics::max_norm(ab - ba));
      }
  }
  return rep;
}

}  // namespace ops
}  // namespace msf
