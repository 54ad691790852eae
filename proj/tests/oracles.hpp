#pragma once

// Test-only oracles, kept independent of the implementation paths they check:
// adaptive Simpson quadrature, Gauss-Hermite rules, Laguerre recurrences, and
// a Gelfand-Tsetlin character oracle for tensor-product decompositions.

#include "msf/numerics.hpp"
#include "msf/repr.hpp"

#include <map>
#include <vector>

namespace oracles {

using msf::Complex;

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature (complex integrands)
// ---------------------------------------------------------------------------

namespace detail {

inline Complex simpson(double a, double b, Complex fa, Complex fm, Complex fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline Complex adaptive_step(const std::function<Complex(double)>& f, double a, double b,
                             Complex fa, Complex fm, Complex fb, Complex whole, double tol,
                             int depth) {
  const double m = (a + b) / 2.0;
  const Complex fl = f((a + m) / 2.0), fr = f((m + b) / 2.0);
  const Complex left = simpson(a, m, fa, fl, fm);
  const Complex right = simpson(m, b, fm, fr, fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_step(f, a, m, fa, fl, fm, left, tol / 2.0, depth - 1) +
         adaptive_step(f, m, b, fm, fr, fb, right, tol / 2.0, depth - 1);
}

}  // namespace detail

inline Complex adaptive_quad(const std::function<Complex(double)>& f, double a, double b,
                             double tol = 1e-13) {
  const Complex fa = f(a), fb = f(b), fm = f((a + b) / 2.0);
  return detail::adaptive_step(f, a, b, fa, fm, fb, detail::simpson(a, b, fa, fm, fb), tol, 40);
}

// ---------------------------------------------------------------------------
// Gauss-Hermite rule (weight e^{-x^2} on R), by Golub-Welsch
// ---------------------------------------------------------------------------

struct GaussHermite {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

inline GaussHermite gauss_hermite(int order) {
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double off = std::sqrt(k / 2.0);
    jac(k - 1, k) = off;
    jac(k, k - 1) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  GaussHermite gh;
  gh.nodes = es.eigenvalues();
  gh.weights.resize(order);
  const double mu0 = std::sqrt(msf::kPi);
  for (int i = 0; i < order; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    gh.weights[i] = mu0 * v0 * v0;
  }
  return gh;
}

// ---------------------------------------------------------------------------
// Laguerre polynomials L_m^{(k)} by the three-term recurrence
// ---------------------------------------------------------------------------

inline double laguerre(int m, int k, double x) {
  if (m == 0) return 1.0;
  double lm1 = 1.0;
  double l = 1.0 + k - x;
  for (int i = 1; i < m; ++i) {
    const double next = ((2.0 * i + k + 1.0 - x) * l - (i + k) * lm1) / (i + 1.0);
    lm1 = l;
    l = next;
  }
  return l;
}

// ---------------------------------------------------------------------------
// Character oracle: weight multiplicities via Gelfand-Tsetlin patterns and
// greedy highest-weight peeling of tensor products.
// ---------------------------------------------------------------------------

using WeightMap = std::map<std::vector<int>, long>;

namespace detail {

inline void gt_recurse(const std::vector<int>& row, std::vector<int>& weight_acc, int level,
                       WeightMap& out) {
  const int len = static_cast<int>(row.size());
  if (len == 1) {
    weight_acc[0] = row[0];
    out[weight_acc] += 1;
    return;
  }
  // Enumerate interlacing next rows.
  std::vector<int> next(len - 1, 0);
  std::function<void(int)> rec = [&](int idx) {
    if (idx == len - 1) {
      int sum_next = 0;
      for (int v : next) sum_next += v;
      int sum_row = 0;
      for (int v : row) sum_row += v;
      weight_acc[level] = sum_row - sum_next;
      gt_recurse(next, weight_acc, level - 1, out);
      return;
    }
    for (int v = row[idx + 1]; v <= row[idx]; ++v) {
      next[idx] = v;
      rec(idx + 1);
    }
  };
  rec(0);
}

}  // namespace detail

/// Weight multiplicities of the U(n) irrep with highest weight `top`
/// (a partition); keys are weights in the standard coordinates.
inline WeightMap gt_weights(const std::vector<int>& top) {
  WeightMap out;
  std::vector<int> acc(top.size(), 0);
  detail::gt_recurse(top, acc, static_cast<int>(top.size()) - 1, out);
  return out;
}

/// Weights of Sym^m(C^n): all exponent tuples of total degree m.
inline WeightMap sym_weights(int n, int m) {
  WeightMap out;
  std::vector<int> e(n, 0);
  std::function<void(int, int)> rec = [&](int idx, int left) {
    if (idx == n - 1) {
      e[idx] = left;
      out[e] += 1;
      return;
    }
    for (int v = 0; v <= left; ++v) {
      e[idx] = v;
      rec(idx + 1, left - v);
    }
  };
  rec(0, m);
  return out;
}

inline WeightMap convolve(const WeightMap& a, const WeightMap& b) {
  WeightMap out;
  for (const auto& [wa, ma] : a)
    for (const auto& [wb, mb] : b) {
      std::vector<int> w(wa.size());
      for (size_t i = 0; i < w.size(); ++i) w[i] = wa[i] + wb[i];
      out[w] += ma * mb;
    }
  return out;
}

/// Decomposes the U(n) representation with the given total weight multiset
/// into irreducibles by greedy peeling of the lexicographically largest
/// weight. Returns highest weights (partitions) with multiplicities.
inline std::map<std::vector<int>, long> peel(WeightMap weights) {
  std::map<std::vector<int>, long> result;
  while (true) {
    // Largest weight in reverse-lex order with nonzero multiplicity.
    const std::vector<int>* top = nullptr;
    long mult = 0;
    for (auto it = weights.rbegin(); it != weights.rend(); ++it) {
      if (it->second != 0) {
        top = &it->first;
        mult = it->second;
        break;
      }
    }
    if (!top) break;
    if (mult < 0) throw std::logic_error("peel: negative multiplicity (not a character)");
    std::vector<int> hw = *top;
    for (size_t i = 1; i < hw.size(); ++i)
      if (hw[i - 1] < hw[i]) throw std::logic_error("peel: top weight not dominant");
    result[hw] += mult;
    for (const auto& [w, m] : gt_weights(hw)) weights[w] -= mult * m;
  }
  return result;
}

/// Character-oracle decomposition of Sym^m(C^n) (x) V_mu for SU(n), with mu
/// given by Dynkin labels; returns Dynkin-labelled constituents.
inline std::map<std::vector<int>, long> tensor_sym_decompose(const std::vector<int>& dynkin,
                                                             int m) {
  const int n = static_cast<int>(dynkin.size()) + 1;
  std::vector<int> partition(n, 0);
  for (int i = n - 2; i >= 0; --i) partition[i] = partition[i + 1] + dynkin[i];
  const WeightMap product = convolve(gt_weights(partition), sym_weights(n, m));
  std::map<std::vector<int>, long> out;
  for (const auto& [hw, mult] : peel(product)) {
    std::vector<int> dk(n - 1);
    for (int i = 0; i < n - 1; ++i) dk[i] = hw[i] - hw[i + 1];
    out[dk] += mult;
  }
  return out;
}

}  // namespace oracles
