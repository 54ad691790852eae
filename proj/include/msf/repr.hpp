#pragma once

// Highest-weight combinatorics: Weyl dimensions, Pieri tensor products,
// branching of the defining SO(n) representation, and the multiplicity-free
// commutativity deciders for triples over R^n and the Heisenberg group.

#include "msf/numerics.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <sstream>

namespace msf {

/// Raised when a decider is asked about a (K, tau) pair outside its exact
/// scope. The deciders never guess.
class UnsupportedTripleError : public std::runtime_error {
 public:
  explicit UnsupportedTripleError(const std::string& what) : std::runtime_error(what) {}
};

namespace repr {

enum class GroupKind { SU, SO, U };

inline std::string to_string(GroupKind g) {
  switch (g) {
    case GroupKind::SU: return "SU";
    case GroupKind::SO: return "SO";
    case GroupKind::U: return "U";
  }
  return "?";
}

/// Dominant integral weight of SU(n), SO(n) or U(n).
///   SU(n): (n-1)-tuple of nonnegative Dynkin labels a_j.
///   U(n):  weakly decreasing n-tuple (entries may be negative).
///   SO(n): dominant tuple of length floor(n/2); for n even the last entry
///          may be negative with |last| <= previous.
struct HighestWeight {
  GroupKind group;
  int n;
  std::vector<int> coeffs;

  HighestWeight(GroupKind g, int n_, std::vector<int> c)
      : group(g), n(n_), coeffs(std::move(c)) {
    validate();
  }

  void validate() const {
    switch (group) {
      case GroupKind::SU: {
        if (n < 2) throw ContractViolation("HighestWeight: SU rank must have n >= 2");
        if (static_cast<int>(coeffs.size()) != n - 1)
          throw ContractViolation("HighestWeight: SU(n) weight needs n-1 labels");
        for (int a : coeffs)
          if (a < 0) throw ContractViolation("HighestWeight: SU labels must be >= 0");
        break;
      }
      case GroupKind::U: {
        if (n < 1) throw ContractViolation("HighestWeight: U rank must have n >= 1");
        if (static_cast<int>(coeffs.size()) != n)
          throw ContractViolation("HighestWeight: U(n) weight needs n entries");
        for (size_t i = 1; i < coeffs.size(); ++i)
          if (coeffs[i - 1] < coeffs[i])
            throw ContractViolation("HighestWeight: U(n) weight must be weakly decreasing");
        break;
      }
      case GroupKind::SO: {
        if (n < 1) throw ContractViolation("HighestWeight: SO rank must have n >= 1");
        if (static_cast<int>(coeffs.size()) != n / 2)
          throw ContractViolation("HighestWeight: SO(n) weight needs floor(n/2) entries");
        for (size_t i = 1; i < coeffs.size(); ++i)
          if (coeffs[i - 1] < std::abs(coeffs[i]) && !(n % 2 == 0 && i + 1 == coeffs.size()))
            throw ContractViolation("HighestWeight: SO(n) weight not dominant");
        if (n % 2 == 0 && coeffs.size() >= 2 &&
            coeffs[coeffs.size() - 2] < std::abs(coeffs.back()))
          throw ContractViolation("HighestWeight: SO(n) weight not dominant");
        if (n % 2 == 1)
          for (int a : coeffs)
            if (a < 0) throw ContractViolation("HighestWeight: SO(odd) labels must be >= 0");
        break;
      }
    }
  }

  auto operator<=>(const HighestWeight&) const = default;

  std::string to_string() const {
    std::ostringstream os;
    os << repr::to_string(group) << "(" << n << ")[";
    for (size_t i = 0; i < coeffs.size(); ++i) os << (i ? "," : "") << coeffs[i];
    os << "]";
    return os.str();
  }
};

using WeightMultiset = std::map<HighestWeight, int>;

// ---------------------------------------------------------------------------
// Weyl dimension formula
// ---------------------------------------------------------------------------

namespace detail {

inline long weyl_dim_u(const std::vector<long>& lambda) {
  const int n = static_cast<int>(lambda.size());
  long double num = 1.0L, den = 1.0L;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      num *= static_cast<long double>(lambda[i] - lambda[j] + j - i);
      den *= static_cast<long double>(j - i);
    }
  const long double d = num / den;
  const long r = static_cast<long>(std::llround(static_cast<double>(d)));
  if (std::fabs(static_cast<double>(d - r)) > 1e-6)
    throw std::logic_error("weyl_dim: non-integer dimension from product formula");
  return r;
}

}  // namespace detail

/// Dimension of the irreducible representation with the given highest weight.
inline long weyl_dim(const HighestWeight& w) {
  w.validate();
  switch (w.group) {
    case GroupKind::U:
      return detail::weyl_dim_u(std::vector<long>(w.coeffs.begin(), w.coeffs.end()));
    case GroupKind::SU: {
      // Partition form lambda_i = sum_{j >= i} a_j, lambda_n = 0.
      std::vector<long> lambda(w.n, 0);
      for (int i = w.n - 2; i >= 0; --i) lambda[i] = lambda[i + 1] + w.coeffs[i];
      return detail::weyl_dim_u(lambda);
    }
    case GroupKind::SO: {
      const int m = w.n / 2;
      if (m == 0) return 1;  // SO(1), SO(2) handled below
      if (w.n == 2) return 1;
      long double dim = 1.0L;
      if (w.n % 2 == 1) {  // type B_m
        std::vector<long double> l(m), r(m);
        for (int i = 0; i < m; ++i) {
          l[i] = w.coeffs[i] + m - i - 0.5L;
          r[i] = m - i - 0.5L;
        }
        for (int i = 0; i < m; ++i) {
          dim *= l[i] / r[i];
          for (int j = i + 1; j < m; ++j) dim *= (l[i] * l[i] - l[j] * l[j]) / (r[i] * r[i] - r[j] * r[j]);
        }
      } else {  // type D_m
        std::vector<long double> l(m), r(m);
        for (int i = 0; i < m; ++i) {
          l[i] = w.coeffs[i] + m - i - 1.0L;
          r[i] = m - i - 1.0L;
        }
        for (int i = 0; i < m; ++i)
          for (int j = i + 1; j < m; ++j) dim *= (l[i] * l[i] - l[j] * l[j]) / (r[i] * r[i] - r[j] * r[j]);
      }
      const long d = static_cast<long>(std::llround(static_cast<double>(dim)));
      if (std::fabs(static_cast<double>(dim - d)) > 1e-6)
        throw std::logic_error("weyl_dim: non-integer SO dimension");
      return d;
    }
  }
  throw std::logic_error("weyl_dim: unreachable");
}

// ---------------------------------------------------------------------------
// Singularity and the Pieri expansion
// ---------------------------------------------------------------------------

/// An SU(n) weight is singular when some Dynkin label vanishes (it is then
/// annihilated by the corresponding root).
inline bool is_singular(const HighestWeight& w) {
  if (w.group != GroupKind::SU)
    throw ContractViolation("is_singular: defined for SU(n) weights only");
  return std::any_of(w.coeffs.begin(), w.coeffs.end(), [](int a) { return a == 0; });
}

/// One constituent mu_b of sigma_m (x) mu_a together with the c-tuple that
/// produced it: b_j = a_j + c_j - c_{j+1}, sum c = m, 0 <= c_{j+1} <= a_j.
struct PieriTerm {
  std::vector<int> b;
  std::vector<int> c;
  int m = 0;
};

namespace detail {

inline void pieri_enumerate(const std::vector<int>& a, int m, std::vector<PieriTerm>& out) {
  const int n = static_cast<int>(a.size()) + 1;
  std::vector<int> c(n, 0);
  // c_2..c_n bounded by the a_j; c_1 absorbs the remaining degree.
  std::function<void(int, int)> rec = [&](int idx, int used) {
    if (idx == n) {
      c[0] = m - used;
      if (c[0] < 0) return;
      PieriTerm term;
      term.c = c;
      term.m = m;
      term.b.resize(n - 1);
      for (int j = 0; j < n - 1; ++j) term.b[j] = a[j] + c[j] - c[j + 1];
      out.push_back(std::move(term));
      return;
    }
    const int cap = std::min(a[idx - 1], m - used);
    for (int v = 0; v <= cap; ++v) {
      c[idx] = v;
      rec(idx + 1, used + v);
    }
    c[idx] = 0;
  };
  rec(1, 0);
}

}  // namespace detail

/// Decomposition of sigma_m (x) mu_a for SU(n) by Pieri's rule, as a weight
/// multiset (each distinct b with its count of generating c-tuples).
inline WeightMultiset pieri_tensor(const HighestWeight& a, int m) {
  if (a.group != GroupKind::SU) throw ContractViolation("pieri_tensor: SU(n) weights only");
  if (m < 0) throw ContractViolation("pieri_tensor: m must be >= 0");
  std::vector<PieriTerm> terms;
  detail::pieri_enumerate(a.coeffs, m, terms);
  WeightMultiset out;
  for (const auto& t : terms) out[HighestWeight(GroupKind::SU, a.n, t.b)] += 1;
  return out;
}

/// Verdict of a commutativity decision; carries a witness exactly when the
/// answer is negative.
struct CommutativityVerdict {
  bool commutative = false;
  std::optional<std::string> witness;
  std::string rationale;
};

struct MultiplicityFreeResult {
  bool multiplicity_free = false;
  bool closed_form_singular = false;
  std::optional<std::string> witness;
};

/// Scans pieri_tensor(a, m) for m = 0..m_max for a repeated constituent and
/// cross-checks the enumeration against the closed-form criterion
/// is_singular(a). Disagreement is an internal consistency error.
inline MultiplicityFreeResult sigma_tensor_multiplicity_free(const HighestWeight& a, int m_max) {
  if (a.group != GroupKind::SU)
    throw ContractViolation("sigma_tensor_multiplicity_free: SU(n) weights only");
  if (m_max < a.n)
    throw ContractViolation("sigma_tensor_multiplicity_free: m_max must be >= n");
  MultiplicityFreeResult res;
  res.closed_form_singular = is_singular(a);
  std::map<std::vector<int>, PieriTerm> seen;
  res.multiplicity_free = true;
  for (int m = 0; m <= m_max && res.multiplicity_free; ++m) {
    std::vector<PieriTerm> terms;
    detail::pieri_enumerate(a.coeffs, m, terms);
    for (auto& t : terms) {
      auto [it, inserted] = seen.try_emplace(t.b, t);
      if (!inserted) {
        res.multiplicity_free = false;
        std::ostringstream os;
        os << HighestWeight(GroupKind::SU, a.n, t.b).to_string() << " occurs in degree "
           << it->second.m << " (c = ";
        for (size_t i = 0; i < it->second.c.size(); ++i) os << (i ? "," : "") << it->second.c[i];
        os << ") and in degree " << t.m << " (c = ";
        for (size_t i = 0; i < t.c.size(); ++i) os << (i ? "," : "") << t.c[i];
        os << ")";
        res.witness = os.str();
        break;
      }
    }
  }
  if (res.multiplicity_free != res.closed_form_singular)
    throw std::logic_error(
        "sigma_tensor_multiplicity_free: enumeration disagrees with the singularity criterion "
        "for " + a.to_string());
  return res;
}

// ---------------------------------------------------------------------------
// Branching of the defining SO(n) representation to the stabilizer of e_1
// ---------------------------------------------------------------------------

/// Decomposition of C^n under SO(n-1) (stabilizer of e_1):
///   n > 3: defining(n-1) + trivial;  n = 3: SO(2) characters {+1, -1, 0};
///   n = 2: two copies of the trivial SO(1) representation.
inline WeightMultiset branch_defining_so(int n) {
  if (n < 2) throw ContractViolation("branch_defining_so: n must be >= 2");
  WeightMultiset out;
  if (n == 2) {
    out[HighestWeight(GroupKind::SO, 1, {})] = 2;
    return out;
  }
  if (n == 3) {
    out[HighestWeight(GroupKind::SO, 2, {1})] = 1;
    out[HighestWeight(GroupKind::SO, 2, {-1})] = 1;
    out[HighestWeight(GroupKind::SO, 2, {0})] = 1;
    return out;
  }
  std::vector<int> defining((n - 1) / 2, 0);
  defining[0] = 1;
  out[HighestWeight(GroupKind::SO, n - 1, defining)] = 1;
  out[HighestWeight(GroupKind::SO, n - 1, std::vector<int>((n - 1) / 2, 0))] = 1;
  return out;
}

// ---------------------------------------------------------------------------
// Deciders
// ---------------------------------------------------------------------------

struct GroupSpec {
  GroupKind kind;
  int n;
};

enum class NamedRep { Trivial, Defining };

namespace detail {

// All U(n-1) interlacing branches of the U(n) weight mu, reduced to canonical
// SU(n-1) form by subtracting the last entry. Two branches that collide after
// reduction restrict to equivalent SU(n-1) representations.
struct BranchCollision {
  bool multiplicity_free = true;
  std::vector<int> first, second;  // colliding U(n-1) weights
};

inline BranchCollision su_restriction_scan(const std::vector<long>& mu) {
  const int n = static_cast<int>(mu.size());
  BranchCollision res;
  std::map<std::vector<long>, std::vector<int>> seen;
  std::vector<int> nu(n - 1, 0);
  std::function<bool(int)> rec = [&](int idx) -> bool {
    if (idx == n - 1) {
      std::vector<long> canon(n - 1);
      for (int i = 0; i < n - 1; ++i) canon[i] = nu[i] - nu[n - 2];
      auto [it, inserted] = seen.try_emplace(canon, nu);
      if (!inserted) {
        res.multiplicity_free = false;
        res.first = it->second;
        res.second = nu;
        return true;
      }
      return false;
    }
    for (long v = mu[idx + 1]; v <= mu[idx]; ++v) {
      nu[idx] = static_cast<int>(v);
      if (rec(idx + 1)) return true;
    }
    return false;
  };
  if (n >= 2) rec(0);
  else res.multiplicity_free = true;
  return res;
}

inline std::string format_tuple(const std::vector<int>& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace detail

/// Decides commutativity of (K x| R^d, K, tau) through multiplicity-freeness
/// of tau restricted to the stabilizer of the generic point e_1. Supported:
/// K = SO(n) with tau trivial or defining (acting on R^n), and K = SU(n) with
/// any dominant weight (acting on C^n = R^{2n}, stabilizer SU(n-1)).
inline CommutativityVerdict check_triple_rn(const GroupSpec& k,
                                            const std::optional<HighestWeight>& tau_weight,
                                            std::optional<NamedRep> tau_named = std::nullopt) {
  CommutativityVerdict v;
  if (k.kind == GroupKind::SO) {
    if (!tau_named)
      throw UnsupportedTripleError(
          "check_triple_rn: SO(n) supports tau = trivial or defining only");
    if (*tau_named == NamedRep::Trivial) {
      v.commutative = true;
      v.rationale = "trivial tau: the motion group pair (SO(n) x| R^n, SO(n)) is a Gelfand pair";
      return v;
    }
    if (k.n < 2) throw UnsupportedTripleError("check_triple_rn: SO(n) needs n >= 2");
    if (k.n == 2) {
      v.commutative = false;
      v.witness =
          "K_{e_1} = {I}: C^2 splits as two copies of the trivial stabilizer representation";
      v.rationale = "stabilizer of a generic point is trivial, so V_tau carries multiplicity";
      return v;
    }
    // Multiplicity-freeness of the explicit branching decides the case.
    const WeightMultiset branches = branch_defining_so(k.n);
    for (const auto& [w, mult] : branches) {
      if (mult > 1) {
        v.commutative = false;
        v.witness = w.to_string() + " occurs with multiplicity " + std::to_string(mult);
        v.rationale = "restriction to SO(n-1) is not multiplicity free";
        return v;
      }
    }
    v.commutative = true;
    v.rationale = "C^n restricted to the stabilizer SO(n-1) is multiplicity free";
    return v;
  }
  if (k.kind == GroupKind::SU) {
    if (!tau_weight || tau_weight->group != GroupKind::SU || tau_weight->n != k.n)
      throw UnsupportedTripleError("check_triple_rn: SU(n) requires an SU(n) highest weight");
    // Extend mu to U(n) with last entry 0 and scan the U(n-1) interlacing
    // branches for an SU(n-1) collision.
    std::vector<long> mu_sharp(k.n, 0);
    for (int i = k.n - 2; i >= 0; --i)
      mu_sharp[i] = mu_sharp[i + 1] + tau_weight->coeffs[i];
    const auto scan = detail::su_restriction_scan(mu_sharp);
    const bool singular = is_singular(*tau_weight);
    if (scan.multiplicity_free != singular)
      throw std::logic_error("check_triple_rn: branching scan disagrees with singularity");
    v.commutative = singular;
    if (!v.commutative) {
      v.witness = "U(n-1) branches " + detail::format_tuple(scan.first) + " and " +
                  detail::format_tuple(scan.second) +
                  " restrict to equivalent SU(n-1) representations";
      v.rationale = "regular highest weight: stabilizer restriction carries multiplicity";
    } else {
      v.rationale = "singular highest weight: stabilizer restriction is multiplicity free";
    }
    return v;
  }
  throw UnsupportedTripleError("check_triple_rn: unsupported group kind");
}

/// Decides commutativity of (K x| H_n, K, tau) for K = U(n) (always
/// commutative) or K = SU(n) (commutative iff the weight is singular,
/// cross-checked against the Pieri enumeration up to m_max).
inline CommutativityVerdict check_triple_heisenberg(const GroupSpec& k,
                                                    const HighestWeight& tau,
                                                    int m_max = -1) {
  CommutativityVerdict v;
  if (k.kind == GroupKind::U) {
    if (tau.group != GroupKind::U || tau.n != k.n)
      throw UnsupportedTripleError("check_triple_heisenberg: U(n) requires a U(n) weight");
    v.commutative = true;
    v.rationale = "(U(n) x| H_n, U(n)) is a strong Gelfand pair";
    return v;
  }
  if (k.kind == GroupKind::SU) {
    if (tau.group != GroupKind::SU || tau.n != k.n)
      throw UnsupportedTripleError("check_triple_heisenberg: SU(n) requires an SU(n) weight");
    if (m_max < 0) m_max = 2 * k.n;
    const auto res = sigma_tensor_multiplicity_free(tau, m_max);
    v.commutative = res.multiplicity_free;
    if (!v.commutative) {
      v.witness = res.witness;
      v.rationale = "the Fock-space tensor decomposition carries multiplicity";
    } else {
      v.rationale = "singular highest weight: sigma (x) tau decomposes without multiplicities";
    }
    return v;
  }
  throw UnsupportedTripleError("check_triple_heisenberg: unsupported group kind");
}

}  // namespace repr
}  // namespace msf
