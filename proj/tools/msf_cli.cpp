// Command-line interface: commutativity deciders, spherical-function tables,
// verification suites, and spectrum scans.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
//             3 unsupported mathematical input.

#include "msf/msf.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

using json = nlohmann::ordered_json;
using namespace msf;

namespace {

constexpr std::uint64_t kDefaultSeed = 12648430;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  os << content;
}

json load_input(const std::string& input) {
  if (!input.empty() && (input.front() == '{' || input.front() == '['))
    return json::parse(input);
  std::ifstream is(input);
  if (!is) throw std::runtime_error("cannot open input file: " + input);
  return json::parse(is);
}

json weight_to_json(const repr::HighestWeight& w) {
  return json{{"group", repr::to_string(w.group)}, {"n", w.n}, {"coeffs", w.coeffs}};
}

repr::GroupKind parse_group_kind(const std::string& s) {
  if (s == "SU") return repr::GroupKind::SU;
  if (s == "SO") return repr::GroupKind::SO;
  if (s == "U") return repr::GroupKind::U;
  throw UnsupportedTripleError("unknown group: " + s);
}

json verdict_to_json(const repr::CommutativityVerdict& v) {
  json out{{"commutative", v.commutative}, {"rationale", v.rationale}};
  if (v.witness) out["witness"] = *v.witness;
  return out;
}

json report_to_json(const verify::CheckReport& r) {
  return json{{"name", r.name},       {"max_residual", r.max_residual},
              {"threshold", r.threshold}, {"passed", r.passed},
              {"samples", r.samples}, {"seed", r.seed},
              {"rule", r.rule}};
}

std::vector<Eigen::VectorXd> random_points(int n, int count, double scale,
                                           std::mt19937_64& rng) {
  auto u = [&rng]() { return ((rng() >> 11) * 0x1.0p-53) * 2.0 - 1.0; };
  std::vector<Eigen::VectorXd> out;
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd x(n);
    for (int d = 0; d < n; ++d) x[d] = scale * u();
    out.push_back(std::move(x));
  }
  return out;
}

// ---------------------------------------------------------------------------
// check-triple
// ---------------------------------------------------------------------------

int run_check_triple(const std::string& input, const std::string& output, int m_max) {
  json doc;
  try {
    doc = load_input(input);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    const std::string h = doc.at("H").get<std::string>();
    const json& kdoc = doc.at("K");
    const repr::GroupSpec k{parse_group_kind(kdoc.at("group").get<std::string>()),
                            kdoc.at("n").get<int>()};
    repr::CommutativityVerdict verdict;
    std::optional<repr::HighestWeight> parsed_tau;
    if (h == "Rn") {
      if (doc.at("tau").is_string()) {
        const std::string named = doc.at("tau").get<std::string>();
        const auto rep = (named == "defining") ? repr::NamedRep::Defining
                         : (named == "trivial")
                             ? repr::NamedRep::Trivial
                             : throw UnsupportedTripleError("unknown named rep: " + named);
        verdict = repr::check_triple_rn(k, std::nullopt, rep);
      } else {
        parsed_tau.emplace(k.kind, k.n, doc.at("tau").get<std::vector<int>>());
        verdict = repr::check_triple_rn(k, *parsed_tau);
      }
    } else if (h == "heisenberg") {
      parsed_tau.emplace(k.kind, k.n, doc.at("tau").get<std::vector<int>>());
      verdict = repr::check_triple_heisenberg(k, *parsed_tau, m_max);
    } else {
      throw UnsupportedTripleError("unknown H: " + h);
    }
    json out = verdict_to_json(verdict);
    if (parsed_tau) out["tau"] = weight_to_json(*parsed_tau);
    write_output(output, out.dump(2));
    return 0;
  } catch (const UnsupportedTripleError& e) {
    std::cerr << "unsupported triple: " << e.what() << "\n";
    return 3;
  } catch (const json::exception& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return 2;
  } catch (const ContractViolation& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return 2;
  }
}

// ---------------------------------------------------------------------------
// eval-spherical
// ---------------------------------------------------------------------------

int run_eval_spherical(int n, double s, int j, double r_min, double r_max, double r_step,
                       int quad_level, const std::string& output) {
  if (r_step <= 0.0 || r_max < r_min) {
    std::cerr << "error: bad r grid\n";
    return 2;
  }
  std::vector<int> js;
  if (j == 0) {
    for (int jj = 1; jj <= rn::BesselLabel::block_count(n, s); ++jj) js.push_back(jj);
  } else {
    js.push_back(j);
  }
  std::ostringstream os;
  os << "n,s,j,r,entry_row,entry_col,re_closed,im_closed,re_quad,im_quad,agreement\n";
  try {
    const geom::SphereQuadrature rule = geom::sphere_quadrature(n, quad_level);
    const int steps = static_cast<int>(std::floor((r_max - r_min) / r_step + 1e-9));
    for (int jj : js) {
      const rn::BesselLabel label(n, s, jj);
      for (int step = 0; step <= steps; ++step) {
        const double r = r_min + step * r_step;
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        x[0] = r;
        const ComplexMatrix closed = rn::phi_closed_form(label, x);
        const ComplexMatrix quad = rn::phi_quadrature(label, x, rule).value;
        const double agreement = numerics::max_norm(closed - quad);
        for (int row = 0; row < n; ++row)
          for (int col = 0; col < n; ++col)
            os << n << "," << format_double(s) << "," << jj << "," << format_double(r) << ","
               << row << "," << col << "," << format_double(closed(row, col).real()) << ","
               << format_double(closed(row, col).imag()) << ","
               << format_double(quad(row, col).real()) << ","
               << format_double(quad(row, col).imag()) << "," << format_double(agreement)
               << "\n";
      }
    }
  } catch (const ContractViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  write_output(output, os.str());
  return 0;
}

// ---------------------------------------------------------------------------
// eval-laguerre
// ---------------------------------------------------------------------------

int run_eval_laguerre(double lambda, int m, double z_max, double z_step, double t, int trunc_n,
                      const std::string& output) {
  if (z_step <= 0.0 || z_max < 0.0) {
    std::cerr << "error: bad z grid\n";
    return 2;
  }
  std::ostringstream os;
  os << "lambda,m,re_z,im_z,t,re_phi,im_phi\n";
  try {
    const heis::FockTruncation trunc(lambda, trunc_n);
    const int steps = static_cast<int>(std::floor(2.0 * z_max / z_step + 1e-9));
    for (int i = 0; i <= steps; ++i)
      for (int k = 0; k <= steps; ++k) {
        const double re = -z_max + i * z_step;
        const double im = -z_max + k * z_step;
        const Complex value =
            heis::laguerre_spherical(lambda, m, {Complex(re, im), t}, trunc);
        os << format_double(lambda) << "," << m << "," << format_double(re) << ","
           << format_double(im) << "," << format_double(t) << ","
           << format_double(value.real()) << "," << format_double(value.imag()) << "\n";
      }
  } catch (const ContractViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const TruncationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  write_output(output, os.str());
  return 0;
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

int run_spectrum(int n, const std::vector<double>& s_values, const std::string& format,
                 const std::string& output) {
  std::vector<rn::BesselLabel> labels;
  for (double s : s_values)
    for (int j = 1; j <= rn::BesselLabel::block_count(n, s); ++j)
      labels.emplace_back(n, s, j);
  const auto gens = rn::default_generators(n);
  if (labels.empty()) {
    if (format == "csv")
      write_output(output, "n,s,j,delta_re,delta_im,d_re,d_im,pairwise_distinct\n");
    else
      write_output(output, json{{"points", json::array()}, {"pairwise_distinct", true}}.dump(2));
    return 0;
  }
  const auto scan = rn::spectrum_injectivity_scan(labels, gens);
  if (format == "csv") {
    std::ostringstream os;
    os << "n,s,j,delta_re,delta_im,d_re,d_im,pairwise_distinct\n";
    for (const auto& [label, pt] : scan.points)
      os << label.n << "," << format_double(label.s) << "," << label.j << ","
         << format_double(pt.coordinates[0].real()) << ","
         << format_double(pt.coordinates[0].imag()) << ","
         << format_double(pt.coordinates[1].real()) << ","
         << format_double(pt.coordinates[1].imag()) << ","
         << (scan.pairwise_distinct ? 1 : 0) << "\n";
    write_output(output, os.str());
    return 0;
  }
  json out = json::array();
  for (const auto& [label, pt] : scan.points) {
    json coords = json::array();
    for (const auto& c : pt.coordinates) coords.push_back(json::array({c.real(), c.imag()}));
    out.push_back(json{{"label", {{"n", label.n}, {"s", label.s}, {"j", label.j}}},
                       {"coordinates", coords}});
  }
  json doc{{"points", out}, {"pairwise_distinct", scan.pairwise_distinct}};
  if (scan.collision) doc["collision"] = *scan.collision;
  write_output(output, doc.dump(2));
  return 0;
}

// ---------------------------------------------------------------------------
// verify suites
// ---------------------------------------------------------------------------

struct VerifyConfig {
  std::uint64_t seed = kDefaultSeed;
  double tol = 0.0;  // 0: per-suite defaults
  int quad_order = 24;
  long mc_samples = 200000;
  int trunc_n = heis::kDefaultFockTruncation;
  bool inject_defect = false;
};

std::vector<rn::BesselLabel> suite_labels(int n) {
  std::vector<rn::BesselLabel> labels;
  for (double s : {1.0, 2.0})
    for (int j = 1; j <= rn::BesselLabel::block_count(n, s); ++j) labels.emplace_back(n, s, j);
  return labels;
}

std::vector<verify::CheckReport> suite_equivariance(const VerifyConfig& cfg) {
  std::vector<verify::CheckReport> reports;
  std::mt19937_64 rng(cfg.seed);
  const double tol = cfg.tol > 0 ? cfg.tol : 1e-9;
  for (int n : {3, 4}) {
    const auto points = random_points(n, 10, 1.2, rng);
    for (const auto& label : suite_labels(n)) {
      auto rep = verify::check_equivariance(rn::phi_fn(label), verify::defining_tau(), 50,
                                            points, tol, cfg.seed + label.j);
      rep.name = "equivariance " + label.to_string();
      reports.push_back(rep);
    }
  }
  if (cfg.inject_defect) {
    MatrixFn bad;
    bad.n = 3;
    bad.dim = 3;
    bad.eval = [](const Eigen::VectorXd& x) {
      return (x[0] * ComplexMatrix::Identity(3, 3)).eval();
    };
    auto rep = verify::check_equivariance(bad, verify::defining_tau(), 20,
                                          random_points(3, 5, 1.0, rng), tol, cfg.seed);
    rep.name = "equivariance x1*I (injected defect)";
    reports.push_back(rep);
  }
  return reports;
}

std::vector<verify::CheckReport> suite_functional_eq(const VerifyConfig& cfg) {
  std::vector<verify::CheckReport> reports;
  std::mt19937_64 rng(cfg.seed);
  // n = 3: deterministic Euler-angle quadrature.
  {
    const double tol = cfg.tol > 0 ? cfg.tol : 1e-6;
    std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs;
    for (int i = 0; i < 10; ++i) {
      auto pts = random_points(3, 2, 0.8, rng);
      pairs.emplace_back(pts[0], pts[1]);
    }
    for (const auto& label : suite_labels(3)) {
      auto rep = verify::check_functional_equation_rn(rn::phi_fn(label), pairs,
                                                      verify::So3RuleCfg{cfg.quad_order}, tol);
      rep.name = "functional-eq " + label.to_string();
      reports.push_back(rep);
    }
  }
  // n = 4, 5: seeded Monte Carlo.
  for (int n : {4, 5}) {
    const double tol = cfg.tol > 0 ? cfg.tol : 1e-3;
    std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs;
    for (int i = 0; i < 3; ++i) {
      auto pts = random_points(n, 2, 0.8, rng);
      pairs.emplace_back(pts[0], pts[1]);
    }
    for (const rn::BesselLabel label : {rn::BesselLabel(n, 1.0, 1), rn::BesselLabel(n, 2.0, 2)}) {
      auto rep = verify::check_functional_equation_rn(
          rn::phi_fn(label), pairs, verify::RotatedRuleCfg{cfg.mc_samples, cfg.seed, 0}, tol);
      rep.name = "functional-eq " + label.to_string();
      reports.push_back(rep);
    }
  }
  // Trivial tau: classical zonal function through the sphere rule.
  {
    const rn::TrivialLabel label{4, 1.5};
    MatrixFn zonal;
    zonal.n = 4;
    zonal.dim = 1;
    zonal.eval = [label](const Eigen::VectorXd& x) {
      ComplexMatrix m(1, 1);
      m(0, 0) = rn::zonal_closed_form(label, x);
      return m;
    };
    std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs;
    for (int i = 0; i < 5; ++i) {
      auto pts = random_points(4, 2, 1.0, rng);
      pairs.emplace_back(pts[0], pts[1]);
    }
    auto rep = verify::check_functional_equation_rn(zonal, pairs,
                                                    verify::TrivialTauSphereCfg{32},
                                                    cfg.tol > 0 ? cfg.tol : 1e-8);
    rep.name = "functional-eq zonal(n=4,s=1.5) trivial tau";
    reports.push_back(rep);
  }
  if (cfg.inject_defect) {
    const rn::BesselLabel label(3, 1.0, 1);
    MatrixFn bad = rn::phi_fn(label);
    auto base = bad.eval;
    bad.eval = [base](const Eigen::VectorXd& x) {
      return (base(x) + 0.05 * ComplexMatrix::Identity(3, 3)).eval();
    };
    std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs;
    auto pts = random_points(3, 2, 0.8, rng);
    pairs.emplace_back(pts[0], pts[1]);
    auto rep = verify::check_functional_equation_rn(bad, pairs,
                                                    verify::So3RuleCfg{cfg.quad_order}, 1e-6);
    rep.name = "functional-eq perturbed (injected defect)";
    reports.push_back(rep);
  }
  return reports;
}

std::vector<verify::CheckReport> suite_eigen(const VerifyConfig& cfg) {
  std::vector<verify::CheckReport> reports;
  std::mt19937_64 rng(cfg.seed);
  const double tol = cfg.tol > 0 ? cfg.tol : 1e-5;
  for (int n : {3, 4}) {
    const auto gens = rn::default_generators(n);
    const auto points = random_points(n, 6, 1.0, rng);
    for (const auto& label : suite_labels(n)) {
      const auto pt = rn::spectrum_embed(label, gens);
      for (size_t g = 0; g < gens.size(); ++g) {
        auto rep = verify::check_eigenfunction(rn::phi_fn(label), gens[g], pt.coordinates[g],
                                               points, tol);
        rep.name = "eigenfunction " + gens[g].name + " " + label.to_string();
        reports.push_back(rep);
      }
    }
  }
  if (cfg.inject_defect) {
    const rn::BesselLabel label(3, 1.0, 1);
    auto rep = verify::check_eigenfunction(rn::phi_fn(label), ops::delta_operator(3),
                                           Complex(-2.0, 0.0),
                                           random_points(3, 3, 1.0, rng), tol);
    rep.name = "eigenfunction wrong eigenvalue (injected defect)";
    reports.push_back(rep);
  }
  return reports;
}

std::vector<verify::CheckReport> suite_positive_type(const VerifyConfig& cfg) {
  std::vector<verify::CheckReport> reports;
  std::mt19937_64 rng(cfg.seed);
  const double tol = cfg.tol > 0 ? cfg.tol : 1e-9;

  auto vec_mul = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return (a + b).eval();
  };
  auto vec_inv = [](const Eigen::VectorXd& a) { return (-a).eval(); };

  for (int n : {3, 4}) {
    for (const auto& label : suite_labels(n)) {
      std::vector<std::vector<Eigen::VectorXd>> sets;
      for (int s = 0; s < 30; ++s) sets.push_back(random_points(n, 6, 1.2, rng));
      std::vector<std::vector<Eigen::VectorXcd>> vecs;
      {
        std::vector<Eigen::VectorXcd> vs;
        for (int i = 0; i < 6; ++i) {
          Eigen::VectorXcd v(n);
          for (int d = 0; d < n; ++d)
            v[d] = Complex(((rng() >> 11) * 0x1.0p-53) - 0.5, ((rng() >> 11) * 0x1.0p-53) - 0.5);
          vs.push_back(v);
        }
        vecs.push_back(vs);
      }
      const MatrixFn phi = rn::phi_fn(label);
      auto rep = verify::check_positive_type<Eigen::VectorXd>(
          [&phi](const Eigen::VectorXd& x) { return phi(x); }, vec_mul, vec_inv,
          Eigen::VectorXd::Zero(n).eval(), sets, vecs, tol);
      rep.name = "positive-type " + label.to_string();
      rep.seed = cfg.seed;
      reports.push_back(rep);
    }
  }

  // Laguerre functions on H_1.
  auto u = [&rng]() { return ((rng() >> 11) * 0x1.0p-53) * 2.0 - 1.0; };
  for (double lambda : {1.0, -1.5}) {
    for (int m : {0, 2}) {
      auto phi = heis::laguerre_fn(lambda, m, cfg.trunc_n);
      std::vector<std::vector<heis::HeisenbergPoint>> sets;
      for (int s = 0; s < 10; ++s) {
        std::vector<heis::HeisenbergPoint> set;
        for (int i = 0; i < 5; ++i) set.push_back({Complex(u(), u()), u()});
        sets.push_back(set);
      }
      auto rep = verify::check_positive_type<heis::HeisenbergPoint>(
          [&phi](const heis::HeisenbergPoint& p) {
            ComplexMatrix m1(1, 1);
            m1(0, 0) = phi(p);
            return m1;
          },
          [](const heis::HeisenbergPoint& a, const heis::HeisenbergPoint& b) {
            return heis::heis_mul(a, b);
          },
          [](const heis::HeisenbergPoint& a) { return heis::heis_inverse(a); },
          heis::heis_identity(), sets, {}, tol);
      rep.name = "positive-type laguerre(lambda=" + format_double(lambda) +
                 ",m=" + std::to_string(m) + ")";
      rep.seed = cfg.seed;
      reports.push_back(rep);
    }
  }

  if (cfg.inject_defect) {
    auto rep = verify::check_positive_type<Eigen::VectorXd>(
        [](const Eigen::VectorXd&) {
          ComplexMatrix m(2, 2);
          m << 1.0, 0.0, 0.0, -1.0;
          return m;
        },
        vec_mul, vec_inv, Eigen::VectorXd::Zero(3).eval(),
        {random_points(3, 4, 1.0, rng)}, {}, tol);
    rep.name = "positive-type diag(1,-1) (injected defect)";
    reports.push_back(rep);
  }
  return reports;
}

std::vector<verify::CheckReport> suite_algebra_commutativity(const VerifyConfig& cfg) {
  std::vector<verify::CheckReport> reports;
  const double tol = cfg.tol > 0 ? cfg.tol : 1e-4;
  {
    auto probe = ops::algebra_commutativity_probe(
        {ops::delta_operator(3), ops::curl_operator()}, 4, cfg.seed);
    verify::CheckReport rep;
    rep.name = "commutator [delta, curl] n=3";
    rep.max_residual = probe.max_residual;
    rep.threshold = tol;
    rep.samples = probe.trials;
    rep.seed = cfg.seed;
    rep.rule = "nested-central-diff";
    rep.finalize();
    reports.push_back(rep);
  }
  for (int n : {4, 5}) {
    auto probe = ops::algebra_commutativity_probe(
        {ops::delta_operator(n), ops::grad_div_operator(n)}, 3, cfg.seed + n);
    verify::CheckReport rep;
    rep.name = "commutator [delta, grad div] n=" + std::to_string(n);
    rep.max_residual = probe.max_residual;
    rep.threshold = tol;
    rep.samples = probe.trials;
    rep.seed = cfg.seed + n;
    rep.rule = "nested-central-diff";
    rep.finalize();
    reports.push_back(rep);
  }
  {
    // Vector Laplacian identity: delta F = grad div F - curl curl F on R^3.
    std::mt19937_64 rng(cfg.seed);
    auto uu = [&rng]() { return ((rng() >> 11) * 0x1.0p-53) * 2.0 - 1.0; };
    verify::CheckReport rep;
    rep.name = "identity delta = grad div - curl curl (n=3)";
    rep.threshold = cfg.tol > 0 ? cfg.tol : 1e-5;
    rep.rule = "nested-central-diff";
    rep.seed = cfg.seed;
    const auto delta = ops::delta_operator(3);
    const auto curl = ops::curl_operator();
    const auto gd = ops::grad_div_operator(3);
    for (int t = 0; t < 4; ++t) {
      const MatrixFn f = ops::random_smooth_field(3, 3, rng());
      Eigen::VectorXd x(3);
      for (int d = 0; d < 3; ++d) x[d] = uu();
      const ComplexMatrix lhs = ops::apply_operator(delta, f, x, 1e-2);
      const ComplexMatrix rhs =
          ops::apply_operator(gd, f, x, 1e-2) -
          ops::apply_operator(curl, ops::applied_fn(curl, f, 1e-2), x, 1e-2);
      rep.max_residual = std::max(rep.max_residual, numerics::max_norm(lhs - rhs));
      rep.samples++;
    }
    rep.finalize();
    reports.push_back(rep);
  }
  if (cfg.inject_defect) {
    verify::CheckReport rep;
    rep.name = "commutator injected defect";
    rep.max_residual = 1.0;
    rep.threshold = tol;
    rep.rule = "fixture";
    rep.finalize();
    reports.push_back(rep);
  }
  return reports;
}

std::vector<verify::CheckReport> suite_heisenberg_functional_eq(const VerifyConfig& cfg) {
  std::vector<verify::CheckReport> reports;
  std::mt19937_64 rng(cfg.seed);
  auto u = [&rng]() { return ((rng() >> 11) * 0x1.0p-53) * 2.0 - 1.0; };
  const double tol = cfg.tol > 0 ? cfg.tol : 1e-6;
  const geom::CircleQuadrature circle = geom::circle_quadrature(64);
  for (double lambda : {1.0, 2.0}) {
    for (int m : {0, 1, 2}) {
      auto phi = heis::laguerre_fn(lambda, m, cfg.trunc_n);
      verify::CheckReport rep;
      rep.name = "heis functional-eq lambda=" + format_double(lambda) + " m=" + std::to_string(m);
      rep.threshold = tol;
      rep.rule = "circle(64)";
      rep.seed = cfg.seed;
      for (int t = 0; t < 3; ++t) {
        const heis::HeisenbergPoint p{Complex(u(), u()), u()};
        const heis::HeisenbergPoint q{Complex(u(), u()), u()};
        rep.max_residual =
            std::max(rep.max_residual, heis::verify_heis_functional_equation(phi, p, q, circle));
        rep.samples++;
      }
      // Truncation stability: N -> N + 8.
      auto phi_wide = heis::laguerre_fn(lambda, m, cfg.trunc_n + 8);
      double drift = 0.0;
      for (int t = 0; t < 10; ++t) {
        const heis::HeisenbergPoint p{Complex(u(), u()), u()};
        drift = std::max(drift, std::abs(phi(p) - phi_wide(p)));
      }
      verify::CheckReport stab;
      stab.name = "heis truncation stability lambda=" + format_double(lambda) +
                  " m=" + std::to_string(m);
      stab.max_residual = drift;
      stab.threshold = 1e-10;
      stab.samples = 10;
      stab.seed = cfg.seed;
      stab.rule = "N vs N+8";
      stab.finalize();
      rep.finalize();
      reports.push_back(rep);
      reports.push_back(stab);
    }
  }
  if (cfg.inject_defect) {
    auto phi = heis::laguerre_fn(1.0, 0, cfg.trunc_n);
    heis::SphericalFn bad = [phi](const heis::HeisenbergPoint& p) { return phi(p) + 0.01; };
    verify::CheckReport rep;
    rep.name = "heis functional-eq perturbed (injected defect)";
    rep.threshold = tol;
    rep.rule = "circle(64)";
    rep.max_residual = heis::verify_heis_functional_equation(
        bad, {Complex(0.5, 0.0), 0.0}, {Complex(0.0, 0.3), 0.2}, circle);
    rep.finalize();
    reports.push_back(rep);
  }
  return reports;
}

std::vector<verify::CheckReport> collect_suite(const std::string& suite, const VerifyConfig& cfg) {
  if (suite == "equivariance") return suite_equivariance(cfg);
  if (suite == "functional-eq") return suite_functional_eq(cfg);
  if (suite == "eigen") return suite_eigen(cfg);
  if (suite == "positive-type") return suite_positive_type(cfg);
  if (suite == "algebra-commutativity") return suite_algebra_commutativity(cfg);
  if (suite == "heisenberg-functional-eq") return suite_heisenberg_functional_eq(cfg);
  throw std::out_of_range("unknown suite '" + suite + "'");
}

int run_verify(const std::string& suite, const VerifyConfig& cfg,
               const std::string& format, const std::string& output) {
  std::vector<verify::CheckReport> reports;
  try {
    if (suite == "all") {
      for (const auto* s : {"equivariance", "functional-eq", "eigen", "positive-type",
                            "algebra-commutativity", "heisenberg-functional-eq"}) {
        auto part = collect_suite(s, cfg);
        reports.insert(reports.end(), part.begin(), part.end());
      }
    } else {
      reports = collect_suite(suite, cfg);
    }
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  bool all_passed = true;
  for (const auto& r : reports) all_passed = all_passed && r.passed;
  if (format == "csv") {
    std::ostringstream os;
    os << "name,max_residual,threshold,passed,samples,seed,rule\n";
    for (const auto& r : reports)
      os << '"' << r.name << '"' << ',' << format_double(r.max_residual) << ','
         << format_double(r.threshold) << ',' << (r.passed ? 1 : 0) << ',' << r.samples << ','
         << r.seed << ',' << '"' << r.rule << '"' << "\n";
    write_output(output, os.str());
    return all_passed ? 0 : 1;
  }
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  json doc{{"suite", suite}, {"reports", arr}, {"all_passed", all_passed}};
  write_output(output, doc.dump(2));
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Commutative-triple deciders and matrix-valued spherical function "
      "evaluators for motion groups over R^n and the Heisenberg group"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand name

  std::string input, output;
  std::uint64_t seed = kDefaultSeed;
  double tol = 0.0;
  int quad_order = 24;
  long mc_samples = 200000;
  int trunc_n = heis::kDefaultFockTruncation;

  std::string format = "json";
  app.add_option("--seed", seed, "RNG seed (default 12648430, fixed for reproducibility)");
  app.add_option("--format", format, "output format for verify/spectrum: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", tol, "tolerance override (0 = per-operation default)");
  app.add_option("--quad-order", quad_order, "SO(3) Euler-angle quadrature order");
  app.add_option("--mc-samples", mc_samples, "Monte Carlo sample budget for SO(n), n >= 4");
  app.add_option("--trunc-N", trunc_n, "Fock-space truncation degree");

  auto* ct = app.add_subcommand(
      "check-triple",
      "Decide commutativity of a triple given as JSON "
      "{\"H\":\"Rn\"|\"heisenberg\",\"K\":{\"group\":...,\"n\":...},\"tau\":...}");
  std::string ct_input;
  std::string ct_output = "-";
  int ct_mmax = -1;
  ct->add_option("--input", ct_input, "path or inline JSON")->required();
  ct->add_option("--output", ct_output, "output path (default stdout)");
  ct->add_option("--m-max", ct_mmax, "Pieri cross-check degree bound (default 2n)");

  auto* ev = app.add_subcommand("eval-spherical",
                                "Tabulate a spherical function on an axial grid as CSV with "
                                "closed-form and quadrature columns");
  int ev_n = 4, ev_j = 0, ev_level = 32;
  double ev_s = 1.0, ev_rmin = 0.0, ev_rmax = 3.0, ev_rstep = 0.1;
  std::string ev_output = "-";
  ev->add_option("--n", ev_n, "ambient dimension (>= 3)");
  ev->add_option("--s", ev_s, "radial spectral parameter (>= 0)");
  ev->add_option("--j", ev_j, "block index (0 = all)");
  ev->add_option("--r-min", ev_rmin);
  ev->add_option("--r-max", ev_rmax);
  ev->add_option("--r-step", ev_rstep);
  ev->add_option("--quad-level", ev_level, "sphere product-rule level");
  ev->add_option("--output", ev_output, "output path (default stdout)");

  auto* el = app.add_subcommand("eval-laguerre",
                                "Tabulate a Laguerre-type spherical function on a z grid as CSV");
  double el_lambda = 1.0, el_zmax = 2.0, el_zstep = 0.25, el_t = 0.0;
  int el_m = 0;
  std::string el_output = "-";
  el->add_option("--lambda", el_lambda, "central frequency (nonzero)");
  el->add_option("--m", el_m, "Fock degree (>= 0)");
  el->add_option("--z-max", el_zmax);
  el->add_option("--z-step", el_zstep);
  el->add_option("--t", el_t, "central coordinate");
  el->add_option("--output", el_output, "output path (default stdout)");

  auto* sp = app.add_subcommand("spectrum",
                                "Eigenvalue tuples of the generator family on a label grid, "
                                "with a pairwise-distinctness flag");
  int sp_n = 4;
  std::vector<double> sp_s;
  std::string sp_output = "-";
  sp->add_option("--n", sp_n, "ambient dimension (>= 3)");
  sp->add_option("--s", sp_s, "s values (repeatable)");
  sp->add_option("--output", sp_output, "output path (default stdout)");

  auto* vf = app.add_subcommand("verify", "Run a named verification suite");
  std::string vf_suite;
  std::string vf_output = "-";
  bool vf_defect = false;
  vf->add_option("--suite", vf_suite,
                 "one of: equivariance, functional-eq, eigen, positive-type, "
                 "algebra-commutativity, heisenberg-functional-eq, all")
      ->required();
  vf->add_option("--output", vf_output, "output path (default stdout)");
  vf->add_flag("--inject-defect", vf_defect, "add a deliberately failing fixture");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (ct->parsed()) return run_check_triple(ct_input, ct_output, ct_mmax);
    if (ev->parsed()) return run_eval_spherical(ev_n, ev_s, ev_j, ev_rmin, ev_rmax, ev_rstep,
                                                ev_level, ev_output);
    if (el->parsed()) return run_eval_laguerre(el_lambda, el_m, el_zmax, el_zstep, el_t,
                                               trunc_n, el_output);
    if (sp->parsed()) return run_spectrum(sp_n, sp_s, format, sp_output);
    if (vf->parsed()) {
      VerifyConfig cfg;
      cfg.seed = seed;
      cfg.tol = tol;
      cfg.quad_order = quad_order;
      cfg.mc_samples = mc_samples;
      cfg.trunc_n = trunc_n;
      cfg.inject_defect = vf_defect;
      return run_verify(vf_suite, cfg, format, vf_output);
    }
  } catch (const UnsupportedTripleError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
