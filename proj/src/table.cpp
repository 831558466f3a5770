#include "hypercvx/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "hypercvx/coefficients.hpp"
#include "hypercvx/linalg.hpp"
#include "hypercvx/polynomials.hpp"
#include "hypercvx/terwilliger.hpp"

namespace hypercvx {

void RunConfig::normalize() {
  if (d < 1) throw parameter_error("degree must be >= 1");
  if (L < 2) throw parameter_error("edge size must be >= 2");
  if (n_min == 0) n_min = L;
  n_min = std::max(n_min, L);
  if (n_max == 0) n_max = n_min;
  if (n_max < n_min) throw parameter_error("empty n range");
  if (format != "csv" && format != "json")
    throw parameter_error("format must be csv or json");
  if (samples < 0) throw parameter_error("negative sample count");
  if (cap < 1) throw parameter_error("cap must be positive");
  if (tol <= 0) throw parameter_error("tolerance must be positive");
}

double round4(double v) {
  double r = std::round(v * 1e4) / 1e4;
  return r == 0 ? 0.0 : r;  // normalize -0
}

namespace {

std::string fmt4(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4f", round4(v));
  return buf;
}

TableRow compute_row(const GammaPattern& pat, int n, const RunConfig& cfg) {
  EdgeIndex ix(n, cfg.L);
  CoefficientCache cache(ix);
  MultiIndex gamma = pattern_to_multiindex(pat, ix);
  RationalSymMatrix q = matrix_Q_direct(gamma, cache, Exec::Serial);
  RationalSymMatrix b = matrix_B(gamma, cache, Exec::Serial);
  RationalSymMatrix r = matrix_R(gamma, cache);
  TableRow row;
  row.d = cfg.d;
  row.L = cfg.L;
  row.n = n;
  row.gamma = pat.serialize();
  row.lambda_min_Q = min_eigenvalue(q.to_double());
  row.lambda_min_B = min_eigenvalue(b.to_double());
  row.lambda_min_R = min_eigenvalue(r.to_double());
  return row;
}

}  // namespace

std::vector<TableRow> compute_table_rows(const RunConfig& cfg, Exec exec) {
  RunConfig c = cfg;
  c.normalize();
  if (binomial(c.n_max, c.L) > c.cap)
    throw capacity_error("matrix dimension above cap");

  auto reps = gamma_orbit_representatives(c.n_max, c.L, c.d);
  struct Slot {
    const GammaPattern* pat;
    int n;
  };
  std::vector<Slot> slots;
  for (const auto& pat : reps)
    for (int n = std::max({c.n_min, pat.width(), c.L}); n <= c.n_max; ++n)
      slots.push_back({&pat, n});

  std::vector<TableRow> rows(slots.size());
  if (exec == Exec::OpenMP) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < slots.size(); ++i)
      rows[i] = compute_row(*slots[i].pat, slots[i].n, c);
  } else {
    for (std::size_t i = 0; i < slots.size(); ++i)
      rows[i] = compute_row(*slots[i].pat, slots[i].n, c);
  }
  return rows;
}

std::string table_to_csv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "d,L,n,gamma,lambda_min_Q,lambda_min_B,lambda_min_R\n";
  for (const auto& r : rows)
    os << r.d << "," << r.L << "," << r.n << ",\"" << r.gamma << "\","
       << fmt4(r.lambda_min_Q) << "," << fmt4(r.lambda_min_B) << ","
       << fmt4(r.lambda_min_R) << "\n";
  return os.str();
}

nlohmann::json table_to_json(const std::vector<TableRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows)
    arr.push_back({{"d", r.d},
                   {"L", r.L},
                   {"n", r.n},
                   {"gamma", r.gamma},
                   {"lambda_min_Q", round4(r.lambda_min_Q)},
                   {"lambda_min_B", round4(r.lambda_min_B)},
                   {"lambda_min_R", round4(r.lambda_min_R)}});
  return arr;
}

nlohmann::json ConvexityReport::to_json() const {
  return {{"violations", violations},
          {"orbit_checks", orbit_checks},
          {"sample_checks", sample_checks},
          {"failures", failures}};
}

ConvexityReport run_convexity_check(const RunConfig& cfg, Exec exec) {
  RunConfig c = cfg;
  c.normalize();
  if (binomial(c.n_max, c.L) > c.cap)
    throw capacity_error("matrix dimension above cap");
  ConvexityReport rep;
  auto fail = [&](const std::string& what) {
    ++rep.violations;
    rep.failures.push_back(what);
  };

  auto reps = gamma_orbit_representatives(c.n_max, c.L, c.d);
  for (const auto& pat : reps) {
    for (int n = std::max({c.n_min, pat.width(), c.L}); n <= c.n_max; ++n) {
      EdgeIndex ix(n, c.L);
      CoefficientCache cache(ix);
      MultiIndex gamma = pattern_to_multiindex(pat, ix);
      ++rep.orbit_checks;
      RationalSymMatrix q = matrix_Q_direct(gamma, cache, exec);
      double lq = min_eigenvalue(q.to_double());
      double scale_q = std::max(1.0, inf_norm(q.to_double()));
      std::ostringstream tag;
      tag << "d=" << c.d << " L=" << c.L << " n=" << n
          << " gamma=" << pat.serialize();
      if (!psd_by_min_eigenvalue(lq, scale_q, c.tol))
        fail("Q not PSD at " + tag.str());
      if (!gamma.zero()) {
        RationalSymMatrix qr = matrix_Q_recursive(gamma, cache, exec);
        if (!(qr == q)) fail("Q construction mismatch at " + tag.str());
        double lqr = min_eigenvalue(qr.to_double());
        if (!psd_by_min_eigenvalue(lqr, scale_q, c.tol))
          fail("recursive Q not PSD at " + tag.str());
      }
      RationalSymMatrix mg = matrix_M_gamma(gamma, ix);
      double lm = min_eigenvalue(mg.to_double());
      if (!psd_by_min_eigenvalue(lm, std::max(1.0, inf_norm(mg.to_double())),
                                 c.tol))
        fail("M not PSD at " + tag.str());
    }
  }

  // Hessians at random simplex points
  if (c.d >= 2) {
    for (int n = c.n_min; n <= c.n_max; ++n) {
      EdgeIndex ix(n, c.L);
      CoefficientCache cache(ix);
      HessianAssembly hp(HessianAssembly::Kind::P, c.d, cache);
      HessianAssembly hf(HessianAssembly::Kind::F, c.d, cache);
      SeededRng rng(c.seed + static_cast<std::uint64_t>(n));
      for (long s = 0; s < c.samples; ++s) {
        SimplexPoint pt(dirichlet_uniform(ix.size(), rng));
        const std::vector<double>& x = pt.weights();
        ++rep.sample_checks;
        Eigen::MatrixXd h = hp.evaluate(x, exec);
        if (!psd_by_min_eigenvalue(min_eigenvalue(h),
                                   std::max(1.0, inf_norm(h)), c.tol)) {
          std::ostringstream o;
          o << "hessian(p) not PSD at n=" << n << " sample=" << s;
          fail(o.str());
        }
        Eigen::MatrixXd g = hf.evaluate(x, exec);
        if (!psd_by_min_eigenvalue(min_eigenvalue(g),
                                   std::max(1.0, inf_norm(g)), c.tol)) {
          std::ostringstream o;
          o << "hessian(f) not PSD at n=" << n << " sample=" << s;
          fail(o.str());
        }
      }
    }
  }
  return rep;
}

nlohmann::json BarycenterReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows)
    arr.push_back({{"n", r.n},
                   {"p_at_center", r.p_at_center},
                   {"f_at_center", r.f_at_center},
                   {"p_sample_min", r.p_sample_min},
                   {"f_sample_min", r.f_sample_min},
                   {"p_gap", r.p_gap},
                   {"f_gap", r.f_gap},
                   {"grad_spread_p", r.grad_spread_p},
                   {"grad_spread_f", r.grad_spread_f}});
  return {{"rows", arr}, {"center_is_min", center_is_min}};
}

namespace {

// Fixed-step projected descent used to sharpen the sampled minimum.
template <class Eval, class Grad>
double descend(std::vector<double> x, int d, const Eval& value,
               const Grad& grad) {
  const double step = 0.1 / d;
  double best = value(x);
  for (int it = 0; it < 100; ++it) {
    std::vector<double> g = grad(x);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= step * g[i];
    project_to_simplex(x);
    best = std::min(best, value(x));
  }
  return best;
}

}  // namespace

BarycenterReport run_barycenter(const RunConfig& cfg, Exec exec) {
  RunConfig c = cfg;
  c.normalize();
  if (binomial(c.n_max, c.L) > c.cap)
    throw capacity_error("matrix dimension above cap");
  BarycenterReport rep;
  for (int n = c.n_min; n <= c.n_max; ++n) {
    EdgeIndex ix(n, c.L);
    CoefficientCache cache(ix);
    const int m = ix.size();
    BarycenterRow row;
    row.n = n;

    SimplexPoint center_pt = SimplexPoint::barycenter(m);
    const std::vector<double>& center = center_pt.weights();
    row.p_at_center = eval_p(center, c.d, ix, EvalPath::MonomialBasis, exec);
    row.f_at_center = eval_f(center, c.d, cache, EvalPath::MonomialBasis, exec);

    auto spread = [](const std::vector<double>& g) {
      auto [lo, hi] = std::minmax_element(g.begin(), g.end());
      return *hi - *lo;
    };
    row.grad_spread_p = spread(gradient_p(center, c.d, ix, exec));
    row.grad_spread_f = spread(gradient_f(center, c.d, cache, exec));

    SeededRng rng(c.seed + static_cast<std::uint64_t>(n));
    double best_p = row.p_at_center, best_f = row.f_at_center;
    std::vector<double> arg_p = center, arg_f = center;
    for (long s = 0; s < c.samples; ++s) {
      SimplexPoint pt(dirichlet_uniform(m, rng));
      const std::vector<double>& x = pt.weights();
      double vp = eval_p(x, c.d, ix, EvalPath::MonomialBasis, exec);
      double vf = eval_f(x, c.d, cache, EvalPath::MonomialBasis, exec);
      if (vp < best_p) {
        best_p = vp;
        arg_p = x;
      }
      if (vf < best_f) {
        best_f = vf;
        arg_f = x;
      }
    }
    best_p = std::min(
        best_p,
        descend(
            arg_p, c.d,
            [&](const std::vector<double>& x) {
              return eval_p(x, c.d, ix, EvalPath::MonomialBasis, exec);
            },
            [&](const std::vector<double>& x) {
              return gradient_p(x, c.d, ix, exec);
            }));
    best_f = std::min(
        best_f,
        descend(
            arg_f, c.d,
            [&](const std::vector<double>& x) {
              return eval_f(x, c.d, cache, EvalPath::MonomialBasis, exec);
            },
            [&](const std::vector<double>& x) {
              return gradient_f(x, c.d, cache, exec);
            }));
    row.p_sample_min = best_p;
    row.f_sample_min = best_f;
    row.p_gap = best_p - row.p_at_center;
    row.f_gap = best_f - row.f_at_center;
    if (row.p_gap < -1e-9 || row.f_gap < -1e-9) rep.center_is_min = false;
    rep.rows.push_back(row);
  }
  return rep;
}

nlohmann::json CertifyReport::to_json() const {
  nlohmann::json pipe = nlohmann::json::array();
  for (const auto& p : pipeline) pipe.push_back(p.to_json());
  return {{"pipeline", pipe},
          {"block_vs_dense_checks", block_vs_dense_checks},
          {"block_vs_dense_mismatches", block_vs_dense_mismatches},
          {"non_psd_M_p", non_psd_M_p},
          {"johnson_checks", johnson_checks},
          {"johnson_failures", johnson_failures},
          {"max_integral_residual", max_integral_residual},
          {"ok", ok()}};
}

bool CertifyReport::ok() const {
  for (const auto& p : pipeline)
    if (!p.all_templates() || !p.psd || !p.hadamard_identity) return false;
  return block_vs_dense_mismatches == 0 && non_psd_M_p == 0 &&
         johnson_failures == 0 && max_integral_residual < 1e-10;
}

CertifyReport run_certify(const RunConfig& cfg) {
  RunConfig c = cfg;
  c.normalize();
  CertifyReport rep;

  if (c.L == 2) {
    for (int n = std::max(4, c.n_min); n <= c.n_max; ++n)
      rep.pipeline.push_back(certify_f3_L2(n));
  }

  for (int n = std::max(2, c.n_min); n <= c.n_max; ++n) {
    JohnsonSchemeL2 js = johnson_decomposition_L2(n);
    ++rep.johnson_checks;
    if (!js.gamma_identity || !js.m_empty_identity) ++rep.johnson_failures;
  }

  const int p_max = std::max(1, c.L * (c.d - 2));
  for (int p = 1; p <= p_max; ++p)
    for (int n = c.n_min; n <= c.n_max; ++n) {
      int N = n - p;
      if (N < 0) continue;
      RationalSymMatrix mp = matrix_M_p(N, c.L, p);
      if (mp.dim() > c.cap) continue;
      PsdVerdict dense = psd_dense(mp.to_double(), c.tol);
      PsdVerdict blocks =
          psd_via_blocks(TerwilligerElement::from_M_p(N, c.L, p), c.tol);
      ++rep.block_vs_dense_checks;
      if (dense.psd != blocks.psd) ++rep.block_vs_dense_mismatches;
      if (!dense.psd) ++rep.non_psd_M_p;
    }

  const int n_cap = std::min(8, c.n_max);
  for (int N = 1; N <= n_cap; ++N)
    for (int k = 0; k <= std::min(2, N / 2); ++k)
      for (int i = k; i <= std::min(4, N - k); ++i)
        for (int j = k; j <= std::min(4, N - k); ++j)
          for (int p = 1; p <= 4; ++p) {
            double r = integral_identity_residual(
                i, j, k, p, N, default_quadrature_order(i, j, p, N));
            rep.max_integral_residual = std::max(rep.max_integral_residual, r);
          }
  return rep;
}

int run_selftest(std::ostream& os) {
  struct Check {
    std::string name;
    bool ok;
  };
  std::vector<Check> checks;

  {
    EdgeIndex ix(5, 3);
    checks.push_back({"edge enumeration",
                      ix.size() == 10 &&
                          ix.edge(0).vertices() == std::vector<int>{1, 2, 3} &&
                          ix.edge(9).vertices() == std::vector<int>{3, 4, 5}});
  }
  {
    EdgeIndex ix(4, 2);
    CoefficientCache cache(ix);
    SeededRng rng(1);
    std::vector<double> x = dirichlet_uniform(ix.size(), rng);
    double a = eval_p(x, 3, ix, EvalPath::TupleSum, Exec::Serial);
    double b = eval_p(x, 3, ix, EvalPath::MonomialBasis, Exec::Serial);
    double c = eval_f(x, 3, cache, EvalPath::TupleSum, Exec::Serial);
    double d = eval_f(x, 3, cache, EvalPath::MonomialBasis, Exec::Serial);
    checks.push_back({"dual evaluation paths",
                      std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)) &&
                          std::abs(c - d) <=
                              1e-12 * std::max(1.0, std::abs(c))});
  }
  {
    EdgeIndex ix(5, 2);
    CoefficientCache cache(ix);
    MultiIndex u1 = MultiIndex::unit(0);
    checks.push_back({"dual Q construction",
                      matrix_Q_direct(u1, cache, Exec::Serial) ==
                          matrix_Q_recursive(u1, cache, Exec::Serial)});
  }
  {
    bool ok = true;
    for (int n = 3; n <= 6; ++n) {
      JohnsonSchemeL2 js = johnson_decomposition_L2(n);
      ok = ok && js.gamma_identity && js.m_empty_identity;
    }
    checks.push_back({"johnson identities", ok});
  }
  {
    bool ok = true;
    for (int p = 1; p <= 2; ++p) {
      PsdVerdict dense = psd_dense(matrix_M_p(5, 2, p).to_double());
      PsdVerdict blocks = psd_via_blocks(TerwilligerElement::from_M_p(5, 2, p));
      ok = ok && dense.psd && blocks.psd;
    }
    checks.push_back({"block vs dense verdicts", ok});
  }
  checks.push_back(
      {"integral identity",
       integral_identity_residual(2, 3, 1, 2, 6,
                                  default_quadrature_order(2, 3, 2, 6)) <
           1e-10});
  {
    CertifyF3Report r = certify_f3_L2(5);
    checks.push_back({"elimination pipeline",
                      r.all_templates() && r.psd && r.hadamard_identity});
  }
  {
    RunConfig c;
    c.d = 3;
    c.L = 2;
    c.n_min = 3;
    c.n_max = 5;
    std::string a = table_to_csv(compute_table_rows(c));
    std::string b = table_to_csv(compute_table_rows(c));
    checks.push_back({"table determinism", a == b});
  }

  int failures = 0;
  for (const auto& ch : checks) {
    os << (ch.ok ? "PASS " : "FAIL ") << ch.name << "\n";
    if (!ch.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace hypercvx
