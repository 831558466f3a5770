// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Optional argv[1] is the CLI binary used for the byte-level
// determinism check.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "acceptance_tables.hpp"
#include "hypercvx/certification.hpp"
#include "hypercvx/coefficients.hpp"
#include "hypercvx/polynomials.hpp"
#include "hypercvx/table.hpp"
#include "hypercvx/terwilliger.hpp"
#include "test_util.hpp"

using namespace hypercvx;

namespace {

int g_failures = 0;

void criterion(int id, const std::string& name,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  if (!ok) ++g_failures;
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << name;
  if (!detail.empty()) std::cout << " [" << detail << "]";
  std::cout << std::endl;
}

GammaPattern canon_of(const std::string& gamma_text) {
  std::vector<Edge> edges = parse_gamma(gamma_text);
  int maxv = 2;
  for (const Edge& e : edges) maxv = std::max(maxv, e.vertices().back());
  return canonicalize_pattern(edges, maxv);
}

// contiguous n runs per (d, L), so sparse spot rows do not force whole grids
std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> n_runs() {
  std::map<std::pair<int, int>, std::set<int>> wanted;
  for (const auto& row : acceptance::kRows)
    wanted[{row.d, row.L}].insert(row.n);
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> runs;
  for (const auto& [key, ns] : wanted) {
    int start = -1, prev = -10;
    for (int n : ns) {
      if (n != prev + 1) {
        if (start >= 0) runs[key].push_back({start, prev});
        start = n;
      }
      prev = n;
    }
    runs[key].push_back({start, prev});
  }
  return runs;
}

bool row_within(const TableRow& got, const acceptance::PaperRow& want,
                std::string& detail) {
  auto bad = [&](const char* col, double g, double w) {
    std::ostringstream os;
    os << "d=" << want.d << " L=" << want.L << " n=" << want.n
       << " gamma=" << want.gamma << " " << col << ": got " << g << " want "
       << w;
    detail = os.str();
    return false;
  };
  if (std::abs(got.lambda_min_Q - want.q) > 5e-5)
    return bad("Q", got.lambda_min_Q, want.q);
  if (std::abs(got.lambda_min_B - want.b) > 5e-5)
    return bad("B", got.lambda_min_B, want.b);
  if (std::abs(got.lambda_min_R - want.r) > 5e-5)
    return bad("R", got.lambda_min_R, want.r);
  return true;
}

std::string cli_path;

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];

  criterion(1, "published eigenvalue tables reproduced", [](std::string& d) {
    auto runs = n_runs();
    // computed rows keyed by (d, L, n, canonical pattern)
    std::map<std::tuple<int, int, int, std::string>, TableRow> computed;
    for (const auto& [key, ranges] : runs) {
      for (const auto& [lo, hi] : ranges) {
        RunConfig cfg;
        cfg.d = key.first;
        cfg.L = key.second;
        cfg.n_min = lo;
        cfg.n_max = hi;
        for (const TableRow& row : compute_table_rows(cfg)) {
          GammaPattern pat = canon_of(row.gamma);
          computed[{row.d, row.L, row.n, pat.serialize()}] = row;
        }
      }
    }
    for (const auto& want : acceptance::kRows) {
      auto key = std::make_tuple(want.d, want.L, want.n,
                                 canon_of(want.gamma).serialize());
      auto it = computed.find(key);
      if (it == computed.end()) {
        d = std::string("missing row for gamma=") + want.gamma;
        return false;
      }
      if (!row_within(it->second, want, d)) return false;
    }
    std::ostringstream os;
    os << sizeof(acceptance::kRows) / sizeof(acceptance::kRows[0])
       << " rows within 5e-5";
    d = os.str();
    return true;
  });

  criterion(2, "direct and recursive constructions agree exactly",
            [](std::string& d) {
              std::set<std::tuple<int, int, int, std::string>> seen;
              int checks = 0;
              for (const auto& row : acceptance::kRows) {
                GammaPattern pat = canon_of(row.gamma);
                if (pat.empty()) continue;  // reformulation starts at degree 3
                auto key =
                    std::make_tuple(row.d, row.L, row.n, pat.serialize());
                if (!seen.insert(key).second) continue;
                EdgeIndex ix(row.n, row.L);
                CoefficientCache cache(ix);
                MultiIndex gamma = pattern_to_multiindex(pat, ix);
                if (!(matrix_Q_direct(gamma, cache) ==
                      matrix_Q_recursive(gamma, cache))) {
                  std::ostringstream os;
                  os << "mismatch at d=" << row.d << " L=" << row.L
                     << " n=" << row.n << " gamma=" << row.gamma;
                  d = os.str();
                  return false;
                }
                ++checks;
              }
              d = std::to_string(checks) + " orbit cases, exact equality";
              return true;
            });

  criterion(3, "coefficient recursion equals the enumerated sum",
            [](std::string& d) {
              long checked = 0;
              for (int L = 2; L <= 3; ++L)
                for (int n = std::max(2, L); n <= 6; ++n) {
                  EdgeIndex ix(n, L);
                  CoefficientCache cache(ix);
                  for (int dd = 1; dd <= 4; ++dd) {
                    if (std::pow(static_cast<double>(ix.size()), dd) > 1e6)
                      continue;
                    bool ok = true;
                    for_each_multiset(
                        ix.size(), dd, [&](const std::vector<int>& idxs) {
                          if (!ok) return;
                          MultiIndex alpha;
                          for (int k : idxs) alpha = alpha.plus(k);
                          if (cache.b(alpha) !=
                              testing::b_alpha_enumerated(alpha, ix))
                            ok = false;
                          ++checked;
                        });
                    if (!ok) {
                      d = "exact mismatch";
                      return false;
                    }
                  }
                }
              d = std::to_string(checked) + " exponent vectors, exact equality";
              return true;
            });

  criterion(
      4, "block diagonalization: verdicts, homomorphism, spectra, shape",
      [](std::string& d) {
        // (a) block verdict == dense verdict, everything PSD
        for (int L = 2; L <= 4; ++L)
          for (int N = 1; N <= 12; ++N)
            for (int p = 1; p <= 8; ++p) {
              PsdVerdict blocks =
                  psd_via_blocks(TerwilligerElement::from_M_p(N, L, p), 1e-9);
              PsdVerdict dense =
                  psd_dense(matrix_M_p(N, L, p).to_double(), 1e-9);
              if (!blocks.psd || !dense.psd) {
                std::ostringstream os;
                os << "not PSD at L=" << L << " N=" << N << " p=" << p;
                d = os.str();
                return false;
              }
            }
        // (b) homomorphism through materialized products
        for (int N : {4, 6, 8}) {
          for (int trial = 0; trial < 100; ++trial) {
            SeededRng rng(10'000 + N * 100 + trial);
            auto rand_elem = [&]() {
              TerwilligerElement e(N);
              for (int i = 0; i <= N; ++i)
                for (int j = i; j <= N; ++j)
                  for (int t = std::max(0, i + j - N); t <= std::min(i, j);
                       ++t) {
                    Rational v = testing::random_small_rational(rng);
                    e.set_x(i, j, t, v);
                    e.set_x(j, i, t, v);
                  }
              return e;
            };
            TerwilligerElement a = rand_elem();
            TerwilligerElement b = rand_elem();
            Eigen::MatrixXd prod = materialize(a) * materialize(b);
            TerwilligerElement ab = element_from_dense(prod, N, 1e-7);
            std::vector<Eigen::MatrixXd> babk = block_map(ab);
            BlockDiagonalization ba = block_diagonalize(a);
            BlockDiagonalization bb = block_diagonalize(b);
            for (std::size_t k = 0; k < babk.size(); ++k) {
              Eigen::MatrixXd expect = ba.blocks[k] * bb.blocks[k];
              if (inf_norm(babk[k] - expect) >
                  1e-9 * std::max(1.0, inf_norm(expect))) {
                d = "homomorphism residual above 1e-9";
                return false;
              }
            }
          }
        }
        // (c) spectra as sets
        for (int N = 2; N <= 10; ++N) {
          for (int trial = 0; trial < 3; ++trial) {
            SeededRng rng(20'000 + N * 10 + trial);
            TerwilligerElement e(N);
            for (int i = 0; i <= N; ++i)
              for (int j = i; j <= N; ++j)
                for (int t = std::max(0, i + j - N); t <= std::min(i, j); ++t) {
                  Rational v = testing::random_small_rational(rng);
                  e.set_x(i, j, t, v);
                  e.set_x(j, i, t, v);
                }
            std::vector<double> dense = sym_eigenvalues(materialize(e));
            std::vector<double> blocks;
            for (const auto& blk : block_diagonalize(e).blocks) {
              auto ev = sym_eigenvalues(blk);
              blocks.insert(blocks.end(), ev.begin(), ev.end());
            }
            double scale = 1.0;
            for (double v : dense) scale = std::max(scale, std::abs(v));
            auto covered = [&](const std::vector<double>& from,
                               const std::vector<double>& in) {
              for (double v : from) {
                double best = 1e300;
                for (double w : in) best = std::min(best, std::abs(v - w));
                if (best > 1e-8 * scale) return false;
              }
              return true;
            };
            if (!covered(dense, blocks) || !covered(blocks, dense)) {
              d = "spectrum mismatch at N=" + std::to_string(N);
              return false;
            }
          }
        }
        // (d) block count and sizes
        for (int N = 1; N <= 12; ++N) {
          BlockDiagonalization bd =
              block_diagonalize(TerwilligerElement::identity(N));
          if (static_cast<int>(bd.blocks.size()) != N / 2 + 1) {
            d = "block count";
            return false;
          }
          for (int k = 0; k <= N / 2; ++k)
            if (bd.blocks[k].rows() != N - 2 * k + 1) {
              d = "block size";
              return false;
            }
        }
        return true;
      });

  criterion(5, "closed-form block coefficients match the quadrature integral",
            [](std::string& d) {
              double worst = 0;
              for (int N = 1; N <= 8; ++N)
                for (int k = 0; k <= std::min(2, N / 2); ++k)
                  for (int i = k; i <= std::min(4, N - k); ++i)
                    for (int j = k; j <= std::min(4, N - k); ++j)
                      for (int p = 1; p <= 4; ++p)
                        worst = std::max(
                            worst,
                            integral_identity_residual(
                                i, j, k, p, N,
                                default_quadrature_order(i, j, p, N)));
              std::ostringstream os;
              os << "max residual " << worst;
              d = os.str();
              return worst < 1e-10;
            });

  criterion(6, "exact elimination certificate for degree 3, edge size 2",
            [](std::string& d) {
              for (int n = 4; n <= 10; ++n) {
                CertifyF3Report rep = certify_f3_L2(n);
                if (!rep.all_templates()) {
                  d = "stage template mismatch at n=" + std::to_string(n);
                  return false;
                }
                if (!(rep.lambda_min_B > 0)) {
                  d = "lambda_min(B) not positive at n=" + std::to_string(n);
                  return false;
                }
                if (!rep.hadamard_identity) {
                  d = "product identity failed at n=" + std::to_string(n);
                  return false;
                }
              }
              return true;
            });

  criterion(7, "assembled second derivatives match finite differences",
            [](std::string& d) {
              const double h = 1e-5;
              for (auto [n, L, dd] :
                   {std::tuple{5, 2, 3}, {5, 2, 4}, {6, 3, 3}, {5, 3, 4}}) {
                EdgeIndex ix(n, L);
                CoefficientCache cache(ix);
                HessianAssembly hp(HessianAssembly::Kind::P, dd, cache);
                HessianAssembly hf(HessianAssembly::Kind::F, dd, cache);
                auto gp = [&](const std::vector<double>& y) {
                  return gradient_p(y, dd, ix);
                };
                auto gf = [&](const std::vector<double>& y) {
                  return gradient_f(y, dd, cache);
                };
                SeededRng rng(777 + n * 100 + L * 10 + dd);
                for (int s = 0; s < 20; ++s) {
                  auto x = dirichlet_uniform(ix.size(), rng);
                  // gradients against value differences
                  auto gpx = gp(x);
                  auto gp_fd = testing::fd_gradient(
                      [&](const std::vector<double>& y) {
                        return eval_p(y, dd, ix);
                      },
                      x, h);
                  auto gfx = gf(x);
                  auto gf_fd = testing::fd_gradient(
                      [&](const std::vector<double>& y) {
                        return eval_f(y, dd, cache);
                      },
                      x, h);
                  for (int i = 0; i < ix.size(); ++i) {
                    if (std::abs(gpx[i] - gp_fd[i]) >
                            1e-6 * std::max(1.0, std::abs(gpx[i])) ||
                        std::abs(gfx[i] - gf_fd[i]) >
                            1e-6 * std::max(1.0, std::abs(gfx[i]))) {
                      d = "gradient mismatch";
                      return false;
                    }
                  }
                  // assembled Hessians against gradient differences
                  Eigen::MatrixXd p_fd =
                      testing::fd_hessian_from_gradient(gp, x, h);
                  Eigen::MatrixXd hpx = hp.evaluate(x);
                  if (inf_norm(hpx - p_fd) >
                      1e-6 * std::max(1.0, inf_norm(hpx))) {
                    d = "first family mismatch";
                    return false;
                  }
                  Eigen::MatrixXd f_fd =
                      testing::fd_hessian_from_gradient(gf, x, h);
                  Eigen::MatrixXd hfx = hf.evaluate(x);
                  if (inf_norm(hfx - f_fd) >
                      1e-6 * std::max(1.0, inf_norm(hfx))) {
                    d = "second family mismatch";
                    return false;
                  }
                }
              }
              return true;
            });

  criterion(8, "uniform point is the sampled minimizer", [](std::string& d) {
    for (auto [n, L, dd] : {std::tuple{5, 2, 3},
                            {5, 2, 4},
                            {6, 3, 3},
                            {5, 3, 4},
                            {4, 2, 5}}) {
      RunConfig cfg;
      cfg.d = dd;
      cfg.L = L;
      cfg.n_min = n;
      cfg.n_max = n;
      cfg.samples = 10000;
      cfg.seed = 20240801;
      BarycenterReport rep = run_barycenter(cfg);
      const BarycenterRow& row = rep.rows.at(0);
      if (row.p_gap < -1e-9 || row.f_gap < -1e-9) {
        d = "sampled point below the center";
        return false;
      }
      if (row.grad_spread_p > 1e-10 || row.grad_spread_f > 1e-10) {
        d = "gradient components differ at the center";
        return false;
      }
    }
    EdgeIndex ix(3, 2);
    std::vector<Rational> center(3, ratio(1, 3));
    if (eval_p_exact(center, 2, ix) != ratio(7, 18)) {
      d = "exact center value is not 7/18";
      return false;
    }
    return true;
  });

  criterion(9, "incidence identities and the rank-2 border",
            [](std::string& d) {
              for (int n = 3; n <= 10; ++n) {
                JohnsonSchemeL2 js = johnson_decomposition_L2(n);
                if (!js.gamma_identity || !js.m_empty_identity) {
                  d = "exact identity failed at n=" + std::to_string(n);
                  return false;
                }
                if (n >= 4 &&
                    std::abs(js.lambda_min_M_empty - 1.0 / 12) > 1e-10) {
                  d = "lambda_min != 1/12 at n=" + std::to_string(n);
                  return false;
                }
              }
              for (int n = 6; n <= 10; ++n) {
                EdgeIndex ix(n, 2);
                Eigen::MatrixXd r = matrix_R_f3(ix).to_double();
                if (numerical_rank(r, 1e-9) != 2) {
                  d = "rank != 2 at n=" + std::to_string(n);
                  return false;
                }
                if (!(min_eigenvalue(r) < -1.0 / 12)) {
                  d = "border eigenvalue above -1/12 at n=" + std::to_string(n);
                  return false;
                }
              }
              return true;
            });

  criterion(10, "table output is byte-identical across runs",
            [](std::string& d) {
              if (!cli_path.empty()) {
                std::string base = "/tmp/hypercvx_accept_";
                std::string f1 = base + "a.csv", f2 = base + "b.csv";
                std::string flags =
                    " table --d 3 --L 2 --n-min 3 --n-max 8 --out ";
                if (std::system((cli_path + flags + f1).c_str()) != 0 ||
                    std::system((cli_path + flags + f2).c_str()) != 0) {
                  d = "table command failed";
                  return false;
                }
                std::ifstream a(f1, std::ios::binary), b(f2, std::ios::binary);
                std::string sa((std::istreambuf_iterator<char>(a)),
                               std::istreambuf_iterator<char>());
                std::string sb((std::istreambuf_iterator<char>(b)),
                               std::istreambuf_iterator<char>());
                std::remove(f1.c_str());
                std::remove(f2.c_str());
                if (sa.empty() || sa != sb) {
                  d = "process outputs differ";
                  return false;
                }
                d = "two process runs byte-identical";
                return true;
              }
              RunConfig cfg;
              cfg.d = 3;
              cfg.L = 2;
              cfg.n_min = 3;
              cfg.n_max = 8;
              std::string a = table_to_csv(compute_table_rows(cfg));
              std::string b = table_to_csv(compute_table_rows(cfg));
              d = "library-level comparison (no CLI path given)";
              return !a.empty() && a == b;
            });

  if (g_failures == 0) {
    std::cout << "all criteria passed" << std::endl;
    return 0;
  }
  std::cout << g_failures << " criteria failed" << std::endl;
  return 1;
}
