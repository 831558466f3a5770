#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypercvx/certification.hpp"
#include "hypercvx/exec.hpp"
#include "hypercvx/matrices.hpp"

namespace hypercvx {

struct RunConfig {
  int d = 3;
  int L = 2;
  int n_min = 0;  // 0 -> defaults to L
  int n_max = 0;  // 0 -> defaults to n_min
  long samples = 1000;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string format = "csv";  // csv | json
  std::string out;             // empty -> stdout
  long cap = 5000;             // matrix dimension cap
  long tuple_cap = 1'000'000;

  void normalize();  // fills defaults, validates ranges
};

struct TableRow {
  int d = 0, L = 0, n = 0;
  std::string gamma;
  double lambda_min_Q = 0, lambda_min_B = 0, lambda_min_R = 0;
};

// One row per (pattern, n): pattern outer, n inner; patterns in canonical
// order, n ascending from max(n_min, pattern width, L).
std::vector<TableRow> compute_table_rows(const RunConfig& cfg,
                                         Exec exec = Exec::OpenMP);

// Round half away from zero to 4 decimal places.
double round4(double v);

std::string table_to_csv(const std::vector<TableRow>& rows);
nlohmann::json table_to_json(const std::vector<TableRow>& rows);

struct ConvexityReport {
  int violations = 0;
  int orbit_checks = 0;
  int sample_checks = 0;
  std::vector<std::string> failures;
  nlohmann::json to_json() const;
};
ConvexityReport run_convexity_check(const RunConfig& cfg,
                                    Exec exec = Exec::OpenMP);

struct BarycenterRow {
  int n = 0;
  double p_at_center = 0, f_at_center = 0;
  double p_sample_min = 0, f_sample_min = 0;
  double p_gap = 0, f_gap = 0;  // sampled min - center value
  double grad_spread_p = 0, grad_spread_f = 0;
};
struct BarycenterReport {
  std::vector<BarycenterRow> rows;
  bool center_is_min = true;  // all gaps >= -1e-9
  nlohmann::json to_json() const;
};
BarycenterReport run_barycenter(const RunConfig& cfg,
                                Exec exec = Exec::OpenMP);

struct CertifyReport {
  std::vector<CertifyF3Report> pipeline;
  int block_vs_dense_checks = 0;
  int block_vs_dense_mismatches = 0;
  int non_psd_M_p = 0;
  int johnson_checks = 0;
  int johnson_failures = 0;
  double max_integral_residual = 0;
  nlohmann::json to_json() const;
  bool ok() const;
};
CertifyReport run_certify(const RunConfig& cfg);

// Condensed consistency battery; prints one line per check.
int run_selftest(std::ostream& os);

}  // namespace hypercvx
