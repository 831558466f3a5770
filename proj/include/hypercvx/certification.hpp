#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include <json.hpp>

#include "hypercvx/matrices.hpp"

namespace hypercvx {

// Smallest eigenvalue of a symmetric matrix; rejects asymmetric input.
double min_eigenvalue(const Eigen::MatrixXd& a);

// PSD acceptance: lambda_min >= -tol * max(1, ||A||_inf).
bool psd_by_min_eigenvalue(double lambda_min, double scale, double tol = 1e-9);

// Union-size classes of pairs of 2-subsets, plus the vertex-edge incidence
// matrix. A_2 is the identity; A_2 + A_3 + A_4 is all-ones.
struct JohnsonSchemeL2 {
  int n = 0;
  RationalSymMatrix A3, A4;
  Eigen::MatrixXd gamma_incidence;  // C(n,2) x n, entries |e ∩ {i}|
  bool gamma_identity = false;      // Γ Γ^T == A_3 + 2I, exact
  bool m_empty_identity = false;    // M_∅ == 1/12 I + 1/4 J + 1/12 (A_3+2I)
  double lambda_min_M_empty = 0;
};

JohnsonSchemeL2 johnson_decomposition_L2(int n);

// (a I + b J)^{-1} = (1/a)(I - (b/(pb+a)) J); requires a != 0, a + p b != 0.
RationalSymMatrix inverse_aI_bJ(const Rational& a, const Rational& b, int p);

// D - B^T A^{-1} B for the leading block A of the given size.
RationalSymMatrix schur_complement(const RationalSymMatrix& m, int leading);

struct SchurStage {
  std::string name;
  bool matches_template = false;
};

struct CertifyF3Report {
  int n = 0;
  double lambda_min_B = 0;
  std::vector<SchurStage> stages;  // "B", "B1", "B2", "B3"
  bool psd = false;
  bool hadamard_identity = false;  // Q_{u_1} == M_{u_1} ∘ ((2/L) B)
  bool all_templates() const;
  nlohmann::json to_json() const;
};

// Exact three-step elimination certificate for the degree-3, edge-size-2
// matrix B = (1/|e∪f| + 1/|e_1∪e| + 1/|e_1∪f|): builds B from the entry
// formula and from its block template, eliminates the borders indexed by
// {e_1}, then the edges through vertex 1, then those through vertex 2
// (with scalings x6 and x4), and compares every stage against its closed
// form. Requires n >= 4.
CertifyF3Report certify_f3_L2(int n);

// B in edge order, from the entry formula (used by the Hadamard identity
// and by the rank/decomposition checks).
RationalSymMatrix matrix_B_f3(const EdgeIndex& ix);
// The rank-2 part: 1/|e_1∪e_i| + 1/|e_1∪e_j|.
RationalSymMatrix matrix_R_f3(const EdgeIndex& ix);

}  // namespace hypercvx
