#pragma once

#include <Eigen/Dense>

#include <vector>

#include "hypercvx/matrices.hpp"
#include "hypercvx/rational.hpp"

namespace hypercvx {

// Element of the subset-pair algebra on a ground set of size N: coefficient
// x_{i,j}^t attached to the 0/1 class matrix selecting |S|=i, |T|=j,
// |S∩T|=t. Absent coefficients are zero.
class TerwilligerElement {
 public:
  explicit TerwilligerElement(int N);

  int N() const { return N_; }
  const Rational& x(int i, int j, int t) const;
  void set_x(int i, int j, int t, const Rational& v);

  bool is_symmetric() const;  // x_{i,j}^t == x_{j,i}^t for all i,j,t

  static TerwilligerElement identity(int N);
  // Coefficients 1/(p+i+j-t) for i,j <= min(L,N); matches the subset-family
  // matrix with the same parameters on its nonzero support.
  static TerwilligerElement from_M_p(int N, int L, int p);

 private:
  int N_;
  std::vector<Rational> table_;  // (i,j,t) dense
  std::size_t pos(int i, int j, int t) const;
};

inline constexpr int kDenseGuardBits = 12;  // 2^N <= 4096

// The 0/1 class matrix of (i,j,t), indexed by all subsets of [1..N] in
// mask order. Guarded by 2^N <= 4096.
Eigen::MatrixXd basis_matrix(int N, int i, int j, int t);

// Dense 2^N x 2^N realization of an element. Same guard.
Eigen::MatrixXd materialize(const TerwilligerElement& elem);

// Inverse of materialize: reads one representative entry per class and
// verifies the matrix is constant on every class (within tol).
TerwilligerElement element_from_dense(const Eigen::MatrixXd& a, int N,
                                      double tol = 1e-9);

// Exact integer block coefficient
//   sum_u (-1)^{u-t} C(u,t) C(N-2k, N-k-u) C(N-k-u, i-u) C(N-k-u, j-u).
BigInt beta(int i, int j, int k, int t, int N);

struct BlockDiagonalization {
  int N = 0;
  // block k, k = 0..floor(N/2), has rows/cols labeled i = k..N-k
  std::vector<Eigen::MatrixXd> blocks;
  // same blocks without the C(N-2k, i-k)^{-1/2} normalizers: congruent to
  // the floating blocks, exact, so exact PSD checks can use them
  std::vector<RationalSymMatrix> unnormalized;
};

BlockDiagonalization block_diagonalize(const TerwilligerElement& elem);

// The same linear map without the symmetry requirement (products of
// symmetric elements need not be symmetric); floating blocks only.
std::vector<Eigen::MatrixXd> block_map(const TerwilligerElement& elem);

struct PsdVerdict {
  bool psd = false;
  double min_eigenvalue = 0;
};

// Element PSD iff every block is PSD; tolerance is relative to
// max(1, largest block entry).
PsdVerdict psd_via_blocks(const TerwilligerElement& elem, double tol = 1e-9);
PsdVerdict psd_dense(const Eigen::MatrixXd& sym, double tol = 1e-9);

// |exact - quadrature| for the closed-form block-coefficient identity
//   sum_t beta^t_{ijk} / (p+i+j-t)
//     = sum_u C(N-2k,N-k-u) C(N-k-u,i-u) C(N-k-u,j-u)
//         * int_0^1 z^{p-1+i+j-u} (1-z)^u dz.
double integral_identity_residual(int i, int j, int k, int p, int N,
                                  int order);

inline int default_quadrature_order(int i, int j, int p, int N) {
  return std::max(32, i + j + p + N);
}

}  // namespace hypercvx
