#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "hypercvx/coefficients.hpp"
#include "hypercvx/combinatorics.hpp"
#include "hypercvx/exec.hpp"
#include "hypercvx/rational.hpp"

namespace hypercvx {

// Dense symmetric matrix with exact rational entries and explicit row labels.
class RationalSymMatrix {
 public:
  RationalSymMatrix() = default;
  explicit RationalSymMatrix(int dim, std::vector<std::string> labels = {});

  int dim() const { return dim_; }
  const Rational& at(int i, int j) const { return data_[i * dim_ + j]; }
  void set(int i, int j, const Rational& v);
  const std::vector<std::string>& labels() const { return labels_; }

  bool operator==(const RationalSymMatrix& o) const;

  RationalSymMatrix& operator+=(const RationalSymMatrix& o);
  RationalSymMatrix& operator*=(const Rational& s);

  Eigen::MatrixXd to_double() const;

  // "dim=<m> labels=<l0;l1;...>" header, then one row per line with entries
  // as "num/den" separated by single spaces.
  std::string dump() const;

  static RationalSymMatrix identity(int dim, const Rational& scale = Rational(1));
  static RationalSymMatrix constant(int dim, const Rational& value);

 private:
  int dim_ = 0;
  std::vector<Rational> data_;
  std::vector<std::string> labels_;
};

RationalSymMatrix hadamard(const RationalSymMatrix& a,
                           const RationalSymMatrix& b);
RationalSymMatrix add(const RationalSymMatrix& a, const RationalSymMatrix& b);

// All subsets of [1..N] of size <= maxSize, ordered by size then
// lexicographically within each size.
class SubsetFamily {
 public:
  SubsetFamily(int N, int maxSize);

  int size() const { return static_cast<int>(subsets_.size()); }
  int ground_size() const { return N_; }
  int max_size() const { return s_; }
  const std::vector<int>& subset(int idx) const { return subsets_[idx]; }
  std::uint64_t mask(int idx) const { return masks_[idx]; }
  std::string label(int idx) const;

 private:
  int N_, s_;
  std::vector<std::vector<int>> subsets_;
  std::vector<std::uint64_t> masks_;
};

// Edge-indexed matrix with entries 1/|W ∪ e ∪ f|.
RationalSymMatrix matrix_M_W(std::uint64_t w_mask, const EdgeIndex& ix);
RationalSymMatrix matrix_M_W(const std::vector<int>& W, const EdgeIndex& ix);

// Subset-family-indexed matrix with entries 1/(p + |e ∪ f|); requires p >= 1.
RationalSymMatrix matrix_M_p(int N, int L, int p);

// (ĉ_{γ+u_i+u_j})_{ij}: equals matrix_M_W over the union of γ's support.
RationalSymMatrix matrix_M_gamma(const MultiIndex& gamma,
                                 const EdgeIndex& ix);

// (1/γ!) (b̂_{γ+u_i+u_j})_{ij}.
RationalSymMatrix matrix_Q_direct(const MultiIndex& gamma,
                                  CoefficientCache& cache,
                                  Exec exec = Exec::OpenMP);

// (1/γ!) (b̂_{γ+u_i} + b̂_{γ+u_j})_{ij}; for empty γ this is the constant
// matrix 2/L.
RationalSymMatrix matrix_R(const MultiIndex& gamma, CoefficientCache& cache);

// Sum of Q over the distinct support reductions of γ; zero matrix for
// empty γ.
RationalSymMatrix matrix_B(const MultiIndex& gamma, CoefficientCache& cache,
                           Exec exec = Exec::OpenMP);

// Hadamard reformulation M_γ ∘ (B_γ + R_γ); requires |γ| >= 1. Must equal
// matrix_Q_direct entrywise, exactly.
RationalSymMatrix matrix_Q_recursive(const MultiIndex& gamma,
                                     CoefficientCache& cache,
                                     Exec exec = Exec::OpenMP);

// Whether Q_∅ = M_∅ ∘ (B_∅ + R_∅) happens to hold (it does not for L >= 2;
// the reformulation is stated for degree >= 3 only).
bool hadamard_identity_holds_for_empty_gamma(int n, int L);

// Collapse duplicate rows/columns of an M_W matrix: edges with equal
// residual e \ W share a row; keeps one row per residual and reindexes by
// SubsetFamily(n - |W|, min(L, n - |W|)) after relabeling the complement of
// W to [1..N], ascending.
RationalSymMatrix dedup_rows_columns(const RationalSymMatrix& mw,
                                     std::uint64_t w_mask,
                                     const EdgeIndex& ix);

std::vector<std::string> edge_labels(const EdgeIndex& ix);

}  // namespace hypercvx
