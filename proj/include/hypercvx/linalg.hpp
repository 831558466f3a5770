#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "hypercvx/exec.hpp"

namespace hypercvx {

bool approx_symmetric(const Eigen::MatrixXd& a, double tol = 1e-12);

// Eigenvalues of a symmetric matrix, ascending.
std::vector<double> sym_eigenvalues(const Eigen::MatrixXd& a);

double inf_norm(const Eigen::MatrixXd& a);

// Count of eigenvalues with |lambda| > tol * max(1, |lambda|_max).
int numerical_rank(const Eigen::MatrixXd& sym, double tol = 1e-9);

struct Quadrature {
  std::vector<double> nodes;    // in (0,1)
  std::vector<double> weights;  // sum to 1
};

// Gauss-Legendre rule on (0,1); exact for polynomials of degree <= 2*order-1.
Quadrature gauss_legendre01(int order);

// Deterministic uniform variates independent of the standard library's
// distribution implementations.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : eng_(seed) {}
  double uniform01() {  // in [0,1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }
  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

// Normalized independent unit-rate exponential draws: uniform on the simplex.
std::vector<double> dirichlet_uniform(int m, SeededRng& rng);

// Euclidean projection onto { w >= 0, sum w = 1 }.
void project_to_simplex(std::vector<double>& w);

// Deterministic parallel reduction: partial sums over fixed blocks of
// `block` items, accumulated in block order. Result does not depend on the
// thread count.
double blocked_sum(long count, long block, Exec exec,
                   const std::function<double(long, long)>& range_sum);

}  // namespace hypercvx
