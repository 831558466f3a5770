#pragma once

#include <Eigen/Dense>

#include <vector>

#include "hypercvx/coefficients.hpp"
#include "hypercvx/combinatorics.hpp"
#include "hypercvx/exec.hpp"
#include "hypercvx/linalg.hpp"

namespace hypercvx {

// Nonnegative weights summing to 1 (tolerance 1e-12 on the sum).
class SimplexPoint {
 public:
  explicit SimplexPoint(std::vector<double> w);
  static SimplexPoint barycenter(int m);

  const std::vector<double>& weights() const { return w_; }
  int dim() const { return static_cast<int>(w_.size()); }

 private:
  std::vector<double> w_;
};

enum class EvalPath { TupleSum, MonomialBasis };

inline constexpr long kDefaultTupleCap = 1'000'000;
inline constexpr long kDefaultTermCap = 100'000'000;

// Degree-d ordered-tuple polynomial with union-cardinality coefficients:
// sum over tuples of x_{e_1}...x_{e_d} / |e_1 ∪ ... ∪ e_d|.
double eval_p(const std::vector<double>& x, int d, const EdgeIndex& ix,
              EvalPath path = EvalPath::MonomialBasis,
              Exec exec = Exec::OpenMP, long cap = kDefaultTupleCap);

// Degree-d polynomial with running-union coefficients:
// sum over tuples of prod_i x_{e_i} / |e_1 ∪ ... ∪ e_i|.
double eval_f(const std::vector<double>& x, int d, CoefficientCache& cache,
              EvalPath path = EvalPath::MonomialBasis,
              Exec exec = Exec::OpenMP, long cap = kDefaultTupleCap);

// Exact evaluations over rational points (tuple-sum route).
Rational eval_p_exact(const std::vector<Rational>& x, int d,
                      const EdgeIndex& ix, long cap = kDefaultTupleCap);
Rational eval_f_exact(const std::vector<Rational>& x, int d,
                      const EdgeIndex& ix, long cap = kDefaultTupleCap);

std::vector<double> gradient_p(const std::vector<double>& x, int d,
                               const EdgeIndex& ix, Exec exec = Exec::OpenMP);
std::vector<double> gradient_f(const std::vector<double>& x, int d,
                               CoefficientCache& cache,
                               Exec exec = Exec::OpenMP);

// Hessian as a matrix polynomial: one term per degree-(d-2) exponent vector,
// bucketed by canonical pattern so parallel evaluation still accumulates in
// a fixed order.
class HessianAssembly {
 public:
  enum class Kind { P, F };

  HessianAssembly(Kind kind, int d, CoefficientCache& cache,
                  long term_cap = kDefaultTermCap);

  int dim() const { return m_; }
  std::size_t term_count() const { return supports_.size(); }

  Eigen::MatrixXd evaluate(const std::vector<double>& x,
                           Exec exec = Exec::OpenMP) const;

 private:
  int m_;
  int d_;
  // term t: weight(x) = scale * x^gamma_t, matrix packed as upper triangle
  std::vector<std::vector<std::pair<int, int>>> supports_;
  std::vector<std::vector<double>> coeffs_;
};

Eigen::MatrixXd hessian_p(const std::vector<double>& x, int d,
                          CoefficientCache& cache, Exec exec = Exec::OpenMP);
Eigen::MatrixXd hessian_f(const std::vector<double>& x, int d,
                          CoefficientCache& cache, Exec exec = Exec::OpenMP);

}  // namespace hypercvx
