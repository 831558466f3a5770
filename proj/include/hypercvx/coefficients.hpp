#pragma once

#include <map>
#include <shared_mutex>

#include "hypercvx/combinatorics.hpp"
#include "hypercvx/rational.hpp"

namespace hypercvx {

// 1 / |union of the support edges|; depends on the support only.
Rational c_hat(const MultiIndex& alpha, const EdgeIndex& ix);
Rational c_hat(const std::vector<Edge>& tuple);

// Memoized table of the scaled monomial coefficients of the ordered-product
// polynomial, bound to one edge index. Thread-safe: concurrent readers, a
// missing entry may be computed redundantly, first insert wins.
class CoefficientCache {
 public:
  explicit CoefficientCache(const EdgeIndex& ix) : ix_(&ix) {}
  CoefficientCache(const CoefficientCache&) = delete;
  CoefficientCache& operator=(const CoefficientCache&) = delete;

  const EdgeIndex& edges() const { return *ix_; }

  // b̂_0 = 1, b̂_a = ĉ_a * sum_k a_k b̂_{a-u_k}.
  Rational b_hat(const MultiIndex& alpha);

  // b_a = b̂_a / a!.
  Rational b(const MultiIndex& alpha);

  std::size_t cached() const;

 private:
  const EdgeIndex* ix_;
  mutable std::shared_mutex mu_;
  std::map<MultiIndex, Rational> memo_;
};

inline Rational b_hat(const MultiIndex& alpha, CoefficientCache& cache) {
  return cache.b_hat(alpha);
}
inline Rational b_alpha(const MultiIndex& alpha, CoefficientCache& cache) {
  return cache.b(alpha);
}

}  // namespace hypercvx
