#include "hypercvx/coefficients.hpp"

#include <bit>
#include <mutex>

namespace hypercvx {

Rational c_hat(const MultiIndex& alpha, const EdgeIndex& ix) {
  if (alpha.zero()) throw parameter_error("c_hat of empty support");
  std::uint64_t m = 0;
  for (const auto& [k, e] : alpha.terms()) m |= ix.edge(k).mask();
  return inverse_of(std::popcount(m));
}

Rational c_hat(const std::vector<Edge>& tuple) {
  return inverse_of(union_cardinality(tuple));
}

Rational CoefficientCache::b_hat(const MultiIndex& alpha) {
  if (alpha.zero()) return Rational(1);
  {
    std::shared_lock lk(mu_);
    auto it = memo_.find(alpha);
    if (it != memo_.end()) return it->second;
  }
  Rational sum(0);
  for (const auto& [k, e] : alpha.terms()) sum += e * b_hat(alpha.minus(k));
  Rational v = c_hat(alpha, *ix_) * sum;
  std::unique_lock lk(mu_);
  auto [it, inserted] = memo_.emplace(alpha, std::move(v));
  return it->second;
}

Rational CoefficientCache::b(const MultiIndex& alpha) {
  return b_hat(alpha) / Rational(alpha.factorial());
}

std::size_t CoefficientCache::cached() const {
  std::shared_lock lk(mu_);
  return memo_.size();
}

}  // namespace hypercvx
