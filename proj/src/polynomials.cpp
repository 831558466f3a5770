#include "hypercvx/polynomials.hpp"

#include <bit>
#include <cmath>

namespace hypercvx {

SimplexPoint::SimplexPoint(std::vector<double> w) : w_(std::move(w)) {
  if (w_.empty()) throw parameter_error("empty simplex point");
  double sum = 0;
  for (double v : w_) {
    if (v < 0) throw parameter_error("negative simplex weight");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw parameter_error("simplex weights must sum to 1");
}

SimplexPoint SimplexPoint::barycenter(int m) {
  return SimplexPoint(std::vector<double>(m, 1.0 / m));
}

namespace {

long long checked_power(long long base, int exp, long cap) {
  long long v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > cap / std::max<long long>(base, 1) + 1) return cap + 1;
    v *= base;
    if (v > cap) return cap + 1;
  }
  return v;
}

// Depth-first sweep over all ordered tuples with a running union mask and
// running product. kRunning: divide by the union size at every step (f);
// otherwise only at the leaves (p).
template <class Num, bool kRunning>
Num tuple_sum(const std::vector<Num>& x, int d, const EdgeIndex& ix) {
  Num total(0);
  const int m = ix.size();
  std::function<void(int, std::uint64_t, Num)> rec =
      [&](int depth, std::uint64_t mask, Num prod) {
        if (depth == d) {
          total += prod;
          return;
        }
        for (int k = 0; k < m; ++k) {
          std::uint64_t nm = mask | ix.edge(k).mask();
          Num np = prod * x[k];
          if constexpr (kRunning) {
            np /= std::popcount(nm);
            rec(depth + 1, nm, np);
          } else {
            if (depth + 1 == d) np /= std::popcount(nm);
            rec(depth + 1, nm, np);
          }
        }
      };
  rec(0, 0, Num(1));
  return total;
}

void check_tuple_cap(int m, int d, long cap) {
  if (checked_power(m, d, cap) > cap)
    throw capacity_error("tuple sweep larger than cap");
}

// Monomial-basis sum for p: over nondecreasing index tuples, accumulating
// (d!/alpha!) * x^alpha / |union|. The first index partitions the work into
// deterministic blocks.
double monomial_sum_p(const std::vector<double>& x, int d, const EdgeIndex& ix,
                      Exec exec) {
  const int m = ix.size();
  std::vector<double> fact(d + 1, 1.0);
  for (int i = 1; i <= d; ++i) fact[i] = fact[i - 1] * i;

  auto subtree = [&](long lo, long hi) {
    double acc = 0;
    // tuples with first index in [lo, hi)
    std::function<void(int, int, std::uint64_t, double, double, int)> rec =
        [&](int depth, int min_k, std::uint64_t mask, double xprod,
            double perm_div, int run_len) {
          // perm_div accumulates alpha! as runs close
          if (depth == d) {
            acc += fact[d] / (perm_div * fact[run_len]) * xprod /
                   std::popcount(mask);
            return;
          }
          for (int k = min_k; k < m; ++k) {
            bool same = depth > 0 && k == min_k;
            // extending with k == previous index grows the current run
            rec(depth + 1, k, mask | ix.edge(k).mask(), xprod * x[k],
                same ? perm_div : perm_div * fact[run_len],
                same ? run_len + 1 : 1);
          }
        };
    for (long k0 = lo; k0 < hi; ++k0)
      rec(1, static_cast<int>(k0), ix.edge(static_cast<int>(k0)).mask(),
          x[k0], 1.0, 1);
    return acc;
  };
  if (d == 0) return 0.0;
  return blocked_sum(m, 1, exec, subtree);
}

// Monomial-basis sum for f: b_alpha * x^alpha over nondecreasing tuples.
double monomial_sum_f(const std::vector<double>& x, int d,
                      CoefficientCache& cache, Exec exec) {
  const EdgeIndex& ix = cache.edges();
  const int m = ix.size();
  auto subtree = [&](long lo, long hi) {
    double acc = 0;
    std::function<void(int, int, const MultiIndex&, double)> rec =
        [&](int depth, int min_k, const MultiIndex& alpha, double xprod) {
          if (depth == d) {
            acc += to_double(cache.b(alpha)) * xprod;
            return;
          }
          for (int k = min_k; k < m; ++k)
            rec(depth + 1, k, alpha.plus(k), xprod * x[k]);
        };
    for (long k0 = lo; k0 < hi; ++k0)
      rec(1, static_cast<int>(k0), MultiIndex::unit(static_cast<int>(k0)),
          x[k0]);
    return acc;
  };
  if (d == 0) return 0.0;
  return blocked_sum(m, 1, exec, subtree);
}

void check_x_size(std::size_t got, int m) {
  if (static_cast<int>(got) != m)
    throw parameter_error("point dimension != edge count");
}

}  // namespace

double eval_p(const std::vector<double>& x, int d, const EdgeIndex& ix,
              EvalPath path, Exec exec, long cap) {
  if (d < 1) throw parameter_error("degree must be >= 1");
  check_x_size(x.size(), ix.size());
  if (path == EvalPath::TupleSum) {
    check_tuple_cap(ix.size(), d, cap);
    return tuple_sum<double, false>(x, d, ix);
  }
  if (multiset_count(ix.size(), d) > kDefaultTermCap)
    throw capacity_error("monomial sweep larger than cap");
  return monomial_sum_p(x, d, ix, exec);
}

double eval_f(const std::vector<double>& x, int d, CoefficientCache& cache,
              EvalPath path, Exec exec, long cap) {
  if (d < 1) throw parameter_error("degree must be >= 1");
  const EdgeIndex& ix = cache.edges();
  check_x_size(x.size(), ix.size());
  if (path == EvalPath::TupleSum) {
    check_tuple_cap(ix.size(), d, cap);
    return tuple_sum<double, true>(x, d, ix);
  }
  if (multiset_count(ix.size(), d) > kDefaultTermCap)
    throw capacity_error("monomial sweep larger than cap");
  return monomial_sum_f(x, d, cache, exec);
}

Rational eval_p_exact(const std::vector<Rational>& x, int d,
                      const EdgeIndex& ix, long cap) {
  if (d < 1) throw parameter_error("degree must be >= 1");
  check_x_size(x.size(), ix.size());
  check_tuple_cap(ix.size(), d, cap);
  return tuple_sum<Rational, false>(x, d, ix);
}

Rational eval_f_exact(const std::vector<Rational>& x, int d,
                      const EdgeIndex& ix, long cap) {
  if (d < 1) throw parameter_error("degree must be >= 1");
  check_x_size(x.size(), ix.size());
  check_tuple_cap(ix.size(), d, cap);
  return tuple_sum<Rational, true>(x, d, ix);
}

namespace {

// Shared driver for both gradients: component i sums over all degree-(d-1)
// exponent vectors beta, with a caller-supplied per-(beta, i) coefficient.
template <class Coef>
std::vector<double> gradient_impl(const std::vector<double>& x, int d,
                                  const EdgeIndex& ix, Exec exec,
                                  const Coef& coef) {
  const int m = ix.size();
  check_x_size(x.size(), m);
  if (d < 1) throw parameter_error("degree must be >= 1");

  // collect beta multisets once
  std::vector<MultiIndex> betas;
  std::vector<double> xpow;
  for_each_multiset(m, d - 1, [&](const std::vector<int>& idxs) {
    MultiIndex b;
    double xp = 1;
    for (int k : idxs) {
      b = b.plus(k);
      xp *= x[k];
    }
    betas.push_back(std::move(b));
    xpow.push_back(xp);
  });

  std::vector<double> g(m, 0.0);
  auto component = [&](int i) {
    double acc = 0;
    for (std::size_t t = 0; t < betas.size(); ++t)
      acc += xpow[t] * coef(betas[t], i);
    return acc;
  };
  if (exec == Exec::OpenMP) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < m; ++i) g[i] = component(i);
  } else {
    for (int i = 0; i < m; ++i) g[i] = component(i);
  }
  return g;
}

}  // namespace

std::vector<double> gradient_p(const std::vector<double>& x, int d,
                               const EdgeIndex& ix, Exec exec) {
  BigInt dfact = factorial_of(d);
  return gradient_impl(x, d, ix, exec, [&](const MultiIndex& beta, int i) {
    Rational w = Rational(dfact) / Rational(beta.factorial());
    return to_double(w * c_hat(beta.plus(i), ix));
  });
}

std::vector<double> gradient_f(const std::vector<double>& x, int d,
                               CoefficientCache& cache, Exec exec) {
  // warm the table serially so parallel components only read
  const EdgeIndex& ix = cache.edges();
  for_each_multiset(ix.size(), d - 1, [&](const std::vector<int>& idxs) {
    MultiIndex b;
    for (int k : idxs) b = b.plus(k);
    for (int i = 0; i < ix.size(); ++i) cache.b(b.plus(i));
  });
  return gradient_impl(x, d, ix, exec, [&](const MultiIndex& beta, int i) {
    return to_double((beta.exponent(i) + 1) * cache.b(beta.plus(i)));
  });
}

HessianAssembly::HessianAssembly(Kind kind, int d, CoefficientCache& cache,
                                 long term_cap)
    : m_(cache.edges().size()), d_(d) {
  if (d < 1) throw parameter_error("degree must be >= 1");
  const EdgeIndex& ix = cache.edges();
  const long entries = static_cast<long>(m_) * (m_ + 1) / 2;
  const long long gammas = multiset_count(m_, d - 2 < 0 ? 0 : d - 2);
  if (d >= 2 && gammas > term_cap / std::max<long>(1, entries))
    throw capacity_error("hessian term table larger than cap");
  if (d < 2) return;  // identically zero

  BigInt dfact = factorial_of(d);
  for_each_multiset(m_, d - 2, [&](const std::vector<int>& idxs) {
    MultiIndex gamma;
    for (int k : idxs) gamma = gamma.plus(k);
    std::vector<double> row(entries);
    if (kind == Kind::P) {
      Rational scale = Rational(dfact) / Rational(gamma.factorial());
      std::uint64_t w = 0;
      for (const auto& [k, e] : gamma.terms()) w |= ix.edge(k).mask();
      double s = to_double(scale);
      long t = 0;
      for (int i = 0; i < m_; ++i)
        for (int j = i; j < m_; ++j)
          row[t++] = s / std::popcount(w | ix.edge(i).mask() |
                                       ix.edge(j).mask());
    } else {
      Rational inv_fact = Rational(1) / Rational(gamma.factorial());
      long t = 0;
      for (int i = 0; i < m_; ++i)
        for (int j = i; j < m_; ++j)
          row[t++] = to_double(inv_fact * cache.b_hat(gamma.plus(i).plus(j)));
    }
    supports_.push_back(gamma.terms());
    coeffs_.push_back(std::move(row));
  });
}

Eigen::MatrixXd HessianAssembly::evaluate(const std::vector<double>& x,
                                          Exec exec) const {
  check_x_size(x.size(), m_);
  const long entries = static_cast<long>(m_) * (m_ + 1) / 2;
  std::vector<double> weights(supports_.size());
  for (std::size_t t = 0; t < supports_.size(); ++t) {
    double w = 1;
    for (const auto& [k, e] : supports_[t])
      for (int c = 0; c < e; ++c) w *= x[k];
    weights[t] = w;
  }

  std::vector<double> packed(entries, 0.0);
  // Each entry range is accumulated across terms in a fixed order, so the
  // result is independent of the thread count.
  auto accumulate_range = [&](long lo, long hi) {
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
      const double w = weights[t];
      if (w == 0) continue;
      const double* row = coeffs_[t].data();
      for (long e = lo; e < hi; ++e) packed[e] += w * row[e];
    }
  };
  const long block = 1024;
  const long nblocks = (entries + block - 1) / block;
  if (exec == Exec::OpenMP) {
#pragma omp parallel for schedule(static)
    for (long b = 0; b < nblocks; ++b)
      accumulate_range(b * block, std::min(entries, (b + 1) * block));
  } else {
    for (long b = 0; b < nblocks; ++b)
      accumulate_range(b * block, std::min(entries, (b + 1) * block));
  }

  Eigen::MatrixXd h(m_, m_);
  long t = 0;
  for (int i = 0; i < m_; ++i)
    for (int j = i; j < m_; ++j) {
      h(i, j) = packed[t];
      h(j, i) = packed[t];
      ++t;
    }
  return h;
}

Eigen::MatrixXd hessian_p(const std::vector<double>& x, int d,
                          CoefficientCache& cache, Exec exec) {
  return HessianAssembly(HessianAssembly::Kind::P, d, cache).evaluate(x, exec);
}

Eigen::MatrixXd hessian_f(const std::vector<double>& x, int d,
                          CoefficientCache& cache, Exec exec) {
  return HessianAssembly(HessianAssembly::Kind::F, d, cache).evaluate(x, exec);
}

}  // namespace hypercvx
