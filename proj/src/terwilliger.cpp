#include "hypercvx/terwilliger.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "hypercvx/linalg.hpp"

namespace hypercvx {

TerwilligerElement::TerwilligerElement(int N) : N_(N) {
  if (N < 0) throw parameter_error("negative ground set");
  table_.assign(static_cast<std::size_t>(N + 1) * (N + 1) * (N + 1),
                Rational(0));
}

std::size_t TerwilligerElement::pos(int i, int j, int t) const {
  return (static_cast<std::size_t>(i) * (N_ + 1) + j) * (N_ + 1) + t;
}

const Rational& TerwilligerElement::x(int i, int j, int t) const {
  if (i < 0 || j < 0 || t < 0 || i > N_ || j > N_ || t > std::min(i, j))
    throw parameter_error("coefficient index out of range");
  return table_[pos(i, j, t)];
}

void TerwilligerElement::set_x(int i, int j, int t, const Rational& v) {
  if (i < 0 || j < 0 || t < 0 || i > N_ || j > N_ || t > std::min(i, j))
    throw parameter_error("coefficient index out of range");
  // class (i,j,t) is empty unless the pair fits in the ground set
  if (i + j - t > N_)
    throw parameter_error("no subset pair has this size signature");
  table_[pos(i, j, t)] = v;
}

bool TerwilligerElement::is_symmetric() const {
  for (int i = 0; i <= N_; ++i)
    for (int j = 0; j <= N_; ++j)
      for (int t = 0; t <= std::min(i, j); ++t)
        if (table_[pos(i, j, t)] != table_[pos(j, i, t)]) return false;
  return true;
}

TerwilligerElement TerwilligerElement::identity(int N) {
  TerwilligerElement e(N);
  for (int i = 0; i <= N; ++i) e.set_x(i, i, i, Rational(1));
  return e;
}

TerwilligerElement TerwilligerElement::from_M_p(int N, int L, int p) {
  if (p < 1) throw parameter_error("requires p >= 1");
  TerwilligerElement e(N);
  int cap = std::min(L, N);
  for (int i = 0; i <= cap; ++i)
    for (int j = 0; j <= cap; ++j)
      for (int t = std::max(0, i + j - N); t <= std::min(i, j); ++t)
        e.set_x(i, j, t, inverse_of(p + i + j - t));
  return e;
}

namespace {

void check_dense_guard(int N) {
  if (N < 0 || N > kDenseGuardBits)
    throw capacity_error("dense subset-pair matrix needs 2^N <= 4096");
}

}  // namespace

Eigen::MatrixXd basis_matrix(int N, int i, int j, int t) {
  check_dense_guard(N);
  const int size = 1 << N;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
  for (int S = 0; S < size; ++S) {
    if (std::popcount(static_cast<unsigned>(S)) != i) continue;
    for (int T = 0; T < size; ++T)
      if (std::popcount(static_cast<unsigned>(T)) == j &&
          std::popcount(static_cast<unsigned>(S & T)) == t)
        m(S, T) = 1.0;
  }
  return m;
}

Eigen::MatrixXd materialize(const TerwilligerElement& elem) {
  check_dense_guard(elem.N());
  const int size = 1 << elem.N();
  const int N = elem.N();
  // double view of the coefficient table
  std::vector<double> xd(static_cast<std::size_t>(N + 1) * (N + 1) * (N + 1),
                         0.0);
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j)
      for (int t = 0; t <= std::min(i, j); ++t)
        xd[(static_cast<std::size_t>(i) * (N + 1) + j) * (N + 1) + t] =
            to_double(elem.x(i, j, t));
  Eigen::MatrixXd m(size, size);
  for (int S = 0; S < size; ++S) {
    const int i = std::popcount(static_cast<unsigned>(S));
    for (int T = 0; T < size; ++T) {
      const int j = std::popcount(static_cast<unsigned>(T));
      const int t = std::popcount(static_cast<unsigned>(S & T));
      m(S, T) = xd[(static_cast<std::size_t>(i) * (N + 1) + j) * (N + 1) + t];
    }
  }
  return m;
}

TerwilligerElement element_from_dense(const Eigen::MatrixXd& a, int N,
                                      double tol) {
  check_dense_guard(N);
  const int size = 1 << N;
  if (a.rows() != size || a.cols() != size)
    throw parameter_error("matrix size != 2^N");
  TerwilligerElement e(N);
  std::vector<char> seen(static_cast<std::size_t>(N + 1) * (N + 1) * (N + 1),
                         0);
  std::vector<double> val(seen.size(), 0.0);
  double scale = std::max(1.0, inf_norm(a));
  for (int S = 0; S < size; ++S) {
    const int i = std::popcount(static_cast<unsigned>(S));
    for (int T = 0; T < size; ++T) {
      const int j = std::popcount(static_cast<unsigned>(T));
      const int t = std::popcount(static_cast<unsigned>(S & T));
      std::size_t p = (static_cast<std::size_t>(i) * (N + 1) + j) * (N + 1) + t;
      if (!seen[p]) {
        seen[p] = 1;
        val[p] = a(S, T);
      } else if (std::abs(a(S, T) - val[p]) > tol * scale) {
        throw contract_error("matrix is not constant on subset-pair classes");
      }
    }
  }
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j)
      for (int t = 0; t <= std::min(i, j); ++t) {
        std::size_t p =
            (static_cast<std::size_t>(i) * (N + 1) + j) * (N + 1) + t;
        if (seen[p]) {
          Rational r(val[p]);
          r.canonicalize();
          e.set_x(i, j, t, r);
        }
      }
  return e;
}

BigInt beta(int i, int j, int k, int t, int N) {
  if (i < 0 || j < 0 || k < 0 || t < 0 || N < 0)
    throw parameter_error("negative block coefficient index");
  BigInt acc(0);
  for (int u = 0; u <= N; ++u) {
    BigInt term = binomial(u, t) * binomial(N - 2 * k, N - k - u) *
                  binomial(N - k - u, i - u) * binomial(N - k - u, j - u);
    if (term == 0) continue;
    if ((u - t) % 2 != 0) term = -term;
    acc += term;
  }
  return acc;
}

namespace {

Rational unnormalized_block_entry(const TerwilligerElement& elem, int k,
                                  int i, int j) {
  Rational acc(0);
  const int N = elem.N();
  for (int t = 0; t <= std::min(i, j); ++t) {
    const Rational& xv = elem.x(i, j, t);
    if (xv != 0) acc += Rational(beta(i, j, k, t, N)) * xv;
  }
  return acc;
}

std::vector<double> block_normalizers(int N, int k) {
  std::vector<double> a(N - 2 * k + 1);
  for (int i = k; i <= N - k; ++i)
    a[i - k] =
        1.0 / std::sqrt(to_double(Rational(binomial(N - 2 * k, i - k))));
  return a;
}

}  // namespace

BlockDiagonalization block_diagonalize(const TerwilligerElement& elem) {
  if (!elem.is_symmetric())
    throw contract_error("block diagonalization needs a symmetric element");
  const int N = elem.N();
  BlockDiagonalization out;
  out.N = N;
  for (int k = 0; k <= N / 2; ++k) {
    const int dim = N - 2 * k + 1;
    RationalSymMatrix exact(dim);
    for (int i = k; i <= N - k; ++i)
      for (int j = i; j <= N - k; ++j)
        exact.set(i - k, j - k, unnormalized_block_entry(elem, k, i, j));
    std::vector<double> a = block_normalizers(N, k);
    Eigen::MatrixXd blk(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        blk(i, j) = a[i] * a[j] * to_double(exact.at(i, j));
    out.blocks.push_back(std::move(blk));
    out.unnormalized.push_back(std::move(exact));
  }
  return out;
}

std::vector<Eigen::MatrixXd> block_map(const TerwilligerElement& elem) {
  const int N = elem.N();
  std::vector<Eigen::MatrixXd> out;
  for (int k = 0; k <= N / 2; ++k) {
    const int dim = N - 2 * k + 1;
    std::vector<double> a = block_normalizers(N, k);
    Eigen::MatrixXd blk(dim, dim);
    for (int i = k; i <= N - k; ++i)
      for (int j = k; j <= N - k; ++j)
        blk(i - k, j - k) = a[i - k] * a[j - k] *
                            to_double(unnormalized_block_entry(elem, k, i, j));
    out.push_back(std::move(blk));
  }
  return out;
}

PsdVerdict psd_dense(const Eigen::MatrixXd& sym, double tol) {
  PsdVerdict v;
  if (sym.rows() == 0) {
    v.psd = true;
    return v;
  }
  v.min_eigenvalue = sym_eigenvalues(sym).front();
  v.psd = v.min_eigenvalue >= -tol * std::max(1.0, inf_norm(sym));
  return v;
}

PsdVerdict psd_via_blocks(const TerwilligerElement& elem, double tol) {
  BlockDiagonalization bd = block_diagonalize(elem);
  PsdVerdict v;
  v.psd = true;
  bool first = true;
  double scale = 1.0;
  for (const auto& blk : bd.blocks) scale = std::max(scale, inf_norm(blk));
  for (const auto& blk : bd.blocks) {
    double lmin = sym_eigenvalues(blk).front();
    if (first || lmin < v.min_eigenvalue) v.min_eigenvalue = lmin;
    first = false;
    if (lmin < -tol * scale) v.psd = false;
  }
  return v;
}

double integral_identity_residual(int i, int j, int k, int p, int N,
                                  int order) {
  if (p < 1) throw parameter_error("requires p >= 1");
  Rational lhs(0);
  for (int t = 0; t <= std::min(i, j); ++t)
    lhs += Rational(beta(i, j, k, t, N)) * inverse_of(p + i + j - t);

  Quadrature q = gauss_legendre01(order);
  double rhs = 0;
  for (int u = 0; u <= std::min(i, j); ++u) {
    BigInt cu = binomial(N - 2 * k, N - k - u);
    BigInt bi = binomial(N - k - u, i - u);
    BigInt bj = binomial(N - k - u, j - u);
    BigInt w = cu * bi * bj;
    if (w == 0) continue;
    double integral = 0;
    for (std::size_t s = 0; s < q.nodes.size(); ++s) {
      double z = q.nodes[s];
      integral += q.weights[s] * std::pow(z, p - 1 + i + j - u) *
                  std::pow(1.0 - z, u);
    }
    rhs += to_double(Rational(w)) * integral;
  }
  return std::abs(to_double(lhs) - rhs);
}

}  // namespace hypercvx
