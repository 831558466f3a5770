#include "hypercvx/certification.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "hypercvx/coefficients.hpp"
#include "hypercvx/linalg.hpp"

namespace hypercvx {

double min_eigenvalue(const Eigen::MatrixXd& a) {
  if (!approx_symmetric(a, 1e-12))
    throw contract_error("min_eigenvalue needs a symmetric matrix");
  return sym_eigenvalues(a).front();
}

bool psd_by_min_eigenvalue(double lambda_min, double scale, double tol) {
  return lambda_min >= -tol * std::max(1.0, scale);
}

JohnsonSchemeL2 johnson_decomposition_L2(int n) {
  if (n < 2) throw parameter_error("requires n >= 2");
  EdgeIndex ix(n, 2);
  const int m = ix.size();
  JohnsonSchemeL2 js;
  js.n = n;
  js.A3 = RationalSymMatrix(m, edge_labels(ix));
  js.A4 = RationalSymMatrix(m, edge_labels(ix));
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      int u = std::popcount(ix.edge(i).mask() | ix.edge(j).mask());
      if (u == 3) js.A3.set(i, j, Rational(1));
      if (u == 4) js.A4.set(i, j, Rational(1));
    }

  js.gamma_incidence = Eigen::MatrixXd::Zero(m, n);
  for (int i = 0; i < m; ++i)
    for (int v : ix.edge(i).vertices()) js.gamma_incidence(i, v - 1) = 1.0;

  // Γ Γ^T entry (i,j) is |e_i ∩ e_j|, an integer; compare exactly.
  js.gamma_identity = true;
  for (int i = 0; i < m && js.gamma_identity; ++i)
    for (int j = i; j < m; ++j) {
      int dot = std::popcount(ix.edge(i).mask() & ix.edge(j).mask());
      Rational expected = js.A3.at(i, j) + (i == j ? Rational(2) : Rational(0));
      if (Rational(dot) != expected) {
        js.gamma_identity = false;
        break;
      }
    }

  RationalSymMatrix m_empty = matrix_M_W(std::uint64_t{0}, ix);
  RationalSymMatrix rhs = RationalSymMatrix::identity(m, ratio(1, 12));
  rhs += RationalSymMatrix::constant(m, ratio(1, 4));
  RationalSymMatrix a3_shift = js.A3;
  a3_shift += RationalSymMatrix::identity(m, Rational(2));
  a3_shift *= ratio(1, 12);
  rhs += a3_shift;
  js.m_empty_identity = (m_empty == rhs);
  js.lambda_min_M_empty = min_eigenvalue(m_empty.to_double());
  return js;
}

RationalSymMatrix inverse_aI_bJ(const Rational& a, const Rational& b, int p) {
  if (p < 1) throw parameter_error("inverse_aI_bJ needs size >= 1");
  if (a == 0) throw singularity_error("aI + bJ with a = 0 is singular");
  Rational denom = a + p * b;
  if (denom == 0) throw singularity_error("aI + bJ is singular: a + p b = 0");
  Rational off = -b / (a * denom);
  RationalSymMatrix out = RationalSymMatrix::constant(p, off);
  for (int i = 0; i < p; ++i) out.set(i, i, Rational(1) / a + off);
  return out;
}

RationalSymMatrix schur_complement(const RationalSymMatrix& m, int leading) {
  const int k = leading;
  const int n = m.dim();
  if (k <= 0 || k >= n) throw parameter_error("bad leading block size");

  // Solve A X = B by exact Gaussian elimination, A = leading k x k block,
  // B = k x (n-k) border.
  const int r = n - k;
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k));
  std::vector<std::vector<Rational>> b(k, std::vector<Rational>(r));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) a[i][j] = m.at(i, j);
    for (int j = 0; j < r; ++j) b[i][j] = m.at(i, k + j);
  }
  for (int col = 0; col < k; ++col) {
    int pivot = -1;
    for (int row = col; row < k; ++row)
      if (a[row][col] != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0) throw singularity_error("leading block is singular");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    Rational inv = Rational(1) / a[col][col];
    for (int j = col; j < k; ++j) a[col][j] *= inv;
    for (int j = 0; j < r; ++j) b[col][j] *= inv;
    for (int row = 0; row < k; ++row) {
      if (row == col || a[row][col] == 0) continue;
      Rational f = a[row][col];
      for (int j = col; j < k; ++j) a[row][j] -= f * a[col][j];
      for (int j = 0; j < r; ++j) b[row][j] -= f * b[col][j];
    }
  }

  std::vector<std::string> labels;
  if (!m.labels().empty())
    labels.assign(m.labels().begin() + k, m.labels().end());
  RationalSymMatrix out(r, std::move(labels));
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) {
      Rational acc = m.at(k + i, k + j);
      for (int t = 0; t < k; ++t) acc -= m.at(k + i, t) * b[t][j];
      out.set(i, j, acc);
    }
  return out;
}

RationalSymMatrix matrix_B_f3(const EdgeIndex& ix) {
  const int m = ix.size();
  std::uint64_t e1 = ix.edge(0).mask();
  RationalSymMatrix out(m, edge_labels(ix));
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      Rational v = inverse_of(std::popcount(ix.edge(i).mask() |
                                            ix.edge(j).mask())) +
                   inverse_of(std::popcount(e1 | ix.edge(i).mask())) +
                   inverse_of(std::popcount(e1 | ix.edge(j).mask()));
      out.set(i, j, v);
    }
  return out;
}

RationalSymMatrix matrix_R_f3(const EdgeIndex& ix) {
  const int m = ix.size();
  std::uint64_t e1 = ix.edge(0).mask();
  RationalSymMatrix out(m, edge_labels(ix));
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      out.set(i, j,
              inverse_of(std::popcount(e1 | ix.edge(i).mask())) +
                  inverse_of(std::popcount(e1 | ix.edge(j).mask())));
  return out;
}

namespace {

// Index layout for the elimination: position 0 is {1,2}; then the p edges
// {1,i}, i = 3..n; then the p edges {2,i}; then the q = C(p,2) edges inside
// {3..n} in lexicographic order.
std::vector<Edge> partition_order(int n) {
  std::vector<Edge> order;
  order.emplace_back(std::vector<int>{1, 2});
  for (int i = 3; i <= n; ++i) order.emplace_back(std::vector<int>{1, i});
  for (int i = 3; i <= n; ++i) order.emplace_back(std::vector<int>{2, i});
  for (int i = 3; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      order.emplace_back(std::vector<int>{i, j});
  return order;
}

struct TailIndex {
  // 2-subsets of the relabeled tail, lex order, as vertex pairs in [1..p]
  std::vector<std::pair<int, int>> pairs;
  explicit TailIndex(int p) {
    for (int i = 1; i <= p; ++i)
      for (int j = i + 1; j <= p; ++j) pairs.emplace_back(i, j);
  }
  int intersect(int a, int b) const {
    const auto& [a1, a2] = pairs[a];
    const auto& [b1, b2] = pairs[b];
    return (a1 == b1) + (a1 == b2) + (a2 == b1) + (a2 == b2);
  }
  int has(int f, int v) const {
    const auto& [f1, f2] = pairs[f];
    return (f1 == v) + (f2 == v);
  }
};

RationalSymMatrix template_B(int n) {
  const int p = n - 2;
  const int q = p * (p - 1) / 2;
  TailIndex tail(p);
  const int dim = 1 + 2 * p + q;
  RationalSymMatrix b(dim);
  auto I1 = [&](int a) { return 1 + a; };
  auto I2 = [&](int a) { return 1 + p + a; };
  auto I0 = [&](int f) { return 1 + 2 * p + f; };

  b.set(0, 0, ratio(3, 2));
  for (int a = 0; a < p; ++a) {
    b.set(0, I1(a), ratio(7, 6));
    b.set(0, I2(a), ratio(7, 6));
  }
  for (int f = 0; f < q; ++f) b.set(0, I0(f), Rational(1));
  for (int a = 0; a < p; ++a)
    for (int c = 0; c < p; ++c) {
      Rational v11 = Rational(1) + (a == c ? ratio(1, 6) : Rational(0));
      Rational v12 = ratio(11, 12) + (a == c ? ratio(1, 12) : Rational(0));
      if (c >= a) b.set(I1(a), I1(c), v11);
      if (c >= a) b.set(I2(a), I2(c), v11);
      b.set(I1(a), I2(c), v12);
    }
  for (int a = 0; a < p; ++a)
    for (int f = 0; f < q; ++f) {
      Rational v = ratio(5, 6) + ratio(tail.has(f, a + 1), 12);
      b.set(I1(a), I0(f), v);
      b.set(I2(a), I0(f), v);
    }
  for (int f = 0; f < q; ++f)
    for (int g = f; g < q; ++g) {
      int inter = tail.intersect(f, g);
      int uni = 4 - inter;  // union size of two 2-subsets
      b.set(I0(f), I0(g), inverse_of(uni) + ratio(1, 2));
    }
  return b;
}

RationalSymMatrix template_B1(int n) {
  const int p = n - 2;
  const int q = p * (p - 1) / 2;
  TailIndex tail(p);
  const int dim = 2 * p + q;
  RationalSymMatrix b(dim);
  auto I2b = [&](int a) { return p + a; };
  auto I0 = [&](int f) { return 2 * p + f; };
  for (int a = 0; a < p; ++a)
    for (int c = 0; c < p; ++c) {
      Rational diag = ratio(5, 9) + (a == c ? Rational(1) : Rational(0));
      Rational cross = ratio(1, 18) + (a == c ? ratio(1, 2) : Rational(0));
      if (c >= a) {
        b.set(a, c, diag);
        b.set(I2b(a), I2b(c), diag);
      }
      b.set(a, I2b(c), cross);
    }
  for (int a = 0; a < p; ++a)
    for (int f = 0; f < q; ++f) {
      Rational v = ratio(1, 3) + ratio(tail.has(f, a + 1), 2);
      b.set(a, I0(f), v);
      b.set(I2b(a), I0(f), v);
    }
  for (int f = 0; f < q; ++f)
    for (int g = f; g < q; ++g) {
      Rational v = ratio(tail.intersect(f, g), 2) + ratio(1, 2);
      if (f == g) v += ratio(1, 2);
      b.set(I0(f), I0(g), v);
    }
  return b;
}

RationalSymMatrix template_B2(int n) {
  const int p = n - 2;
  const int q = p * (p - 1) / 2;
  TailIndex tail(p);
  const int dim = p + q;
  RationalSymMatrix b(dim);
  Rational jp = ratio(11 * p + 23, 5 * p + 9);
  Rational jc = Rational(2) * ratio(3 * p + 7, 5 * p + 9);
  for (int a = 0; a < p; ++a)
    for (int c = a; c < p; ++c)
      b.set(a, c, jp + (a == c ? Rational(3) : Rational(0)));
  for (int a = 0; a < p; ++a)
    for (int f = 0; f < q; ++f)
      b.set(a, p + f, Rational(tail.has(f, a + 1)) + jc);
  for (int f = 0; f < q; ++f)
    for (int g = f; g < q; ++g) {
      Rational v = Rational(tail.intersect(f, g)) + jc;
      if (f == g) v += Rational(2);
      b.set(p + f, p + g, v);
    }
  return b;
}

RationalSymMatrix template_B3(int n) {
  const int p = n - 2;
  const int q = p * (p - 1) / 2;
  TailIndex tail(p);
  RationalSymMatrix b(q);
  Rational jc = Rational(2) * ratio(9 * p + 25, 3 * (11 * p + 27));
  for (int f = 0; f < q; ++f)
    for (int g = f; g < q; ++g) {
      Rational v = ratio(2 * tail.intersect(f, g), 3) + jc;
      if (f == g) v += Rational(2);
      b.set(f, g, v);
    }
  return b;
}

}  // namespace

bool CertifyF3Report::all_templates() const {
  for (const auto& s : stages)
    if (!s.matches_template) return false;
  return true;
}

nlohmann::json CertifyF3Report::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["lambda_min_B"] = lambda_min_B;
  j["stages"] = nlohmann::json::array();
  for (const auto& s : stages)
    j["stages"].push_back({{"name", s.name},
                           {"matches_template", s.matches_template}});
  j["psd"] = psd;
  return j;
}

CertifyF3Report certify_f3_L2(int n) {
  if (n < 4) throw parameter_error("certificate needs n >= 4");
  const int p = n - 2;
  EdgeIndex ix(n, 2);
  CertifyF3Report rep;
  rep.n = n;

  // entry formula in the elimination order
  std::vector<Edge> order = partition_order(n);
  const int dim = static_cast<int>(order.size());
  std::uint64_t e1 = order[0].mask();
  RationalSymMatrix b(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      b.set(i, j,
            inverse_of(std::popcount(order[i].mask() | order[j].mask())) +
                inverse_of(std::popcount(e1 | order[i].mask())) +
                inverse_of(std::popcount(e1 | order[j].mask())));

  rep.stages.push_back({"B", b == template_B(n)});

  RationalSymMatrix b1 = schur_complement(b, 1);
  b1 *= Rational(6);
  rep.stages.push_back({"B1", b1 == template_B1(n)});

  RationalSymMatrix b2 = schur_complement(b1, p);
  b2 *= Rational(4);
  rep.stages.push_back({"B2", b2 == template_B2(n)});

  RationalSymMatrix b3 = schur_complement(b2, p);
  rep.stages.push_back({"B3", b3 == template_B3(n)});

  rep.lambda_min_B = min_eigenvalue(b.to_double());
  rep.psd = rep.lambda_min_B > 0;

  // Q_{u_1} = M_{u_1} ∘ ((2/L) B) with B in plain edge order
  CoefficientCache cache(ix);
  MultiIndex u1 = MultiIndex::unit(0);
  RationalSymMatrix q = matrix_Q_direct(u1, cache, Exec::Serial);
  RationalSymMatrix scaled_b = matrix_B_f3(ix);
  scaled_b *= ratio(2, ix.L());
  rep.hadamard_identity = (q == hadamard(matrix_M_gamma(u1, ix), scaled_b));
  return rep;
}

}  // namespace hypercvx
