#include "hypercvx/matrices.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <sstream>

namespace hypercvx {

RationalSymMatrix::RationalSymMatrix(int dim, std::vector<std::string> labels)
    : dim_(dim), data_(static_cast<std::size_t>(dim) * dim, Rational(0)),
      labels_(std::move(labels)) {
  if (dim < 0) throw parameter_error("negative matrix dimension");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != dim)
    throw parameter_error("label count != dimension");
}

void RationalSymMatrix::set(int i, int j, const Rational& v) {
  data_[static_cast<std::size_t>(i) * dim_ + j] = v;
  data_[static_cast<std::size_t>(j) * dim_ + i] = v;
}

bool RationalSymMatrix::operator==(const RationalSymMatrix& o) const {
  return dim_ == o.dim_ && data_ == o.data_;
}

RationalSymMatrix& RationalSymMatrix::operator+=(const RationalSymMatrix& o) {
  if (dim_ != o.dim_) throw parameter_error("dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

RationalSymMatrix& RationalSymMatrix::operator*=(const Rational& s) {
  for (auto& v : data_) v *= s;
  return *this;
}

Eigen::MatrixXd RationalSymMatrix::to_double() const {
  Eigen::MatrixXd m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(i, j) = hypercvx::to_double(at(i, j));
  return m;
}

std::string RationalSymMatrix::dump() const {
  std::ostringstream os;
  os << "dim=" << dim_ << " labels=";
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i) os << ";";
    os << labels_[i];
  }
  os << "\n";
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      if (j) os << " ";
      os << rational_string(at(i, j));
    }
    os << "\n";
  }
  return os.str();
}

RationalSymMatrix RationalSymMatrix::identity(int dim, const Rational& scale) {
  RationalSymMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.set(i, i, scale);
  return m;
}

RationalSymMatrix RationalSymMatrix::constant(int dim, const Rational& value) {
  RationalSymMatrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) m.set(i, j, value);
  return m;
}

RationalSymMatrix hadamard(const RationalSymMatrix& a,
                           const RationalSymMatrix& b) {
  if (a.dim() != b.dim()) throw parameter_error("dimension mismatch");
  RationalSymMatrix out(a.dim(), a.labels());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j) out.set(i, j, a.at(i, j) * b.at(i, j));
  return out;
}

RationalSymMatrix add(const RationalSymMatrix& a, const RationalSymMatrix& b) {
  RationalSymMatrix out = a;
  out += b;
  return out;
}

SubsetFamily::SubsetFamily(int N, int maxSize) : N_(N), s_(maxSize) {
  if (N < 0 || maxSize < 0) throw parameter_error("bad subset family bounds");
  s_ = std::min(s_, N_);
  for (int size = 0; size <= s_; ++size) {
    std::vector<int> cur;
    // lexicographic enumeration of size-subsets of [1..N]
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(cur.size()) == size) {
        std::uint64_t m = 0;
        for (int v : cur) m |= std::uint64_t{1} << (v - 1);
        subsets_.push_back(cur);
        masks_.push_back(m);
        return;
      }
      for (int v = start; v <= N_ - (size - static_cast<int>(cur.size())) + 1;
           ++v) {
        cur.push_back(v);
        rec(v + 1);
        cur.pop_back();
      }
    };
    rec(1);
  }
}

std::string SubsetFamily::label(int idx) const {
  std::ostringstream os;
  os << "{";
  const auto& s = subsets_[idx];
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ",";
    os << s[i];
  }
  os << "}";
  return os.str();
}

std::vector<std::string> edge_labels(const EdgeIndex& ix) {
  std::vector<std::string> out;
  out.reserve(ix.size());
  for (const Edge& e : ix.edges()) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < e.vertices().size(); ++i) {
      if (i) os << ",";
      os << e.vertices()[i];
    }
    os << "}";
    out.push_back(os.str());
  }
  return out;
}

RationalSymMatrix matrix_M_W(std::uint64_t w_mask, const EdgeIndex& ix) {
  int m = ix.size();
  RationalSymMatrix out(m, edge_labels(ix));
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      out.set(i, j, inverse_of(std::popcount(
                        w_mask | ix.edge(i).mask() | ix.edge(j).mask())));
  return out;
}

RationalSymMatrix matrix_M_W(const std::vector<int>& W, const EdgeIndex& ix) {
  std::uint64_t m = 0;
  for (int v : W) {
    if (v < 1 || v > ix.n()) throw parameter_error("W vertex out of range");
    m |= std::uint64_t{1} << (v - 1);
  }
  return matrix_M_W(m, ix);
}

RationalSymMatrix matrix_M_p(int N, int L, int p) {
  if (p < 1) throw parameter_error("matrix_M_p requires p >= 1");
  if (N < 0 || L < 0) throw parameter_error("bad matrix_M_p bounds");
  SubsetFamily fam(N, std::min(L, N));
  std::vector<std::string> labels;
  labels.reserve(fam.size());
  for (int i = 0; i < fam.size(); ++i) labels.push_back(fam.label(i));
  RationalSymMatrix out(fam.size(), std::move(labels));
  for (int i = 0; i < fam.size(); ++i)
    for (int j = i; j < fam.size(); ++j)
      out.set(i, j,
              inverse_of(p + std::popcount(fam.mask(i) | fam.mask(j))));
  return out;
}

RationalSymMatrix matrix_M_gamma(const MultiIndex& gamma,
                                 const EdgeIndex& ix) {
  std::uint64_t w = 0;
  for (const auto& [k, e] : gamma.terms()) w |= ix.edge(k).mask();
  return matrix_M_W(w, ix);
}

namespace {

}  // namespace

RationalSymMatrix matrix_Q_direct(const MultiIndex& gamma,
                                  CoefficientCache& cache, Exec exec) {
  const EdgeIndex& ix = cache.edges();
  int m = ix.size();
  Rational inv_fact = Rational(1) / Rational(gamma.factorial());
  RationalSymMatrix out(m, edge_labels(ix));
  if (exec == Exec::OpenMP) {
    // Each thread owns a private table: the per-entry top values are
    // disjoint, so redundant work is limited to the small shared
    // sub-lattice and there is no lock traffic. Entries are exact, hence
    // identical to the serial fill.
#pragma omp parallel
    {
      CoefficientCache local(ix);
#pragma omp for schedule(dynamic)
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j)
          out.set(i, j,
                  Rational(inv_fact * local.b_hat(gamma.plus(i).plus(j))));
    }
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j)
        out.set(i, j, Rational(inv_fact * cache.b_hat(gamma.plus(i).plus(j))));
  }
  return out;
}

RationalSymMatrix matrix_R(const MultiIndex& gamma, CoefficientCache& cache) {
  const EdgeIndex& ix = cache.edges();
  int m = ix.size();
  Rational inv_fact = Rational(1) / Rational(gamma.factorial());
  std::vector<Rational> r(m);
  for (int i = 0; i < m; ++i) r[i] = inv_fact * cache.b_hat(gamma.plus(i));
  RationalSymMatrix out(m, edge_labels(ix));
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) out.set(i, j, r[i] + r[j]);
  return out;
}

RationalSymMatrix matrix_B(const MultiIndex& gamma, CoefficientCache& cache,
                           Exec exec) {
  const EdgeIndex& ix = cache.edges();
  const int m = ix.size();
  RationalSymMatrix out(m, edge_labels(ix));
  if (gamma.zero()) return out;

  // one entry-parallel pass over the summed reductions of gamma
  struct Term {
    MultiIndex base;
    Rational inv_fact;
  };
  std::vector<Term> terms;
  for (const auto& [k, e] : gamma.terms()) {
    MultiIndex g = gamma.minus(k);
    Rational f = Rational(1) / Rational(g.factorial());
    terms.push_back({std::move(g), std::move(f)});
  }
  auto entry = [&](CoefficientCache& c, int i, int j) -> Rational {
    Rational acc(0);
    for (const auto& t : terms)
      acc += t.inv_fact * c.b_hat(t.base.plus(i).plus(j));
    return acc;
  };
  if (exec == Exec::OpenMP) {
#pragma omp parallel
    {
      CoefficientCache local(ix);
#pragma omp for schedule(dynamic)
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) out.set(i, j, entry(local, i, j));
    }
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) out.set(i, j, entry(cache, i, j));
  }
  return out;
}

RationalSymMatrix matrix_Q_recursive(const MultiIndex& gamma,
                                     CoefficientCache& cache, Exec exec) {
  if (gamma.zero())
    throw parameter_error("recursive Q form needs |gamma| >= 1");
  RationalSymMatrix inner = matrix_B(gamma, cache, exec);
  inner += matrix_R(gamma, cache);
  return hadamard(matrix_M_gamma(gamma, cache.edges()), inner);
}

bool hadamard_identity_holds_for_empty_gamma(int n, int L) {
  EdgeIndex ix(n, L);
  CoefficientCache cache(ix);
  MultiIndex empty;
  RationalSymMatrix q = matrix_Q_direct(empty, cache, Exec::Serial);
  RationalSymMatrix inner = matrix_B(empty, cache, Exec::Serial);
  inner += matrix_R(empty, cache);
  return q == hadamard(matrix_M_gamma(empty, ix), inner);
}

RationalSymMatrix dedup_rows_columns(const RationalSymMatrix& mw,
                                     std::uint64_t w_mask,
                                     const EdgeIndex& ix) {
  if (mw.dim() != ix.size()) throw parameter_error("matrix/index mismatch");
  // Complement of W, ascending, relabeled to [1..N].
  std::vector<int> complement;
  for (int v = 1; v <= ix.n(); ++v)
    if (!(w_mask >> (v - 1) & 1)) complement.push_back(v);
  int N = static_cast<int>(complement.size());
  std::vector<int> new_label(ix.n() + 1, 0);
  for (int i = 0; i < N; ++i) new_label[complement[i]] = i + 1;

  int cap = std::min(ix.L(), N);
  SubsetFamily fam(N, cap);
  std::map<std::vector<int>, int> fam_pos;
  for (int i = 0; i < fam.size(); ++i) fam_pos[fam.subset(i)] = i;

  // One representative edge per residual subset.
  std::vector<int> rep(fam.size(), -1);
  for (int e = 0; e < ix.size(); ++e) {
    std::vector<int> residual;
    for (int v : ix.edge(e).vertices())
      if (!(w_mask >> (v - 1) & 1)) residual.push_back(new_label[v]);
    std::sort(residual.begin(), residual.end());
    auto it = fam_pos.find(residual);
    if (it == fam_pos.end()) continue;
    if (rep[it->second] < 0) rep[it->second] = e;
  }
  for (int i = 0; i < fam.size(); ++i)
    if (rep[i] < 0) throw parameter_error("family subset with no edge");

  std::vector<std::string> labels;
  labels.reserve(fam.size());
  for (int i = 0; i < fam.size(); ++i) labels.push_back(fam.label(i));
  RationalSymMatrix out(fam.size(), std::move(labels));
  for (int i = 0; i < fam.size(); ++i)
    for (int j = i; j < fam.size(); ++j) out.set(i, j, mw.at(rep[i], rep[j]));
  return out;
}

}  // namespace hypercvx
