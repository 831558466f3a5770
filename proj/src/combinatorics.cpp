#include "hypercvx/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <tuple>

namespace hypercvx {

Edge::Edge(std::vector<int> vertices) : verts_(std::move(vertices)) {
  if (verts_.empty()) throw parameter_error("edge with no vertices");
  for (std::size_t i = 0; i < verts_.size(); ++i) {
    int v = verts_[i];
    if (v < 1 || v > 64) throw parameter_error("edge vertex out of [1..64]");
    if (i > 0 && verts_[i - 1] >= v)
      throw parameter_error("edge vertices must be strictly increasing");
    mask_ |= std::uint64_t{1} << (v - 1);
  }
}

int union_cardinality(const std::vector<Edge>& edges) {
  if (edges.empty()) throw parameter_error("union of an empty edge tuple");
  std::uint64_t m = 0;
  for (const Edge& e : edges) m |= e.mask();
  return std::popcount(m);
}

namespace {

void gen_subsets(int n, int k, int start, std::vector<int>& cur,
                 std::vector<Edge>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.emplace_back(cur);
    return;
  }
  for (int v = start; v <= n - (k - static_cast<int>(cur.size())) + 1; ++v) {
    cur.push_back(v);
    gen_subsets(n, k, v + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

EdgeIndex::EdgeIndex(int n, int L) : n_(n), L_(L) {
  if (n < 2 || L < 2 || L > n)
    throw parameter_error("edge index requires 2 <= L <= n");
  std::vector<int> cur;
  gen_subsets(n, L, 1, cur, edges_);
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i)
    by_mask_.emplace(edges_[i].mask(), i);
}

int EdgeIndex::index_of(const Edge& e) const {
  auto it = by_mask_.find(e.mask());
  if (it == by_mask_.end() || e.size() != L_)
    throw parameter_error("edge not in index");
  return it->second;
}

MultiIndex MultiIndex::unit(int k) {
  MultiIndex m;
  m.terms_.emplace_back(k, 1);
  m.degree_ = 1;
  return m;
}

MultiIndex MultiIndex::from_dense(const std::vector<int>& exponents) {
  MultiIndex m;
  for (int k = 0; k < static_cast<int>(exponents.size()); ++k) {
    if (exponents[k] < 0) throw parameter_error("negative exponent");
    if (exponents[k] > 0) {
      m.terms_.emplace_back(k, exponents[k]);
      m.degree_ += exponents[k];
    }
  }
  return m;
}

int MultiIndex::exponent(int k) const {
  for (const auto& [i, e] : terms_)
    if (i == k) return e;
  return 0;
}

MultiIndex MultiIndex::plus(int k, int delta) const {
  if (delta < 0) throw parameter_error("plus() wants delta >= 0");
  MultiIndex m = *this;
  m.degree_ += delta;
  if (delta == 0) return m;
  auto it = std::lower_bound(
      m.terms_.begin(), m.terms_.end(), k,
      [](const auto& t, int key) { return t.first < key; });
  if (it != m.terms_.end() && it->first == k)
    it->second += delta;
  else
    m.terms_.insert(it, {k, delta});
  return m;
}

MultiIndex MultiIndex::minus(int k) const {
  MultiIndex m = *this;
  auto it = std::lower_bound(
      m.terms_.begin(), m.terms_.end(), k,
      [](const auto& t, int key) { return t.first < key; });
  if (it == m.terms_.end() || it->first != k)
    throw parameter_error("minus() on zero exponent");
  if (--it->second == 0) m.terms_.erase(it);
  m.degree_ -= 1;
  return m;
}

BigInt MultiIndex::factorial() const {
  BigInt f(1);
  for (const auto& [i, e] : terms_) f *= factorial_of(e);
  return f;
}

int GammaPattern::width() const {
  int w = 0;
  for (const Edge& e : edges_) w = std::max(w, e.vertices().back());
  return w;
}

std::string GammaPattern::serialize() const {
  std::vector<Edge> desc = edges_;
  std::sort(desc.begin(), desc.end(), [](const Edge& a, const Edge& b) {
    return b < a;
  });
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < desc.size(); ++i) {
    if (i) os << ", ";
    os << "[";
    const auto& vs = desc[i].vertices();
    for (std::size_t j = 0; j < vs.size(); ++j) {
      if (j) os << ", ";
      os << vs[j];
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

namespace {

using VertList = std::vector<int>;
using EdgeList = std::vector<VertList>;

// Branch-and-bound search for the lexicographically minimal sorted relabeled
// edge list. Labels are assigned on first touch; edges are placed in their
// final sorted position, so each placed image must be >= the previous one.
class CanonicalSearch {
 public:
  explicit CanonicalSearch(const EdgeList& edges) : edges_(edges) {
    int maxv = 0;
    for (const auto& e : edges_)
      for (int v : e) maxv = std::max(maxv, v);
    mapping_.assign(maxv + 1, 0);
    used_.assign(edges_.size(), false);
  }

  EdgeList run() {
    recurse();
    return best_;
  }

 private:
  struct Branch {
    VertList image;
    int idx;
    VertList unmapped;  // assignment order: unmapped[i] -> next_label_ + i
  };

  void recurse() {
    if (acc_.size() == edges_.size()) {
      if (!has_best_ || acc_ < best_) {
        best_ = acc_;
        has_best_ = true;
      }
      return;
    }
    std::vector<Branch> branches;
    std::set<VertList> seen;
    for (int idx = 0; idx < static_cast<int>(edges_.size()); ++idx) {
      if (used_[idx]) continue;
      if (!seen.insert(edges_[idx]).second) continue;  // duplicate edge
      VertList unmapped;
      for (int v : edges_[idx])
        if (mapping_[v] == 0) unmapped.push_back(v);
      std::sort(unmapped.begin(), unmapped.end());
      do {
        VertList img;
        img.reserve(edges_[idx].size());
        for (int v : edges_[idx]) {
          if (mapping_[v] != 0) {
            img.push_back(mapping_[v]);
          } else {
            int pos = static_cast<int>(
                std::find(unmapped.begin(), unmapped.end(), v) -
                unmapped.begin());
            img.push_back(next_label_ + pos);
          }
        }
        std::sort(img.begin(), img.end());
        if (!acc_.empty() && img < acc_.back()) continue;
        branches.push_back({std::move(img), idx, unmapped});
      } while (std::next_permutation(unmapped.begin(), unmapped.end()));
    }
    std::sort(branches.begin(), branches.end(),
              [](const Branch& a, const Branch& b) { return a.image < b.image; });
    for (const Branch& br : branches) {
      if (has_best_ && prefix_beats_best(br.image)) continue;
      apply(br);
      recurse();
      undo(br);
    }
  }

  // true when acc_ + image is lexicographically greater than the matching
  // prefix of best_, so the branch cannot improve.
  bool prefix_beats_best(const VertList& image) const {
    for (std::size_t i = 0; i < acc_.size(); ++i) {
      if (acc_[i] != best_[i]) return acc_[i] > best_[i];
    }
    return image > best_[acc_.size()];
  }

  void apply(const Branch& br) {
    used_[br.idx] = true;
    for (std::size_t i = 0; i < br.unmapped.size(); ++i)
      mapping_[br.unmapped[i]] = next_label_ + static_cast<int>(i);
    next_label_ += static_cast<int>(br.unmapped.size());
    acc_.push_back(br.image);
  }

  void undo(const Branch& br) {
    acc_.pop_back();
    next_label_ -= static_cast<int>(br.unmapped.size());
    for (int v : br.unmapped) mapping_[v] = 0;
    used_[br.idx] = false;
  }

  const EdgeList& edges_;
  std::vector<int> mapping_;
  std::vector<char> used_;
  EdgeList acc_, best_;
  bool has_best_ = false;
  int next_label_ = 1;
};

}  // namespace

GammaPattern canonicalize_pattern(std::vector<Edge> edges, int n) {
  GammaPattern pat;
  if (edges.empty()) return pat;
  int sz = edges.front().size();
  for (const Edge& e : edges) {
    if (e.size() != sz) throw parameter_error("mixed edge sizes");
    if (e.vertices().back() > n) throw parameter_error("edge vertex above n");
  }
  EdgeList raw;
  raw.reserve(edges.size());
  for (const Edge& e : edges) raw.push_back(e.vertices());
  EdgeList canon = CanonicalSearch(raw).run();
  pat.edges_.reserve(canon.size());
  for (auto& vl : canon) pat.edges_.emplace_back(std::move(vl));
  return pat;
}

std::vector<GammaPattern> gamma_orbit_representatives(int n, int L, int d) {
  if (d < 2) throw parameter_error("orbit enumeration requires d >= 2");
  if (d == 2) return {GammaPattern()};
  int g = std::min<long long>(n, static_cast<long long>(L) * (d - 2));
  if (g < L) return {};

  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::vector<GammaPattern>> cache;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find({g, L, d});
    if (it != cache.end()) return it->second;
  }

  EdgeIndex base(g, L);
  std::set<GammaPattern> found;
  for_each_multiset(base.size(), d - 2, [&](const std::vector<int>& idxs) {
    std::vector<Edge> ms;
    ms.reserve(idxs.size());
    for (int i : idxs) ms.push_back(base.edge(i));
    found.insert(canonicalize_pattern(std::move(ms), g));
  });
  std::vector<GammaPattern> out(found.begin(), found.end());

  std::lock_guard<std::mutex> lk(mu);
  cache.emplace(std::make_tuple(g, L, d), out);
  return out;
}

MultiIndex pattern_to_multiindex(const GammaPattern& pat, const EdgeIndex& ix) {
  MultiIndex mi;
  for (const Edge& e : pat.edges()) mi = mi.plus(ix.index_of(e));
  return mi;
}

GammaPattern multiindex_to_pattern(const MultiIndex& mi, const EdgeIndex& ix) {
  std::vector<Edge> edges;
  for (const auto& [k, e] : mi.terms())
    for (int c = 0; c < e; ++c) edges.push_back(ix.edge(k));
  return canonicalize_pattern(std::move(edges), ix.n());
}

void for_each_multiset(int m, int k,
                       const std::function<void(const std::vector<int>&)>& f) {
  if (k < 0) throw parameter_error("negative multiset size");
  std::vector<int> idx(k, 0);
  if (k == 0) {
    f(idx);
    return;
  }
  if (m <= 0) return;
  while (true) {
    f(idx);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == m - 1) --pos;
    if (pos < 0) return;
    int v = idx[pos] + 1;
    for (int i = pos; i < k; ++i) idx[i] = v;
  }
}

long long multiset_count(int m, int k) {
  BigInt c = binomial(m + k - 1, k);
  if (!c.fits_slong_p()) return std::numeric_limits<long long>::max();
  return c.get_si();
}

std::vector<Edge> parse_gamma(const std::string& s) {
  std::vector<Edge> edges;
  std::vector<int> cur;
  int value = -1;
  int depth = 0;
  for (char ch : s) {
    if (ch == '[') {
      ++depth;
      if (depth == 2) cur.clear();
    } else if (ch >= '0' && ch <= '9') {
      value = (value < 0 ? 0 : value * 10) + (ch - '0');
    } else {
      if (value >= 0 && depth == 2) cur.push_back(value);
      value = -1;
      if (ch == ']') {
        if (depth == 2) {
          std::sort(cur.begin(), cur.end());
          edges.emplace_back(cur);
        }
        --depth;
      }
    }
  }
  return edges;
}

}  // namespace hypercvx
