#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hypercvx/errors.hpp"
#include "hypercvx/rational.hpp"

namespace hypercvx {

// An L-subset of the ground set [1..n], kept sorted. The bitmask mirrors the
// vertex set (bit v-1 set for vertex v) and is what union cardinalities are
// computed from.
class Edge {
 public:
  Edge() = default;
  explicit Edge(std::vector<int> vertices);

  const std::vector<int>& vertices() const { return verts_; }
  std::uint64_t mask() const { return mask_; }
  int size() const { return static_cast<int>(verts_.size()); }

  bool operator==(const Edge& o) const { return verts_ == o.verts_; }
  bool operator<(const Edge& o) const { return verts_ < o.verts_; }

 private:
  std::vector<int> verts_;
  std::uint64_t mask_ = 0;
};

// |e_1 ∪ ... ∪ e_k|; rejects the empty tuple.
int union_cardinality(const std::vector<Edge>& edges);

// All L-subsets of [1..n] in lexicographic order. Positions are stable
// across runs and are the row/column labels of every edge-indexed matrix.
class EdgeIndex {
 public:
  EdgeIndex(int n, int L);

  int n() const { return n_; }
  int L() const { return L_; }
  int size() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int i) const { return edges_[i]; }
  const std::vector<Edge>& edges() const { return edges_; }
  int index_of(const Edge& e) const;

 private:
  int n_, L_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, int> by_mask_;
};

inline EdgeIndex enumerate_edges(int n, int L) { return EdgeIndex(n, L); }

// Sparse exponent vector over edge positions; the degree is the sum of
// exponents. Only positive exponents are stored, sorted by position.
class MultiIndex {
 public:
  MultiIndex() = default;
  static MultiIndex unit(int k);
  static MultiIndex from_dense(const std::vector<int>& exponents);

  const std::vector<std::pair<int, int>>& terms() const { return terms_; }
  int degree() const { return degree_; }
  int exponent(int k) const;
  bool zero() const { return terms_.empty(); }
  int support_size() const { return static_cast<int>(terms_.size()); }

  MultiIndex plus(int k, int delta = 1) const;
  MultiIndex minus(int k) const;

  BigInt factorial() const;

  bool operator==(const MultiIndex& o) const { return terms_ == o.terms_; }
  bool operator<(const MultiIndex& o) const { return terms_ < o.terms_; }

 private:
  std::vector<std::pair<int, int>> terms_;
  int degree_ = 0;
};

// Canonical representative of a multiset of edges under relabeling of the
// vertices it touches: the lexicographically minimal sorted edge list over
// all such relabelings. Canonical forms use the contiguous labels
// {1..width}. The empty pattern is the degree-2 case.
class GammaPattern {
 public:
  GammaPattern() = default;

  const std::vector<Edge>& edges() const { return edges_; }
  int size() const { return static_cast<int>(edges_.size()); }
  bool empty() const { return edges_.empty(); }
  int width() const;

  // Nested bracket list with edges sorted descending, e.g. "[[3, 4], [1, 2]]".
  std::string serialize() const;

  bool operator==(const GammaPattern& o) const { return edges_ == o.edges_; }
  bool operator<(const GammaPattern& o) const { return edges_ < o.edges_; }

  friend GammaPattern canonicalize_pattern(std::vector<Edge> edges, int n);

 private:
  std::vector<Edge> edges_;  // ascending canonical order
};

GammaPattern canonicalize_pattern(std::vector<Edge> edges, int n);

// One representative per orbit of (d-2)-edge multisets under vertex
// relabeling, restricted to patterns touching at most n vertices. Sorted,
// memoized per (min(n, L*(d-2)), L, d).
std::vector<GammaPattern> gamma_orbit_representatives(int n, int L, int d);

// Embed a pattern into a concrete edge index (pattern vertices are already
// a prefix of [1..n]).
MultiIndex pattern_to_multiindex(const GammaPattern& pat, const EdgeIndex& ix);

// Recover the canonical pattern of an arbitrary exponent vector.
GammaPattern multiindex_to_pattern(const MultiIndex& mi, const EdgeIndex& ix);

// Visit all k-multisets over {0..m-1} as nondecreasing index tuples, in
// lexicographic order.
void for_each_multiset(int m, int k,
                       const std::function<void(const std::vector<int>&)>& f);

long long multiset_count(int m, int k);

// Parse "[[3, 4], [1, 2]]" back into an edge multiset.
std::vector<Edge> parse_gamma(const std::string& s);

}  // namespace hypercvx
