#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>

#include "hypercvx/certification.hpp"
#include "hypercvx/matrices.hpp"
#include "test_util.hpp"

using namespace hypercvx;

namespace {

MultiIndex embed(const GammaPattern& pat, const EdgeIndex& ix) {
  return pattern_to_multiindex(pat, ix);
}

}  // namespace

TEST_CASE("union matrix examples") {
  EdgeIndex ix(3, 2);
  RationalSymMatrix m = matrix_M_W(std::uint64_t{0}, ix);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(m.at(i, j) == (i == j ? ratio(1, 2) : ratio(1, 3)));

  EdgeIndex ix4(4, 2);
  RationalSymMatrix mw = matrix_M_W(std::vector<int>{1, 2}, ix4);
  // entry ({1,2},{1,3}) has union {1,2,3}
  CHECK(mw.at(0, 1) == ratio(1, 3));
}

TEST_CASE("relabeling a base set permutes the union matrix") {
  EdgeIndex ix(6, 2);
  RationalSymMatrix a = matrix_M_W(std::vector<int>{1, 2, 3}, ix);
  RationalSymMatrix b = matrix_M_W(std::vector<int>{4, 5, 6}, ix);
  // map vertices 1<->4, 2<->5, 3<->6
  std::vector<int> perm{4, 5, 6, 1, 2, 3};
  std::vector<int> edge_perm(ix.size());
  for (int i = 0; i < ix.size(); ++i) {
    std::vector<int> vs;
    for (int v : ix.edge(i).vertices()) vs.push_back(perm[v - 1]);
    std::sort(vs.begin(), vs.end());
    edge_perm[i] = ix.index_of(Edge(vs));
  }
  for (int i = 0; i < ix.size(); ++i)
    for (int j = 0; j < ix.size(); ++j)
      CHECK(a.at(i, j) == b.at(edge_perm[i], edge_perm[j]));
}

TEST_CASE("shifted-union matrix basics") {
  RationalSymMatrix mp = matrix_M_p(4, 2, 2);
  CHECK(mp.at(0, 0) == ratio(1, 2));  // empty set against itself
  CHECK_THROWS_AS(matrix_M_p(4, 2, 0), parameter_error);

  SubsetFamily fam(4, 2);
  CHECK(fam.size() == 1 + 4 + 6);
  CHECK(fam.subset(0).empty());
  CHECK(fam.subset(1) == std::vector<int>{1});
  CHECK(fam.subset(5) == std::vector<int>{1, 2});
}

TEST_CASE("within-block entries depend on the intersection size only") {
  for (int N : {4, 6, 8, 10}) {
    int L = 3, p = 2;
    SubsetFamily fam(N, std::min(L, N));
    RationalSymMatrix mp = matrix_M_p(N, L, p);
    for (int a = 0; a < fam.size(); ++a)
      for (int b = 0; b < fam.size(); ++b) {
        int i = static_cast<int>(fam.subset(a).size());
        int j = static_cast<int>(fam.subset(b).size());
        int t = std::popcount(fam.mask(a) & fam.mask(b));
        CHECK(mp.at(a, b) == ratio(1, p + i + j - t));
      }
  }
}

TEST_CASE("duplicate-row reduction reproduces the shifted-union matrix") {
  for (auto [n, L] : {std::pair{5, 2}, {6, 2}, {6, 3}}) {
    EdgeIndex ix(n, L);
    std::uint64_t w = ix.edge(0).mask();  // W = e_1, |W| = L
    RationalSymMatrix reduced =
        dedup_rows_columns(matrix_M_W(w, ix), w, ix);
    RationalSymMatrix mp = matrix_M_p(n - L, L, L);
    CHECK(reduced.dim() == mp.dim());
    CHECK(reduced == mp);
  }
}

TEST_CASE("shifted-union matrices are PSD across the working range") {
  for (int L = 2; L <= 4; ++L)
    for (int N = 1; N <= 12; ++N)
      for (int p = 1; p <= 8; ++p) {
        if (N > 9 && L > 3) continue;  // larger combos live in the acceptance run
        RationalSymMatrix mp = matrix_M_p(N, L, p);
        double lmin = min_eigenvalue(mp.to_double());
        CHECK(psd_by_min_eigenvalue(lmin, inf_norm(mp.to_double())));
      }
}

TEST_CASE("gamma matrix equals the union matrix of its support") {
  EdgeIndex ix(6, 2);
  for (const GammaPattern& pat : gamma_orbit_representatives(6, 2, 4)) {
    MultiIndex gamma = embed(pat, ix);
    std::uint64_t w = 0;
    for (const auto& [k, e] : gamma.terms()) w |= ix.edge(k).mask();
    CHECK(matrix_M_gamma(gamma, ix) == matrix_M_W(w, ix));
  }
}

TEST_CASE("both entry formulas for the scaled-coefficient matrix agree") {
  EdgeIndex ix(5, 2);
  CoefficientCache cache(ix);
  for (const GammaPattern& pat : gamma_orbit_representatives(5, 2, 4)) {
    MultiIndex gamma = embed(pat, ix);
    RationalSymMatrix q = matrix_Q_direct(gamma, cache, Exec::Serial);
    for (int i = 0; i < ix.size(); ++i)
      for (int j = 0; j < ix.size(); ++j) {
        Rational via_b =
            i == j ? Rational((gamma.exponent(i) + 1) *
                              (gamma.exponent(i) + 2)) *
                         cache.b(gamma.plus(i).plus(i))
                   : Rational((gamma.exponent(i) + 1) *
                              (gamma.exponent(j) + 1)) *
                         cache.b(gamma.plus(i).plus(j));
        CHECK(q.at(i, j) == via_b);
        CHECK(q.at(i, j) > 0);
      }
  }
}

TEST_CASE("frozen degenerate cases of the component matrices") {
  // single-edge ground set, L = 3
  EdgeIndex ix(3, 3);
  CoefficientCache cache(ix);
  MultiIndex u1 = MultiIndex::unit(0);
  RationalSymMatrix q = matrix_Q_direct(u1, cache, Exec::Serial);
  REQUIRE(q.dim() == 1);
  CHECK(q.at(0, 0) == ratio(2, 9));
  RationalSymMatrix r = matrix_R(u1, cache);
  CHECK(r.at(0, 0) == ratio(4, 9));
  RationalSymMatrix b = matrix_B(u1, cache, Exec::Serial);
  CHECK(b.at(0, 0) == ratio(2, 9));
  RationalSymMatrix qr = matrix_Q_recursive(u1, cache, Exec::Serial);
  CHECK(qr.at(0, 0) == ratio(2, 9));
}

TEST_CASE("empty pattern gives the quadratic component matrices") {
  EdgeIndex ix(5, 2);
  CoefficientCache cache(ix);
  MultiIndex empty;
  RationalSymMatrix q = matrix_Q_direct(empty, cache, Exec::Serial);
  RationalSymMatrix m0 = matrix_M_W(std::uint64_t{0}, ix);
  RationalSymMatrix scaled = m0;
  scaled *= ratio(2, 2);
  CHECK(q == scaled);  // 2/L with L = 2

  RationalSymMatrix b = matrix_B(empty, cache, Exec::Serial);
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) CHECK(b.at(i, j) == 0);
  RationalSymMatrix r = matrix_R(empty, cache);
  for (int i = 0; i < r.dim(); ++i)
    for (int j = 0; j < r.dim(); ++j) CHECK(r.at(i, j) == 1);  // 2/L with L = 2
  CHECK_THROWS_AS(matrix_Q_recursive(empty, cache, Exec::Serial),
                  parameter_error);
}

TEST_CASE("the product reformulation extends to the quadratic case") {
  // follows from the coefficient recursion at degree 2
  CHECK(hadamard_identity_holds_for_empty_gamma(4, 2));
  CHECK(hadamard_identity_holds_for_empty_gamma(4, 3));
  CHECK(hadamard_identity_holds_for_empty_gamma(6, 2));
}

TEST_CASE("recursive and direct constructions agree exactly") {
  for (auto [n, L, d] : {std::tuple{5, 2, 3}, {5, 2, 4}, {4, 3, 3}, {6, 2, 5}}) {
    EdgeIndex ix(n, L);
    CoefficientCache cache(ix);
    for (const GammaPattern& pat : gamma_orbit_representatives(n, L, d)) {
      MultiIndex gamma = embed(pat, ix);
      CHECK(matrix_Q_direct(gamma, cache, Exec::Serial) ==
            matrix_Q_recursive(gamma, cache, Exec::Serial));
    }
  }
}

TEST_CASE("schur product of PSD factors stays PSD") {
  EdgeIndex ix(5, 2);
  CoefficientCache cache(ix);
  MultiIndex u1 = MultiIndex::unit(0);
  RationalSymMatrix a = matrix_M_gamma(u1, ix);
  RationalSymMatrix b = matrix_Q_direct(u1, cache, Exec::Serial);
  Eigen::MatrixXd h = hadamard(a, b).to_double();
  double scale = std::max({1.0, inf_norm(h)});
  CHECK(min_eigenvalue(h) >= -1e-9 * scale);
}

TEST_CASE("component matrices stay positive and PSD on a small grid") {
  for (auto [n, L, d] : {std::tuple{5, 2, 4}, {5, 3, 3}}) {
    EdgeIndex ix(n, L);
    CoefficientCache cache(ix);
    for (const GammaPattern& pat : gamma_orbit_representatives(n, L, d)) {
      MultiIndex gamma = embed(pat, ix);
      RationalSymMatrix q = matrix_Q_direct(gamma, cache, Exec::Serial);
      for (int i = 0; i < q.dim(); ++i)
        for (int j = 0; j < q.dim(); ++j) CHECK(q.at(i, j) > 0);
      double lq = min_eigenvalue(q.to_double());
      CHECK(psd_by_min_eigenvalue(lq, inf_norm(q.to_double())));
      RationalSymMatrix mg = matrix_M_gamma(gamma, ix);
      CHECK(psd_by_min_eigenvalue(min_eigenvalue(mg.to_double()),
                                  inf_norm(mg.to_double())));
    }
  }
}

TEST_CASE("dump format") {
  EdgeIndex ix(3, 2);
  RationalSymMatrix m = matrix_M_W(std::uint64_t{0}, ix);
  std::string d = m.dump();
  CHECK(d.rfind("dim=3 labels={1,2};{1,3};{2,3}\n", 0) == 0);
  CHECK(d.find("1/2 1/3 1/3\n") != std::string::npos);
}
