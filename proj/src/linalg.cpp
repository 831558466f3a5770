#include "hypercvx/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <optional>

#include "hypercvx/errors.hpp"

namespace hypercvx {

bool approx_symmetric(const Eigen::MatrixXd& a, double tol) {
  if (a.rows() != a.cols()) return false;
  double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

namespace {

// Cyclic Jacobi sweeps; always converges on symmetric input. Fallback for
// the rare inputs (highly degenerate spectra) where the QL iteration gives
// up. Deterministic sweep order.
std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a) {
  const int n = static_cast<int>(a.rows());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30 * std::max(1.0, a.squaredNorm())) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (apq == 0) continue;
        double theta = (a(q, q) - a(p, p)) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        Eigen::VectorXd rp = a.row(p), rq = a.row(q);
        a.row(p) = c * rp - s * rq;
        a.row(q) = s * rp + c * rq;
        Eigen::VectorXd cp = a.col(p), cq = a.col(q);
        a.col(p) = c * cp - s * cq;
        a.col(q) = s * cp + c * cq;
      }
  }
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = a(i, i);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<double>> lapack_sym_eigenvalues(
    const Eigen::MatrixXd& a) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  std::vector<double> work(a.data(), a.data() + a.size());
  std::vector<double> w(n);
  lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(),
                                   n, w.data());
  if (info != 0) return std::nullopt;
  return w;  // ascending
}

}  // namespace

std::vector<double> sym_eigenvalues(const Eigen::MatrixXd& a) {
  // divide-and-conquer for large problems, QL for small ones; the Jacobi
  // sweep is the always-converging last resort
  if (a.rows() >= 400) {
    if (auto v = lapack_sym_eigenvalues(a)) return *v;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() == Eigen::Success) {
    std::vector<double> out(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + a.rows());
    return out;
  }
  if (auto v = lapack_sym_eigenvalues(a)) return *v;
  return jacobi_eigenvalues(a);
}

double inf_norm(const Eigen::MatrixXd& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

int numerical_rank(const Eigen::MatrixXd& sym, double tol) {
  auto ev = sym_eigenvalues(sym);
  double top = 0;
  for (double v : ev) top = std::max(top, std::abs(v));
  int rank = 0;
  for (double v : ev)
    if (std::abs(v) > tol * std::max(1.0, top)) ++rank;
  return rank;
}

Quadrature gauss_legendre01(int order) {
  if (order < 1) throw parameter_error("quadrature order must be >= 1");
  Quadrature q;
  q.nodes.resize(order);
  q.weights.resize(order);
  const double pi = 3.14159265358979323846;
  int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence for P_order(x) and its derivative.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes[i] = 0.5 * (1.0 - x);  // mapped to (0,1), ascending later
    q.weights[i] = 0.5 * w;
    q.nodes[order - 1 - i] = 0.5 * (1.0 + x);
    q.weights[order - 1 - i] = 0.5 * w;
  }
  return q;
}

std::vector<double> dirichlet_uniform(int m, SeededRng& rng) {
  std::vector<double> w(m);
  double sum = 0;
  for (int i = 0; i < m; ++i) {
    double u;
    do {
      u = rng.uniform01();
    } while (u >= 1.0);
    w[i] = -std::log1p(-u);  // unit-rate exponential
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  return w;
}

void project_to_simplex(std::vector<double>& w) {
  const int n = static_cast<int>(w.size());
  std::vector<double> u = w;
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0, theta = 0;
  int rho = 0;
  for (int i = 0; i < n; ++i) {
    css += u[i];
    double t = (css - 1.0) / (i + 1);
    if (u[i] - t > 0) {
      rho = i + 1;
      theta = t;
    }
  }
  (void)rho;
  for (double& v : w) v = std::max(0.0, v - theta);
  double s = 0;
  for (double v : w) s += v;
  if (s > 0)
    for (double& v : w) v /= s;
}

double blocked_sum(long count, long block, Exec exec,
                   const std::function<double(long, long)>& range_sum) {
  if (count <= 0) return 0.0;
  if (block <= 0) block = 1;
  const long nblocks = (count + block - 1) / block;
  std::vector<double> partial(nblocks, 0.0);
  if (exec == Exec::OpenMP) {
#pragma omp parallel for schedule(dynamic)
    for (long b = 0; b < nblocks; ++b)
      partial[b] = range_sum(b * block, std::min(count, (b + 1) * block));
  } else {
    for (long b = 0; b < nblocks; ++b)
      partial[b] = range_sum(b * block, std::min(count, (b + 1) * block));
  }
  double total = 0;
  for (double v : partial) total += v;
  return total;
}

}  // namespace hypercvx
