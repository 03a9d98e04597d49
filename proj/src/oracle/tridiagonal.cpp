#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "pho/errors.hpp"
#include "pho/oracle.hpp"

namespace pho::oracle {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double pivot_floor(const SymTridiagonal& t) {
  double emax = 0.0;
  for (double e : t.off) emax = std::max(emax, e * e);
  return std::numeric_limits<double>::min() * std::max(1.0, emax);
}

void gershgorin(const SymTridiagonal& t, double& lo, double& hi) {
  const std::size_t n = t.size();
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::fabs(t.off[i - 1]);
    if (i + 1 < n) radius += std::fabs(t.off[i]);
    lo = std::min(lo, t.diag[i] - radius);
    hi = std::max(hi, t.diag[i] + radius);
  }
}

std::size_t sturm_count(const SymTridiagonal& t, double sigma, double pivmin) {
  std::size_t count = 0;
  double q = t.diag[0] - sigma;
  if (std::fabs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < t.size(); ++i) {
    q = t.diag[i] - sigma - t.off[i - 1] * t.off[i - 1] / q;
    if (std::fabs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

// j-th smallest eigenvalue (0-based) by bisection on the Sturm count.
double bisect(const SymTridiagonal& t, std::size_t j, double lo, double hi, double pivmin) {
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 2.0 * kEps * std::max(std::fabs(lo), std::fabs(hi)) + pivmin) break;
    if (sturm_count(t, mid, pivmin) > j) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

// LU factorization with partial pivoting of T - sigma I (LAPACK dgttrf layout).
struct TridiagonalLu {
  std::vector<double> dl, d, du, du2;
  std::vector<bool> swapped;

  TridiagonalLu(const SymTridiagonal& t, double sigma, double floor) {
    const std::size_t n = t.size();
    d.resize(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = t.diag[i] - sigma;
    dl = t.off;
    du = t.off;
    du2.assign(n > 2 ? n - 2 : 0, 0.0);
    swapped.assign(n > 1 ? n - 1 : 0, false);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::fabs(d[i]) >= std::fabs(dl[i])) {
        if (d[i] == 0.0) d[i] = floor;
        const double fact = dl[i] / d[i];
        dl[i] = fact;
        d[i + 1] -= fact * du[i];
      } else {
        const double fact = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = fact;
        const double temp = du[i];
        du[i] = d[i + 1];
        d[i + 1] = temp - fact * d[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -fact * du[i + 1];
        }
        swapped[i] = true;
      }
    }
    if (n > 0 && d[n - 1] == 0.0) d[n - 1] = floor;
  }

  void solve(std::vector<double>& b) const {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!swapped[i]) {
        b[i + 1] -= dl[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl[i] * b[i];
      }
    }
    b[n - 1] /= d[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t i = n >= 3 ? n - 2 : 0; i-- > 0;) b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
  }
};

double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double residual_norm(const SymTridiagonal& t, const std::vector<double>& x, double sigma) {
  const std::size_t n = t.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double y = (t.diag[i] - sigma) * x[i];
    if (i > 0) y += t.off[i - 1] * x[i - 1];
    if (i + 1 < n) y += t.off[i] * x[i + 1];
    s += y * y;
  }
  return std::sqrt(s);
}

}  // namespace

std::size_t count_below(const SymTridiagonal& t, double sigma) {
  if (t.size() == 0) return 0;
  return sturm_count(t, sigma, pivot_floor(t));
}

int sign_changes(std::span<const double> u) {
  double peak = 0.0;
  for (double v : u) peak = std::max(peak, std::fabs(v));
  const double floor = 1e-10 * peak;
  int changes = 0;
  int last = 0;
  for (double v : u) {
    if (std::fabs(v) <= floor) continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (last != 0 && sign != last) ++changes;
    last = sign;
  }
  return changes;
}

EigenSolution lowest_eigenpairs(const SymTridiagonal& t, std::size_t k, double spacing) {
  const std::size_t n = t.size();
  if (n == 0 || t.off.size() + 1 != n) throw std::invalid_argument("malformed tridiagonal matrix");
  if (k == 0 || k > n) throw std::invalid_argument("eigenpair count must be in [1, size]");
  if (!(spacing > 0.0)) throw std::invalid_argument("grid spacing must be positive");

  const double pivmin = pivot_floor(t);
  double lo = 0.0, hi = 0.0;
  gershgorin(t, lo, hi);
  const double tnorm = std::max(std::fabs(lo), std::fabs(hi));
  lo -= 2.0 * kEps * tnorm + pivmin;
  hi += 2.0 * kEps * tnorm + pivmin;

  EigenSolution sol;
  sol.grid = Grid{spacing, n};
  sol.energies.resize(k);
  double lower = lo;
  for (std::size_t j = 0; j < k; ++j) {
    sol.energies[j] = bisect(t, j, lower, hi, pivmin);
    lower = std::max(lo, sol.energies[j] - 2.0 * kEps * tnorm);
  }

  const double cluster = 1e-3 * tnorm;
  const double floor = kEps * tnorm;
  const double tolerance = 1e3 * kEps * tnorm;
  sol.vectors.reserve(k);
  sol.tail.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double sigma = sol.energies[j];
    const TridiagonalLu lu(t, sigma, floor);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + 0.3 * j);
    bool converged = false;
    for (int iter = 0; iter < 8 && !converged; ++iter) {
      lu.solve(x);
      for (std::size_t p = j; p-- > 0;) {
        if (sigma - sol.energies[p] > cluster) break;
        const auto& v = sol.vectors[p];
        double dot = 0.0, vv = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          dot += v[i] * x[i];
          vv += v[i] * v[i];
        }
        for (std::size_t i = 0; i < n; ++i) x[i] -= dot / vv * v[i];
      }
      const double scale = norm2(x);
      if (!(scale > 0.0) || !std::isfinite(scale)) break;
      for (double& v : x) v /= scale;
      converged = iter >= 1 && residual_norm(t, x, sigma) <= tolerance;
    }
    if (!converged)
      throw SolverError("inverse iteration did not converge for eigenvalue " + std::to_string(j) + " (" +
                        std::to_string(sigma) + "), residual " + std::to_string(residual_norm(t, x, sigma)));

    double peak = 0.0;
    for (double v : x) peak = std::max(peak, std::fabs(v));
    for (double v : x) {
      if (std::fabs(v) > 1e-3 * peak) {
        if (v < 0.0)
          for (double& w : x) w = -w;
        break;
      }
    }
    const double norm = std::sqrt(spacing) * norm2(x);
    for (double& v : x) v /= norm;
    sol.tail.push_back(std::fabs(x.back()));
    sol.vectors.push_back(std::move(x));
  }
  return sol;
}

EigenSolution eigen_lowest(const SymTridiagonal& h0, int k, double spacing) {
  if (k < 1 || k > 20) throw std::invalid_argument("eigen_lowest: k must be in [1, 20], got " + std::to_string(k));
  return lowest_eigenpairs(h0, static_cast<std::size_t>(k), spacing);
}

}  // namespace pho::oracle
