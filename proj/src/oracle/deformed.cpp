#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>

#include "pho/errors.hpp"
#include "pho/oracle.hpp"

namespace pho::oracle {

namespace {

std::vector<double> apply(const SymTridiagonal& t, const std::vector<double>& x) {
  const std::size_t n = t.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = t.diag[i] * x[i];
    if (i > 0) v += t.off[i - 1] * x[i - 1];
    if (i + 1 < n) v += t.off[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

double gershgorin_norm(const SymTridiagonal& t) {
  double norm = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double row = std::fabs(t.diag[i]);
    if (i > 0) row += std::fabs(t.off[i - 1]);
    if (i + 1 < t.size()) row += std::fabs(t.off[i]);
    norm = std::max(norm, row);
  }
  return norm;
}

double squared_norm(const std::vector<double>& x, double h) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s * h;
}

// <K^2> = |K u|^2 for the lowest k eigenvectors of H0 on `p`.
std::vector<double> quartic_expectations(const RadialProblem& p, int k) {
  const EigenSolution sol = lowest_eigenpairs(build_h0(p), static_cast<std::size_t>(k), p.grid.h);
  const SymTridiagonal kin = kinetic_operator(p);
  std::vector<double> out(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) out[j] = squared_norm(apply(kin, sol.vectors[j]), p.grid.h);
  return out;
}

// H0 + eps K K as a sparse pentadiagonal matrix.
Eigen::SparseMatrix<double> full_operator(const SymTridiagonal& h0, const SymTridiagonal& kin, double eps) {
  const auto n = static_cast<Eigen::Index>(h0.size());
  auto d = [&](Eigen::Index i) { return kin.diag[static_cast<std::size_t>(i)]; };
  auto o = [&](Eigen::Index i) { return kin.off[static_cast<std::size_t>(i)]; };
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(5 * n));
  for (Eigen::Index i = 0; i < n; ++i) {
    double diag = d(i) * d(i);
    if (i > 0) diag += o(i - 1) * o(i - 1);
    if (i + 1 < n) diag += o(i) * o(i);
    entries.emplace_back(i, i, h0.diag[static_cast<std::size_t>(i)] + eps * diag);
    if (i + 1 < n) {
      const double v = h0.off[static_cast<std::size_t>(i)] + eps * o(i) * (d(i) + d(i + 1));
      entries.emplace_back(i, i + 1, v);
      entries.emplace_back(i + 1, i, v);
    }
    if (i + 2 < n) {
      const double v = eps * o(i) * o(i + 1);
      entries.emplace_back(i, i + 2, v);
      entries.emplace_back(i + 2, i, v);
    }
  }
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  m.makeCompressed();
  return m;
}

// Inverse iteration at the Ritz value. A truncated Ritz expansion leaves a
// small oscillating residue from the highest retained modes in the classically
// forbidden tail; two solves with the full operator remove it.
void polish(const Eigen::SparseMatrix<double>& op, double sigma, Eigen::VectorXd& x) {
  Eigen::SparseMatrix<double> shifted = op;
  for (Eigen::Index i = 0; i < shifted.rows(); ++i) shifted.coeffRef(i, i) -= sigma;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(shifted);
  if (lu.info() != Eigen::Success) throw SolverError("deformed inverse iteration: factorization failed");
  for (int it = 0; it < 2; ++it) {
    Eigen::VectorXd y = lu.solve(x);
    if (lu.info() != Eigen::Success || !y.allFinite()) throw SolverError("deformed inverse iteration: solve failed");
    x = y / y.norm();
  }
}

void check_resolution(const RadialProblem& p, int k, const std::vector<double>& fine, double tolerance) {
  RadialProblem coarse = p;
  coarse.grid.points = (p.grid.points + 1) / 2 - 1;
  coarse.grid.h = p.grid.r_max() / static_cast<double>(coarse.grid.points + 1);
  if (coarse.grid.points < 50) return;
  const std::vector<double> rough = quartic_expectations(coarse, k);
  const double ratio = coarse.grid.h / p.grid.h;
  for (int j = 0; j < k; ++j) {
    const double error = std::fabs(fine[j] - rough[j]) / (ratio * ratio - 1.0);
    if (error > tolerance * std::fabs(fine[j]))
      throw DiscretizationError("grid cannot resolve <p^4> for state " + std::to_string(j) +
                                ": estimated relative error " + std::to_string(error / std::fabs(fine[j])) +
                                "; refine the spacing");
  }
}

}  // namespace

EigenSolution deformed_eigen(const RadialProblem& problem, int k, const DeformedOptions& options) {
  if (k < 1 || k > 20) throw std::invalid_argument("deformed_eigen: k must be in [1, 20]");
  validate(problem);
  const SymTridiagonal h0 = build_h0(problem);
  if (problem.epsilon == 0.0) return lowest_eigenpairs(h0, static_cast<std::size_t>(k), problem.grid.h);

  const SymTridiagonal kin = kinetic_operator(problem);
  const std::size_t n = problem.grid.points;
  const double h = problem.grid.h;
  const double eps = problem.epsilon;
  const auto kk = static_cast<std::size_t>(k);
  // The H0 eigenvalues feeding the Ritz matrix are only good to a few ulps of
  // the operator norm; changes below that floor are noise.
  const double noise = 8.0 * DBL_EPSILON * gershgorin_norm(h0);

  // The top of the grid spectrum only adds rounding; stay in the lower half.
  const std::size_t cap = std::min(options.max_basis, n / 2);
  std::size_t basis = std::min(cap, std::max(options.min_basis, 4 * kk));
  std::vector<double> previous;
  bool checked = false;
  for (;;) {
    const EigenSolution h0_sol = lowest_eigenpairs(h0, basis, h);
    Eigen::MatrixXd w(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(basis));
    for (std::size_t j = 0; j < basis; ++j) {
      const std::vector<double> kv = apply(kin, h0_sol.vectors[j]);
      for (std::size_t i = 0; i < n; ++i) w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = kv[i];
    }

    if (!checked) {
      std::vector<double> first(kk);
      for (std::size_t j = 0; j < kk; ++j) {
        first[j] = w.col(static_cast<Eigen::Index>(j)).squaredNorm() * h;
        double gap = h0_sol.energies[j + 1] - h0_sol.energies[j];
        if (j > 0) gap = std::min(gap, h0_sol.energies[j] - h0_sol.energies[j - 1]);
        if (eps * first[j] > options.perturbative_fraction * gap)
          throw DomainError("deformation too strong for the perturbative regime: epsilon <p^4 term> = " +
                            std::to_string(eps * first[j]) + " vs level spacing " + std::to_string(gap));
      }
      check_resolution(problem, k, first, options.p4_tolerance);
      checked = true;
    }

    Eigen::MatrixXd ritz = (eps * h) * (w.transpose() * w);
    for (std::size_t j = 0; j < basis; ++j)
      ritz(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) += h0_sol.energies[j];
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ritz);
    if (es.info() != Eigen::Success) throw SolverError("Ritz eigensolve failed");

    std::vector<double> values(kk);
    for (std::size_t j = 0; j < kk; ++j) values[j] = es.eigenvalues()(static_cast<Eigen::Index>(j));

    bool settled = false;
    if (!previous.empty()) {
      settled = true;
      for (std::size_t j = 0; j < kk; ++j)
        if (std::fabs(values[j] - previous[j]) > options.basis_tolerance * std::fabs(values[j]) + noise)
          settled = false;
    }
    if (settled && !previous.empty()) {
      EigenSolution sol;
      sol.grid = problem.grid;
      sol.energies = values;
      const Eigen::SparseMatrix<double> op = full_operator(h0, kin, eps);
      for (std::size_t j = 0; j < kk; ++j) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        for (std::size_t b = 0; b < basis; ++b) {
          const double c = es.eigenvectors()(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(j));
          const auto& v = h0_sol.vectors[b];
          for (std::size_t i = 0; i < n; ++i) x(static_cast<Eigen::Index>(i)) += c * v[i];
        }
        polish(op, values[j], x);
        std::vector<double> u(x.data(), x.data() + x.size());
        double peak = 0.0;
        for (double v : u) peak = std::max(peak, std::fabs(v));
        for (double v : u) {
          if (std::fabs(v) > 1e-3 * peak) {
            if (v < 0.0)
              for (double& x : u) x = -x;
            break;
          }
        }
        const double norm = std::sqrt(squared_norm(u, h));
        for (double& x : u) x /= norm;
        sol.tail.push_back(std::fabs(u.back()));
        sol.vectors.push_back(std::move(u));
      }
      return sol;
    }
    if (basis >= cap)
      throw SolverError("Ritz basis did not converge at " + std::to_string(basis) + " vectors");
    previous = values;
    basis = std::min(cap, 2 * basis);
  }
}

EigenSolution solve(const RadialProblem& problem, int k, const DeformedOptions& options) {
  if (problem.epsilon == 0.0) {
    validate(problem);
    return eigen_lowest(build_h0(problem), k, problem.grid.h);
  }
  return deformed_eigen(problem, k, options);
}

}  // namespace pho::oracle
