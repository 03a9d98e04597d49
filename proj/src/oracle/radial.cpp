#include <algorithm>
#include <cmath>
#include <string>

#include "pho/errors.hpp"
#include "pho/oracle.hpp"

namespace pho::oracle {

namespace {

double top_energy(double gamma, int l, int n_max) {
  const double s = (l + 0.5) * (l + 0.5);
  const double lambda = std::hypot(gamma, l + 0.5);
  return 2.0 * (2.0 * n_max + 1.0 + s / (lambda + gamma)) / gamma;
}

}  // namespace

double pho_potential(double x) {
  const double d = x - 1.0 / x;
  return d * d;
}

double outer_turning_point(double gamma, int l, double e) {
  // l(l+1)/(g^2 x^2) + x^2 - 2 + 1/x^2 = e  <=>  x^4 - (e+2) x^2 + A = 0
  const double a = 1.0 + l * (l + 1.0) / (gamma * gamma);
  const double p = e + 2.0;
  const double disc = p * p - 4.0 * a;
  if (disc <= 0.0) return std::pow(a, 0.25);
  return std::sqrt(0.5 * (p + std::sqrt(disc)));
}

RadialProblem pho_problem(double gamma, int l, double epsilon, int n_max, const GridOptions& options) {
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  if (l < 0 || n_max < 0) throw DomainError("l and n_max must be non-negative");
  const double lambda = std::hypot(gamma, l + 0.5);
  const double width = 1.0 / std::sqrt(gamma);
  const double e_top = top_energy(gamma, l, n_max);

  const double box = std::sqrt((lambda + 2.0 * n_max + 1.0) / gamma) + options.box_widths * width;
  const double r_max = std::max(box, outer_turning_point(gamma, l, e_top) + 5.0 * width) * (1.0 + 1e-12);

  const double k_max = gamma * std::sqrt(std::max(e_top, 4.0 / gamma));
  const double h_target = std::min(options.max_spacing, options.resolution / k_max);
  std::size_t points = static_cast<std::size_t>(std::ceil(r_max / h_target)) - 1;
  points = std::max(points, options.min_points);

  RadialProblem problem;
  problem.l = l;
  problem.gamma = gamma;
  problem.epsilon = epsilon;
  problem.grid = Grid{r_max / static_cast<double>(points + 1), points};
  problem.potential = pho_potential;
  return problem;
}

void validate(const RadialProblem& p, int n_max) {
  if (!(p.gamma > 0.0)) throw DomainError("radial problem: gamma must be positive");
  if (!(p.epsilon >= 0.0)) throw DomainError("radial problem: epsilon must be non-negative");
  if (p.l < 0) throw DomainError("radial problem: l must be non-negative");
  if (!(p.grid.h > 0.0)) throw DomainError("radial problem: grid spacing must be positive");
  if (p.grid.points < 100) throw DomainError("radial problem: at least 100 grid points required");
  if (!p.potential) throw DomainError("radial problem: potential is not set");
  if (n_max >= 0) {
    const double need = outer_turning_point(p.gamma, p.l, top_energy(p.gamma, p.l, n_max)) + 5.0 / std::sqrt(p.gamma);
    if (p.grid.r_max() < need)
      throw DomainError("radial problem: box r_max = " + std::to_string(p.grid.r_max()) +
                        " is inside turning point + 5 widths (" + std::to_string(need) + ")");
  }
}

RadialProblem refined(const RadialProblem& problem, int halvings) {
  if (halvings < 0) throw std::invalid_argument("refined: halvings must be non-negative");
  RadialProblem p = problem;
  const std::size_t factor = std::size_t{1} << halvings;
  p.grid.points = (problem.grid.points + 1) * factor - 1;
  p.grid.h = problem.grid.h / static_cast<double>(factor);
  return p;
}

SymTridiagonal kinetic_operator(const RadialProblem& p) {
  const std::size_t n = p.grid.points;
  const double h = p.grid.h;
  const double scale = 1.0 / (p.gamma * p.gamma);
  const double centrifugal = p.l * (p.l + 1.0);
  SymTridiagonal k;
  k.diag.resize(n);
  k.off.assign(n > 0 ? n - 1 : 0, -scale / (h * h));
  for (std::size_t i = 0; i < n; ++i) {
    const double r = p.grid.r(i);
    k.diag[i] = scale * (2.0 / (h * h) + centrifugal / (r * r));
  }
  return k;
}

SymTridiagonal build_h0(const RadialProblem& p) {
  SymTridiagonal h = kinetic_operator(p);
  for (std::size_t i = 0; i < h.size(); ++i) h.diag[i] += p.potential(p.grid.r(i));
  return h;
}

void check_accepted(const EigenSolution& sol) {
  for (std::size_t k = 0; k < sol.size(); ++k) {
    if (!(sol.tail[k] < kTailLimit))
      throw SolverError("state " + std::to_string(k) + " fails the box guard: |u(r_max - h)| = " +
                        std::to_string(sol.tail[k]));
    const int nodes = sign_changes(sol.vectors[k]);
    if (nodes != static_cast<int>(k))
      throw SolverError("state " + std::to_string(k) + " has " + std::to_string(nodes) + " nodes");
  }
}

Expectation expectation(const EigenSolution& sol, std::size_t k, const RealFunction& f) {
  if (k >= sol.size()) throw std::out_of_range("expectation: state index out of range");
  const auto& u = sol.vectors[k];
  const double h = sol.grid.h;
  double sum = 0.0;
  double carry = 0.0;
  double head = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double term = f(sol.grid.r(i)) * u[i] * u[i] * h;
    if (!std::isfinite(term)) throw EvaluationError("expectation: non-finite integrand");
    if (i < 3) head += term;
    const double t = sum + term;
    carry += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  Expectation e;
  e.value = sum + carry;
  e.resolved = std::fabs(head) <= 1e-10 * std::fabs(e.value);
  return e;
}

}  // namespace pho::oracle
