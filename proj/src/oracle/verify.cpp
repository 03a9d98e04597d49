#include "pho/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pho/errors.hpp"
#include "pho/oracle.hpp"

namespace pho {

namespace {

double relative_deviation(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

}  // namespace

VerifyReport verify_correction(double gamma, double epsilon, QuantumNumbers qn, const VerifyOptions& options) {
  const PhoModel model(gamma, epsilon);
  VerifyReport rep;
  rep.gamma = gamma;
  rep.epsilon = epsilon;
  rep.qn = qn;
  rep.levels = options.levels;
  rep.analytic_e0 = unperturbed_energy(model, qn);
  rep.closed_form = correction_pho(model, qn);  // rejects lambda <= 1 before any solve

  oracle::GridOptions grid;
  grid.resolution = options.resolution;
  grid.max_spacing = options.max_spacing;
  const oracle::RadialProblem base = oracle::pho_problem(gamma, qn.l, 0.0, qn.n, grid);
  oracle::validate(base, qn.n);
  rep.grid_points = base.grid.points;
  rep.grid_spacing = base.grid.h;

  const int k = qn.n + 1;
  const auto state = static_cast<std::size_t>(qn.n);
  // Per level: e0, <V>, <V^2>, E(eps) - E(0), E(eps/2) - E(0).
  std::vector<std::vector<double>> levels;
  for (int j = 0; j < options.levels; ++j) {
    oracle::RadialProblem p = oracle::refined(base, j);
    const oracle::EigenSolution s0 = oracle::solve(p, k);
    oracle::check_accepted(s0);
    const double e0 = s0.energies[state];
    const double v = oracle::expectation(s0, state, oracle::pho_potential).value;
    const double v2 = oracle::expectation(s0, state, [](double x) {
                        const double w = oracle::pho_potential(x);
                        return w * w;
                      }).value;
    double d = 0.0;
    double d_half = 0.0;
    if (epsilon > 0.0) {
      p.epsilon = epsilon;
      const oracle::EigenSolution s1 = oracle::deformed_eigen(p, k);
      oracle::check_accepted(s1);
      p.epsilon = 0.5 * epsilon;
      const oracle::EigenSolution s2 = oracle::deformed_eigen(p, k);
      oracle::check_accepted(s2);
      d = s1.energies[state] - e0;
      d_half = s2.energies[state] - e0;
    }
    levels.push_back({e0, v, v2, d, d_half});
  }
  const oracle::Convergence c = oracle::richardson(std::move(levels));
  if (!c.monotone) throw SolverError("oracle refinement is not monotone; refine the grid controls");

  rep.oracle_e0 = c.values[0];
  rep.oracle_e0_error = c.errors[0];
  rep.oracle_moments = correction_from_expectations(c.values[0], c.values[1], c.values[2], epsilon);
  rep.exact_difference = c.values[3];
  rep.exact_difference_half = c.values[4];

  rep.residual = rep.exact_difference - rep.closed_form;
  rep.residual_half = rep.exact_difference_half - correction_pho(PhoModel(gamma, 0.5 * epsilon), qn);
  rep.dev_closed_moments = relative_deviation(rep.closed_form, rep.oracle_moments);
  rep.dev_closed_exact = relative_deviation(rep.closed_form, rep.exact_difference);
  rep.dev_moments_exact = relative_deviation(rep.oracle_moments, rep.exact_difference);

  rep.consistency_ok = rep.dev_closed_moments <= options.consistency_tolerance;
  if (epsilon == 0.0) {
    rep.ratio = std::numeric_limits<double>::quiet_NaN();
    rep.scaling_ok = rep.exact_difference == 0.0 && rep.exact_difference_half == 0.0;
  } else {
    rep.ratio = rep.residual / rep.residual_half;
    rep.scaling_ok = rep.ratio >= options.ratio_low && rep.ratio <= options.ratio_high;
  }
  rep.passed = rep.consistency_ok && rep.scaling_ok;
  return rep;
}

}  // namespace pho
