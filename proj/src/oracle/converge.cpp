#include <cmath>
#include <stdexcept>

#include "pho/oracle.hpp"

namespace pho::oracle {

namespace {

// Successive differences must keep their sign and shrink. Changes at the
// rounding level of the value carry no information and are accepted.
bool monotone_sequence(const std::vector<std::vector<double>>& levels, std::size_t i) {
  const double scale = std::fabs(levels.back()[i]);
  const double noise = 1e-12 * scale + 1e-300;
  double prev = 0.0;
  for (std::size_t j = 1; j < levels.size(); ++j) {
    const double d = levels[j][i] - levels[j - 1][i];
    if (j > 1 && std::fabs(d) > noise && std::fabs(prev) > noise) {
      if ((d > 0.0) != (prev > 0.0) || std::fabs(d) >= std::fabs(prev)) return false;
    }
    prev = d;
  }
  return true;
}

}  // namespace

Convergence richardson(std::vector<std::vector<double>> levels) {
  if (levels.size() < 2) throw std::invalid_argument("richardson: at least two refinement levels are required");
  const std::size_t m = levels.front().size();
  for (const auto& l : levels)
    if (l.size() != m) throw std::invalid_argument("richardson: levels differ in length");

  Convergence c;
  c.values.resize(m);
  c.errors.resize(m);
  const auto& fine = levels[levels.size() - 1];
  const auto& coarse = levels[levels.size() - 2];
  for (std::size_t i = 0; i < m; ++i) {
    const double delta = fine[i] - coarse[i];
    c.errors[i] = std::fabs(delta) / 3.0;
    c.values[i] = fine[i] + delta / 3.0;
    if (levels.size() >= 3 && !monotone_sequence(levels, i)) c.monotone = false;
  }
  if (!c.monotone) c.values = fine;
  c.levels = std::move(levels);
  return c;
}

Convergence converge(const RadialProblem& problem, int k, int levels, const DeformedOptions& options) {
  if (levels < 2) throw std::invalid_argument("converge: at least two refinement levels are required");
  std::vector<std::vector<double>> values;
  for (int j = 0; j < levels; ++j) {
    const EigenSolution sol = solve(refined(problem, j), k, options);
    check_accepted(sol);
    values.push_back(sol.energies);
  }
  return richardson(std::move(values));
}

Convergence converge_expectations(const RadialProblem& problem, int state, std::span<const RealFunction> fs,
                                  int levels, const DeformedOptions& options) {
  if (levels < 2) throw std::invalid_argument("converge_expectations: at least two refinement levels are required");
  if (state < 0) throw std::invalid_argument("converge_expectations: state must be non-negative");
  std::vector<std::vector<double>> values;
  for (int j = 0; j < levels; ++j) {
    const EigenSolution sol = solve(refined(problem, j), state + 1, options);
    check_accepted(sol);
    std::vector<double> row;
    for (const auto& f : fs) row.push_back(expectation(sol, static_cast<std::size_t>(state), f).value);
    values.push_back(std::move(row));
  }
  return richardson(std::move(values));
}

}  // namespace pho::oracle
