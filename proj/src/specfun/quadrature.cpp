#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pho/errors.hpp"
#include "pho/specfun.hpp"

namespace pho::specfun {

QuadratureRule gauss_legendre(int order, double a, double b) {
  if (order < 1) throw DomainError("gauss_legendre: order must be positive");
  const auto n = static_cast<std::size_t>(order);
  QuadratureRule rule;
  rule.domain = Domain::Interval;
  rule.lower = a;
  rule.upper = b;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);

  const long double mid = 0.5L * (static_cast<long double>(a) + b);
  const long double half = 0.5L * (static_cast<long double>(b) - a);
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    long double z = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
    long double dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1.0L;
      long double p1 = 0.0L;
      for (std::size_t j = 1; j <= n; ++j) {
        const long double p2 = p1;
        p1 = p0;
        p0 = ((2.0L * j - 1.0L) * z * p1 - (j - 1.0L) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0L);
      const long double step = p0 / dp;
      z -= step;
      if (std::fabs(step) < 1e-19L) break;
    }
    const long double w = 2.0L * half / ((1.0L - z * z) * dp * dp);
    // z runs from +1 downwards; store nodes ascending.
    rule.nodes[i] = static_cast<double>(mid - half * z);
    rule.nodes[n - 1 - i] = static_cast<double>(mid + half * z);
    rule.weights[i] = static_cast<double>(w);
    rule.weights[n - 1 - i] = static_cast<double>(w);
  }
  return rule;
}

QuadratureRule gauss_laguerre(int order) {
  if (order < 1) throw DomainError("gauss_laguerre: order must be positive");
  const auto n = static_cast<std::size_t>(order);
  QuadratureRule rule;
  rule.domain = Domain::HalfLine;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);

  std::vector<long double> x(n, 0.0L);
  long double z = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) {
      z = 3.0L / (1.0L + 2.4L * n);
    } else if (i == 1) {
      z += 15.0L / (1.0L + 2.5L * n);
    } else {
      const long double ai = static_cast<long double>(i - 1);
      z += ((1.0L + 2.55L * ai) / (1.9L * ai)) * (z - x[i - 2]);
    }
    long double p1 = 0.0L;
    long double p2 = 0.0L;
    long double dp = 0.0L;
    for (int iter = 0; iter < 200; ++iter) {
      p1 = 1.0L;
      p2 = 0.0L;
      for (std::size_t j = 0; j < n; ++j) {
        const long double p3 = p2;
        p2 = p1;
        p1 = ((2.0L * j + 1.0L - z) * p2 - j * p3) / (j + 1.0L);
      }
      dp = n * (p1 - p2) / z;
      const long double step = p1 / dp;
      z -= step;
      if (std::fabs(step) <= 1e-18L * std::max(1.0L, z)) break;
    }
    // Recompute L_{n-1} and L_n' at the converged node for the weight.
    p1 = 1.0L;
    p2 = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
      const long double p3 = p2;
      p2 = p1;
      p1 = ((2.0L * j + 1.0L - z) * p2 - j * p3) / (j + 1.0L);
    }
    dp = n * (p1 - p2) / z;
    x[i] = z;
    rule.nodes[i] = static_cast<double>(z);
    rule.weights[i] = static_cast<double>(-1.0L / (dp * n * p2));
  }
  return rule;
}

namespace {

double composite(const std::function<double(double)>& f, const QuadratureRule& unit, double upper,
                 std::size_t panels) {
  const double width = upper / static_cast<double>(panels);
  double sum = 0.0;
  double carry = 0.0;  // Neumaier compensation across panels
  for (std::size_t p = 0; p < panels; ++p) {
    const double left = width * static_cast<double>(p);
    double panel = 0.0;
    for (std::size_t i = 0; i < unit.order(); ++i) {
      const double value = f(left + width * unit.nodes[i]);
      if (!std::isfinite(value)) throw EvaluationError("integrate_halfline: non-finite integrand sample");
      panel += unit.weights[i] * value;
    }
    panel *= width;
    const double t = sum + panel;
    carry += std::fabs(sum) >= std::fabs(panel) ? (sum - t) + panel : (panel - t) + sum;
    sum = t;
  }
  return sum + carry;
}

}  // namespace

double integrate_halfline(const std::function<double(double)>& f, double decay_scale, int rule_order) {
  if (!(decay_scale > 0.0)) throw DomainError("integrate_halfline: decay_scale must be positive");
  if (rule_order < 2) throw DomainError("integrate_halfline: rule_order must be at least 2");

  // Locate the support on a mesh of 1/8 Gaussian width, out to alpha r^2 = 1400.
  const double width = 1.0 / std::sqrt(decay_scale);
  const double step = width / 8.0;
  const double reach = std::sqrt(1400.0) * width;
  double peak = 0.0;
  double upper = 0.0;
  std::vector<double> samples;
  for (double r = step; r <= reach; r += step) {
    const double value = std::fabs(f(r));
    if (!std::isfinite(value)) throw EvaluationError("integrate_halfline: non-finite integrand sample");
    samples.push_back(value);
    peak = std::max(peak, value);
  }
  if (peak == 0.0) return 0.0;
  for (std::size_t i = samples.size(); i-- > 0;) {
    if (samples[i] >= 1e-17 * peak) {
      upper = step * static_cast<double>(i + 2);
      break;
    }
  }

  const QuadratureRule unit = gauss_legendre(rule_order, 0.0, 1.0);
  std::size_t panels = std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(upper / width)));
  double coarse = composite(f, unit, upper, panels);
  for (int doubling = 0; doubling < 8; ++doubling) {
    panels *= 2;
    const double fine = composite(f, unit, upper, panels);
    if (std::fabs(fine - coarse) <= 1e-13 * std::fabs(fine) + 1e-300) return fine;
    coarse = fine;
  }
  throw EvaluationError("integrate_halfline: panel doubling did not converge");
}

}  // namespace pho::specfun
