#pragma once

// Special functions and quadrature used by the closed forms and by the
// analytic-wavefunction quadrature check. Everything here is pure.

#include <functional>
#include <vector>

namespace pho::specfun {

/// Terminating confluent hypergeometric function 1F1(-n; b; x), a polynomial
/// of degree n in x. Evaluated by the three-term contiguous recurrence in n.
/// Throws DomainError for n < 0 or b <= 0.
double kummer_poly(int n, double b, double x);

/// Natural log of Gamma(x) for x > 0 (Lanczos, g = 607/128, evaluated in
/// long double). Throws DomainError for x <= 0.
double ln_gamma(double x);

/// Gamma(lambda + n + 1) / (Gamma(lambda + 1) * n!) as the finite product
/// prod_{k=1..n} (lambda + k) / k.
double gamma_ratio(double lambda, int n);

enum class Domain { HalfLine, Interval };

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  Domain domain = Domain::Interval;
  double lower = 0.0;
  double upper = 0.0;  // unused for HalfLine

  std::size_t order() const { return nodes.size(); }

  template <class F>
  double apply(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// Gauss-Legendre rule with `order` nodes on [a, b].
QuadratureRule gauss_legendre(int order, double a, double b);

/// Gauss-Laguerre rule for int_0^inf e^{-x} f(x) dx; exact for polynomials of
/// degree <= 2*order - 1.
QuadratureRule gauss_laguerre(int order);

/// int_0^inf f(r) dr for integrands decaying at least like exp(-decay_scale r^2).
///
/// The support is located by sampling on the Gaussian width 1/sqrt(decay_scale),
/// truncated once |f| falls below 1e-17 of its sampled peak, and integrated
/// with a composite Gauss-Legendre rule of `rule_order` nodes per panel. The
/// panel count is doubled until two successive estimates agree to 1e-13.
/// Throws EvaluationError on a non-finite sample or if doubling does not settle.
double integrate_halfline(const std::function<double(double)>& f, double decay_scale,
                          int rule_order = 64);

}  // namespace pho::specfun
