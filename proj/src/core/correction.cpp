#include <cmath>
#include <initializer_list>
#include <string>

#include "pho/core.hpp"
#include "pho/errors.hpp"

namespace pho {

namespace {

double neumaier_sum(std::initializer_list<double> terms) {
  double sum = 0.0;
  double carry = 0.0;
  for (const double x : terms) {
    const double t = sum + x;
    carry += std::fabs(sum) >= std::fabs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + carry;
}

void require_lambda_above_one(double lambda) {
  if (!(lambda > 1.0))
    throw SingularMomentError("correction requires lambda > 1 (gamma > sqrt(3)/2); lambda = " +
                              std::to_string(lambda));
}

}  // namespace

double correction_from_expectations(double e0, double v_mean, double v2_mean, double four_mu_beta) {
  return four_mu_beta * (e0 * e0 - 2.0 * e0 * v_mean + v2_mean);
}

double abc_unperturbed_energy(const AbcPotential& pot, const AbcContext& ctx, QuantumNumbers qn) {
  if (!(pot.a > 0.0) || !(pot.b >= 0.0)) throw DomainError("abc potential requires a > 0 and b >= 0");
  if (qn.n < 0 || qn.l < 0) throw DomainError("quantum numbers must be non-negative");
  const double lambda = std::sqrt((qn.l + 0.5) * (qn.l + 0.5) + 2.0 * ctx.mu * pot.b / (ctx.hbar * ctx.hbar));
  return pot.c + ctx.hbar * std::sqrt(2.0 * pot.a / ctx.mu) * (2.0 * qn.n + 1.0 + lambda);
}

double correction_abc(const AbcPotential& pot, const AbcContext& ctx, QuantumNumbers qn) {
  const double e0 = abc_unperturbed_energy(pot, ctx, qn);
  const double hbar2 = ctx.hbar * ctx.hbar;
  const double lambda = std::sqrt((qn.l + 0.5) * (qn.l + 0.5) + 2.0 * ctx.mu * pot.b / hbar2);
  const double alpha = std::sqrt(2.0 * ctx.mu * pot.a) / ctx.hbar;
  const double a = pot.a, b = pot.b, c = pot.c;

  const Moments mo = moments(lambda, alpha, qn.n);
  double sum = 0.0;
  if (b == 0.0) {
    sum = neumaier_sum({e0 * e0, c * c, -2.0 * c * e0, (2.0 * a * c - 2.0 * a * e0) * mo.r2, a * a * mo.r4});
  } else {
    require_lambda_above_one(lambda);
    sum = neumaier_sum({e0 * e0, 2.0 * a * b, c * c, -2.0 * c * e0, (2.0 * a * c - 2.0 * a * e0) * mo.r2,
                        a * a * mo.r4, (2.0 * b * c - 2.0 * b * e0) * mo.inv_r2, b * b * mo.inv_r4});
  }
  return 4.0 * ctx.mu * ctx.beta * sum;
}

double harmonic_limit_correction(int n, int l, double a, double beta, double mu, double hbar) {
  if (!(a > 0.0) || !(beta >= 0.0)) throw DomainError("harmonic limit requires a > 0 and beta >= 0");
  if (n < 0 || l < 0) throw DomainError("quantum numbers must be non-negative");
  const double bracket = (l + 1.5) * (l + 2.5) + 6.0 * n * (l + n + 1.5);
  return 4.0 * beta * mu * a * (hbar * hbar / (2.0 * mu)) * bracket;
}

double correction_bracket(const PhoModel& model, QuantumNumbers qn) {
  if (qn.n < 0 || qn.l < 0) throw DomainError("quantum numbers must be non-negative");
  const double g = model.gamma();
  const double lambda = model.lambda(qn.l);
  require_lambda_above_one(lambda);

  // The closed form with E0 substituted, regrouped so that every term is
  // positive (m = 2n+1, s = (l+1/2)^2, t = s - 1, lambda^2 - 1 = gamma^2 + t):
  //   (3m^2+1)/(2g^2) + (g^2 + s t)/(g^2 (g^2+t)) + m [g^2 (2s+1) + 3 s t] / (g^2 lambda (g^2+t))
  const double g2 = g * g;
  const double m = 2.0 * qn.n + 1.0;
  const double s = (qn.l + 0.5) * (qn.l + 0.5);
  const double t = s - 1.0;
  const double lm1 = g2 + t;
  return (3.0 * m * m + 1.0) / (2.0 * g2) + (g2 + s * t) / (g2 * lm1) +
         m * (g2 * (2.0 * s + 1.0) + 3.0 * s * t) / (g2 * lambda * lm1);
}

double correction_pho(const PhoModel& model, QuantumNumbers qn) {
  return model.epsilon() * correction_bracket(model, qn);
}

}  // namespace pho
