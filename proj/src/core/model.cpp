#include <cmath>
#include <limits>
#include <string>

#include "pho/core.hpp"
#include "pho/errors.hpp"
#include "pho/specfun.hpp"

namespace pho {

namespace {

void check_quantum_numbers(QuantumNumbers qn) {
  if (qn.n < 0 || qn.l < 0) throw DomainError("quantum numbers must be non-negative");
}

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

}  // namespace

PhoModel::PhoModel(double gamma, double epsilon, double De, double re)
    : gamma_(gamma), epsilon_(epsilon), De_(De), re_(re) {
  if (!positive_finite(gamma)) throw DomainError("gamma must be positive and finite");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw DomainError("epsilon must be non-negative and finite");
  if (!positive_finite(De) || !positive_finite(re)) throw DomainError("De and re must be positive and finite");
}

double PhoModel::lambda(int l) const {
  if (l < 0) throw DomainError("l must be non-negative");
  return std::hypot(gamma_, l + 0.5);
}

double PhoModel::lambda_excess(int l) const {
  const double s = (l + 0.5) * (l + 0.5);
  return s / (lambda(l) + gamma_);
}

PhoModel model_of(const MolecularParams& p, double hbar) {
  if (!positive_finite(p.mu) || !positive_finite(p.De) || !positive_finite(p.re))
    throw DomainError("mu, De and re must be positive");
  if (!(p.beta >= 0.0) || !std::isfinite(p.beta)) throw DomainError("beta must be non-negative");
  if (!positive_finite(hbar)) throw DomainError("hbar must be positive");
  const double gamma = std::sqrt(2.0 * p.mu * p.De) * p.re / hbar;
  const double epsilon = 4.0 * p.mu * p.beta * p.De;
  return PhoModel(gamma, epsilon, p.De, p.re);
}

MolecularParams restore_params(const PhoModel& model, double hbar) {
  MolecularParams p;
  p.De = model.De();
  p.re = model.re();
  const double g_hbar_re = model.gamma() * hbar / model.re();
  p.mu = g_hbar_re * g_hbar_re / (2.0 * model.De());
  p.beta = model.epsilon() / (4.0 * p.mu * model.De());
  return p;
}

double angular_frequency(const MolecularParams& p) { return 2.0 / p.re * std::sqrt(2.0 * p.De / p.mu); }

double minimal_length(double beta, double beta_prime, double hbar) {
  const double sum = 3.0 * beta + beta_prime;
  if (!(sum >= 0.0)) throw DomainError("minimal_length: 3 beta + beta' must be non-negative");
  return hbar * std::sqrt(sum);
}

double unperturbed_energy(const PhoModel& model, QuantumNumbers qn) {
  check_quantum_numbers(qn);
  // -2 + 2(2n+1+lambda)/gamma with lambda - gamma taken without cancellation.
  const double m = 2.0 * qn.n + 1.0;
  return 2.0 * (m + model.lambda_excess(qn.l)) / model.gamma();
}

double radial_wavefunction(const PhoModel& model, QuantumNumbers qn, double r) {
  check_quantum_numbers(qn);
  if (!(r > 0.0)) throw DomainError("radial_wavefunction: r must be positive");
  const double lambda = model.lambda(qn.l);
  const double alpha = model.alpha();
  // N^2 = 2 alpha^(1+lambda) Gamma(lambda+n+1) / (n! Gamma(lambda+1)^2)
  const double ln_norm2 = std::log(2.0 * specfun::gamma_ratio(lambda, qn.n)) + (1.0 + lambda) * std::log(alpha) -
                          specfun::ln_gamma(lambda + 1.0);
  const double t = alpha * r * r;
  const double envelope = std::exp(0.5 * ln_norm2 + (lambda - 0.5) * std::log(r) - 0.5 * t);
  return envelope * specfun::kummer_poly(qn.n, 1.0 + lambda, t);
}

Moments moments(double lambda, double alpha, int n) {
  Moments mo;
  const double shell = lambda + 2.0 * n + 1.0;
  mo.r2 = shell / alpha;
  mo.r4 = ((lambda + 1.0) * (lambda + 2.0) + 6.0 * n * (lambda + n + 1.0)) / (alpha * alpha);
  mo.inv_r2 = alpha / lambda;
  mo.inv_r4 = lambda > 1.0 ? alpha * alpha * shell / (lambda * (lambda * lambda - 1.0))
                           : std::numeric_limits<double>::quiet_NaN();
  return mo;
}

double matrix_element(const PhoModel& model, QuantumNumbers qn, int q) {
  check_quantum_numbers(qn);
  const double lambda = model.lambda(qn.l);
  const Moments mo = moments(lambda, model.alpha(), qn.n);
  switch (q) {
    case 2: return mo.r2;
    case 4: return mo.r4;
    case -2: return mo.inv_r2;
    case -4:
      if (!(lambda > 1.0))
        throw SingularMomentError("<1/r^4> diverges for lambda <= 1 (gamma <= sqrt(3)/2), lambda = " +
                                  std::to_string(lambda));
      return mo.inv_r4;
    default:
      throw DomainError("matrix_element: q must be one of -4, -2, 2, 4; got " + std::to_string(q));
  }
}

}  // namespace pho
