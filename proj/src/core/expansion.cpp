#include <cmath>
#include <string>

#include "pho/core.hpp"
#include "pho/errors.hpp"

namespace pho {

EnergyBreakdown energy_breakdown(const PhoModel& model, QuantumNumbers qn) {
  if (qn.n < 0 || qn.l < 0) throw DomainError("quantum numbers must be non-negative");
  const double g = model.gamma();
  const double eps = model.epsilon();
  const double g2 = g * g;
  const double g3 = g2 * g;
  const double m = 2.0 * qn.n + 1.0;
  const double s = (qn.l + 0.5) * (qn.l + 0.5);
  const double lambda = model.lambda(qn.l);

  EnergyBreakdown br;
  br.harmonic = 2.0 * m / g;
  br.rotational = s / g2;
  br.dissociation_shift = 1.5 * eps / g2;
  br.anharmonic = 1.5 * eps * m * m / g2;
  br.coupling = 2.0 * eps * m * s / g3;

  // E0 - harmonic - rotational = -s^2 / (g^2 (lambda + g)^2)
  const double lg = lambda + g;
  double remainder = -s * s / (g2 * lg * lg);
  if (eps != 0.0) {
    if (!(lambda > 1.0)) throw SingularMomentError("correction requires lambda > 1 (gamma > sqrt(3)/2)");
    // bracket - (1.5 + 1.5 m^2)/g^2 - 2 m s/g^3, from the regrouped closed form
    const double t = s - 1.0;
    const double lm1 = g2 + t;
    const double y = (g2 * (2.0 * s + 1.0) + 3.0 * s * t) / (g2 * lambda * lm1) - 2.0 * s / g3;
    remainder += eps * (t * t / (g2 * lm1) + m * y);
  }
  br.remainder = remainder;
  return br;
}

Expansion energy_expansion(const PhoModel& model, QuantumNumbers qn, ExpansionOrder order) {
  const double g = model.gamma();
  if (g < 2.0)
    throw ExpansionDomainError("1/gamma expansion requires gamma >= 2, got gamma = " + std::to_string(g));
  Expansion ex;
  ex.breakdown = energy_breakdown(model, qn);
  ex.low_gamma = g < 5.0;
  ex.energy = ex.breakdown.named_sum();
  if (order == ExpansionOrder::Complete) {
    const double m = 2.0 * qn.n + 1.0;
    ex.energy += model.epsilon() * m / (g * g * g);
  }
  return ex;
}

}  // namespace pho
