#include <cmath>
#include <vector>

#include "doctest.h"
#include "pho/core.hpp"
#include "pho/errors.hpp"
#include "pho/specfun.hpp"

using namespace pho;

namespace {

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

// Correction bracket transcribed literally: e0 = E0/De,
//   e0^2 + 4e0 + 6 - (4 + 2e0)(lambda+2n+1)/g + (lambda^2 + (6n+3)lambda + 6n(n+1) + 2)/g^2
//   - 2g(2 + e0)/lambda + g^2 (lambda+2n+1)/(lambda (lambda^2 - 1))
// evaluated in long double so it can stand in as a reference for the
// rearranged library form.
double bracket_literal(double gamma, int n, int l) {
  const long double g = gamma;
  const long double lam = std::sqrt(g * g + (l + 0.5L) * (l + 0.5L));
  const long double e0 = -2.0L * (1.0L - (2.0L * n + 1.0L + lam) / g);
  return static_cast<double>(e0 * e0 + 4.0L * e0 + 6.0L - (4.0L + 2.0L * e0) * (lam + 2 * n + 1) / g +
                             (lam * lam + (6.0L * n + 3.0L) * lam + 6.0L * n * (n + 1) + 2.0L) / (g * g) -
                             2.0L * g * (2.0L + e0) / lam + g * g * (lam + 2 * n + 1) / (lam * (lam * lam - 1.0L)));
}

const double kGammas[] = {5.0, 10.0, 20.0};

}  // namespace

TEST_CASE("model construction and derived quantities") {
  const PhoModel m(10.0, 1e-3);
  CHECK(m.lambda(0) == doctest::Approx(std::sqrt(100.25)).epsilon(1e-16));
  CHECK(m.lambda_excess(0) == doctest::Approx(std::sqrt(100.25) - 10.0).epsilon(1e-12));
  CHECK(m.hbar_omega() == 0.4);
  CHECK(m.alpha() == 10.0);
  for (int l = 0; l < 20; ++l) {
    CHECK(m.lambda(l + 1) > m.lambda(l));
    CHECK(m.lambda(l) > l + 0.5);
    CHECK(m.lambda(l) >= m.gamma());
  }
  CHECK_THROWS_AS(PhoModel(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(PhoModel(10.0, -1e-3), DomainError);
  CHECK_THROWS_AS(m.lambda(-1), DomainError);
}

TEST_CASE("model_of and restore_params") {
  // hbar = 1, 2 mu De re^2 = 100
  const MolecularParams p{2.0, 25.0, 1.0, 1e-5};
  const PhoModel m = model_of(p, 1.0);
  CHECK(m.gamma() == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(m.epsilon() == doctest::Approx(4.0 * 2.0 * 1e-5 * 25.0).epsilon(1e-15));
  CHECK(model_of({2.0, 25.0, 1.0, 0.0}, 1.0).epsilon() == 0.0);

  const MolecularParams si{1.6275e-27, 7.4e-19, 1.2746e-10, 1.8e41};
  const double hbar = 1.054571817e-34;
  const MolecularParams back = restore_params(model_of(si, hbar), hbar);
  CHECK(rel(back.mu, si.mu) < 1e-12);
  CHECK(rel(back.beta, si.beta) < 1e-12);
  CHECK(back.De == si.De);
  CHECK(back.re == si.re);
}

TEST_CASE("frequency and minimal length") {
  const MolecularParams p{2.0, 25.0, 1.0, 0.0};
  CHECK(angular_frequency(p) == doctest::Approx(2.0 * 5.0).epsilon(1e-15));
  // gamma = 4 De / (hbar omega) with hbar = 1
  CHECK(model_of(p, 1.0).gamma() == doctest::Approx(4.0 * p.De / angular_frequency(p)).epsilon(1e-14));
  CHECK(minimal_length(0.0, 0.0, 1.0) == 0.0);
  CHECK(minimal_length(1.0, 1.0, 1.0) == 2.0);
  const double beta = 3.7e-3, hbar = 0.9;
  CHECK(minimal_length(beta, 2.0 * beta, hbar) == doctest::Approx(hbar * std::sqrt(5.0 * beta)).epsilon(1e-15));
  CHECK_THROWS_AS(minimal_length(-1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("unperturbed energy") {
  const PhoModel m(10.0, 0.0);
  CHECK(unperturbed_energy(m, {0, 0}) == doctest::Approx(0.20249844).epsilon(1e-8));
  CHECK(unperturbed_energy(m, {1, 0}) - unperturbed_energy(m, {0, 0}) == doctest::Approx(0.4).epsilon(1e-14));
  // E0 + 2  ->  hbar omega (n + 1/2) + ... as gamma grows
  const PhoModel big(1e6, 0.0);
  CHECK(unperturbed_energy(big, {3, 0}) == doctest::Approx(4.0 * 3.5 / 1e6).epsilon(1e-6));
  for (double g : kGammas) {
    const PhoModel mg(g, 0.0);
    for (int n = 0; n < 8; ++n)
      for (int l = 0; l < 8; ++l) {
        CHECK(unperturbed_energy(mg, {n + 1, l}) > unperturbed_energy(mg, {n, l}));
        CHECK(unperturbed_energy(mg, {n, l + 1}) > unperturbed_energy(mg, {n, l}));
        const double literal = -2.0 * (1.0 - (2.0 * n + 1.0 + mg.lambda(l)) / g);
        CHECK(rel(unperturbed_energy(mg, {n, l}), literal) < 1e-13);
      }
  }
}

TEST_CASE("radial wavefunction normalization with the r^2 measure") {
  const PhoModel m(10.0, 0.0);
  for (const QuantumNumbers qn : {QuantumNumbers{0, 0}, QuantumNumbers{2, 1}, QuantumNumbers{5, 3}}) {
    const double norm = specfun::integrate_halfline(
        [&](double r) {
          const double R = radial_wavefunction(m, qn, r);
          return R * R * r * r;
        },
        m.alpha());
    CAPTURE(qn.n);
    CHECK(std::fabs(norm - 1.0) < 1e-10);
  }
  CHECK_THROWS_AS(radial_wavefunction(m, {0, 0}, 0.0), DomainError);
}

TEST_CASE("radial wavefunction node count") {
  const PhoModel m(10.0, 0.0);
  for (int n = 0; n <= 4; ++n) {
    int changes = 0;
    double prev = radial_wavefunction(m, {n, 0}, 0.05);
    for (double r = 0.05; r < 4.0; r += 1e-3) {
      const double v = radial_wavefunction(m, {n, 0}, r);
      if ((v > 0.0) != (prev > 0.0)) ++changes;
      prev = v;
    }
    CHECK(changes == n);
  }
}

TEST_CASE("matrix elements match analytic-wavefunction quadrature") {
  for (double g : kGammas) {
    const PhoModel m(g, 0.0);
    for (int n = 0; n <= 5; ++n) {
      for (int l = 0; l <= 5; ++l) {
        for (int q : {-4, -2, 2, 4}) {
          const double quad = specfun::integrate_halfline(
              [&](double r) {
                const double R = radial_wavefunction(m, {n, l}, r);
                return R * R * std::pow(r, q + 2);
              },
              m.alpha());
          CAPTURE(g);
          CAPTURE(n);
          CAPTURE(l);
          CAPTURE(q);
          CHECK(rel(matrix_element(m, {n, l}, q), quad) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("matrix element closed forms") {
  const PhoModel m(10.0, 0.0);
  const double lam = m.lambda(0);
  CHECK(matrix_element(m, {0, 0}, 2) == doctest::Approx((lam + 1.0) / 10.0).epsilon(1e-15));
  CHECK(matrix_element(m, {0, 0}, 2) == doctest::Approx(1.10125).epsilon(1e-5));
  CHECK(matrix_element(m, {0, 3}, -2) == doctest::Approx(10.0 / m.lambda(3)).epsilon(1e-15));
  CHECK_THROWS_AS(matrix_element(m, {0, 0}, 3), DomainError);
  CHECK_THROWS_AS(matrix_element(m, {0, 0}, 0), DomainError);
}

TEST_CASE("virial identity <r^2> = (E0 - c) / (2a)") {
  for (double g : {0.9, 2.0, 5.0, 10.0, 20.0, 100.0}) {
    const PhoModel m(g, 0.0);
    for (int n = 0; n <= 10; ++n)
      for (int l = 0; l <= 10; ++l) {
        // a = c = ... in De, re units: a = 1, c = -2
        const double virial = (unperturbed_energy(m, {n, l}) + 2.0) / 2.0;
        CHECK(rel(matrix_element(m, {n, l}, 2), virial) < 1e-12);
      }
  }
}

TEST_CASE("correction_pho equals the literal bracket") {
  for (double g : {2.0, 5.0, 10.0, 20.0, 50.0}) {
    const PhoModel m(g, 1e-3);
    for (int n = 0; n <= 10; ++n)
      for (int l = 0; l <= 10; ++l) {
        CAPTURE(g);
        CAPTURE(n);
        CAPTURE(l);
        CHECK(rel(correction_bracket(m, {n, l}), bracket_literal(g, n, l)) < 1e-12);
        CHECK(correction_pho(m, {n, l}) == 1e-3 * correction_bracket(m, {n, l}));
      }
  }
}

TEST_CASE("correction_abc on the PHO parameters equals correction_pho") {
  // mu = 1/2, hbar = 1, De = 25, re = 2: gamma = sqrt(2 mu De) re / hbar = 10
  const double De = 25.0, re = 2.0, mu = 0.5, beta = 2e-6;
  const AbcContext ctx{mu, beta, 1.0};
  const auto pot = AbcPotential::pho(De, re);
  CHECK(pot.a * pot.b == doctest::Approx(De * De).epsilon(1e-15));
  const PhoModel m = model_of({mu, De, re, beta}, 1.0);
  REQUIRE(m.gamma() == doctest::Approx(10.0).epsilon(1e-15));
  for (int n = 0; n <= 10; ++n)
    for (int l = 0; l <= 10; ++l) {
      const double abc = correction_abc(pot, ctx, {n, l}) / De;
      CHECK(rel(abc, correction_pho(m, {n, l})) < 1e-12);
      CHECK(rel(abc_unperturbed_energy(pot, ctx, {n, l}) / De, unperturbed_energy(m, {n, l})) < 1e-12);
    }
}

TEST_CASE("harmonic limit") {
  CHECK(harmonic_limit_correction(0, 0, 1.0, 1.0, 1.0, 1.0) == doctest::Approx(2.0 * 15.0 / 4.0));
  CHECK(harmonic_limit_correction(1, 0, 1.0, 1.0, 1.0, 1.0) == doctest::Approx(2.0 * 75.0 / 4.0));
  CHECK(harmonic_limit_correction(3, 2, 1.0, 0.0, 1.0, 1.0) == 0.0);
  // (15/2) beta a hbar^2
  const double a = 3.0, beta = 0.01, hbar = 1.3;
  CHECK(correction_abc(AbcPotential::harmonic(a), {0.7, beta, hbar}, {0, 0}) ==
        doctest::Approx(7.5 * beta * a * hbar * hbar).epsilon(1e-14));
}

TEST_CASE("correction from expectations") {
  CHECK(correction_from_expectations(0.3, 0.1, 0.05, 0.0) == 0.0);
  CHECK(correction_from_expectations(2.0, 0.0, 0.0, 0.5) == 2.0);
}

TEST_CASE("correction is positive and vanishes without deformation") {
  for (double g = 5.0; g <= 50.0; g += 2.5) {
    const PhoModel m(g, 1e-4);
    const PhoModel flat(g, 0.0);
    for (int n = 0; n <= 10; ++n)
      for (int l = 0; l <= 10; ++l) {
        CHECK(correction_pho(m, {n, l}) > 0.0);
        CHECK(correction_pho(flat, {n, l}) == 0.0);
      }
  }
  CHECK(correction_abc(AbcPotential::pho(1.0, 1.0), {1.0, 0.0, 0.1}, {2, 2}) == 0.0);
  CHECK(correction_abc(AbcPotential::harmonic(1.0), {1.0, 0.0, 1.0}, {2, 2}) == 0.0);
}

TEST_CASE("lambda <= 1 guards") {
  const PhoModel m(0.5, 1e-3);
  CHECK(m.lambda(0) <= 1.0);
  CHECK_THROWS_AS(matrix_element(m, {0, 0}, -4), SingularMomentError);
  CHECK_THROWS_AS(correction_pho(m, {0, 0}), SingularMomentError);
  CHECK_THROWS_AS(correction_bracket(m, {0, 0}), SingularMomentError);
  CHECK_THROWS_AS(spectrum_line(m, {0, 0}), SingularMomentError);
  CHECK(std::isnan(moments(m.lambda(0), m.alpha(), 0).inv_r4));
  // l = 1 has lambda > 1 and is fine
  CHECK(correction_pho(m, {0, 1}) > 0.0);
  // mu = 1/2, hbar = 1, De = 1/4, re = 1 gives gamma = 0.5
  CHECK_THROWS_AS(correction_abc(AbcPotential::pho(0.25, 1.0), {0.5, 1e-3, 1.0}, {0, 0}), SingularMomentError);
}

TEST_CASE("expansion leading terms") {
  const PhoModel m(10.0, 0.0);
  const Expansion ex = energy_expansion(m, {0, 1}, ExpansionOrder::RotatingMolecule);
  CHECK(ex.energy == doctest::Approx(2.0 / 10.0 + 2.25 / 100.0).epsilon(1e-15));
  CHECK(ex.breakdown.dissociation_shift == 0.0);
  CHECK(ex.breakdown.anharmonic == 0.0);
  CHECK(ex.breakdown.coupling == 0.0);
  CHECK(energy_expansion(PhoModel(40.0, 0.0), {3, 0}).breakdown.harmonic == doctest::Approx(0.4 * 3.5 / 4.0));
}

TEST_CASE("expansion terms carry their labels") {
  const double g = 10.0, eps = 1e-3;
  const PhoModel m(g, eps);
  const int n = 1, l = 2;
  const EnergyBreakdown b = energy_expansion(m, {n, l}).breakdown;
  // De = 1: 6 mu beta De^2 = 1.5 eps, 24 mu beta De^2 = 6 eps, 16 mu beta De^2 = 4 eps
  CHECK(b.harmonic == doctest::Approx(4.0 * (n + 0.5) / g).epsilon(1e-15));
  CHECK(b.rotational == doctest::Approx((l + 0.5) * (l + 0.5) / (g * g)).epsilon(1e-15));
  CHECK(b.dissociation_shift == doctest::Approx(1.5 * eps / (g * g)).epsilon(1e-15));
  CHECK(b.anharmonic == doctest::Approx(6.0 * eps * (n + 0.5) * (n + 0.5) / (g * g)).epsilon(1e-15));
  CHECK(b.coupling == doctest::Approx(4.0 * eps * (n + 0.5) * (l + 0.5) * (l + 0.5) / (g * g * g)).epsilon(1e-15));
}

TEST_CASE("breakdown sums to the exact energy") {
  for (double g : {2.0, 5.0, 10.0, 40.0})
    for (double eps : {0.0, 1e-4, 1e-2}) {
      const PhoModel m(g, eps);
      for (int n = 0; n <= 5; ++n)
        for (int l = 0; l <= 5; ++l) {
          const SpectrumLine s = spectrum_line(m, {n, l});
          const double sum = s.breakdown.named_sum() + s.breakdown.remainder;
          CHECK(std::fabs(sum - s.total) <= 1e-14 * std::fabs(s.total));
        }
    }
}

TEST_CASE("expansion remainder is O(1/gamma^4)") {
  const double eps = 1e-3;
  for (int n = 0; n <= 3; ++n)
    for (int l = 0; l <= 3; ++l) {
      double prev = 0.0;
      for (double g : {10.0, 20.0, 40.0, 80.0}) {
        const PhoModel m(g, eps);
        const double exact = spectrum_line(m, {n, l}).total;
        const double scaled = std::fabs(exact - energy_expansion(m, {n, l}).energy) * std::pow(g, 4);
        if (prev > 0.0) CHECK(scaled < 1.5 * prev);
        prev = scaled;
      }
    }
}

TEST_CASE("expansion domain") {
  CHECK_THROWS_AS(energy_expansion(PhoModel(1.9, 0.0), {0, 0}), ExpansionDomainError);
  CHECK(energy_expansion(PhoModel(2.0, 0.0), {0, 0}).low_gamma);
  CHECK(energy_expansion(PhoModel(4.9, 0.0), {0, 0}).low_gamma);
  CHECK(energy_expansion(PhoModel(5.0, 0.0), {0, 0}).low_gamma == false);
}

TEST_CASE("full spectrum layout") {
  const PhoModel m(10.0, 1e-3);
  const auto lines = full_spectrum(m, 3, 3);
  REQUIRE(lines.size() == 16);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    CHECK(lines[i].qn.l == static_cast<int>(i / 4));
    CHECK(lines[i].qn.n == static_cast<int>(i % 4));
    CHECK(lines[i].total == lines[i].e0 + lines[i].delta_e);
    CHECK(lines[i].delta_e > 0.0);
  }
  const auto flat = full_spectrum(PhoModel(10.0, 0.0), 5, 2);
  for (const auto& s : flat) {
    CHECK(s.delta_e == 0.0);
    CHECK(s.e0 == unperturbed_energy(PhoModel(10.0, 0.0), s.qn));
    if (s.qn.n > 0) {
      const double below = unperturbed_energy(PhoModel(10.0, 0.0), {s.qn.n - 1, s.qn.l});
      CHECK(s.e0 - below == doctest::Approx(0.4).epsilon(1e-13));
    }
  }
  CHECK(full_spectrum(m, 0, 0).size() == 1);
  CHECK_THROWS_AS(full_spectrum(m, -1, 0), DomainError);
}
