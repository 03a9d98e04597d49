#pragma once

// Pseudoharmonic oscillator V(r) = De (r/re - re/r)^2 with a first-order
// minimal-length correction.
//
// All formulas are evaluated in reduced units: energies in De, lengths in re.
// A model is then fixed by two numbers,
//   gamma   = sqrt(2 mu De re^2) / hbar
//   epsilon = 4 mu beta De
// and De, re are carried only so callers can restore physical units.

#include <vector>

namespace pho {

/// Physical (SI) description of a diatomic molecule in the deformed algebra.
struct MolecularParams {
  double mu = 0.0;    // reduced mass, kg
  double De = 0.0;    // dissociation energy, J
  double re = 0.0;    // equilibrium distance, m
  double beta = 0.0;  // deformation, 1/momentum^2 (s^2 kg^-2 m^-2)
};

struct QuantumNumbers {
  int n = 0;  // vibrational
  int l = 0;  // rotational
};

class PhoModel {
 public:
  /// Throws DomainError unless gamma > 0, epsilon >= 0, De > 0, re > 0.
  PhoModel(double gamma, double epsilon, double De = 1.0, double re = 1.0);

  double gamma() const noexcept { return gamma_; }
  double epsilon() const noexcept { return epsilon_; }
  double De() const noexcept { return De_; }
  double re() const noexcept { return re_; }

  /// lambda(l) = sqrt(gamma^2 + (l + 1/2)^2).
  double lambda(int l) const;
  /// lambda(l) - gamma, computed without cancellation.
  double lambda_excess(int l) const;
  /// Gaussian exponent alpha = gamma / re^2, in units of 1/re^2.
  double alpha() const noexcept { return gamma_; }
  /// hbar*omega = 4 De / gamma, in units of De.
  double hbar_omega() const noexcept { return 4.0 / gamma_; }

 private:
  double gamma_;
  double epsilon_;
  double De_;
  double re_;
};

PhoModel model_of(const MolecularParams& params, double hbar);

/// Inverse of model_of: mu and beta recovered from (gamma, epsilon, De, re).
MolecularParams restore_params(const PhoModel& model, double hbar);

/// Classical small-vibration frequency omega = (2/re) sqrt(2 De / mu), rad/s.
double angular_frequency(const MolecularParams& params);

/// (Delta x)_min = hbar sqrt(3 beta + beta'); hbar sqrt(5 beta) when beta' = 2 beta.
double minimal_length(double beta, double beta_prime, double hbar);

/// E0 = -2 De (1 - (2n + 1 + lambda)/gamma), in De.
double unperturbed_energy(const PhoModel& model, QuantumNumbers qn);

/// Radial factor R(r) of the unperturbed eigenfunction, r in units of re.
/// Normalized with the three-dimensional measure: int_0^inf R^2 r^2 dr = 1.
double radial_wavefunction(const PhoModel& model, QuantumNumbers qn, double r);

/// <r^q> for q in {-4, -2, 2, 4}, in units of re^q.
/// Throws SingularMomentError for q = -4 with lambda <= 1.
double matrix_element(const PhoModel& model, QuantumNumbers qn, int q);

/// Closed-form moments of a potential of the form a r^2 + b/r^2 + c,
/// parametrized by the effective index lambda and Gaussian exponent alpha.
struct Moments {
  double r2 = 0.0;
  double r4 = 0.0;
  double inv_r2 = 0.0;
  double inv_r4 = 0.0;  // NaN when lambda <= 1
};
Moments moments(double lambda, double alpha, int n);

/// V(r) = a r^2 + b / r^2 + c.
struct AbcPotential {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  static AbcPotential pho(double De, double re) { return {De / (re * re), De * re * re, -2.0 * De}; }
  static AbcPotential harmonic(double a) { return {a, 0.0, 0.0}; }
};

/// Mass, deformation and action constant in whatever units a, b, c use.
struct AbcContext {
  double mu = 1.0;
  double beta = 0.0;
  double hbar = 1.0;
};

/// E0 = c + hbar sqrt(2a/mu) (2n + 1 + lambda) with lambda = sqrt((l+1/2)^2 + 2 mu b / hbar^2).
double abc_unperturbed_energy(const AbcPotential& pot, const AbcContext& ctx, QuantumNumbers qn);

/// 4 mu beta [E0^2 - 2 E0 <V> + <V^2>]. `four_mu_beta` is the prefactor 4 mu beta,
/// which is epsilon when the inputs are in De units.
double correction_from_expectations(double e0, double v_mean, double v2_mean, double four_mu_beta);

/// Minimal-length correction for a r^2 + b/r^2 + c, expanded term by term in
/// <r^2>, <r^4>, <1/r^2>, <1/r^4>. The b-terms are omitted when b == 0.
double correction_abc(const AbcPotential& pot, const AbcContext& ctx, QuantumNumbers qn);

/// 4 beta mu a (hbar^2 / 2 mu) [(l+3/2)(l+5/2) + 6n(l+n+3/2)].
double harmonic_limit_correction(int n, int l, double a, double beta, double mu, double hbar);

/// Bracket multiplying epsilon in the PHO correction, i.e. Delta E / (epsilon De).
/// Depends only on (gamma, n, l). Throws SingularMomentError for lambda <= 1.
double correction_bracket(const PhoModel& model, QuantumNumbers qn);

/// Delta E in De units (epsilon * correction_bracket).
double correction_pho(const PhoModel& model, QuantumNumbers qn);

/// Terms of the ro-vibrational expansion in 1/gamma (all in De).
struct EnergyBreakdown {
  double harmonic = 0.0;            // 4 (n+1/2) / gamma
  double rotational = 0.0;          // (l+1/2)^2 / gamma^2
  double dissociation_shift = 0.0;  // 6 mu beta De^2 / gamma^2
  double anharmonic = 0.0;          // 24 mu beta De^2 (n+1/2)^2 / gamma^2
  double coupling = 0.0;            // 16 mu beta De^2 (n+1/2)(l+1/2)^2 / gamma^3
  double remainder = 0.0;           // exact E0 + Delta E minus the five terms

  double named_sum() const { return harmonic + rotational + dissociation_shift + anharmonic + coupling; }
};

/// Truncation used by energy_expansion.
///  Complete: every term through 1/gamma^3, remainder O(1/gamma^4).
///  RotatingMolecule: only the five labelled terms; additionally drops the
///    2 epsilon (n+1/2) / gamma^3 shift of the harmonic levels.
enum class ExpansionOrder { Complete, RotatingMolecule };

struct Expansion {
  double energy = 0.0;
  EnergyBreakdown breakdown;
  bool low_gamma = false;  // gamma < 5: expansion is poorly converged
};

/// Named terms plus remainder; remainder is computed from rearranged
/// closed forms so it carries no cancellation against the named terms.
EnergyBreakdown energy_breakdown(const PhoModel& model, QuantumNumbers qn);

/// Throws ExpansionDomainError for gamma < 2.
Expansion energy_expansion(const PhoModel& model, QuantumNumbers qn,
                           ExpansionOrder order = ExpansionOrder::Complete);

struct SpectrumLine {
  QuantumNumbers qn;
  double e0 = 0.0;
  double delta_e = 0.0;
  double total = 0.0;
  EnergyBreakdown breakdown;
};

SpectrumLine spectrum_line(const PhoModel& model, QuantumNumbers qn);

/// All (n, l) with n <= n_max, l <= l_max, sorted by (l, n).
std::vector<SpectrumLine> full_spectrum(const PhoModel& model, int n_max, int l_max);

}  // namespace pho
