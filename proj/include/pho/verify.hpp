#pragma once

#include <cstddef>

#include "pho/core.hpp"

namespace pho {

struct VerifyOptions {
  int levels = 2;
  double resolution = 0.1;
  double max_spacing = 0.01;
  double consistency_tolerance = 1e-6;
  double ratio_low = 2.5;
  double ratio_high = 6.0;
};

/// Three routes to the minimal-length shift of one level:
///   closed_form      correction_pho
///   oracle_moments       4 mu beta [E0^2 - 2 E0 <V> + <V^2>] from grid eigenvectors
///   exact_difference E(epsilon) - E(0) from the deformed grid Hamiltonian
/// The exact difference is also computed at epsilon/2; its departure from the
/// closed form must fall by ~4 when epsilon halves.
struct VerifyReport {
  double gamma = 0.0;
  double epsilon = 0.0;
  QuantumNumbers qn;
  std::size_t grid_points = 0;
  double grid_spacing = 0.0;
  int levels = 0;

  double analytic_e0 = 0.0;
  double oracle_e0 = 0.0;
  double oracle_e0_error = 0.0;

  double closed_form = 0.0;
  double oracle_moments = 0.0;
  double exact_difference = 0.0;
  double exact_difference_half = 0.0;  // at epsilon / 2

  double residual = 0.0;       // exact_difference - closed_form
  double residual_half = 0.0;  // same at epsilon / 2
  double ratio = 0.0;          // residual / residual_half (NaN when epsilon == 0)

  double dev_closed_moments = 0.0;
  double dev_closed_exact = 0.0;
  double dev_moments_exact = 0.0;

  bool consistency_ok = false;
  bool scaling_ok = false;
  bool passed = false;
};

/// Throws SingularMomentError for lambda <= 1, SolverError (and subclasses)
/// on oracle failure.
VerifyReport verify_correction(double gamma, double epsilon, QuantumNumbers qn, const VerifyOptions& options = {});

}  // namespace pho
