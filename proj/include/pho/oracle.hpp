#pragma once

// Finite-difference radial Schroedinger solver used as an independent check
// of the closed forms.
//
// Units: length in re, energy in De. With x = r/re the reduced radial
// equation for u = r R reads
//
//   (1/gamma^2) [-u'' + l(l+1)/x^2 u] + v(x) u + epsilon K^2 u = e u,
//
// where K = (1/gamma^2)(-d^2/dx^2 + l(l+1)/x^2) is p^2/(2 mu De). The quartic
// term follows from (beta/mu) p^4 = epsilon De K^2 with epsilon = 4 mu beta De.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pho::oracle {

struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples i and i+1

  std::size_t size() const { return diag.size(); }
};

/// Uniform mesh r_i = (i+1) h, i = 0..points-1; Dirichlet walls at 0 and (points+1) h.
struct Grid {
  double h = 0.0;
  std::size_t points = 0;

  double r(std::size_t i) const { return static_cast<double>(i + 1) * h; }
  double r_max() const { return static_cast<double>(points + 1) * h; }
};

using RealFunction = std::function<double(double)>;

/// PHO potential (x - 1/x)^2 in De, x in re.
double pho_potential(double x);

struct RadialProblem {
  int l = 0;
  double gamma = 1.0;
  double epsilon = 0.0;
  Grid grid;
  RealFunction potential = pho_potential;
};

struct GridOptions {
  double resolution = 0.1;      // target h * k_max, k_max the largest local wavenumber
  double max_spacing = 0.01;    // upper bound on h (re units)
  std::size_t min_points = 200;
  double box_widths = 8.0;      // Gaussian widths 1/sqrt(gamma) beyond the rms radius
};

/// PHO problem sized for states n <= n_max. The wall sits at
/// sqrt((lambda + 2 n_max + 1)/gamma) + box_widths/sqrt(gamma), and never
/// closer than the outer turning point plus 5 widths.
RadialProblem pho_problem(double gamma, int l, double epsilon, int n_max, const GridOptions& options = {});

/// Outer classical turning point of the PHO effective potential at energy e (De).
double outer_turning_point(double gamma, int l, double e);

/// Throws DomainError if the grid violates N >= 100, h > 0 or the box
/// condition for states up to n_max (n_max < 0 skips the box check).
void validate(const RadialProblem& problem, int n_max = -1);

/// Same problem with the spacing halved `halvings` times and r_max unchanged.
RadialProblem refined(const RadialProblem& problem, int halvings);

/// K = p^2/(2 mu De) on the grid: 3-point Laplacian plus centrifugal term.
SymTridiagonal kinetic_operator(const RadialProblem& problem);

/// H0 = K + v(x).
SymTridiagonal build_h0(const RadialProblem& problem);

struct EigenSolution {
  Grid grid;
  std::vector<double> energies;             // ascending
  std::vector<std::vector<double>> vectors; // u_k on the grid, sum u^2 h = 1
  std::vector<double> tail;                 // |u_k(r_max - h)|

  std::size_t size() const { return energies.size(); }
};

/// Tail guard for accepted states.
inline constexpr double kTailLimit = 1e-8;

/// Number of eigenvalues of `t` strictly below `sigma` (Sturm count).
std::size_t count_below(const SymTridiagonal& t, double sigma);

/// Interior sign changes, ignoring components below 1e-10 of the peak.
int sign_changes(std::span<const double> u);

/// k <= 20 lowest eigenpairs by Sturm bisection and inverse iteration.
/// `spacing` is the grid step used for the normalization sum u^2 h = 1.
/// Throws std::invalid_argument for k outside [1, 20] and SolverError when
/// inverse iteration fails to converge.
EigenSolution eigen_lowest(const SymTridiagonal& h0, int k, double spacing = 1.0);

/// As eigen_lowest without the k <= 20 cap; used to build Ritz bases.
EigenSolution lowest_eigenpairs(const SymTridiagonal& t, std::size_t k, double spacing);

/// Throws SolverError unless every vector passes the tail guard and has the
/// node count matching its index.
void check_accepted(const EigenSolution& sol);

struct DeformedOptions {
  double p4_tolerance = 1e-2;         // relative grid error allowed in <K^2>
  double perturbative_fraction = 0.1; // epsilon <K^2> must stay below this share of the level spacing
  std::size_t min_basis = 48;
  std::size_t max_basis = 768;
  double basis_tolerance = 1e-13;
};

/// Lowest k eigenpairs of H0 + epsilon K^2 on the problem grid.
/// epsilon == 0 returns the undeformed solution unchanged.
///
/// The quartic operator is realized as the square of the discrete K, so it is
/// symmetric and positive semidefinite by construction. The eigenproblem is
/// solved by Rayleigh-Ritz in the span of the lowest M eigenvectors of H0,
/// with M doubled (up to half the grid) until the k lowest Ritz values change
/// by less than basis_tolerance (relative) plus a few ulps of |H0|; this keeps the absolute rounding error of the eigenvalues
/// at the scale of the retained spectrum instead of the norm of K^2.
///
/// Throws DomainError when the deformation is too strong for the perturbative
/// regime and DiscretizationError when the grid cannot resolve <K^2>.
EigenSolution deformed_eigen(const RadialProblem& problem, int k, const DeformedOptions& options = {});

/// Tridiagonal path for epsilon == 0, deformed_eigen otherwise.
EigenSolution solve(const RadialProblem& problem, int k, const DeformedOptions& options = {});

struct Expectation {
  double value = 0.0;
  bool resolved = true;  // false when the first grid cells carry a visible share of the integral
};

/// sum_i f(r_i) u_k(r_i)^2 h (trapezoid with Dirichlet ends).
Expectation expectation(const EigenSolution& sol, std::size_t k, const RealFunction& f);

struct Convergence {
  std::vector<double> values;   // Richardson-extrapolated (or raw finest when !monotone)
  std::vector<double> errors;   // |X_{h/2} - X_h| / 3
  std::vector<std::vector<double>> levels;  // levels[j][i]: quantity i at spacing h / 2^j
  bool monotone = true;
};

/// Richardson extrapolation assuming O(h^2) error, from per-level values.
/// Throws std::invalid_argument with fewer than two levels.
Convergence richardson(std::vector<std::vector<double>> levels);

/// Lowest k energies extrapolated over `levels` successive halvings of h.
Convergence converge(const RadialProblem& problem, int k, int levels, const DeformedOptions& options = {});

/// Expectations of each f for state `state`, extrapolated the same way.
Convergence converge_expectations(const RadialProblem& problem, int state, std::span<const RealFunction> fs,
                                  int levels, const DeformedOptions& options = {});

}  // namespace pho::oracle
