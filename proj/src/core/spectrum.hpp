#pragma once

#include <vector>

#include "core/units.hpp"

namespace ppn::spectrum {

enum class GridSpacing { Uniform, Log };

// Hydrogen-like radial eigenproblem
//   -(A hbar^2 / 2 mu)(u'' - l(l+1)/r^2 u) - (strength / r) u = E u,
//   u(0) = u(r_max) = 0,
// with A the kinetic coefficient (1 + 2 gamma phi/c^2) and strength = B k,
// k = e^2/(4 pi eps0), B = 1 + gamma phi/c^2.  The grid is expressed in
// scaled Bohr radii a = A hbar^2 / (mu strength).
struct RadialProblem {
  double mu = 1.0;
  double kinetic_coefficient = 1.0;  // A
  double coulomb_strength = 1.0;     // B k, must be > 0 (attractive)
  int l = 0;
  double hbar = 1.0;

  double r_max_bohr = 60.0;  // box size in scaled Bohr radii
  // Inner cutoff for the log grid.  The Dirichlet wall shifts s-wave levels
  // by O(r_min), independently of the grid, so it must sit far below the
  // discretisation error.
  double r_min_bohr = 1.0e-9;
  int n_points = 8000;
  GridSpacing spacing = GridSpacing::Uniform;

  double bohr_radius() const {
    return kinetic_coefficient * hbar * hbar / (mu * coulomb_strength);
  }
  // (B^2/A) mu k^2 / hbar^2: every eigenvalue is this times a dimensionless
  // number that depends only on the grid.
  double energy_scale() const;

  void validate() const;
};

struct RadialSolution {
  std::vector<double> eigenvalues;       // Richardson-corrected, lowest first
  std::vector<double> eigenvalues_raw;   // plain finite-difference values (fine grid)
  std::vector<double> error_estimates;   // |E_h - E_2h| / 3 per level
  // Fine-grid eigenfunctions, normalised to int u^2 dr = 1, in the
  // dimensionless radial variable x = r / a.
  std::vector<std::vector<double>> u;
  std::vector<double> x_grid;            // node positions (dimensionless)
  std::vector<double> dx_grid;           // quadrature weight per node
};

// Lowest n_levels eigenvalues (and eigenfunctions) of the radial problem.
// Errors if the Richardson estimate of the ground-state discretisation error
// exceeds `coarse_tolerance` relative to the eigenvalue.
RadialSolution solve_radial(const RadialProblem& problem, int n_levels,
                            double coarse_tolerance = 1.0e-4);

struct LevelRecord {
  int n = 1;  // principal quantum number
  int l = 0;
  double e_bohr = 0.0;         // coordinate-time radial eigenvalue
  double de_p4 = 0.0;          // -(m1^3+m2^3)/M^3 <p^4> / (8 mu^3 c^2)
  double de_darwin_cross = 0.0;
  double mass_defect = 0.0;    // M + e_total/c^2
  double error_estimate = 0.0;

  double e_total() const { return e_bohr + de_p4 + de_darwin_cross; }
};

struct AtomParams {
  double m1 = 1.0;
  double m2 = 1.0;
  double e = 1.0;  // |charge|; e1 = -e, e2 = +e
};

struct SpectrumResult {
  std::vector<LevelRecord> levels;  // ordered by (l, n)
  double mass_total = 0.0;
  double sqrt_minus_g00 = 1.0;
  double hbar = 1.0;
};

struct SpectrumOptions {
  double r_max_bohr = 60.0;
  int n_points = 8000;
  GridSpacing spacing = GridSpacing::Uniform;
  bool perturbative_shifts = true;
};

// Solves the internal problem of the final Hamiltonian for a hydrogen-like
// atom: metric-scaled Bohr levels plus first-order perturbative evaluation of
// the two O(c^-2) correction terms over the unperturbed radial states.
SpectrumResult internal_levels(const PpnContext& ctx, const AtomParams& atom, int n_levels,
                               int l_max = 0, const SpectrumOptions& opts = {});

// M + E_n/c^2 for the level (n, l); E_n includes the perturbative shifts.
double mass_defect(const SpectrumResult& spectrum, int n, int l, const PpnContext& ctx);

// (E_n - E_m) / (hbar sqrt(-g00)): coordinate transition frequency referred
// to the proper time of an observer at rest at the atom's position.
double proper_time_frequency(const SpectrumResult& spectrum, int n, int l, int m, int lp,
                             bool include_shifts = true);

const LevelRecord& find_level(const SpectrumResult& spectrum, int n, int l);

}  // namespace ppn::spectrum
