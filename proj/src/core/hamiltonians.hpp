#pragma once

#include <map>
#include <string>

#include "core/fields.hpp"
#include "core/states.hpp"
#include "core/units.hpp"
#include "core/vec3.hpp"

namespace ppn::hamiltonians {

// Term-by-term Hamiltonian value.  Keys are grouped by prefix: C_ (central),
// A_ (internal), AL_ (atom-light), L_ (field), X_ (cross terms).  The map is
// ordered, so serialisation is deterministic.
struct HamiltonianReport {
  std::map<std::string, double> terms;
  bool grad_phi_terms_included = false;
  double sigma_d = 0.0;  // dipole smearing width used for the self-energy term

  double total() const;
  double group(const std::string& prefix) const;
};

struct HamiltonianOptions {
  double sigma_d = 0.0;  // 0 = auto (a tenth of the atom's Bohr radius)
  double time = 0.0;
};

// Bohr radius hbar^2/(mu e^2/(4 pi eps0)) of the two-particle system.
double bohr_radius(double m1, double m2, double e1, double e2, const UnitSystem& units);

// Gaussian-smeared dipole polarisation self-energy
//   1/(2 eps0) int P_d_perp^2 = d^2 / (24 pi^(3/2) eps0 sigma_d^3).
double dipole_self_energy(const Vec3& d, double sigma_d, const UnitSystem& units);

// Lab-frame Hamiltonian of the corrected system (momentum representation,
// kinetic momenta pbar_i = p_i - e_i A_perp(r_i)), including the
// (1 + (gamma+1) phi/c^2) prefactors on the internal Coulomb term and the
// external field energy.
double h_lab(const TwoParticleState& state, const FieldConfiguration& fields,
                 const PpnContext& ctx, double time = 0.0);
HamiltonianReport h_lab_report(const TwoParticleState& state, const FieldConfiguration& fields,
                               const PpnContext& ctx, double time = 0.0);

// Centre-of-mass Hamiltonian before the electromagnetic gravity corrections:
// the gravity-free split plus the particle-sector gravitational terms.
// grad-phi cross terms are included iff ctx.grad_phi != 0.
HamiltonianReport h_com_split(const ComState& com, const FieldConfiguration& fields,
                              const PpnContext& ctx, const HamiltonianOptions& opts = {});

// Final Hamiltonian with all couplings: metric internal kinetic and Coulomb
// terms, prefactored field energy and polarisation self-term.  grad_phi is
// forced to zero (the regime in which the final form is derived).
HamiltonianReport h_final(const ComState& com, const FieldConfiguration& fields,
                          const PpnContext& ctx, const HamiltonianOptions& opts = {});

// Hamiltonian of a single point particle of mass m in the PPN background
// (rest energy subtracted).
double h_point(const Vec3& P, const Vec3& R, double m, const PpnContext& ctx);

// Independent oracle: the exact mass-shell Hamiltonian obtained from
// -g^mn p_m p_n = m^2 c^2 solved for the energy, rest energy subtracted;
// evaluated cancellation-free.
double h_point_geodesic(const Vec3& P, double m, const PpnContext& ctx);

enum class InternalSplit {
  Metric,  // internal Hamiltonian with metric kinetic and Coulomb terms
  Flat     // flat-metric internal Hamiltonian (the naive split)
};

// Signed defect of the composite-point-particle identity
//   H_C,final - H_point(P, R; M + H_A/c^2)
// with H_A taken per `split`.  The Metric split leaves an O(c^-4) defect; the
// Flat split leaves gamma (2 p_r^2/2mu + e1e2/(4 pi eps0 r)) phi/c^2 at
// leading order.
double composite_identity_defect(const ComState& com, const PpnContext& ctx,
                                 InternalSplit split = InternalSplit::Metric);
double composite_identity_residual(const ComState& com, const PpnContext& ctx);

// Canonical transformation removing the internal/central cross terms.
// decoupling_old_from_new treats the input's (R, r, p_r) slots as the new
// coordinates (Q, q, p) and applies the closed-form inverse map;
// decoupling_transform solves the forward direction by fixed-point iteration.
ComState decoupling_old_from_new(const ComState& new_coords, const PpnContext& ctx);
ComState decoupling_transform(const ComState& old_coords, const PpnContext& ctx);

enum class Frame { Coordinate, Tetrad };

// Atom-light coupling terms in the requested frame; the two frames agree
// term by term to O(c^-4).
HamiltonianReport atom_light_terms(const ComState& com, const FieldConfiguration& fields,
                                   const PpnContext& ctx, Frame frame,
                                   const HamiltonianOptions& opts = {});

}  // namespace ppn::hamiltonians
