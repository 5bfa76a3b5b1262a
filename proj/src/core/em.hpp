#pragma once

#include "core/fields.hpp"
#include "core/states.hpp"
#include "core/units.hpp"
#include "core/vec3.hpp"

namespace ppn::em {

// Internal electric scalar potential with the gravitational prefactor
// (1 + (gamma+1) phi/c^2); smeared charges use the erf kernel.
double internal_scalar_potential(const ChargeModel& charges, const Vec3& x,
                                 const PpnContext& ctx);

// Internal transverse vector potential with prefactor (1 - (gamma+1) phi/c^2).
Vec3 internal_vector_potential(const TwoParticleState& state, const Vec3& x,
                               const PpnContext& ctx);

// Relative L2 residual of the modified Poisson equation
//   Lap phi_el = -(1/eps0)(1 + (gamma+1) phi/c^2) rho
// on a cubic grid with a second-order stencil.  Requires smeared charges.
double poisson_residual(const ChargeModel& charges, const GridSpec& grid, const PpnContext& ctx);

struct EmLagrangianTerms {
  double internal_coulomb = 0.0;   // prefactored
  double darwin_velocity = 0.0;    // no phi prefactor
  double external_coupling = 0.0;
  double external_field = 0.0;

  double total() const {
    return internal_coulomb + darwin_velocity + external_coupling + external_field;
  }
};

EmLagrangianTerms em_lagrangian_terms(const TwoParticleState& state,
                                      const FieldConfiguration& fields, const PpnContext& ctx,
                                      double time = 0.0);

// Momentum conjugate to A_perp: Pi = eps0 (1 - (gamma+1) phi/c^2) dt A_perp.
Vec3 canonical_field_momentum(const FieldConfiguration& fields, const Vec3& x, double t,
                              const PpnContext& ctx);

enum class FieldFrame { Coordinate, Tetrad };

// External field energy by box quadrature.  Coordinate form:
//   (eps0/2) int (1 + (gamma+1) phi/c^2) [ (Pi/eps0)^2 + c^2 (curl A)^2 ]
// Tetrad form: (eps0/2) int sqrt(-g) [ E_phys_perp^2 + c^2 B_phys^2 ].
double field_energy(const FieldConfiguration& fields, const PpnContext& ctx, FieldFrame frame,
                    double time = 0.0);

// Pure external-field Lagrangian term (same quadrature as the breakdown's
// external_field entry); velocity-independent.
double external_field_lagrangian(const FieldConfiguration& fields, const PpnContext& ctx,
                                 double time = 0.0);

}  // namespace ppn::em
