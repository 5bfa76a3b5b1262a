#pragma once

#include <functional>

#include "core/fields.hpp"
#include "core/states.hpp"
#include "core/units.hpp"
#include "core/vec3.hpp"

namespace ppn::lagrangians {

// Named summands; total() is the plain sum, so the breakdown invariant holds
// by construction.  total_without_rest() avoids the -M c^2 constant, which
// would otherwise swamp small residuals in c-scaling comparisons.
struct LagrangianBreakdown {
  double rest_mass = 0.0;
  double newton_kinetic = 0.0;
  double p4_kinetic = 0.0;
  double newton_potential = 0.0;     // -m phi
  double phi_squared = 0.0;          // -(2 beta - 1) m phi^2 / 2c^2
  double kinetic_phi_cross = 0.0;    // -(2 gamma + 1)/2 (m phi / c^2) v^2
  double coulomb = 0.0;              // -(1 + (gamma+1) phi/c^2) e1 e2 / (4 pi eps0 r)
  double darwin_velocity = 0.0;
  double external_coupling = 0.0;    // sum_i e_i v_i . A_perp(r_i)
  double external_field = 0.0;       // (eps0/2) int [(1-p)(dtA)^2 - c^2 (1+p)(curl A)^2]

  double total() const {
    return rest_mass + total_without_rest();
  }
  double total_without_rest() const {
    return newton_kinetic + p4_kinetic + newton_potential + phi_squared + kinetic_phi_cross +
           coulomb + darwin_velocity + external_coupling + external_field;
  }
};

// Exact point-particle Lagrangian -m c^2 sqrt(-g_mn xdot^m xdot^n / c^2) in
// the diagonal PPN metric.  Errors on spacelike/null velocities.
double exact_point_lagrangian(double m, const Vec3& x, const Vec3& v, const PpnContext& ctx);

// exact_point_lagrangian + m c^2, evaluated without forming the huge rest
// term, so residuals against the post-Newtonian expansion stay meaningful
// under c -> lambda c scaling.
double exact_point_lagrangian_excess(double m, const Vec3& x, const Vec3& v,
                                     const PpnContext& ctx);

// Post-Newtonian expansion of the point Lagrangian, term by term.
LagrangianBreakdown pn_point_lagrangian(double m, const Vec3& x, const Vec3& v,
                                        const PpnContext& ctx);

// Gravity-free two-particle Darwin Lagrangian (no rest-mass terms).
double darwin_lagrangian(const TwoParticleState& state, const UnitSystem& units);

// Full matter + electromagnetic Lagrangian of the gravitationally corrected
// system: Darwin terms, per-particle gravity terms, the prefactored internal
// Coulomb term, pointwise external coupling and the external field term.
// The pure field term is velocity-independent; callers that strip it anyway
// (Legendre probes) can skip its quadrature.
LagrangianBreakdown total_lagrangian(const TwoParticleState& state, const PpnContext& ctx,
                                     const FieldConfiguration& fields, double time = 0.0,
                                     bool include_external_field = true);

// Black-box Lagrangian of the particle velocities (v1, v2).
using VelocityLagrangian = std::function<double(const Vec3&, const Vec3&)>;

struct LegendreOptions {
  int max_iterations = 50;
  double relative_tolerance = 1.0e-12;
};

// Numerical Legendre transform with respect to the particle velocities:
// given target momenta (state in momentum representation), inverts
// p_i = dL/dv_i by damped Newton iteration and returns sum_i p_i.v_i - L.
double numerical_legendre(const VelocityLagrangian& lagrangian, const TwoParticleState& state,
                          const UnitSystem& units, const LegendreOptions& opts = {});

}  // namespace ppn::lagrangians
