#pragma once

#include "core/vec3.hpp"

namespace ppn {

// Code-unit system with a tunable speed of light.  The default corresponds to
// Hartree-like atomic units (hbar = m_e = e = 1, c = 1/alpha), which keeps the
// hydrogenic test problems at O(1) numbers.  Rescaling c while holding states
// fixed is the primary verification mechanism, so c is a first-class knob.
struct UnitSystem {
  double c = 137.035999;
  double epsilon0 = 1.0 / (4.0 * 3.14159265358979323846);  // so that e^2/(4 pi eps0) = e^2
  double hbar = 1.0;

  double mu0() const { return 1.0 / (epsilon0 * c * c); }
  double coulomb_factor() const;  // 1/(4 pi epsilon0)

  void validate() const;

  UnitSystem with_c(double new_c) const {
    UnitSystem u = *this;
    u.c = new_c;
    return u;
  }
};

// Gravitational background at the centre of mass: Eddington-Robertson
// parameters, the potential phi (velocity^2 units) and its gradient.  phi is
// the value at the expansion point; operations that need per-particle values
// linearise phi(x) = phi + grad_phi . (x - R) about the state's centre of
// mass.
struct PpnContext {
  UnitSystem units;
  double gamma = 1.0;
  double beta = 1.0;
  double phi = 0.0;        // velocity^2 units
  Vec3 grad_phi{};         // velocity^2 / length
  double weak_field_limit = 1.0e-2;

  double chi() const { return phi / (units.c * units.c); }
  bool has_grad_phi() const { return grad_phi.x != 0.0 || grad_phi.y != 0.0 || grad_phi.z != 0.0; }

  // phi linearised about the expansion point `com`
  double phi_at(const Vec3& x, const Vec3& com) const { return phi + dot(grad_phi, x - com); }

  void validate() const;

  PpnContext with_phi_over_c2(double chi_value) const {
    PpnContext ctx = *this;
    ctx.phi = chi_value * units.c * units.c;
    return ctx;
  }
  PpnContext with_c(double new_c) const {
    PpnContext ctx = *this;
    ctx.units.c = new_c;
    return ctx;
  }
};

// Linear potential profile phi(x) = phi0 + g . x used by the composite point
// particle trajectory runs (free-fall comparisons).
struct PhiProfile {
  double phi0 = 0.0;
  Vec3 g{};

  double at(const Vec3& x) const { return phi0 + dot(g, x); }
};

}  // namespace ppn
