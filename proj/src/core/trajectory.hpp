#pragma once

#include <vector>

#include "core/units.hpp"
#include "core/vec3.hpp"

namespace ppn::trajectory {

// Hamilton's equations of the composite point particle
//   H(P, R) = P^2/2m + m phi(R) - P^4/8m^3c^2
//             + (2 gamma + 1) phi(R) P^2 / (2 m c^2) + (2 beta - 1) m phi(R)^2 / 2c^2
// with mass m = M + E_internal/c^2 in a linear potential profile.
struct CompositeParticle {
  double mass_bare = 1.0;        // M
  double internal_energy = 0.0;  // H_A,final value; effective mass = M + E/c^2
};

struct IntegratorConfig {
  double time_step = 1.0e-2;
  int steps = 1000;
  int sample_stride = 1;     // record every k-th step
  double drift_tolerance = 1.0e-6;
};

struct TrajectorySample {
  double t = 0.0;
  Vec3 R{};
  Vec3 P{};
  double energy = 0.0;
};

struct TrajectoryResult {
  std::vector<TrajectorySample> samples;
  double energy_drift = 0.0;  // max |H(t) - H(0)| / max(|H(0)|, Newtonian scale)
  bool drift_ok = true;
};

double effective_mass(const CompositeParticle& particle, const UnitSystem& units);

double hamiltonian(const Vec3& P, const Vec3& R, double m, const PhiProfile& profile,
                   const PpnContext& ctx_template);

// Implicit-midpoint integration (symplectic for non-separable H); the
// fixed-point solve converges fast because the PN corrections are small.
TrajectoryResult integrate(const CompositeParticle& particle, const Vec3& R0, const Vec3& P0,
                           const PhiProfile& profile, const PpnContext& ctx_template,
                           const IntegratorConfig& config);

}  // namespace ppn::trajectory
