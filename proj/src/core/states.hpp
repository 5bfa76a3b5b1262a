#pragma once

#include <cstdint>

#include "core/units.hpp"
#include "core/vec3.hpp"

namespace ppn {

// Two charged point particles; e2 = -e1 by the usual convention but the signs
// stay configurable.  Either velocities or canonical momenta are populated,
// recorded by `rep`.
struct TwoParticleState {
  enum class Rep { Velocity, Momentum };

  double m1 = 1.0, m2 = 1.0;
  double e1 = -1.0, e2 = 1.0;
  Vec3 r1{}, r2{};
  Vec3 u1{}, u2{};  // velocities or momenta, depending on rep
  Rep rep = Rep::Velocity;

  static TwoParticleState velocities(double m1, double m2, double e, const Vec3& r1,
                                     const Vec3& r2, const Vec3& v1, const Vec3& v2);
  static TwoParticleState momenta(double m1, double m2, double e, const Vec3& r1, const Vec3& r2,
                                  const Vec3& p1, const Vec3& p2);

  double mass_total() const { return m1 + m2; }
  double mass_reduced() const { return m1 * m2 / (m1 + m2); }
  Vec3 rel() const { return r1 - r2; }
  Vec3 com_position() const { return (r1 * m1 + r2 * m2) / (m1 + m2); }

  void require_velocity_rep() const;
  void require_momentum_rep() const;
  // Guards: positive masses, r1 != r2, and |v| < 0.3 c (velocity rep) or
  // |p|/(m c) < 0.3 (momentum rep).
  void validate(const UnitSystem& units) const;
};

// Centre-of-mass / relative phase-space point with the masses and charges
// needed to reconstruct M, mu and the dipole moment.
struct ComState {
  double m1 = 1.0, m2 = 1.0;
  double e1 = -1.0, e2 = 1.0;
  Vec3 R{}, P{}, r{}, p_r{};

  double mass_total() const { return m1 + m2; }
  double mass_reduced() const { return m1 * m2 / (m1 + m2); }
  double mass_asymmetry() const { return m1 - m2; }
  // d = sum_k e_k (r_k - R) = (e1 m2 - e2 m1)/M r
  Vec3 dipole() const { return r * ((e1 * m2 - e2 * m1) / (m1 + m2)); }

  void validate(const UnitSystem& units) const;
};

// Canonical point transformation between lab momenta and (P, p_r):
//   P = p1 + p2,   p_r = (m2 p1 - m1 p2) / M
ComState com_from_lab(const TwoParticleState& lab);
TwoParticleState lab_from_com(const ComState& com);

// Deterministic low-discrepancy phase-point source (Halton sequence); used by
// the CLI and the probe suites so that sampled states are reproducible.
class PhasePointSampler {
 public:
  PhasePointSampler(const UnitSystem& units, std::uint64_t seed, double m1, double m2, double e);

  // Samples within the expansion-validity guards: |r| in [0.5, 2] length
  // units, |P|/(M c) and |p_r|/(mu c) below the given caps.
  ComState next(double momentum_cap = 0.05);

 private:
  double halton(std::uint64_t index, unsigned base) const;

  UnitSystem units_;
  std::uint64_t index_;
  double m1_, m2_, e_;
};

}  // namespace ppn
