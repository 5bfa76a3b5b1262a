#pragma once

// Independent reference implementations of the gravity-free two-particle
// formulas (Darwin Lagrangian, minimal-coupling Hamiltonian, centre-of-mass
// split, decoupling transformation, internal potentials).  Written directly
// term by term, deliberately not sharing code with the library, so the
// phi = 0 regression has a genuinely separate evaluation path.

#include <cmath>

#include "core/states.hpp"
#include "core/units.hpp"
#include "core/vec3.hpp"

namespace flat_reference {

using ppn::ComState;
using ppn::TwoParticleState;
using ppn::UnitSystem;
using ppn::Vec3;

inline double coulomb_k(const UnitSystem& u) { return 1.0 / (4.0 * M_PI * u.epsilon0); }

// Darwin Lagrangian (no rest-mass terms).
inline double darwin_lagrangian(const TwoParticleState& s, const UnitSystem& u) {
  const double c2 = u.c * u.c;
  const Vec3 r = s.r1 - s.r2;
  const double rn = norm(r);
  const double v1_2 = dot(s.u1, s.u1);
  const double v2_2 = dot(s.u2, s.u2);
  double L = 0.5 * s.m1 * v1_2 + s.m1 * v1_2 * v1_2 / (8.0 * c2);
  L += 0.5 * s.m2 * v2_2 + s.m2 * v2_2 * v2_2 / (8.0 * c2);
  L -= coulomb_k(u) * s.e1 * s.e2 / rn * (1.0 - dot(s.u1, s.u2) / (2.0 * c2));
  L += coulomb_k(u) * s.e1 * s.e2 * dot(s.u1, r) * dot(s.u2, r) / (2.0 * rn * rn * rn * c2);
  return L;
}

// Minimal-coupling Hamiltonian at zero external field (pbar_i = p_i), without
// the field-energy integral.
inline double hamiltonian_matter(const TwoParticleState& s, const UnitSystem& u) {
  const double c2 = u.c * u.c;
  const Vec3 r = s.r1 - s.r2;
  const double rn = norm(r);
  const double p1_2 = dot(s.u1, s.u1);
  const double p2_2 = dot(s.u2, s.u2);
  double H = p1_2 / (2.0 * s.m1) - p1_2 * p1_2 / (8.0 * s.m1 * s.m1 * s.m1 * c2);
  H += p2_2 / (2.0 * s.m2) - p2_2 * p2_2 / (8.0 * s.m2 * s.m2 * s.m2 * c2);
  H += coulomb_k(u) * s.e1 * s.e2 / rn * (1.0 - dot(s.u1, s.u2) / (2.0 * s.m1 * s.m2 * c2));
  H -= coulomb_k(u) * s.e1 * s.e2 * dot(s.u1, r) * dot(s.u2, r) /
       (2.0 * rn * rn * rn * c2 * s.m1 * s.m2);
  return H;
}

struct ComSplit {
  double h_c = 0.0;
  double h_a = 0.0;
  double h_al = 0.0;  // dipole, Roentgen, diamagnetic; self term excluded
  double h_x = 0.0;
};

// Centre-of-mass split of the multipolar Hamiltonian at phi = 0; E and B are
// the external transverse coordinate fields at R (classical values, H.c.
// terms doubled).
inline ComSplit com_split(const ComState& s, const UnitSystem& u, const Vec3& E, const Vec3& B) {
  const double c2 = u.c * u.c;
  const double M = s.m1 + s.m2;
  const double mu = s.m1 * s.m2 / M;
  const double e2q = -s.e1 * s.e2;  // e^2 for opposite unit charges
  const double k = coulomb_k(u);
  const double rn = norm(s.r);
  const double P2 = dot(s.P, s.P);
  const double p2 = dot(s.p_r, s.p_r);

  ComSplit out;
  out.h_c = P2 / (2.0 * M) *
            (1.0 - P2 / (4.0 * M * M * c2) -
             (p2 / (2.0 * mu) - k * e2q / rn) / (M * c2));

  const double m3 = (s.m1 * s.m1 * s.m1 + s.m2 * s.m2 * s.m2) / (M * M * M);
  out.h_a = p2 / (2.0 * mu) * (1.0 - m3 * p2 / (4.0 * mu * mu * c2));
  out.h_a -= k * e2q *
             (1.0 / rn + (p2 / rn + dot(s.p_r, s.r) * dot(s.p_r, s.r) / (rn * rn * rn)) /
                             (2.0 * mu * M * c2));

  const Vec3 d = s.r * ((s.e1 * s.m2 - s.e2 * s.m1) / M);
  const Vec3 dxB = cross(d, B);
  out.h_al = -dot(d, E) + dot(s.P, dxB) / M -
             (s.m1 - s.m2) / (2.0 * s.m1 * s.m2) * dot(s.p_r, dxB) + dot(dxB, dxB) / (8.0 * mu);

  out.h_x = -dot(s.P, s.p_r) * dot(s.P, s.p_r) / (2.0 * M * M * mu * c2);
  out.h_x += k * e2q / rn * dot(s.P, s.r) * dot(s.P, s.r) / (rn * rn) / (2.0 * M * M * c2);
  out.h_x += (s.m1 - s.m2) / (2.0 * mu * M * M * c2) *
             (dot(s.P, s.p_r) * p2 / mu -
              k * e2q * (dot(s.P, s.p_r) / rn +
                         dot(s.P, s.r) * dot(s.r, s.p_r) / (rn * rn * rn)));
  return out;
}

// Decoupling transformation (new coordinates Q, q, p -> old R, r, p_r),
// classical form with doubled H.c. terms.
inline ComState decoupling_map(const ComState& nc, const UnitSystem& u) {
  const double c2 = u.c * u.c;
  const double M = nc.m1 + nc.m2;
  const double mu = nc.m1 * nc.m2 / M;
  const double dm = nc.m1 - nc.m2;
  const double e2q = -nc.e1 * nc.e2;
  const double k = coulomb_k(u);
  const double qn = norm(nc.r);
  const Vec3 q = nc.r, p = nc.p_r, P = nc.P;

  ComState old = nc;
  old.R = nc.R +
          (q * (dot(p, p) / mu) - q * (k * e2q / qn)) * (dm / (2.0 * M * M * c2)) -
          (p * dot(q, P) + q * dot(P, p)) * (1.0 / (2.0 * M * M * c2));
  old.r = q + p * (dm * dot(q, P) / (mu * M * M * c2)) - P * (dot(q, P) / (2.0 * M * M * c2));
  old.p_r = p + P * (dot(p, P) / (2.0 * M * M * c2)) -
            (P * (dot(p, p) / mu) -
             (P * (1.0 / qn) - q * (dot(P, q) / (qn * qn * qn))) * (k * e2q)) *
                (dm / (2.0 * M * M * c2));
  return old;
}

// Internal scalar potential of point charges (A1).
inline double scalar_potential(const TwoParticleState& s, const Vec3& x, const UnitSystem& u) {
  return coulomb_k(u) * (s.e1 / norm(x - s.r1) + s.e2 / norm(x - s.r2));
}

// Internal transverse vector potential (A3), velocity representation.
inline Vec3 vector_potential(const TwoParticleState& s, const Vec3& x, const UnitSystem& u) {
  const double mu0 = 1.0 / (u.epsilon0 * u.c * u.c);
  Vec3 a{};
  const Vec3 pos[2] = {s.r1, s.r2};
  const Vec3 vel[2] = {s.u1, s.u2};
  const double q[2] = {s.e1, s.e2};
  for (int i = 0; i < 2; ++i) {
    const Vec3 sx = x - pos[i];
    const double sn = norm(sx);
    a += (vel[i] / sn + sx * (dot(vel[i], sx) / (sn * sn * sn))) * q[i];
  }
  return a * (mu0 / (8.0 * M_PI));
}

}  // namespace flat_reference
