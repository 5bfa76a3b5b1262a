#include "core/states.hpp"

#include <cmath>

#include "core/error.hpp"

namespace ppn {

TwoParticleState TwoParticleState::velocities(double m1, double m2, double e, const Vec3& r1,
                                              const Vec3& r2, const Vec3& v1, const Vec3& v2) {
  TwoParticleState s;
  s.m1 = m1;
  s.m2 = m2;
  s.e1 = -e;
  s.e2 = e;
  s.r1 = r1;
  s.r2 = r2;
  s.u1 = v1;
  s.u2 = v2;
  s.rep = Rep::Velocity;
  return s;
}

TwoParticleState TwoParticleState::momenta(double m1, double m2, double e, const Vec3& r1,
                                           const Vec3& r2, const Vec3& p1, const Vec3& p2) {
  TwoParticleState s = velocities(m1, m2, e, r1, r2, p1, p2);
  s.rep = Rep::Momentum;
  return s;
}

void TwoParticleState::require_velocity_rep() const {
  if (rep != Rep::Velocity) fail_invalid("operation needs the velocity representation");
}

void TwoParticleState::require_momentum_rep() const {
  if (rep != Rep::Momentum) fail_invalid("operation needs the momentum representation");
}

void TwoParticleState::validate(const UnitSystem& units) const {
  if (!(m1 > 0.0) || !(m2 > 0.0)) fail_invalid("masses must be positive");
  if (norm2(rel()) == 0.0) fail_domain("coincident particle positions (Coulomb singularity)");
  const double cap = 0.3;
  if (rep == Rep::Velocity) {
    if (norm(u1) >= cap * units.c || norm(u2) >= cap * units.c) {
      fail_domain("particle velocity outside the expansion-validity guard |v| < 0.3 c");
    }
  } else {
    if (norm(u1) >= cap * m1 * units.c || norm(u2) >= cap * m2 * units.c) {
      fail_domain("particle momentum outside the expansion-validity guard |p| < 0.3 m c");
    }
  }
}

void ComState::validate(const UnitSystem& units) const {
  if (!(m1 > 0.0) || !(m2 > 0.0)) fail_invalid("masses must be positive");
  if (norm2(r) == 0.0) fail_domain("zero relative separation");
  const double cap = 0.3;
  if (norm(P) >= cap * mass_total() * units.c) {
    fail_domain("central momentum outside the guard |P| < 0.3 M c");
  }
  if (norm(p_r) >= cap * mass_reduced() * units.c) {
    fail_domain("relative momentum outside the guard |p_r| < 0.3 mu c");
  }
}

ComState com_from_lab(const TwoParticleState& lab) {
  lab.require_momentum_rep();
  ComState com;
  com.m1 = lab.m1;
  com.m2 = lab.m2;
  com.e1 = lab.e1;
  com.e2 = lab.e2;
  const double M = lab.mass_total();
  com.R = (lab.r1 * lab.m1 + lab.r2 * lab.m2) / M;
  com.r = lab.r1 - lab.r2;
  com.P = lab.u1 + lab.u2;
  com.p_r = (lab.u1 * lab.m2 - lab.u2 * lab.m1) / M;
  return com;
}

TwoParticleState lab_from_com(const ComState& com) {
  const double M = com.mass_total();
  TwoParticleState lab;
  lab.m1 = com.m1;
  lab.m2 = com.m2;
  lab.e1 = com.e1;
  lab.e2 = com.e2;
  lab.r1 = com.R + com.r * (com.m2 / M);
  lab.r2 = com.R - com.r * (com.m1 / M);
  lab.u1 = com.P * (com.m1 / M) + com.p_r;
  lab.u2 = com.P * (com.m2 / M) - com.p_r;
  lab.rep = TwoParticleState::Rep::Momentum;
  return lab;
}

PhasePointSampler::PhasePointSampler(const UnitSystem& units, std::uint64_t seed, double m1,
                                     double m2, double e)
    : units_(units), index_(seed + 1), m1_(m1), m2_(m2), e_(e) {}

double PhasePointSampler::halton(std::uint64_t index, unsigned base) const {
  double f = 1.0, value = 0.0;
  while (index > 0) {
    f /= base;
    value += f * (index % base);
    index /= base;
  }
  return value;
}

ComState PhasePointSampler::next(double momentum_cap) {
  static constexpr unsigned bases[9] = {2, 3, 5, 7, 11, 13, 17, 19, 23};
  double u[9];
  for (int k = 0; k < 9; ++k) u[k] = halton(index_, bases[k]);
  ++index_;

  ComState com;
  com.m1 = m1_;
  com.m2 = m2_;
  com.e1 = -e_;
  com.e2 = e_;

  auto direction = [](double cos_theta_u, double phi_u) {
    const double ct = 2.0 * cos_theta_u - 1.0;
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    const double ph = 2.0 * M_PI * phi_u;
    return Vec3{st * std::cos(ph), st * std::sin(ph), ct};
  };

  const double M = com.mass_total();
  const double mu = com.mass_reduced();
  com.r = direction(u[0], u[1]) * (0.5 + 1.5 * u[2]);
  com.p_r = direction(u[3], u[4]) * (momentum_cap * mu * units_.c * (0.2 + 0.8 * u[5]));
  com.P = direction(u[6], u[7]) * (momentum_cap * M * units_.c * (0.2 + 0.8 * u[8]));
  com.R = Vec3{0.0, 0.0, 0.0};
  return com;
}

}  // namespace ppn
