#include "core/trajectory.hpp"

#include <cmath>
#include <limits>

#include "core/error.hpp"

namespace ppn::trajectory {

double effective_mass(const CompositeParticle& particle, const UnitSystem& units) {
  return particle.mass_bare + particle.internal_energy / (units.c * units.c);
}

namespace {

struct Derivatives {
  Vec3 dH_dP;
  Vec3 dH_dR;
};

Derivatives gradients(const Vec3& P, const Vec3& R, double m, const PhiProfile& profile,
                      double c2, double gamma, double beta) {
  const double phi = profile.at(R);
  const double p2 = norm2(P);
  Derivatives d;
  d.dH_dP = P * (1.0 / m - p2 / (2.0 * m * m * m * c2) + (2.0 * gamma + 1.0) * phi / (m * c2));
  const double weight =
      m + 0.5 * (2.0 * gamma + 1.0) * p2 / (m * c2) + (2.0 * beta - 1.0) * m * phi / c2;
  d.dH_dR = profile.g * weight;
  return d;
}

}  // namespace

double hamiltonian(const Vec3& P, const Vec3& R, double m, const PhiProfile& profile,
                   const PpnContext& ctx_template) {
  const double c2 = ctx_template.units.c * ctx_template.units.c;
  const double phi = profile.at(R);
  const double p2 = norm2(P);
  return p2 / (2.0 * m) + m * phi - p2 * p2 / (8.0 * m * m * m * c2) +
         0.5 * (2.0 * ctx_template.gamma + 1.0) * phi * p2 / (m * c2) +
         0.5 * (2.0 * ctx_template.beta - 1.0) * m * phi * phi / c2;
}

TrajectoryResult integrate(const CompositeParticle& particle, const Vec3& R0, const Vec3& P0,
                           const PhiProfile& profile, const PpnContext& ctx_template,
                           const IntegratorConfig& config) {
  if (!(config.time_step > 0.0) || config.steps < 1 || config.sample_stride < 1) {
    fail_invalid("invalid integrator configuration");
  }
  const double m = effective_mass(particle, ctx_template.units);
  if (!(m > 0.0)) fail_invalid("effective mass must be positive");
  const double c2 = ctx_template.units.c * ctx_template.units.c;
  const double gamma = ctx_template.gamma;
  const double beta = ctx_template.beta;
  const double h = config.time_step;

  TrajectoryResult result;
  Vec3 R = R0, P = P0;
  const double h0 = hamiltonian(P0, R0, m, profile, ctx_template);
  const double scale = std::max(std::abs(h0), norm2(P0) / (2.0 * m) + std::abs(m * profile.at(R0)));

  result.samples.push_back({0.0, R, P, h0});
  double max_drift = 0.0;

  for (int step = 1; step <= config.steps; ++step) {
    // implicit midpoint: z' = z + h J dH((z + z')/2)
    Vec3 R_next = R, P_next = P;
    for (int iter = 0; iter < 100; ++iter) {
      const Vec3 R_mid = (R + R_next) * 0.5;
      const Vec3 P_mid = (P + P_next) * 0.5;
      const Derivatives d = gradients(P_mid, R_mid, m, profile, c2, gamma, beta);
      const Vec3 R_new = R + d.dH_dP * h;
      const Vec3 P_new = P - d.dH_dR * h;
      const double delta = std::max(norm(R_new - R_next), norm(P_new - P_next));
      R_next = R_new;
      P_next = P_new;
      if (delta <= 1.0e-15 * (1.0 + norm(R_next) + norm(P_next))) break;
    }
    R = R_next;
    P = P_next;

    const double energy = hamiltonian(P, R, m, profile, ctx_template);
    if (!std::isfinite(energy)) {
      // step too large for the fixed-point solve; report unbounded drift
      result.energy_drift = std::numeric_limits<double>::infinity();
      result.drift_ok = false;
      result.samples.push_back({step * h, R, P, energy});
      return result;
    }
    max_drift = std::max(max_drift, std::abs(energy - h0));
    if (step % config.sample_stride == 0 || step == config.steps) {
      result.samples.push_back({step * h, R, P, energy});
    }
  }

  result.energy_drift = max_drift / std::max(scale, 1.0e-300);
  result.drift_ok = result.energy_drift <= config.drift_tolerance;
  return result;
}

}  // namespace ppn::trajectory
