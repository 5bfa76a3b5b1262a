#include "core/em.hpp"

#include <cmath>
#include <vector>

#include "core/error.hpp"
#include "core/geometry.hpp"

namespace ppn::em {

namespace {

// erf(s / (sqrt2 sigma)) / s, continued analytically through s = 0
double erf_over_r(double s, double sigma) {
  const double a = 1.0 / (std::sqrt(2.0) * sigma);
  const double x = a * s;
  if (x < 1.0e-4) {
    // erf(x)/x = 2/sqrt(pi) (1 - x^2/3 + x^4/10)
    return a * (2.0 / std::sqrt(M_PI)) * (1.0 - x * x / 3.0 + x * x * x * x / 10.0);
  }
  return std::erf(x) / s;
}

double gaussian_density(double s, double sigma) {
  const double norm = std::pow(2.0 * M_PI * sigma * sigma, -1.5);
  return norm * std::exp(-0.5 * s * s / (sigma * sigma));
}

}  // namespace

double internal_scalar_potential(const ChargeModel& charges, const Vec3& x,
                                 const PpnContext& ctx) {
  charges.validate();
  ctx.validate();
  const double prefactor = 1.0 + (ctx.gamma + 1.0) * ctx.chi();
  const double k = ctx.units.coulomb_factor();

  double phi_el = 0.0;
  for (std::size_t i = 0; i < charges.positions.size(); ++i) {
    const double s = norm(x - charges.positions[i]);
    if (charges.sigma > 0.0) {
      phi_el += k * charges.charges[i] * erf_over_r(s, charges.sigma);
    } else {
      if (s == 0.0) fail_domain("potential evaluated at a point charge");
      phi_el += k * charges.charges[i] / s;
    }
  }
  return prefactor * phi_el;
}

Vec3 internal_vector_potential(const TwoParticleState& state, const Vec3& x,
                               const PpnContext& ctx) {
  state.require_velocity_rep();
  ctx.validate();
  const double prefactor = 1.0 - (ctx.gamma + 1.0) * ctx.chi();
  const double mu0_over_8pi = ctx.units.mu0() / (8.0 * M_PI);

  Vec3 a{};
  const Vec3 pos[2] = {state.r1, state.r2};
  const Vec3 vel[2] = {state.u1, state.u2};
  const double q[2] = {state.e1, state.e2};
  for (int i = 0; i < 2; ++i) {
    const Vec3 s = x - pos[i];
    const double sn = norm(s);
    if (sn == 0.0) fail_domain("vector potential evaluated at a particle");
    a += (vel[i] / sn + s * (dot(vel[i], s) / (sn * sn * sn))) * q[i];
  }
  return a * (prefactor * mu0_over_8pi);
}

double poisson_residual(const ChargeModel& charges, const GridSpec& grid, const PpnContext& ctx) {
  charges.validate();
  if (!(charges.sigma > 0.0)) fail_invalid("poisson residual needs smeared charges");
  grid.validate(charges);
  ctx.validate();

  const double prefactor = 1.0 + (ctx.gamma + 1.0) * ctx.chi();
  const int n = grid.points_per_dim();
  const double h = grid.spacing;

  // Potential sampled on the lattice including a one-point ghost margin.
  const int np = n + 2;
  std::vector<double> pot(static_cast<std::size_t>(np) * np * np);
  auto at = [&](int i, int j, int k) -> double& {
    return pot[(static_cast<std::size_t>(i) * np + j) * np + k];
  };
  for (int i = 0; i < np; ++i) {
    for (int j = 0; j < np; ++j) {
      for (int k = 0; k < np; ++k) {
        const Vec3 x = grid.box_min + Vec3{(i - 1) * h, (j - 1) * h, (k - 1) * h};
        at(i, j, k) = internal_scalar_potential(charges, x, ctx);
      }
    }
  }

  double res2 = 0.0, rhs2 = 0.0;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      for (int k = 1; k <= n; ++k) {
        const Vec3 x = grid.box_min + Vec3{(i - 1) * h, (j - 1) * h, (k - 1) * h};
        const double lap = (at(i + 1, j, k) + at(i - 1, j, k) + at(i, j + 1, k) +
                            at(i, j - 1, k) + at(i, j, k + 1) + at(i, j, k - 1) -
                            6.0 * at(i, j, k)) /
                           (h * h);
        double rho = 0.0;
        for (std::size_t q = 0; q < charges.positions.size(); ++q) {
          rho += charges.charges[q] * gaussian_density(norm(x - charges.positions[q]),
                                                       charges.sigma);
        }
        const double rhs = -prefactor * rho / ctx.units.epsilon0;
        res2 += (lap - rhs) * (lap - rhs);
        rhs2 += rhs * rhs;
      }
    }
  }
  if (!(rhs2 > 0.0)) fail_invalid("grid does not resolve the charge density");
  return std::sqrt(res2 / rhs2);
}

namespace {

// Shared box quadrature of the two field quadratic forms int (dtA)^2 and
// int (curl A)^2 (midpoint rule).
struct FieldQuadrature {
  double electric = 0.0;  // int (dt A)^2
  double magnetic = 0.0;  // int (curl A)^2
};

FieldQuadrature quadrature(const FieldConfiguration& fields, double c, double time) {
  fields.validate();
  fields.require_resolution();
  const int n = fields.points_per_dim;
  const double h = fields.box_side / n;
  FieldQuadrature q;
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      for (int iz = 0; iz < n; ++iz) {
        const Vec3 x = fields.box_min + Vec3{(ix + 0.5) * h, (iy + 0.5) * h, (iz + 0.5) * h};
        q.electric += norm2(fields.dt_a_perp(x, time, c));
        q.magnetic += norm2(fields.b_coord(x, time, c));
      }
    }
  }
  const double dv = h * h * h;
  q.electric *= dv;
  q.magnetic *= dv;
  return q;
}

}  // namespace

EmLagrangianTerms em_lagrangian_terms(const TwoParticleState& state,
                                      const FieldConfiguration& fields, const PpnContext& ctx,
                                      double time) {
  state.require_velocity_rep();
  state.validate(ctx.units);
  ctx.validate();

  const double c = ctx.units.c;
  const double c2 = c * c;
  const double p = (ctx.gamma + 1.0) * ctx.chi();
  const Vec3 r = state.rel();
  const double rn = norm(r);
  const double kq = ctx.units.coulomb_factor() * state.e1 * state.e2;

  EmLagrangianTerms t;
  t.internal_coulomb = -(1.0 + p) * kq / rn;
  t.darwin_velocity = (kq / (2.0 * c2)) * (dot(state.u1, state.u2) / rn +
                                           dot(state.u1, r) * dot(state.u2, r) / (rn * rn * rn));
  if (!fields.empty()) {
    t.external_coupling = state.e1 * dot(state.u1, fields.a_perp(state.r1, time, c)) +
                          state.e2 * dot(state.u2, fields.a_perp(state.r2, time, c));
    const FieldQuadrature q = quadrature(fields, c, time);
    t.external_field =
        0.5 * ctx.units.epsilon0 * ((1.0 - p) * q.electric - c2 * (1.0 + p) * q.magnetic);
  }
  return t;
}

Vec3 canonical_field_momentum(const FieldConfiguration& fields, const Vec3& x, double t,
                              const PpnContext& ctx) {
  ctx.validate();
  const double p = (ctx.gamma + 1.0) * ctx.chi();
  return fields.dt_a_perp(x, t, ctx.units.c) * (ctx.units.epsilon0 * (1.0 - p));
}

double field_energy(const FieldConfiguration& fields, const PpnContext& ctx, FieldFrame frame,
                    double time) {
  ctx.validate();
  if (fields.empty()) return 0.0;
  const double c = ctx.units.c;
  const double c2 = c * c;
  const double chi = ctx.chi();
  const double p = (ctx.gamma + 1.0) * chi;
  const FieldQuadrature q = quadrature(fields, c, time);

  if (frame == FieldFrame::Coordinate) {
    // (Pi/eps0)^2 = (1-p)^2 (dt A)^2 given the prescribed mode amplitudes
    return 0.5 * ctx.units.epsilon0 *
           (1.0 + p) * ((1.0 - p) * (1.0 - p) * q.electric + c2 * q.magnetic);
  }

  const auto m = geometry::metric_components(ctx);
  const double e_factor = (1.0 + ctx.gamma * chi) / std::sqrt(-m.g00);
  const double b_factor = 1.0 + 2.0 * ctx.gamma * chi;
  return 0.5 * ctx.units.epsilon0 * m.sqrt_minus_g *
         (e_factor * e_factor * q.electric + c2 * b_factor * b_factor * q.magnetic);
}

double external_field_lagrangian(const FieldConfiguration& fields, const PpnContext& ctx,
                                 double time) {
  ctx.validate();
  if (fields.empty()) return 0.0;
  const double c = ctx.units.c;
  const double p = (ctx.gamma + 1.0) * ctx.chi();
  const FieldQuadrature q = quadrature(fields, c, time);
  return 0.5 * ctx.units.epsilon0 * ((1.0 - p) * q.electric - c * c * (1.0 + p) * q.magnetic);
}

}  // namespace ppn::em
