#include "core/lagrangians.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/geometry.hpp"

namespace ppn::lagrangians {

namespace {

// -g_mn xdot^m xdot^n / c^2 - 1 with xdot^0 = c, kept in expanded form:
// u = 2 chi + 2 beta chi^2 - (1 - 2 gamma chi) v^2/c^2 satisfies
// -g_mn xdot xdot / c^2 = 1 + u without cancellation of the leading 1.
double timelike_excess(double v2_over_c2, const PpnContext& ctx) {
  const double chi = ctx.chi();
  return 2.0 * chi + 2.0 * ctx.beta * chi * chi - (1.0 - 2.0 * ctx.gamma * chi) * v2_over_c2;
}

}  // namespace

double exact_point_lagrangian_excess(double m, const Vec3& x, const Vec3& v,
                                     const PpnContext& ctx) {
  (void)x;  // phi is the value at the particle; the gradient does not enter here
  ctx.validate();
  const double c = ctx.units.c;
  const double u = timelike_excess(norm2(v) / (c * c), ctx);
  if (!(1.0 + u > 0.0)) fail_domain("superluminal in this metric");
  // sqrt(1+u) - 1 evaluated without cancellation
  const double sqrt1pm1 = std::expm1(0.5 * std::log1p(u));
  return -m * c * c * sqrt1pm1;
}

double exact_point_lagrangian(double m, const Vec3& x, const Vec3& v, const PpnContext& ctx) {
  return -m * ctx.units.c * ctx.units.c + exact_point_lagrangian_excess(m, x, v, ctx);
}

LagrangianBreakdown pn_point_lagrangian(double m, const Vec3& x, const Vec3& v,
                                        const PpnContext& ctx) {
  (void)x;
  ctx.validate();
  const double c2 = ctx.units.c * ctx.units.c;
  const double v2 = norm2(v);
  const double phi = ctx.phi;

  LagrangianBreakdown b;
  b.rest_mass = -m * c2;
  b.newton_kinetic = 0.5 * m * v2;
  b.p4_kinetic = m * v2 * v2 / (8.0 * c2);
  b.newton_potential = -m * phi;
  b.phi_squared = -(2.0 * ctx.beta - 1.0) * m * phi * phi / (2.0 * c2);
  b.kinetic_phi_cross = -0.5 * (2.0 * ctx.gamma + 1.0) * (m * phi / c2) * v2;
  return b;
}

double darwin_lagrangian(const TwoParticleState& state, const UnitSystem& units) {
  state.require_velocity_rep();
  state.validate(units);
  const double c2 = units.c * units.c;
  const Vec3 r = state.rel();
  const double rn = norm(r);
  const Vec3 v1 = state.u1, v2 = state.u2;
  const double kq = units.coulomb_factor() * state.e1 * state.e2;

  double value = 0.5 * state.m1 * norm2(v1) + state.m1 * norm2(v1) * norm2(v1) / (8.0 * c2) +
                 0.5 * state.m2 * norm2(v2) + state.m2 * norm2(v2) * norm2(v2) / (8.0 * c2);
  value += -(kq / rn) * (1.0 - dot(v1, v2) / (2.0 * c2));
  value += kq * dot(v1, r) * dot(v2, r) / (2.0 * rn * rn * rn * c2);
  return value;
}

LagrangianBreakdown total_lagrangian(const TwoParticleState& state, const PpnContext& ctx,
                                     const FieldConfiguration& fields, double time,
                                     bool include_external_field) {
  state.require_velocity_rep();
  state.validate(ctx.units);
  ctx.validate();
  fields.validate();

  const double c = ctx.units.c;
  const double c2 = c * c;
  const Vec3 R = state.com_position();
  const Vec3 r = state.rel();
  const double rn = norm(r);
  const double kq = ctx.units.coulomb_factor() * state.e1 * state.e2;
  const double chi_R = ctx.phi / c2;  // EM prefactors are taken at the centre of mass
  const double em_prefactor = (ctx.gamma + 1.0) * chi_R;

  LagrangianBreakdown b;
  const std::array<double, 2> masses = {state.m1, state.m2};
  const std::array<Vec3, 2> pos = {state.r1, state.r2};
  const std::array<Vec3, 2> vel = {state.u1, state.u2};
  const std::array<double, 2> charges = {state.e1, state.e2};

  for (int i = 0; i < 2; ++i) {
    const double m = masses[i];
    const double v2 = norm2(vel[i]);
    const double phi_i = ctx.phi_at(pos[i], R);
    b.rest_mass += -m * c2;
    b.newton_kinetic += 0.5 * m * v2;
    b.p4_kinetic += m * v2 * v2 / (8.0 * c2);
    b.newton_potential += -m * phi_i;
    b.phi_squared += -(2.0 * ctx.beta - 1.0) * m * phi_i * phi_i / (2.0 * c2);
    b.kinetic_phi_cross += -0.5 * (2.0 * ctx.gamma + 1.0) * (m * phi_i / c2) * v2;
  }

  b.coulomb = -(1.0 + em_prefactor) * kq / rn;
  b.darwin_velocity = (kq / (2.0 * c2)) * (dot(state.u1, state.u2) / rn +
                                           dot(state.u1, r) * dot(state.u2, r) / (rn * rn * rn));

  if (!fields.empty()) {
    for (int i = 0; i < 2; ++i) {
      b.external_coupling += charges[i] * dot(vel[i], fields.a_perp(pos[i], time, c));
    }
    if (include_external_field) {
      // (eps0/2) int [(1 - p)(dt A)^2 - c^2 (1 + p)(curl A)^2] by midpoint rule
      fields.require_resolution();
      const int n = fields.points_per_dim;
      const double h = fields.box_side / n;
      double sum_e = 0.0, sum_b = 0.0;
      for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
          for (int iz = 0; iz < n; ++iz) {
            const Vec3 x = fields.box_min +
                           Vec3{(ix + 0.5) * h, (iy + 0.5) * h, (iz + 0.5) * h};
            sum_e += norm2(fields.dt_a_perp(x, time, c));
            sum_b += norm2(fields.b_coord(x, time, c));
          }
        }
      }
      const double dv = h * h * h;
      b.external_field = 0.5 * ctx.units.epsilon0 *
                         ((1.0 - em_prefactor) * sum_e - c2 * (1.0 + em_prefactor) * sum_b) * dv;
    }
  }
  return b;
}

namespace {

// 6-dimensional velocity vector helpers for the Legendre solve
using Vec6 = std::array<double, 6>;

Vec6 pack(const Vec3& a, const Vec3& b) { return {a.x, a.y, a.z, b.x, b.y, b.z}; }

double eval(const VelocityLagrangian& lagrangian, const Vec6& v) {
  return lagrangian({v[0], v[1], v[2]}, {v[3], v[4], v[5]});
}

Vec6 gradient(const VelocityLagrangian& lagrangian, const Vec6& v, const Vec6& steps) {
  Vec6 g;
  for (int i = 0; i < 6; ++i) {
    Vec6 vp = v, vm = v;
    vp[i] += steps[i];
    vm[i] -= steps[i];
    g[i] = (eval(lagrangian, vp) - eval(lagrangian, vm)) / (2.0 * steps[i]);
  }
  return g;
}

// Solves the SPD system H x = rhs by Cholesky; returns false if H is not
// positive definite (non-convex Lagrangian).
bool cholesky_solve(std::array<double, 36>& h, Vec6& rhs) {
  for (int j = 0; j < 6; ++j) {
    double d = h[j * 6 + j];
    for (int k = 0; k < j; ++k) d -= h[j * 6 + k] * h[j * 6 + k];
    if (!(d > 0.0)) return false;
    h[j * 6 + j] = std::sqrt(d);
    for (int i = j + 1; i < 6; ++i) {
      double s = h[i * 6 + j];
      for (int k = 0; k < j; ++k) s -= h[i * 6 + k] * h[j * 6 + k];
      h[i * 6 + j] = s / h[j * 6 + j];
    }
  }
  for (int i = 0; i < 6; ++i) {
    double s = rhs[i];
    for (int k = 0; k < i; ++k) s -= h[i * 6 + k] * rhs[k];
    rhs[i] = s / h[i * 6 + i];
  }
  for (int i = 5; i >= 0; --i) {
    double s = rhs[i];
    for (int k = i + 1; k < 6; ++k) s -= h[k * 6 + i] * rhs[k];
    rhs[i] = s / h[i * 6 + i];
  }
  return true;
}

}  // namespace

double numerical_legendre(const VelocityLagrangian& lagrangian, const TwoParticleState& state,
                          const UnitSystem& units, const LegendreOptions& opts) {
  state.require_momentum_rep();
  const Vec6 target = pack(state.u1, state.u2);

  // Newtonian initial guess v = p/m
  Vec6 v = pack(state.u1 / state.m1, state.u2 / state.m2);

  const double eps = std::numeric_limits<double>::epsilon();
  double v_scale = 1.0e-6 * units.c;
  for (int i = 0; i < 6; ++i) v_scale = std::max(v_scale, std::abs(v[i]));
  const double d_step = std::cbrt(eps) * v_scale;
  const double h_step = std::sqrt(std::sqrt(eps)) * v_scale;
  Vec6 dsteps, hsteps;
  dsteps.fill(d_step);
  hsteps.fill(h_step);

  double p_scale = 1.0e-30;
  for (int i = 0; i < 6; ++i) p_scale = std::max(p_scale, std::abs(target[i]));

  // The finite-difference gradient carries rounding noise ~ eps |L| / step;
  // the solve cannot do better.  The transform's value is variational in v,
  // so accepting a residual at this floor costs only O(floor^2).
  const double noise_floor =
      100.0 * eps * std::max(std::abs(eval(lagrangian, v)), 1.0) / d_step;
  const double tolerance = std::max(opts.relative_tolerance * p_scale, noise_floor);

  auto residual_norm = [&](const Vec6& g) {
    double r = 0.0;
    for (int i = 0; i < 6; ++i) r = std::max(r, std::abs(g[i] - target[i]));
    return r;
  };

  Vec6 grad = gradient(lagrangian, v, dsteps);
  double res = residual_norm(grad);
  for (int iter = 0; iter < opts.max_iterations && res > tolerance; ++iter) {
    // Numerical Hessian d^2 L / dv_i dv_j (symmetrised)
    std::array<double, 36> hess{};
    for (int j = 0; j < 6; ++j) {
      Vec6 vp = v, vm = v;
      vp[j] += hsteps[j];
      vm[j] -= hsteps[j];
      const Vec6 gp = gradient(lagrangian, vp, dsteps);
      const Vec6 gm = gradient(lagrangian, vm, dsteps);
      for (int i = 0; i < 6; ++i) hess[i * 6 + j] = (gp[i] - gm[i]) / (2.0 * hsteps[j]);
    }
    for (int i = 0; i < 6; ++i) {
      for (int j = i + 1; j < 6; ++j) {
        const double s = 0.5 * (hess[i * 6 + j] + hess[j * 6 + i]);
        hess[i * 6 + j] = hess[j * 6 + i] = s;
      }
    }

    Vec6 rhs;
    for (int i = 0; i < 6; ++i) rhs[i] = target[i] - grad[i];
    if (!cholesky_solve(hess, rhs)) {
      fail_convergence("Lagrangian is not convex in the velocities near this state");
    }

    // Damped update: halve the step while the residual grows
    double step = 1.0;
    for (int halvings = 0;; ++halvings) {
      Vec6 trial = v;
      for (int i = 0; i < 6; ++i) trial[i] += step * rhs[i];
      const Vec6 gt = gradient(lagrangian, trial, dsteps);
      const double rt = residual_norm(gt);
      if (rt < res || halvings >= 15) {
        v = trial;
        grad = gt;
        res = rt;
        break;
      }
      step *= 0.5;
    }
  }
  if (res > 10.0 * tolerance) {
    fail_convergence("velocity inversion did not converge");
  }

  double value = -eval(lagrangian, v);
  for (int i = 0; i < 6; ++i) value += target[i] * v[i];
  return value;
}

}  // namespace ppn::lagrangians
