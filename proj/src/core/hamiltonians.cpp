#include "core/hamiltonians.hpp"

#include <cmath>

#include "core/em.hpp"
#include "core/error.hpp"
#include "core/geometry.hpp"

namespace ppn::hamiltonians {

double HamiltonianReport::total() const {
  double sum = 0.0;
  for (const auto& [key, value] : terms) sum += value;
  return sum;
}

double HamiltonianReport::group(const std::string& prefix) const {
  double sum = 0.0;
  for (const auto& [key, value] : terms) {
    if (key.rfind(prefix, 0) == 0) sum += value;
  }
  return sum;
}

double bohr_radius(double m1, double m2, double e1, double e2, const UnitSystem& units) {
  const double mu = m1 * m2 / (m1 + m2);
  const double k = units.coulomb_factor() * std::abs(e1 * e2);
  return units.hbar * units.hbar / (mu * k);
}

double dipole_self_energy(const Vec3& d, double sigma_d, const UnitSystem& units) {
  if (!(sigma_d > 0.0)) fail_invalid("dipole smearing width must be positive");
  return norm2(d) / (24.0 * std::pow(M_PI, 1.5) * units.epsilon0 * sigma_d * sigma_d * sigma_d);
}

namespace {

double resolve_sigma_d(const ComState& com, const UnitSystem& units,
                       const HamiltonianOptions& opts) {
  if (opts.sigma_d > 0.0) return opts.sigma_d;
  return 0.1 * bohr_radius(com.m1, com.m2, com.e1, com.e2, units);
}

}  // namespace

double h_lab(const TwoParticleState& state, const FieldConfiguration& fields,
                 const PpnContext& ctx, double time) {
  return h_lab_report(state, fields, ctx, time).total();
}

HamiltonianReport h_lab_report(const TwoParticleState& state, const FieldConfiguration& fields,
                               const PpnContext& ctx, double time) {
  state.require_momentum_rep();
  state.validate(ctx.units);
  ctx.validate();

  const double c = ctx.units.c;
  const double c2 = c * c;
  const Vec3 R = state.com_position();
  const Vec3 r = state.rel();
  const double rn = norm(r);
  const double kq = ctx.units.coulomb_factor() * state.e1 * state.e2;
  const double em_prefactor = (ctx.gamma + 1.0) * ctx.phi / c2;

  const Vec3 pbar1 =
      fields.empty() ? state.u1 : state.u1 - fields.a_perp(state.r1, time, c) * state.e1;
  const Vec3 pbar2 =
      fields.empty() ? state.u2 : state.u2 - fields.a_perp(state.r2, time, c) * state.e2;

  HamiltonianReport rep;
  rep.grad_phi_terms_included = ctx.has_grad_phi();
  auto& t = rep.terms;

  t["kinetic"] = norm2(pbar1) / (2.0 * state.m1) + norm2(pbar2) / (2.0 * state.m2);
  t["p4"] = -norm2(pbar1) * norm2(pbar1) / (8.0 * state.m1 * state.m1 * state.m1 * c2) -
            norm2(pbar2) * norm2(pbar2) / (8.0 * state.m2 * state.m2 * state.m2 * c2);
  t["coulomb"] = (1.0 + em_prefactor) * kq / rn;
  t["darwin_momentum"] =
      -(kq / (2.0 * state.m1 * state.m2 * c2)) *
      (dot(pbar1, pbar2) / rn + dot(pbar1, r) * dot(pbar2, r) / (rn * rn * rn));

  const double phi1 = ctx.phi_at(state.r1, R);
  const double phi2 = ctx.phi_at(state.r2, R);
  t["mass_phi"] = state.m1 * phi1 + state.m2 * phi2;
  t["kinetic_phi"] = 0.5 * (2.0 * ctx.gamma + 1.0) *
                     (phi1 * norm2(pbar1) / (state.m1 * c2) +
                      phi2 * norm2(pbar2) / (state.m2 * c2));
  t["phi_squared"] =
      0.5 * (2.0 * ctx.beta - 1.0) * (state.m1 * phi1 * phi1 + state.m2 * phi2 * phi2) / c2;

  if (!fields.empty()) {
    t["field_energy"] = em::field_energy(fields, ctx, em::FieldFrame::Coordinate, time);
  }
  return rep;
}

namespace {

struct ComQuantities {
  double M, mu, dm;   // total mass, reduced mass, m1 - m2
  double T;           // p_r^2 / 2mu
  double Vc;          // e1 e2 / (4 pi eps0 r)
  double rn;
  Vec3 r, p_r, P;
  Vec3 d;             // dipole moment
  double kq;          // e1 e2 / (4 pi eps0)
};

ComQuantities com_quantities(const ComState& com, const PpnContext& ctx) {
  ComQuantities q;
  q.M = com.mass_total();
  q.mu = com.mass_reduced();
  q.dm = com.mass_asymmetry();
  q.r = com.r;
  q.p_r = com.p_r;
  q.P = com.P;
  q.rn = norm(com.r);
  q.kq = ctx.units.coulomb_factor() * com.e1 * com.e2;
  q.T = norm2(com.p_r) / (2.0 * q.mu);
  q.Vc = q.kq / q.rn;
  q.d = com.dipole();
  return q;
}

}  // namespace

HamiltonianReport h_com_split(const ComState& com, const FieldConfiguration& fields,
                              const PpnContext& ctx, const HamiltonianOptions& opts) {
  com.validate(ctx.units);
  ctx.validate();

  const double c = ctx.units.c;
  const double c2 = c * c;
  const ComQuantities q = com_quantities(com, ctx);
  const double phi = ctx.phi;  // phi(R): the context is anchored at the centre of mass

  HamiltonianReport rep;
  rep.sigma_d = resolve_sigma_d(com, ctx.units, opts);
  rep.grad_phi_terms_included = ctx.has_grad_phi();
  auto& t = rep.terms;

  // gravity-free split
  t["C_newton_kinetic"] = norm2(q.P) / (2.0 * q.M);
  t["C_p4"] = -norm2(q.P) * norm2(q.P) / (8.0 * q.M * q.M * q.M * c2);
  t["C_kinetic_internal"] = -(norm2(q.P) / (2.0 * q.M)) * (q.T + q.Vc) / (q.M * c2);
  t["A_kinetic"] = q.T;
  t["A_coulomb"] = q.Vc;
  const double m3 = (com.m1 * com.m1 * com.m1 + com.m2 * com.m2 * com.m2) / (q.M * q.M * q.M);
  t["A_p4"] = -m3 * norm2(q.p_r) * norm2(q.p_r) / (8.0 * q.mu * q.mu * q.mu * c2);
  t["A_darwin_cross"] =
      (q.kq / (2.0 * q.mu * q.M * c2)) *
      (norm2(q.p_r) / q.rn + dot(q.p_r, q.r) * dot(q.p_r, q.r) / (q.rn * q.rn * q.rn));
  t["X_kinetic"] = -dot(q.P, q.p_r) * dot(q.P, q.p_r) / (2.0 * q.M * q.M * q.mu * c2);
  t["X_coulomb"] =
      -q.Vc * dot(q.P, q.r) * dot(q.P, q.r) / (q.rn * q.rn) / (2.0 * q.M * q.M * c2);
  t["X_mass_asym"] =
      (q.dm / (2.0 * q.mu * q.M * q.M * c2)) *
      (dot(q.P, q.p_r) * norm2(q.p_r) / q.mu +
       q.kq * (dot(q.P, q.p_r) / q.rn + dot(q.P, q.r) * dot(q.r, q.p_r) / (q.rn * q.rn * q.rn)));

  // particle-sector gravity terms
  t["C_mass_phi"] = q.M * phi;
  t["C_internal_phi"] = (q.T / c2) * phi;
  t["C_kinetic_phi"] = 0.5 * (2.0 * ctx.gamma + 1.0) * phi * norm2(q.P) / (q.M * c2);
  t["C_phi_squared"] = 0.5 * (2.0 * ctx.beta - 1.0) * q.M * phi * phi / c2;
  t["A_kinetic_phi"] = 2.0 * ctx.gamma * (phi / c2) * q.T;

  if (ctx.has_grad_phi()) {
    const double r_dot_g = dot(q.r, ctx.grad_phi);
    t["A_grad_phi"] = -0.5 * (2.0 * ctx.gamma + 1.0) * (q.dm / (com.m1 * com.m2)) * r_dot_g *
                      norm2(q.p_r) / c2;
    t["X_grad_phi"] = (2.0 * ctx.gamma + 1.0) * r_dot_g * dot(q.P, q.p_r) / (q.M * c2);
  }

  // atom-light and field sector (gravity-free at this stage)
  if (!fields.empty()) {
    const Vec3 E = fields.e_coord(com.R, opts.time, c);
    const Vec3 B = fields.b_coord(com.R, opts.time, c);
    const Vec3 dxB = cross(q.d, B);
    t["AL_dipole"] = -dot(q.d, E);
    t["AL_roentgen"] = dot(q.P, dxB) / q.M;
    t["AL_roentgen_internal"] = -(q.dm / (2.0 * com.m1 * com.m2)) * dot(q.p_r, dxB);
    t["AL_diamagnetic"] = norm2(dxB) / (8.0 * q.mu);
    const PpnContext flat_ctx{ctx.units};
    t["L_field_energy"] =
        em::field_energy(fields, flat_ctx, em::FieldFrame::Coordinate, opts.time);
  }
  t["AL_self_energy"] = dipole_self_energy(q.d, rep.sigma_d, ctx.units);
  return rep;
}

HamiltonianReport h_final(const ComState& com, const FieldConfiguration& fields,
                          const PpnContext& ctx, const HamiltonianOptions& opts) {
  // The final form is derived with phi constant over the atom.
  PpnContext local = ctx;
  local.grad_phi = Vec3{};
  local.validate();
  com.validate(local.units);

  const double c = local.units.c;
  const double c2 = c * c;
  const double chi = local.chi();
  const ComQuantities q = com_quantities(com, local);
  const double phi = local.phi;

  HamiltonianReport rep;
  rep.sigma_d = resolve_sigma_d(com, local.units, opts);
  rep.grad_phi_terms_included = false;
  auto& t = rep.terms;

  t["C_newton_kinetic"] = norm2(q.P) / (2.0 * q.M);
  t["C_p4"] = -norm2(q.P) * norm2(q.P) / (8.0 * q.M * q.M * q.M * c2);
  t["C_kinetic_internal"] = -(norm2(q.P) / (2.0 * q.M)) * (q.T + q.Vc) / (q.M * c2);
  t["C_mass_phi"] = q.M * phi;
  t["C_internal_phi"] = ((q.T + q.Vc) / c2) * phi;
  t["C_kinetic_phi"] = 0.5 * (2.0 * local.gamma + 1.0) * phi * norm2(q.P) / (q.M * c2);
  t["C_phi_squared"] = 0.5 * (2.0 * local.beta - 1.0) * q.M * phi * phi / c2;

  // metric internal kinetic energy and metric Coulomb term
  t["A_kinetic_metric"] = (1.0 + 2.0 * local.gamma * chi) * q.T;
  t["A_coulomb_metric"] = (1.0 + local.gamma * chi) * q.Vc;
  const double m3 = (com.m1 * com.m1 * com.m1 + com.m2 * com.m2 * com.m2) / (q.M * q.M * q.M);
  t["A_p4"] = -m3 * norm2(q.p_r) * norm2(q.p_r) / (8.0 * q.mu * q.mu * q.mu * c2);
  t["A_darwin_cross"] =
      (q.kq / (2.0 * q.mu * q.M * c2)) *
      (norm2(q.p_r) / q.rn + dot(q.p_r, q.r) * dot(q.p_r, q.r) / (q.rn * q.rn * q.rn));

  t["X_kinetic"] = -dot(q.P, q.p_r) * dot(q.P, q.p_r) / (2.0 * q.M * q.M * q.mu * c2);
  t["X_coulomb"] =
      -q.Vc * dot(q.P, q.r) * dot(q.P, q.r) / (q.rn * q.rn) / (2.0 * q.M * q.M * c2);
  t["X_mass_asym"] =
      (q.dm / (2.0 * q.mu * q.M * q.M * c2)) *
      (dot(q.P, q.p_r) * norm2(q.p_r) / q.mu +
       q.kq * (dot(q.P, q.p_r) / q.rn + dot(q.P, q.r) * dot(q.r, q.p_r) / (q.rn * q.rn * q.rn)));

  if (!fields.empty()) {
    const Vec3 E = fields.e_coord(com.R, opts.time, c);
    const Vec3 B = fields.b_coord(com.R, opts.time, c);
    const Vec3 dxB = cross(q.d, B);
    t["AL_dipole"] = -dot(q.d, E);
    t["AL_roentgen"] = dot(q.P, dxB) / q.M;
    t["AL_roentgen_internal"] = -(q.dm / (2.0 * com.m1 * com.m2)) * dot(q.p_r, dxB);
    t["AL_diamagnetic"] = norm2(dxB) / (8.0 * q.mu);
    t["L_field_energy"] =
        em::field_energy(fields, local, em::FieldFrame::Coordinate, opts.time);
  }
  t["AL_self_energy"] = (1.0 + (local.gamma + 1.0) * chi) *
                        dipole_self_energy(q.d, rep.sigma_d, local.units);
  return rep;
}

double h_point(const Vec3& P, const Vec3& R, double m, const PpnContext& ctx) {
  (void)R;  // the context carries phi at the particle
  const double c2 = ctx.units.c * ctx.units.c;
  const double phi = ctx.phi;
  const double p2 = norm2(P);
  return p2 / (2.0 * m) + m * phi - p2 * p2 / (8.0 * m * m * m * c2) +
         0.5 * (2.0 * ctx.gamma + 1.0) * phi * p2 / (m * c2) +
         0.5 * (2.0 * ctx.beta - 1.0) * m * phi * phi / c2;
}

double h_point_geodesic(const Vec3& P, double m, const PpnContext& ctx) {
  const double c = ctx.units.c;
  const double c2 = c * c;
  const double chi = ctx.chi();
  const double ptilde = norm2(P) / (m * m * c2);
  // E = m c^2 sqrt(N/D), N = 1 + (1 + 2 gamma chi) ptilde,
  //                      D = 1 - 2 chi - (2 beta - 4) chi^2
  const double D = 1.0 - 2.0 * chi - (2.0 * ctx.beta - 4.0) * chi * chi;
  const double n_minus_d =
      (1.0 + 2.0 * ctx.gamma * chi) * ptilde + 2.0 * chi + (2.0 * ctx.beta - 4.0) * chi * chi;
  if (!(D > 0.0)) fail_domain("mass-shell denominator not positive");
  // m c^2 (sqrt(N/D) - 1), cancellation-free
  return m * c2 * std::expm1(0.5 * std::log1p(n_minus_d / D));
}

double composite_identity_defect(const ComState& com, const PpnContext& ctx,
                                 InternalSplit split) {
  PpnContext local = ctx;
  local.grad_phi = Vec3{};  // the identity is stated in the constant-phi regime

  const HamiltonianReport rep = h_final(com, FieldConfiguration{}, local);
  const double h_c_final = rep.group("C_");
  const double h_a_final = rep.group("A_");  // no AL terms present without fields

  double h_a = h_a_final;
  double central = h_c_final;
  if (split == InternalSplit::Flat) {
    const ComQuantities q = com_quantities(com, local);
    const double chi = local.chi();
    // strip the metric factors: flat internal Hamiltonian keeps T + Vc
    const double metric_extra = 2.0 * local.gamma * chi * q.T + local.gamma * chi * q.Vc;
    h_a = h_a_final - metric_extra;
    central = h_c_final + metric_extra;  // the leftover has to live somewhere
  }

  const double m_eff = com.mass_total() + h_a / (local.units.c * local.units.c);
  return central - h_point(com.P, com.R, m_eff, local);
}

double composite_identity_residual(const ComState& com, const PpnContext& ctx) {
  return std::abs(composite_identity_defect(com, ctx, InternalSplit::Metric));
}

ComState decoupling_old_from_new(const ComState& new_coords, const PpnContext& ctx) {
  const double c2 = ctx.units.c * ctx.units.c;
  const double M = new_coords.mass_total();
  const double mu = new_coords.mass_reduced();
  const double dm = new_coords.mass_asymmetry();
  const double kq = ctx.units.coulomb_factor() * new_coords.e1 * new_coords.e2;

  const Vec3 Q = new_coords.R;
  const Vec3 qv = new_coords.r;
  const Vec3 p = new_coords.p_r;
  const Vec3 P = new_coords.P;
  const double qn = norm(qv);
  const double M2c2 = M * M * c2;

  ComState old = new_coords;
  old.R = Q + (qv * (norm2(p) / mu + kq / qn)) * (dm / (2.0 * M2c2)) -
          (p * dot(qv, P) + qv * dot(P, p)) / (2.0 * M2c2);
  old.r = qv + p * (dm * dot(qv, P) / (mu * M2c2)) - P * (dot(qv, P) / (2.0 * M2c2));
  old.p_r = p + P * (dot(p, P) / (2.0 * M2c2)) -
            (P * (norm2(p) / mu) + (P / qn - qv * (dot(P, qv) / (qn * qn * qn))) * kq) *
                (dm / (2.0 * M2c2));
  return old;
}

ComState decoupling_transform(const ComState& old_coords, const PpnContext& ctx) {
  // The correction is O(c^-2)-small, so direct iteration contracts fast.
  ComState guess = old_coords;
  const double scale = std::max({norm(old_coords.r), norm(old_coords.p_r), norm(old_coords.R),
                                 1.0e-12});
  for (int iter = 0; iter < 50; ++iter) {
    const ComState mapped = decoupling_old_from_new(guess, ctx);
    const Vec3 dR = mapped.R - old_coords.R;
    const Vec3 dr = mapped.r - old_coords.r;
    const Vec3 dp = mapped.p_r - old_coords.p_r;
    ComState next = guess;
    next.R = guess.R - dR;
    next.r = guess.r - dr;
    next.p_r = guess.p_r - dp;
    const double err = std::max({norm(dR), norm(dr), norm(dp)});
    guess = next;
    if (err <= 1.0e-14 * scale) return guess;
  }
  fail_convergence("canonical transformation fixed point did not converge");
}

HamiltonianReport atom_light_terms(const ComState& com, const FieldConfiguration& fields,
                                   const PpnContext& ctx, Frame frame,
                                   const HamiltonianOptions& opts) {
  com.validate(ctx.units);
  ctx.validate();
  fields.validate();

  const double c = ctx.units.c;
  const double chi = ctx.chi();
  const double M = com.mass_total();
  const double mu = com.mass_reduced();
  const double dm = com.mass_asymmetry();
  const Vec3 d = com.dipole();

  HamiltonianReport rep;
  rep.sigma_d = resolve_sigma_d(com, ctx.units, opts);
  auto& t = rep.terms;

  const Vec3 E = fields.empty() ? Vec3{} : fields.e_coord(com.R, opts.time, c);
  const Vec3 B = fields.empty() ? Vec3{} : fields.b_coord(com.R, opts.time, c);

  if (frame == Frame::Coordinate) {
    const Vec3 dxB = cross(d, B);
    t["AL_dipole"] = -dot(d, E);
    t["AL_roentgen"] = dot(com.P, dxB) / M;
    t["AL_roentgen_internal"] = -(dm / (2.0 * com.m1 * com.m2)) * dot(com.p_r, dxB);
    t["AL_diamagnetic"] = norm2(dxB) / (8.0 * mu);
  } else {
    const auto metric = geometry::metric_components(ctx);
    const auto [E_phys, B_phys] = geometry::to_physical_fields(ctx, E, B);
    const Vec3 d_phys = geometry::to_physical_dipole(ctx, d);
    const Vec3 dxB_phys = cross(d_phys, B_phys);
    const double time_dilation = std::sqrt(-metric.g00);
    const double momentum_factor = 1.0 - ctx.gamma * chi;
    t["AL_dipole"] = -time_dilation * dot(d_phys, E_phys);
    t["AL_roentgen"] = momentum_factor * dot(com.P, dxB_phys) / M;
    t["AL_roentgen_internal"] =
        -(dm / (2.0 * com.m1 * com.m2)) * momentum_factor * dot(com.p_r, dxB_phys);
    t["AL_diamagnetic"] =
        (1.0 - 2.0 * ctx.gamma * chi) * norm2(dxB_phys) / (8.0 * mu);
  }
  t["AL_self_energy"] = (1.0 + (ctx.gamma + 1.0) * chi) *
                        dipole_self_energy(d, rep.sigma_d, ctx.units);
  return rep;
}

}  // namespace ppn::hamiltonians
