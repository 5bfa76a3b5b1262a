#include "ppnatom/ppnatom.h"

#include <cstdio>
#include <cstring>
#include <new>
#include <string>

#include "core/em.hpp"
#include "core/error.hpp"
#include "core/fields.hpp"
#include "core/geometry.hpp"
#include "core/hamiltonians.hpp"
#include "core/lagrangians.hpp"
#include "core/probes.hpp"
#include "core/spectrum.hpp"
#include "core/states.hpp"
#include "core/trajectory.hpp"
#include "core/units.hpp"

#include "json.hpp"

struct ppn_context {
  ppn::PpnContext ctx;
};

struct ppn_field_config {
  ppn::FieldConfiguration fields;
};

namespace {

thread_local std::string g_last_error;

ppn_status set_error(ppn_status status, const std::string& what) {
  g_last_error = what;
  return status;
}

ppn_status from_exception() {
  try {
    throw;
  } catch (const ppn::Error& e) {
    switch (e.code()) {
      case ppn::ErrorCode::InvalidArgument:
        return set_error(PPN_ERR_INVALID_ARGUMENT, e.what());
      case ppn::ErrorCode::DomainViolation:
        return set_error(PPN_ERR_DOMAIN, e.what());
      case ppn::ErrorCode::NoConvergence:
        return set_error(PPN_ERR_NO_CONVERGENCE, e.what());
    }
    return set_error(PPN_ERR_INTERNAL, e.what());
  } catch (const std::exception& e) {
    return set_error(PPN_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(PPN_ERR_INTERNAL, "unknown error");
  }
}

template <typename F>
ppn_status guarded(F&& f) {
  try {
    f();
    return PPN_OK;
  } catch (...) {
    return from_exception();
  }
}

ppn::Vec3 vec(const double* p) { return p ? ppn::Vec3{p[0], p[1], p[2]} : ppn::Vec3{}; }

void store(const ppn::Vec3& v, double* out) {
  out[0] = v.x;
  out[1] = v.y;
  out[2] = v.z;
}

ppn::ComState com_state(const ppn_com_state* s) {
  ppn::ComState com;
  com.m1 = s->m1;
  com.m2 = s->m2;
  com.e1 = s->e1;
  com.e2 = s->e2;
  com.R = vec(s->R);
  com.P = vec(s->P);
  com.r = vec(s->r);
  com.p_r = vec(s->p_r);
  return com;
}

void store_com(const ppn::ComState& com, ppn_com_state* out) {
  out->m1 = com.m1;
  out->m2 = com.m2;
  out->e1 = com.e1;
  out->e2 = com.e2;
  store(com.R, out->R);
  store(com.P, out->P);
  store(com.r, out->r);
  store(com.p_r, out->p_r);
}

ppn::ChargeModel charge_model(size_t n, const double* positions, const double* charges,
                              double sigma) {
  ppn::ChargeModel model;
  model.sigma = sigma;
  for (size_t i = 0; i < n; ++i) {
    model.positions.push_back(vec(positions + 3 * i));
    model.charges.push_back(charges[i]);
  }
  return model;
}

const ppn::FieldConfiguration& fields_or_empty(const ppn_field_config* fields) {
  static const ppn::FieldConfiguration empty{};
  return fields ? fields->fields : empty;
}

ppn::hamiltonians::HamiltonianReport com_report(const ppn_context* ctx,
                                                const ppn_field_config* fields,
                                                const ppn_com_state* state, int final_form,
                                                double t) {
  ppn::hamiltonians::HamiltonianOptions opts;
  opts.time = t;
  const ppn::ComState com = com_state(state);
  if (final_form) {
    return ppn::hamiltonians::h_final(com, fields_or_empty(fields), ctx->ctx, opts);
  }
  return ppn::hamiltonians::h_com_split(com, fields_or_empty(fields), ctx->ctx, opts);
}

}  // namespace

extern "C" {

const char* ppn_status_name(ppn_status status) {
  switch (status) {
    case PPN_OK: return "ok";
    case PPN_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PPN_ERR_DOMAIN: return "domain violation";
    case PPN_ERR_NO_CONVERGENCE: return "no convergence";
    case PPN_ERR_INTERNAL: return "internal error";
  }
  return "?";
}

const char* ppn_last_error(void) { return g_last_error.c_str(); }

ppn_status ppn_context_create(double c, double epsilon0, double hbar, double gamma, double beta,
                              double phi_over_c2, const double grad_phi[3], ppn_context** out) {
  if (!out) return set_error(PPN_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    ppn::PpnContext ctx;
    ctx.units.c = c;
    ctx.units.epsilon0 = epsilon0;
    ctx.units.hbar = hbar;
    ctx.gamma = gamma;
    ctx.beta = beta;
    ctx.phi = phi_over_c2 * c * c;
    ctx.grad_phi = vec(grad_phi);
    ctx.validate();
    *out = new ppn_context{ctx};
  });
}

void ppn_context_destroy(ppn_context* ctx) { delete ctx; }

ppn_status ppn_metric_components(const ppn_context* ctx, ppn_metric* out) {
  if (!ctx || !out) return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto m = ppn::geometry::metric_components(ctx->ctx);
    out->g00 = m.g00;
    out->g_space = m.g_space;
    out->inv_g00 = m.inv_g00;
    out->inv_g_space = m.inv_g_space;
    out->sqrt_minus_g = m.sqrt_minus_g;
  });
}

ppn_status ppn_spatial_inner(const ppn_context* ctx, const double u[3], const double v[3],
                             int inverse_variant, double* out) {
  if (!ctx || !u || !v || !out) return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = ppn::geometry::spatial_inner(ctx->ctx, vec(u), vec(v),
                                        inverse_variant ? ppn::geometry::InnerVariant::Inverse
                                                        : ppn::geometry::InnerVariant::Metric);
  });
}

ppn_status ppn_to_physical_fields(const ppn_context* ctx, const double e_coord[3],
                                  const double b_coord[3], double e_phys[3], double b_phys[3]) {
  if (!ctx || !e_coord || !b_coord || !e_phys || !b_phys) {
    return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const auto [e, b] = ppn::geometry::to_physical_fields(ctx->ctx, vec(e_coord), vec(b_coord));
    store(e, e_phys);
    store(b, b_phys);
  });
}

ppn_status ppn_to_physical_dipole(const ppn_context* ctx, const double d_coord[3],
                                  double d_phys[3]) {
  if (!ctx || !d_coord || !d_phys) return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  return guarded(
      [&] { store(ppn::geometry::to_physical_dipole(ctx->ctx, vec(d_coord)), d_phys); });
}

ppn_status ppn_field_config_create(size_t n_modes, const double* amplitudes,
                                   const double* wavevectors, const double* phases,
                                   const double box_min[3], double box_side, int points_per_dim,
                                   ppn_field_config** out) {
  if (!out || (n_modes > 0 && (!amplitudes || !wavevectors || !phases))) {
    return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    ppn::FieldConfiguration fields;
    for (size_t i = 0; i < n_modes; ++i) {
      ppn::PlaneWaveMode mode;
      mode.amplitude = vec(amplitudes + 3 * i);
      mode.wavevector = vec(wavevectors + 3 * i);
      mode.phase = phases[i];
      fields.modes.push_back(mode);
    }
    fields.box_min = vec(box_min);
    fields.box_side = box_side;
    fields.points_per_dim = points_per_dim;
    fields.validate();
    *out = new ppn_field_config{std::move(fields)};
  });
}

void ppn_field_config_destroy(ppn_field_config* fields) { delete fields; }

ppn_status ppn_canonical_field_momentum(const ppn_field_config* fields, const ppn_context* ctx,
                                        const double x[3], double t, double out[3]) {
  if (!fields || !ctx || !x || !out) return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  return guarded(
      [&] { store(ppn::em::canonical_field_momentum(fields->fields, vec(x), t, ctx->ctx), out); });
}

ppn_status ppn_field_energy(const ppn_field_config* fields, const ppn_context* ctx,
                            int tetrad_frame, double t, double* out) {
  if (!fields || !ctx || !out) return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = ppn::em::field_energy(fields->fields, ctx->ctx,
                                 tetrad_frame ? ppn::em::FieldFrame::Tetrad
                                              : ppn::em::FieldFrame::Coordinate,
                                 t);
  });
}

ppn_status ppn_internal_scalar_potential(const ppn_context* ctx, size_t n_charges,
                                         const double* positions, const double* charges,
                                         double sigma, const double x[3], double* out) {
  if (!ctx || !positions || !charges || !x || !out) {
    return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    *out = ppn::em::internal_scalar_potential(charge_model(n_charges, positions, charges, sigma),
                                              vec(x), ctx->ctx);
  });
}

ppn_status ppn_internal_vector_potential(const ppn_context* ctx, double m1, double m2, double e,
                                         const double r1[3], const double r2[3], const double v1[3],
                                         const double v2[3], const double x[3], double out[3]) {
  if (!ctx || !r1 || !r2 || !v1 || !v2 || !x || !out) {
    return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const auto state =
        ppn::TwoParticleState::velocities(m1, m2, e, vec(r1), vec(r2), vec(v1), vec(v2));
    store(ppn::em::internal_vector_potential(state, vec(x), ctx->ctx), out);
  });
}

ppn_status ppn_poisson_residual(const ppn_context* ctx, size_t n_charges, const double* positions,
                                const double* charges, double sigma, const double box_min[3],
                                double extent, double spacing, double* out) {
  if (!ctx || !positions || !charges || !box_min || !out) {
    return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    ppn::GridSpec grid;
    grid.box_min = vec(box_min);
    grid.extent = extent;
    grid.spacing = spacing;
    *out = ppn::em::poisson_residual(charge_model(n_charges, positions, charges, sigma), grid,
                                     ctx->ctx);
  });
}

ppn_status ppn_exact_point_lagrangian(const ppn_context* ctx, double m, const double v[3],
                                      double* out) {
  if (!ctx || !v || !out) return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  return guarded(
      [&] { *out = ppn::lagrangians::exact_point_lagrangian(m, ppn::Vec3{}, vec(v), ctx->ctx); });
}

ppn_status ppn_darwin_lagrangian(const ppn_context* ctx, double m1, double m2, double e,
                                 const double r1[3], const double r2[3], const double v1[3],
                                 const double v2[3], double* out) {
  if (!ctx || !r1 || !r2 || !v1 || !v2 || !out) {
    return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const auto state =
        ppn::TwoParticleState::velocities(m1, m2, e, vec(r1), vec(r2), vec(v1), vec(v2));
    *out = ppn::lagrangians::darwin_lagrangian(state, ctx->ctx.units);
  });
}

ppn_status ppn_sample_phase_point(const ppn_context* ctx, uint64_t seed, uint64_t index,
                                  double m1, double m2, double e, double momentum_cap,
                                  ppn_com_state* out) {
  if (!ctx || !out) return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    ppn::PhasePointSampler sampler(ctx->ctx.units, seed, m1, m2, e);
    ppn::ComState com;
    for (uint64_t i = 0; i <= index; ++i) com = sampler.next(momentum_cap);
    store_com(com, out);
  });
}

ppn_status ppn_h_lab(const ppn_context* ctx, const ppn_field_config* fields, double m1, double m2,
                     double e, const double r1[3], const double r2[3], const double p1[3],
                     const double p2[3], double t, double* out) {
  if (!ctx || !r1 || !r2 || !p1 || !p2 || !out) {
    return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const auto state =
        ppn::TwoParticleState::momenta(m1, m2, e, vec(r1), vec(r2), vec(p1), vec(p2));
    *out = ppn::hamiltonians::h_lab(state, fields_or_empty(fields), ctx->ctx, t);
  });
}

ppn_status ppn_h_com_report_json(const ppn_context* ctx, const ppn_field_config* fields,
                                 const ppn_com_state* state, int final_form, double t,
                                 char** out_json) {
  if (!ctx || !state || !out_json) return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto rep = com_report(ctx, fields, state, final_form, t);
    nlohmann::ordered_json j;
    for (const auto& [key, value] : rep.terms) j["terms"][key] = value;
    j["total"] = rep.total();
    j["grad_phi_terms_included"] = rep.grad_phi_terms_included;
    j["sigma_d"] = rep.sigma_d;
    const std::string text = j.dump(2);
    char* buffer = new char[text.size() + 1];
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    *out_json = buffer;
  });
}

ppn_status ppn_h_com_groups(const ppn_context* ctx, const ppn_field_config* fields,
                            const ppn_com_state* state, int final_form, double t,
                            ppn_h_groups* out) {
  if (!ctx || !state || !out) return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto rep = com_report(ctx, fields, state, final_form, t);
    out->central = rep.group("C_");
    out->internal = rep.group("A_");
    out->atom_light = rep.group("AL_");
    out->field = rep.group("L_");
    out->cross = rep.group("X_");
    out->total = rep.total();
  });
}

ppn_status ppn_h_point(const ppn_context* ctx, const double P[3], const double R[3], double m,
                       double* out) {
  if (!ctx || !P || !R || !out) return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = ppn::hamiltonians::h_point(vec(P), vec(R), m, ctx->ctx); });
}

ppn_status ppn_composite_identity_residual(const ppn_context* ctx, const ppn_com_state* state,
                                           double* out) {
  if (!ctx || !state || !out) return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = ppn::hamiltonians::composite_identity_residual(com_state(state), ctx->ctx);
  });
}

ppn_status ppn_decoupling_forward(const ppn_context* ctx, const ppn_com_state* in, ppn_com_state* out) {
  if (!ctx || !in || !out) return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  return guarded(
      [&] { store_com(ppn::hamiltonians::decoupling_transform(com_state(in), ctx->ctx), out); });
}

ppn_status ppn_decoupling_inverse(const ppn_context* ctx, const ppn_com_state* in, ppn_com_state* out) {
  if (!ctx || !in || !out) return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  return guarded(
      [&] { store_com(ppn::hamiltonians::decoupling_old_from_new(com_state(in), ctx->ctx), out); });
}

ppn_status ppn_solve_radial(double mu, double kinetic_coefficient, double coulomb_strength, int l,
                            double hbar, double r_max_bohr, int n_points, int n_levels,
                            double* out_eigenvalues) {
  if (!out_eigenvalues) return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    ppn::spectrum::RadialProblem problem;
    problem.mu = mu;
    problem.kinetic_coefficient = kinetic_coefficient;
    problem.coulomb_strength = coulomb_strength;
    problem.l = l;
    problem.hbar = hbar;
    if (r_max_bohr > 0.0) problem.r_max_bohr = r_max_bohr;
    if (n_points > 0) problem.n_points = n_points;
    const auto sol = ppn::spectrum::solve_radial(problem, n_levels);
    for (int i = 0; i < n_levels; ++i) out_eigenvalues[i] = sol.eigenvalues[i];
  });
}

ppn_status ppn_internal_levels(const ppn_context* ctx, double m1, double m2, double e,
                               int n_levels, int l_max, ppn_level_row* rows, size_t* n_rows) {
  if (!ctx || !rows || !n_rows) return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto result = ppn::spectrum::internal_levels(ctx->ctx, {m1, m2, e}, n_levels, l_max);
    size_t i = 0;
    for (const auto& rec : result.levels) {
      ppn_level_row row;
      row.n = rec.n;
      row.l = rec.l;
      row.e_coord = rec.e_bohr;
      row.de_p4 = rec.de_p4;
      row.de_cross = rec.de_darwin_cross;
      row.mass_defect = rec.mass_defect;
      row.omega_proper = (rec.n == 1 && rec.l == 0)
                             ? 0.0
                             : ppn::spectrum::proper_time_frequency(result, rec.n, rec.l, 1, 0);
      rows[i++] = row;
    }
    *n_rows = i;
  });
}

ppn_status ppn_integrate_composite(const ppn_context* ctx, const ppn_trajectory_spec* spec,
                                   double* out_t, double* out_R, double* out_P, double* out_H,
                                   size_t* n_samples, double* energy_drift) {
  if (!ctx || !spec || !out_t || !out_R || !out_P || !out_H || !n_samples || !energy_drift) {
    return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    ppn::trajectory::CompositeParticle particle{spec->mass_bare, spec->internal_energy};
    ppn::PhiProfile profile{spec->phi0, vec(spec->grad_phi)};
    ppn::trajectory::IntegratorConfig config;
    config.time_step = spec->time_step;
    config.steps = spec->steps;
    config.sample_stride = spec->sample_stride > 0 ? spec->sample_stride : 1;
    const auto result = ppn::trajectory::integrate(particle, vec(spec->R0), vec(spec->P0),
                                                   profile, ctx->ctx, config);
    size_t i = 0;
    for (const auto& s : result.samples) {
      out_t[i] = s.t;
      store(s.R, out_R + 3 * i);
      store(s.P, out_P + 3 * i);
      out_H[i] = s.energy;
      ++i;
    }
    *n_samples = i;
    *energy_drift = result.energy_drift;
  });
}

size_t ppn_order_probe_count(void) { return ppn::probes::probe_names().size(); }

ppn_status ppn_order_probe_name(size_t index, char* buffer, size_t size) {
  if (!buffer || size == 0) return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  const auto names = ppn::probes::probe_names();
  if (index >= names.size()) {
    return set_error(PPN_ERR_INVALID_ARGUMENT, "probe index out of range");
  }
  std::snprintf(buffer, size, "%s", names[index].c_str());
  return PPN_OK;
}

ppn_status ppn_order_probe_run(size_t index, double c, double gamma, double beta,
                               double phi_over_c2, double m1, double m2, double e, uint64_t seed,
                               ppn_probe_record* out) {
  if (!out) return set_error(PPN_ERR_INVALID_ARGUMENT, "null argument");
  const auto names = ppn::probes::probe_names();
  if (index >= names.size()) {
    return set_error(PPN_ERR_INVALID_ARGUMENT, "probe index out of range");
  }
  return guarded([&] {
    ppn::probes::ProbeSettings settings;
    settings.units.c = c;
    settings.gamma = gamma;
    settings.beta = beta;
    settings.chi0 = phi_over_c2;
    settings.m1 = m1;
    settings.m2 = m2;
    settings.e = e;
    settings.seed = seed;
    const auto rec = ppn::probes::run_probe(names[index], settings);
    std::snprintf(out->name, sizeof(out->name), "%s", rec.name.c_str());
    out->slope = rec.slope;
    out->target = rec.target;
    out->r_squared = rec.r_squared;
    out->passed = rec.passed() ? 1 : 0;
    std::snprintf(out->verdict, sizeof(out->verdict), "%s",
                  ppn::order::verdict_name(rec.verdict));
  });
}

void ppn_string_free(char* s) { delete[] s; }

}  // extern "C"
