/*
 * ppnatom — post-Newtonian dynamics of an electromagnetically bound
 * two-particle system in an Eddington–Robertson PPN background.
 *
 * C API of the shared library.  All functions return ppn_status; outputs are
 * written through pointers.  Opaque handles own their resources and must be
 * released with the matching _destroy call.  On failure, ppn_last_error()
 * returns a thread-local description of the most recent error.
 */
#ifndef PPNATOM_H
#define PPNATOM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PPN_API __declspec(dllexport)
#else
#define PPN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  PPN_OK = 0,
  PPN_ERR_INVALID_ARGUMENT = 1,
  PPN_ERR_DOMAIN = 2,
  PPN_ERR_NO_CONVERGENCE = 3,
  PPN_ERR_INTERNAL = 4
} ppn_status;

PPN_API const char* ppn_status_name(ppn_status status);
PPN_API const char* ppn_last_error(void);

/* ---------------------------------------------------------------- context */

typedef struct ppn_context ppn_context;

/* grad_phi may be NULL for a uniform potential.  phi_over_c2 is phi/c^2. */
PPN_API ppn_status ppn_context_create(double c, double epsilon0, double hbar, double gamma,
                                      double beta, double phi_over_c2,
                                      const double grad_phi[3], ppn_context** out);
PPN_API void ppn_context_destroy(ppn_context* ctx);

/* -------------------------------------------------------------- geometry */

typedef struct {
  double g00;
  double g_space;      /* common diagonal entry of the spatial metric */
  double inv_g00;
  double inv_g_space;
  double sqrt_minus_g;
} ppn_metric;

PPN_API ppn_status ppn_metric_components(const ppn_context* ctx, ppn_metric* out);

/* variant: 0 = metric, 1 = inverse */
PPN_API ppn_status ppn_spatial_inner(const ppn_context* ctx, const double u[3],
                                     const double v[3], int inverse_variant, double* out);

PPN_API ppn_status ppn_to_physical_fields(const ppn_context* ctx, const double e_coord[3],
                                          const double b_coord[3], double e_phys[3],
                                          double b_phys[3]);
PPN_API ppn_status ppn_to_physical_dipole(const ppn_context* ctx, const double d_coord[3],
                                          double d_phys[3]);

/* ------------------------------------------------------- external fields */

typedef struct ppn_field_config ppn_field_config;

/* n_modes plane waves: amplitudes/wavevectors are 3*n arrays, phases length n.
 * The box (origin, side, points per dimension) is used for energy quadrature. */
PPN_API ppn_status ppn_field_config_create(size_t n_modes, const double* amplitudes,
                                           const double* wavevectors, const double* phases,
                                           const double box_min[3], double box_side,
                                           int points_per_dim, ppn_field_config** out);
PPN_API void ppn_field_config_destroy(ppn_field_config* fields);

PPN_API ppn_status ppn_canonical_field_momentum(const ppn_field_config* fields,
                                                const ppn_context* ctx, const double x[3],
                                                double t, double out[3]);

/* frame: 0 = coordinate, 1 = tetrad */
PPN_API ppn_status ppn_field_energy(const ppn_field_config* fields, const ppn_context* ctx,
                                    int tetrad_frame, double t, double* out);

/* ------------------------------------------------- internal EM potentials */

/* Scalar potential of point (sigma = 0) or Gaussian-smeared charges. */
PPN_API ppn_status ppn_internal_scalar_potential(const ppn_context* ctx, size_t n_charges,
                                                 const double* positions, const double* charges,
                                                 double sigma, const double x[3], double* out);

/* Vector potential of the two-particle current (velocity representation). */
PPN_API ppn_status ppn_internal_vector_potential(const ppn_context* ctx, double m1, double m2,
                                                 double e, const double r1[3], const double r2[3],
                                                 const double v1[3], const double v2[3],
                                                 const double x[3], double out[3]);

/* Relative L2 residual of the modified Poisson equation on a cubic grid. */
PPN_API ppn_status ppn_poisson_residual(const ppn_context* ctx, size_t n_charges,
                                        const double* positions, const double* charges,
                                        double sigma, const double box_min[3], double extent,
                                        double spacing, double* out);

/* ------------------------------------------------------------ lagrangians */

PPN_API ppn_status ppn_exact_point_lagrangian(const ppn_context* ctx, double m,
                                              const double v[3], double* out);
PPN_API ppn_status ppn_darwin_lagrangian(const ppn_context* ctx, double m1, double m2, double e,
                                         const double r1[3], const double r2[3],
                                         const double v1[3], const double v2[3], double* out);

/* -------------------------------------------------------------- states   */

typedef struct {
  double m1, m2;
  double e1, e2;
  double R[3], P[3], r[3], p_r[3];
} ppn_com_state;

/* Deterministic low-discrepancy phase point (Halton sequence); `index` 0,1,...
 * enumerates points, `seed` offsets the sequence.  momentum_cap bounds
 * |P|/(M c) and |p_r|/(mu c). */
PPN_API ppn_status ppn_sample_phase_point(const ppn_context* ctx, uint64_t seed, uint64_t index,
                                          double m1, double m2, double e, double momentum_cap,
                                          ppn_com_state* out);

/* ----------------------------------------------------------- hamiltonians */

/* Lab-frame Hamiltonian at momenta (p1, p2); fields may be NULL. */
PPN_API ppn_status ppn_h_lab(const ppn_context* ctx, const ppn_field_config* fields, double m1,
                             double m2, double e, const double r1[3], const double r2[3],
                             const double p1[3], const double p2[3], double t, double* out);

/* Term-by-term reports; serialised as a JSON object mapping term names to
 * values (to be freed with ppn_string_free).  `form`: 0 = centre-of-mass
 * split before the EM gravity corrections, 1 = final Hamiltonian. */
PPN_API ppn_status ppn_h_com_report_json(const ppn_context* ctx, const ppn_field_config* fields,
                                         const ppn_com_state* state, int final_form, double t,
                                         char** out_json);

typedef struct {
  double central;     /* H_C   */
  double internal;    /* H_A   */
  double atom_light;  /* H_AL  */
  double field;       /* H_L   */
  double cross;       /* H_X   */
  double total;
} ppn_h_groups;

PPN_API ppn_status ppn_h_com_groups(const ppn_context* ctx, const ppn_field_config* fields,
                                    const ppn_com_state* state, int final_form, double t,
                                    ppn_h_groups* out);

PPN_API ppn_status ppn_h_point(const ppn_context* ctx, const double P[3], const double R[3],
                               double m, double* out);

PPN_API ppn_status ppn_composite_identity_residual(const ppn_context* ctx,
                                                   const ppn_com_state* state, double* out);

/* Decoupling canonical transformation: forward maps (R, r, p_r) to the cross-term
 * free coordinates; inverse applies the closed-form map. */
PPN_API ppn_status ppn_decoupling_forward(const ppn_context* ctx, const ppn_com_state* in,
                                    ppn_com_state* out);
PPN_API ppn_status ppn_decoupling_inverse(const ppn_context* ctx, const ppn_com_state* in,
                                    ppn_com_state* out);

/* ----------------------------------------------------------------spectrum */

typedef struct {
  int n;
  int l;
  double e_coord;        /* coordinate-time radial eigenvalue */
  double de_p4;
  double de_cross;
  double mass_defect;
  double omega_proper;   /* proper-time frequency of the transition to (1,0) */
} ppn_level_row;

/* Lowest n_levels eigenvalues of the radial problem
 *   -(A hbar^2/2 mu)(u'' - l(l+1)/r^2 u) - (strength/r) u = E u.
 * n_points = 0 selects the default grid. */
PPN_API ppn_status ppn_solve_radial(double mu, double kinetic_coefficient,
                                    double coulomb_strength, int l, double hbar,
                                    double r_max_bohr, int n_points, int n_levels,
                                    double* out_eigenvalues);

/* Internal spectrum of the atom in the given background, with perturbative
 * corrections and mass defects.  rows must hold n_levels*(l_max+1) entries. */
PPN_API ppn_status ppn_internal_levels(const ppn_context* ctx, double m1, double m2, double e,
                                       int n_levels, int l_max, ppn_level_row* rows,
                                       size_t* n_rows);

/* ------------------------------------------------------------- trajectory */

typedef struct {
  double mass_bare;
  double internal_energy;
  double R0[3], P0[3];
  double phi0, grad_phi[3];  /* linear profile phi(R) = phi0 + g.R */
  double time_step;
  int steps;
  int sample_stride;
} ppn_trajectory_spec;

/* Arrays sized (steps/sample_stride + 2): t, R (3 per row), P (3 per row),
 * H.  n_samples receives the number of rows written. */
PPN_API ppn_status ppn_integrate_composite(const ppn_context* ctx,
                                           const ppn_trajectory_spec* spec, double* out_t,
                                           double* out_R, double* out_P, double* out_H,
                                           size_t* n_samples, double* energy_drift);

/* ------------------------------------------------------------ order checks */

typedef struct {
  char name[64];
  double slope;
  double target;
  double r_squared;
  int passed;             /* 1 if PASS or exact to precision */
  char verdict[16];
} ppn_probe_record;

PPN_API size_t ppn_order_probe_count(void);
PPN_API ppn_status ppn_order_probe_name(size_t index, char* buffer, size_t size);

/* Runs one named probe (by index) with the given baseline parameters. */
PPN_API ppn_status ppn_order_probe_run(size_t index, double c, double gamma, double beta,
                                       double phi_over_c2, double m1, double m2, double e,
                                       uint64_t seed, ppn_probe_record* out);

/* ------------------------------------------------------------------ misc */

PPN_API void ppn_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* PPNATOM_H */
