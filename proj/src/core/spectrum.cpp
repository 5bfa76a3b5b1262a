#include "core/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/geometry.hpp"

namespace ppn::spectrum {

double RadialProblem::energy_scale() const {
  const double b_over_a = coulomb_strength / kinetic_coefficient;  // (B/A) k
  return mu * coulomb_strength * b_over_a / (hbar * hbar);         // (B^2/A) mu k^2 / hbar^2
}

void RadialProblem::validate() const {
  if (!(mu > 0.0) || !(hbar > 0.0)) fail_invalid("mu and hbar must be positive");
  if (!(kinetic_coefficient > 0.0) || !(coulomb_strength > 0.0)) {
    fail_invalid("kinetic coefficient and Coulomb strength must be positive");
  }
  if (l < 0) fail_invalid("l must be non-negative");
  if (!(r_max_bohr >= 30.0)) fail_invalid("grid must cover at least 30 scaled Bohr radii");
  if (n_points < 2000) fail_invalid("grid needs at least 2000 points");
  if (spacing == GridSpacing::Log && !(r_min_bohr > 0.0)) {
    fail_invalid("log grid needs a positive inner cutoff");
  }
}

namespace {

// Generalized symmetric tridiagonal eigenproblem T w = E D w with D diagonal
// positive.  diag/off hold T, weight holds D.
struct Tridiag {
  std::vector<double> diag;
  std::vector<double> off;     // off[i] couples i and i+1
  std::vector<double> weight;  // D
};

// Number of eigenvalues below lambda (Sturm count via LDL^T inertia).
int sturm_count(const Tridiag& t, double lambda) {
  const int n = static_cast<int>(t.diag.size());
  int count = 0;
  double q = t.diag[0] - lambda * t.weight[0];
  if (q < 0.0) ++count;
  for (int i = 1; i < n; ++i) {
    double denom = q;
    if (denom == 0.0) denom = 1.0e-300;
    q = (t.diag[i] - lambda * t.weight[i]) - t.off[i - 1] * t.off[i - 1] / denom;
    if (q < 0.0) ++count;
  }
  return count;
}

// Lowest n_levels eigenvalues by bisection.
std::vector<double> lowest_eigenvalues(const Tridiag& t, int n_levels) {
  const int n = static_cast<int>(t.diag.size());
  double lo = t.diag[0] / t.weight[0], hi = lo;
  for (int i = 0; i < n; ++i) {
    const double center = t.diag[i] / t.weight[i];
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.off[i - 1]) / std::sqrt(t.weight[i - 1] * t.weight[i]);
    if (i + 1 < n) radius += std::abs(t.off[i]) / std::sqrt(t.weight[i] * t.weight[i + 1]);
    lo = std::min(lo, center - radius);
    hi = std::max(hi, center + radius);
  }

  std::vector<double> values(n_levels);
  for (int k = 0; k < n_levels; ++k) {
    double a = lo, b = hi;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (a + b);
      if (sturm_count(t, mid) >= k + 1) {
        b = mid;
      } else {
        a = mid;
      }
      if (b - a <= 1.0e-15 * std::max(std::abs(a), std::abs(b)) + 1.0e-300) break;
    }
    values[k] = 0.5 * (a + b);
  }
  return values;
}

// Inverse iteration for the eigenvector of (T - E D) closest to E.
std::vector<double> eigenvector(const Tridiag& t, double e) {
  const int n = static_cast<int>(t.diag.size());
  // shift slightly off the eigenvalue so the solve stays bounded
  const double shift = e * (1.0 + 1.0e-11) + ((e == 0.0) ? 1.0e-11 : 0.0);

  std::vector<double> x(n, 1.0);
  for (int i = 0; i < n; ++i) x[i] = 1.0 / (1.0 + i % 7);  // deterministic start

  std::vector<double> c(n), d(n);
  for (int sweep = 0; sweep < 3; ++sweep) {
    // Thomas solve (T - shift D) y = x
    d[0] = t.diag[0] - shift * t.weight[0];
    c[0] = t.off.empty() ? 0.0 : t.off[0] / d[0];
    x[0] = x[0] / d[0];
    for (int i = 1; i < n; ++i) {
      const double m = t.diag[i] - shift * t.weight[i] - t.off[i - 1] * c[i - 1];
      d[i] = m;
      if (i < n - 1) c[i] = t.off[i] / m;
      x[i] = (x[i] - t.off[i - 1] * x[i - 1]) / m;
    }
    for (int i = n - 2; i >= 0; --i) x[i] -= c[i] * x[i + 1];
    double nrm = 0.0;
    for (double v : x) nrm = std::max(nrm, std::abs(v));
    for (double& v : x) v /= nrm;
  }
  return x;
}

struct Discretisation {
  Tridiag t;
  std::vector<double> x;   // node coordinates (dimensionless radius)
  std::vector<double> dx;  // quadrature weight per node
  bool log_grid = false;
};

// Dimensionless radial operator -(1/2)(d^2/dx^2 - l(l+1)/x^2) - 1/x on the
// requested grid; eigenvalues are in units of problem.energy_scale().
Discretisation discretise(const RadialProblem& p, int n) {
  Discretisation d;
  d.t.diag.resize(n);
  d.t.off.assign(n - 1, 0.0);
  d.t.weight.assign(n, 1.0);
  d.x.resize(n);
  d.dx.resize(n);

  const double ll = static_cast<double>(p.l) * (p.l + 1);
  if (p.spacing == GridSpacing::Uniform) {
    const double h = p.r_max_bohr / (n + 1);
    for (int j = 0; j < n; ++j) {
      const double x = (j + 1) * h;
      d.x[j] = x;
      d.dx[j] = h;
      d.t.diag[j] = 1.0 / (h * h) + 0.5 * ll / (x * x) - 1.0 / x;
    }
    for (int j = 0; j + 1 < n; ++j) d.t.off[j] = -0.5 / (h * h);
  } else {
    // substitute x = e^s, u = sqrt(x) w: -(1/2)(w'' - w/4) + x^2 (V - E) w = 0
    d.log_grid = true;
    const double s_min = std::log(p.r_min_bohr);
    const double s_max = std::log(p.r_max_bohr);
    const double hs = (s_max - s_min) / (n + 1);
    for (int j = 0; j < n; ++j) {
      const double s = s_min + (j + 1) * hs;
      const double x = std::exp(s);
      d.x[j] = x;
      d.dx[j] = x * hs;  // dr = x ds
      d.t.diag[j] = 1.0 / (hs * hs) + 0.125 + 0.5 * ll - x;  // x^2 V = -x
      d.t.weight[j] = x * x;
    }
    for (int j = 0; j + 1 < n; ++j) d.t.off[j] = -0.5 / (hs * hs);
  }
  return d;
}

// u on the radial grid from the solver variable (w on log grids).
std::vector<double> radial_u(const Discretisation& d, const std::vector<double>& v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> u(n);
  for (int j = 0; j < n; ++j) u[j] = d.log_grid ? std::sqrt(d.x[j]) * v[j] : v[j];
  double nrm2 = 0.0;
  for (int j = 0; j < n; ++j) nrm2 += u[j] * u[j] * d.dx[j];
  const double nrm = std::sqrt(nrm2);
  for (double& val : u) val /= nrm;
  return u;
}

}  // namespace

RadialSolution solve_radial(const RadialProblem& problem, int n_levels,
                            double coarse_tolerance) {
  problem.validate();
  if (n_levels < 1) fail_invalid("need at least one level");

  const Discretisation fine = discretise(problem, problem.n_points);
  const Discretisation coarse = discretise(problem, problem.n_points / 2);

  const std::vector<double> e_fine = lowest_eigenvalues(fine.t, n_levels);
  const std::vector<double> e_coarse = lowest_eigenvalues(coarse.t, n_levels);

  const double scale = problem.energy_scale();
  RadialSolution sol;
  sol.x_grid = fine.x;
  sol.dx_grid = fine.dx;
  for (int k = 0; k < n_levels; ++k) {
    const double extrapolated = e_fine[k] + (e_fine[k] - e_coarse[k]) / 3.0;
    const double estimate = std::abs(e_fine[k] - e_coarse[k]) / 3.0;
    sol.eigenvalues.push_back(scale * extrapolated);
    sol.eigenvalues_raw.push_back(scale * e_fine[k]);
    sol.error_estimates.push_back(scale * estimate);
    sol.u.push_back(radial_u(fine, eigenvector(fine.t, e_fine[k])));
  }

  if (std::abs(sol.error_estimates[0]) >
      coarse_tolerance * std::abs(sol.eigenvalues[0])) {
    fail_convergence("grid too coarse: ground-state Richardson estimate above tolerance");
  }
  return sol;
}

namespace {

// <p^4> over a radial eigenstate via p^2 u = (2 mu / A)(E - V) u; returned in
// units where the dimensionless problem has energy 1, i.e. multiply by
// (2 mu/A)^2 scale^2 outside.
double dimensionless_p4(const RadialSolution& sol, int k, double eps_k) {
  const auto& u = sol.u[k];
  const auto& x = sol.x_grid;
  double acc = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double e_minus_v = eps_k + 1.0 / x[j];
    acc += e_minus_v * e_minus_v * u[j] * u[j] * sol.dx_grid[j];
  }
  return acc;
}

// int (1/x)[2 (u' - u/x)^2 + l(l+1) u^2/x^2] dx by central differences.
double dimensionless_cross(const RadialSolution& sol, int k, int l) {
  const auto& u = sol.u[k];
  const auto& x = sol.x_grid;
  const double ll = static_cast<double>(l) * (l + 1);
  double acc = 0.0;
  for (std::size_t j = 1; j + 1 < u.size(); ++j) {
    const double du = (u[j + 1] - u[j - 1]) / (x[j + 1] - x[j - 1]);
    const double t = du - u[j] / x[j];
    const double dx = 0.5 * (x[j + 1] - x[j - 1]);
    acc += (2.0 * t * t + ll * u[j] * u[j] / (x[j] * x[j])) / x[j] * dx;
  }
  return acc;
}

}  // namespace

SpectrumResult internal_levels(const PpnContext& ctx, const AtomParams& atom, int n_levels,
                               int l_max, const SpectrumOptions& opts) {
  ctx.validate();
  if (!(atom.m1 > 0.0) || !(atom.m2 > 0.0) || !(atom.e != 0.0)) {
    fail_invalid("invalid atom parameters");
  }
  const double chi = ctx.chi();
  const double mu = atom.m1 * atom.m2 / (atom.m1 + atom.m2);
  const double M = atom.m1 + atom.m2;
  const double k = ctx.units.coulomb_factor() * atom.e * atom.e;  // e^2/(4 pi eps0)
  const double c2 = ctx.units.c * ctx.units.c;
  const double a_coef = 1.0 + 2.0 * ctx.gamma * chi;
  const double b_coef = 1.0 + ctx.gamma * chi;

  SpectrumResult result;
  result.mass_total = M;
  result.hbar = ctx.units.hbar;
  result.sqrt_minus_g00 = std::sqrt(-geometry::metric_components(ctx).g00);

  const double mass_factor =
      (atom.m1 * atom.m1 * atom.m1 + atom.m2 * atom.m2 * atom.m2) / (M * M * M);

  for (int l = 0; l <= l_max; ++l) {
    RadialProblem problem;
    problem.mu = mu;
    problem.kinetic_coefficient = a_coef;
    problem.coulomb_strength = b_coef * k;
    problem.l = l;
    problem.hbar = ctx.units.hbar;
    problem.r_max_bohr = opts.r_max_bohr;
    problem.n_points = opts.n_points;
    problem.spacing = opts.spacing;

    const RadialSolution sol = solve_radial(problem, n_levels);
    const double scale = problem.energy_scale();
    const double bohr = problem.bohr_radius();

    for (int idx = 0; idx < n_levels; ++idx) {
      LevelRecord rec;
      rec.n = l + 1 + idx;
      rec.l = l;
      rec.e_bohr = sol.eigenvalues[idx];
      rec.error_estimate = sol.error_estimates[idx];

      if (opts.perturbative_shifts) {
        const double eps = sol.eigenvalues_raw[idx] / scale;  // dimensionless eigenvalue
        const double p4 = std::pow(2.0 * mu / a_coef, 2) * scale * scale *
                          dimensionless_p4(sol, idx, eps);
        rec.de_p4 = -mass_factor * p4 / (8.0 * mu * mu * mu * c2);
        const double hbar2 = ctx.units.hbar * ctx.units.hbar;
        const double cross_integral =
            hbar2 / (bohr * bohr * bohr) * dimensionless_cross(sol, idx, l);
        // e1 e2 = -e^2, so the coefficient is -k/(2 mu M c^2)
        rec.de_darwin_cross = -k / (2.0 * mu * M * c2) * cross_integral;
      }
      rec.mass_defect = M + rec.e_total() / c2;
      result.levels.push_back(rec);
    }
  }
  return result;
}

const LevelRecord& find_level(const SpectrumResult& spectrum, int n, int l) {
  for (const auto& rec : spectrum.levels) {
    if (rec.n == n && rec.l == l) return rec;
  }
  fail_invalid("level (n=" + std::to_string(n) + ", l=" + std::to_string(l) +
               ") not present in the spectrum");
}

double mass_defect(const SpectrumResult& spectrum, int n, int l, const PpnContext& ctx) {
  const LevelRecord& rec = find_level(spectrum, n, l);
  return spectrum.mass_total + rec.e_total() / (ctx.units.c * ctx.units.c);
}

double proper_time_frequency(const SpectrumResult& spectrum, int n, int l, int m, int lp,
                             bool include_shifts) {
  if (n == m && l == lp) fail_invalid("transition needs two distinct levels");
  const LevelRecord& upper = find_level(spectrum, n, l);
  const LevelRecord& lower = find_level(spectrum, m, lp);
  const double de = include_shifts ? upper.e_total() - lower.e_total()
                                   : upper.e_bohr - lower.e_bohr;
  return de / (spectrum.hbar * spectrum.sqrt_minus_g00);
}

}  // namespace ppn::spectrum
