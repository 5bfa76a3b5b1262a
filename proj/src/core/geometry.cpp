#include "core/geometry.hpp"

#include <cmath>

#include "core/error.hpp"

namespace ppn::geometry {

MetricComponents metric_components(const PpnContext& ctx) {
  ctx.validate();
  const double chi = ctx.chi();
  const double gamma = ctx.gamma;
  const double beta = ctx.beta;

  MetricComponents m;
  m.g00 = -1.0 - 2.0 * chi - 2.0 * beta * chi * chi;
  m.g_space = 1.0 - 2.0 * gamma * chi;
  m.inv_g00 = -1.0 + 2.0 * chi + (2.0 * beta - 4.0) * chi * chi;
  m.inv_g_space = 1.0 + 2.0 * gamma * chi;
  m.sqrt_minus_g = 1.0 - (3.0 * gamma - 1.0) * chi;
  return m;
}

double spatial_inner(const PpnContext& ctx, const Vec3& u, const Vec3& v, InnerVariant variant) {
  const double chi = ctx.chi();
  const double factor =
      variant == InnerVariant::Metric ? 1.0 - 2.0 * ctx.gamma * chi : 1.0 + 2.0 * ctx.gamma * chi;
  return factor * dot(u, v);
}

Tetrad tetrad(const PpnContext& ctx) {
  const double chi = ctx.chi();
  return Tetrad{1.0 - chi, 1.0 + ctx.gamma * chi};
}

std::pair<double, double> tetrad_orthonormality_deviation(const PpnContext& ctx) {
  const double chi = ctx.chi();
  const double gamma = ctx.gamma;
  const double beta = ctx.beta;

  // g(e_0,e_0) + 1 = 1 - (1 + 2chi + 2beta chi^2)(1 - chi)^2, expanded so the
  // leading 1's cancel symbolically instead of in floating point.
  const double dev00 =
      -((2.0 * beta - 3.0) * chi * chi + (2.0 - 4.0 * beta) * chi * chi * chi +
        2.0 * beta * chi * chi * chi * chi);

  // g(e_a,e_a) - 1 = (1 - 2 gamma chi)(1 + gamma chi)^2 - 1
  const double gc = gamma * chi;
  const double devaa = -3.0 * gc * gc - 2.0 * gc * gc * gc;

  return {dev00, devaa};
}

std::pair<Vec3, Vec3> to_physical_fields(const PpnContext& ctx, const Vec3& e_coord,
                                         const Vec3& b_coord) {
  ctx.validate();
  const double chi = ctx.chi();
  const MetricComponents m = metric_components(ctx);
  const double e_factor = (1.0 + ctx.gamma * chi) / std::sqrt(-m.g00);
  const double b_factor = 1.0 + 2.0 * ctx.gamma * chi;
  return {e_coord * e_factor, b_coord * b_factor};
}

Vec3 to_physical_dipole(const PpnContext& ctx, const Vec3& d_coord) {
  return d_coord * (1.0 - ctx.gamma * ctx.chi());
}

}  // namespace ppn::geometry
