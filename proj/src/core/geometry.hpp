#pragma once

#include <utility>

#include "core/units.hpp"
#include "core/vec3.hpp"

namespace ppn::geometry {

// Diagonal PPN metric in the coordinates adapted to the background frame.
// The O(c^-5) off-diagonal entries are stored as exact zeros; results are
// claimed to O(c^-2) only.
struct MetricComponents {
  double g00 = -1.0;
  Vec3 g0a{};               // identically zero at this order
  double g_space = 1.0;     // common diagonal entry of g_ab
  double inv_g00 = -1.0;
  double inv_g_space = 1.0;
  double sqrt_minus_g = 1.0;
};

enum class InnerVariant { Metric, Inverse };

// Orthonormal-frame scale factors: e_0 = e0_factor d/dx^0, e_a = ea_factor d/dx^a.
struct Tetrad {
  double e0_factor = 1.0;
  double ea_factor = 1.0;
};

MetricComponents metric_components(const PpnContext& ctx);

// Spatial metric contraction of two component tuples:
//   Metric  variant: (1 - 2 gamma phi/c^2) u.v
//   Inverse variant: (1 + 2 gamma phi/c^2) u.v
double spatial_inner(const PpnContext& ctx, const Vec3& u, const Vec3& v, InnerVariant variant);

Tetrad tetrad(const PpnContext& ctx);

// Deviation of the tetrad from orthonormality, g(e_mu, e_nu) - eta_mu_nu,
// returned as the (00, aa) pair.  Both entries are O((phi/c^2)^2) and are
// evaluated cancellation-free so they stay meaningful down to chi ~ 1e-9.
std::pair<double, double> tetrad_orthonormality_deviation(const PpnContext& ctx);

// Coordinate components -> physical (tetrad) components.
std::pair<Vec3, Vec3> to_physical_fields(const PpnContext& ctx, const Vec3& e_coord,
                                         const Vec3& b_coord);
Vec3 to_physical_dipole(const PpnContext& ctx, const Vec3& d_coord);

}  // namespace ppn::geometry
