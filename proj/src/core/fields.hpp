#pragma once

#include <vector>

#include "core/units.hpp"
#include "core/vec3.hpp"

namespace ppn {

// One transverse plane-wave mode of the external vector potential,
//   A(x, t) = amplitude * cos(k.x - omega t + phase),  omega = c |k|.
// The amplitude must be orthogonal to the wavevector (Coulomb gauge).
struct PlaneWaveMode {
  Vec3 amplitude{};
  Vec3 wavevector{};
  double phase = 0.0;
};

// External transverse field model plus the box used for energy quadrature.
// omega depends on the context's c at evaluation time, so the same mode list
// can be reused across c-scaling sweeps with fixed wavevectors.
struct FieldConfiguration {
  std::vector<PlaneWaveMode> modes;
  Vec3 box_min{};
  double box_side = 2.0 * 3.14159265358979323846;
  int points_per_dim = 32;

  bool empty() const { return modes.empty(); }

  Vec3 a_perp(const Vec3& x, double t, double c) const;
  Vec3 dt_a_perp(const Vec3& x, double t, double c) const;
  Vec3 e_coord(const Vec3& x, double t, double c) const { return -dt_a_perp(x, t, c); }
  Vec3 b_coord(const Vec3& x, double t, double c) const;

  double box_volume() const { return box_side * box_side * box_side; }

  // Transversality of each amplitude and positivity of the box.
  void validate() const;
  // Quadrature must resolve every mode with >= points_per_wavelength points.
  void require_resolution(double points_per_wavelength = 16.0) const;
};

// Point charges with optional Gaussian smearing (width sigma) for grid tests.
struct ChargeModel {
  std::vector<Vec3> positions;
  std::vector<double> charges;
  double sigma = 0.0;

  void validate() const;  // total charge zero, sigma >= 0, matching sizes
};

// Cubic lattice for the Poisson residual check; second-order stencil.
struct GridSpec {
  Vec3 box_min{};
  double extent = 1.0;  // cube side
  double spacing = 0.0625;

  int points_per_dim() const { return static_cast<int>(extent / spacing + 0.5) + 1; }
  void validate(const ChargeModel& charges) const;  // box must enclose charges by >= 6 sigma
};

}  // namespace ppn
