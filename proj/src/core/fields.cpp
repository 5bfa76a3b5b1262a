#include "core/fields.hpp"

#include <cmath>

#include "core/error.hpp"

namespace ppn {

Vec3 FieldConfiguration::a_perp(const Vec3& x, double t, double c) const {
  Vec3 a{};
  for (const auto& m : modes) {
    const double omega = c * norm(m.wavevector);
    a += m.amplitude * std::cos(dot(m.wavevector, x) - omega * t + m.phase);
  }
  return a;
}

Vec3 FieldConfiguration::dt_a_perp(const Vec3& x, double t, double c) const {
  Vec3 a{};
  for (const auto& m : modes) {
    const double omega = c * norm(m.wavevector);
    a += m.amplitude * (omega * std::sin(dot(m.wavevector, x) - omega * t + m.phase));
  }
  return a;
}

Vec3 FieldConfiguration::b_coord(const Vec3& x, double t, double c) const {
  // curl of sum_m a_m cos(k.x - omega t + theta) = -sum_m sin(...) (k x a)
  Vec3 b{};
  for (const auto& m : modes) {
    const double omega = c * norm(m.wavevector);
    b += cross(m.wavevector, m.amplitude) *
         (-std::sin(dot(m.wavevector, x) - omega * t + m.phase));
  }
  return b;
}

void FieldConfiguration::validate() const {
  for (const auto& m : modes) {
    const double k = norm(m.wavevector);
    if (!(k > 0.0)) fail_invalid("plane-wave mode needs a nonzero wavevector");
    if (std::abs(dot(m.amplitude, m.wavevector)) > 1.0e-12 * norm(m.amplitude) * k) {
      fail_invalid("plane-wave amplitude must be transverse to its wavevector");
    }
  }
  if (!(box_side > 0.0) || points_per_dim < 2) fail_invalid("invalid quadrature box");
}

void FieldConfiguration::require_resolution(double points_per_wavelength) const {
  const double h = box_side / points_per_dim;
  for (const auto& m : modes) {
    const double wavelength = 2.0 * M_PI / norm(m.wavevector);
    if (h > wavelength / points_per_wavelength) {
      fail_invalid("under-resolved quadrature: need >= " +
                   std::to_string(points_per_wavelength) + " points per wavelength");
    }
  }
}

void ChargeModel::validate() const {
  if (positions.size() != charges.size()) fail_invalid("charge model size mismatch");
  if (sigma < 0.0) fail_invalid("smearing width must be non-negative");
  double total = 0.0;
  for (double q : charges) total += q;
  double scale = 0.0;
  for (double q : charges) scale += std::abs(q);
  if (std::abs(total) > 1.0e-12 * std::max(scale, 1.0)) {
    fail_invalid("total charge of the atom must vanish");
  }
}

void GridSpec::validate(const ChargeModel& charges) const {
  if (!(spacing > 0.0) || !(extent > spacing)) fail_invalid("invalid grid");
  const double margin = 6.0 * charges.sigma;
  for (const auto& p : charges.positions) {
    for (int a = 0; a < 3; ++a) {
      if (p[a] - margin < box_min[a] || p[a] + margin > box_min[a] + extent) {
        fail_invalid("grid box too small: charges must be enclosed by >= 6 sigma");
      }
    }
  }
}

}  // namespace ppn
