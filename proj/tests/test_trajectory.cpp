#include "doctest.h"

#include <cmath>

#include "core/trajectory.hpp"

using namespace ppn;
using namespace ppn::trajectory;

namespace {

PpnContext base_ctx() { return PpnContext{}; }

}  // namespace

TEST_CASE("uniform potential, zero momentum: no motion") {
  const auto ctx = base_ctx();
  PhiProfile profile{-1.0e-4 * ctx.units.c * ctx.units.c, {}};
  IntegratorConfig config{1.0e-2, 500, 50, 1.0e-6};
  const auto result = integrate({2.0, 0.0}, {1.0, 2.0, 3.0}, {}, profile, ctx, config);
  for (const auto& s : result.samples) {
    CHECK(norm(s.R - Vec3{1.0, 2.0, 3.0}) == 0.0);
    CHECK(norm(s.P) == 0.0);
  }
}

TEST_CASE("linear potential: parabolic fall in the Newtonian limit") {
  PpnContext ctx = base_ctx();
  ctx.units.c = 1.0e6;  // suppress the PN corrections
  const Vec3 g{0.0, 0.0, 1.0e-3};
  PhiProfile profile{0.0, g};
  const double m = 3.0;
  const Vec3 P0{0.3, 0.0, -0.1};
  IntegratorConfig config{1.0e-3, 2000, 100, 1.0e-6};
  const auto result = integrate({m, 0.0}, {}, P0, profile, ctx, config);

  for (const auto& s : result.samples) {
    const Vec3 expected = P0 * (s.t / m) - g * (0.5 * s.t * s.t);
    CHECK(norm(s.R - expected) <= 1.0e-6 * (1.0 + norm(expected)));
  }
  CHECK(result.energy_drift <= 1.0e-9);
}

TEST_CASE("energy conservation of the implicit midpoint scheme") {
  const auto ctx = base_ctx();
  const double c2 = ctx.units.c * ctx.units.c;
  PhiProfile profile{-1.0e-4 * c2, Vec3{1.0e-5, 0.0, -2.0e-5} * c2};
  const double m = 2.0;
  IntegratorConfig config{5.0e-3, 4000, 200, 1.0e-6};
  const auto result =
      integrate({m, -0.3}, {0.5, 0.0, 0.0}, {0.02 * m * ctx.units.c, 0.0, 0.01 * m * ctx.units.c},
                profile, ctx, config);
  CHECK(result.drift_ok);
  CHECK(result.energy_drift <= 1.0e-8);
}

TEST_CASE("free-fall differential between internal energies") {
  const auto ctx = base_ctx();
  const double c2 = ctx.units.c * ctx.units.c;
  const Vec3 g = Vec3{0.0, 0.0, 1.0e-5} * c2;
  PhiProfile profile{-1.0e-4 * c2, g};
  const double M = 2.0;
  const Vec3 P0{0.01 * M * ctx.units.c, 0.0, 0.0};
  IntegratorConfig config{1.0e-3, 2000, 2000, 1.0e-6};

  SUBCASE("equal internal energies: trajectories coincide") {
    const double e_int = -0.4;
    const auto a = integrate({M, e_int}, {}, P0, profile, ctx, config);
    const auto b = integrate({M, e_int}, {}, P0, profile, ctx, config);
    CHECK(norm(a.samples.back().R - b.samples.back().R) <= 1.0e-9);
  }
  SUBCASE("different internal energies separate through the mass defect") {
    const double ea = 0.0, eb = -0.5;
    const auto a = integrate({M, ea}, {}, P0, profile, ctx, config);
    const auto b = integrate({M, eb}, {}, P0, profile, ctx, config);
    const double T = a.samples.back().t;
    const double separation = norm(a.samples.back().R - b.samples.back().R);
    const double ma = M + ea / c2, mb = M + eb / c2;
    const double predicted = norm(P0) * std::abs(1.0 / ma - 1.0 / mb) * T;
    CHECK(separation == doctest::Approx(predicted).epsilon(1.0e-3));
    // O(c^-2)-sized effect: about |P0| dE T / (M^2 c^2)
    CHECK(separation > 0.0);
    CHECK(separation <= 2.0 * norm(P0) * std::abs(ea - eb) * T / (M * M * c2));
  }
}

TEST_CASE("configuration validation") {
  const auto ctx = base_ctx();
  CHECK_THROWS(integrate({1.0, 0.0}, {}, {}, PhiProfile{}, ctx, IntegratorConfig{-1.0, 10, 1}));
  CHECK_THROWS(integrate({1.0, -1.0e30}, {}, {}, PhiProfile{}, ctx, IntegratorConfig{}));
}
