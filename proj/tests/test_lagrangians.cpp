#include "doctest.h"

#include <cmath>

#include "core/error.hpp"
#include "core/lagrangians.hpp"
#include "core/states.hpp"
#include "flat_reference.hpp"

using namespace ppn;
using namespace ppn::lagrangians;

namespace {

PpnContext make_ctx(double gamma, double beta, double chi) {
  PpnContext ctx;
  ctx.gamma = gamma;
  ctx.beta = beta;
  ctx.phi = chi * ctx.units.c * ctx.units.c;
  return ctx;
}

TwoParticleState orbit_state(const UnitSystem& units) {
  // loosely circular-orbit-like sample, both particles moving
  const double v = 0.02 * units.c;
  return TwoParticleState::velocities(1.0, 2.5, 1.0, {0.6, 0.0, 0.1}, {-0.4, 0.2, 0.0},
                                      {0.0, v, 0.1 * v}, {0.0, -0.5 * v, 0.0});
}

}  // namespace

TEST_CASE("exact point Lagrangian limits") {
  const double m = 1.7;
  SUBCASE("rest value in flat space") {
    const auto ctx = make_ctx(1.0, 1.0, 0.0);
    CHECK(exact_point_lagrangian(m, {}, {}, ctx) ==
          doctest::Approx(-m * ctx.units.c * ctx.units.c).epsilon(1e-15));
  }
  SUBCASE("special-relativistic limit") {
    const auto ctx = make_ctx(1.0, 1.0, 0.0);
    const Vec3 v{0.2 * ctx.units.c, 0.0, 0.0};
    const double expected = -m * ctx.units.c * ctx.units.c * std::sqrt(1.0 - 0.04);
    CHECK(exact_point_lagrangian(m, {}, v, ctx) == doctest::Approx(expected).epsilon(1e-14));
  }
  SUBCASE("superluminal velocities are rejected") {
    PpnContext ctx = make_ctx(1.0, 1.0, 0.0);
    ctx.units.c = 1.0;
    CHECK_THROWS_AS(exact_point_lagrangian(m, {}, {1.5, 0.0, 0.0}, ctx), Error);
  }
  SUBCASE("excess form matches the full value") {
    const auto ctx = make_ctx(1.1, 0.9, -1.0e-4);
    const Vec3 v{0.01 * ctx.units.c, 0.003 * ctx.units.c, 0.0};
    const double full = exact_point_lagrangian(m, {}, v, ctx);
    const double excess = exact_point_lagrangian_excess(m, {}, v, ctx);
    CHECK(full == doctest::Approx(-m * ctx.units.c * ctx.units.c + excess).epsilon(1e-15));
  }
}

TEST_CASE("post-Newtonian point Lagrangian terms") {
  SUBCASE("rest value") {
    const auto ctx = make_ctx(1.0, 1.0, 0.0);
    const auto b = pn_point_lagrangian(2.0, {}, {}, ctx);
    CHECK(b.total() == doctest::Approx(-2.0 * ctx.units.c * ctx.units.c).epsilon(1e-15));
  }
  SUBCASE("cross term vanishes at zero velocity") {
    const auto b = pn_point_lagrangian(1.0, {}, {}, make_ctx(1.7, 1.0, -1.0e-5));
    CHECK(b.kinetic_phi_cross == 0.0);
  }
  SUBCASE("hand evaluation of the cross term") {
    // m = 1, v = 0.01 c, phi/c^2 = -1e-6, gamma = beta = 1:
    // -(3/2) m (phi/c^2) v^2 = +1.5e-10 c^2
    const auto ctx = make_ctx(1.0, 1.0, -1.0e-6);
    const double c = ctx.units.c;
    const auto b = pn_point_lagrangian(1.0, {}, {0.01 * c, 0.0, 0.0}, ctx);
    CHECK(b.kinetic_phi_cross == doctest::Approx(1.5e-10 * c * c).epsilon(1e-12));
  }
  SUBCASE("total equals the sum of terms") {
    const auto ctx = make_ctx(1.3, 0.7, 2.0e-5);
    const auto b = pn_point_lagrangian(1.4, {}, {1.0, -2.0, 0.5}, ctx);
    const double sum = b.rest_mass + b.newton_kinetic + b.p4_kinetic + b.newton_potential +
                       b.phi_squared + b.kinetic_phi_cross;
    CHECK(b.total() == doctest::Approx(sum).epsilon(1e-15));
  }
}

TEST_CASE("Darwin Lagrangian") {
  const UnitSystem units;
  SUBCASE("static particles leave only the Coulomb term") {
    const auto s = TwoParticleState::velocities(1.0, 2.0, 1.0, {1.0, 0.0, 0.0}, {0.0, 0.0, 0.0},
                                                {}, {});
    const double expected = -units.coulomb_factor() * s.e1 * s.e2;  // r = 1
    CHECK(darwin_lagrangian(s, units) == doctest::Approx(expected).epsilon(1e-15));
  }
  SUBCASE("particle exchange symmetry") {
    const auto s = orbit_state(units);
    auto swapped = s;
    std::swap(swapped.m1, swapped.m2);
    std::swap(swapped.e1, swapped.e2);
    std::swap(swapped.r1, swapped.r2);
    std::swap(swapped.u1, swapped.u2);
    CHECK(darwin_lagrangian(s, units) ==
          doctest::Approx(darwin_lagrangian(swapped, units)).epsilon(1e-15));
  }
  SUBCASE("independent term-by-term re-evaluation") {
    const auto s = orbit_state(units);
    CHECK(darwin_lagrangian(s, units) ==
          doctest::Approx(flat_reference::darwin_lagrangian(s, units)).epsilon(1e-14));
  }
  SUBCASE("coincident positions are rejected") {
    const auto s = TwoParticleState::velocities(1.0, 1.0, 1.0, {1.0, 0.0, 0.0}, {1.0, 0.0, 0.0},
                                                {}, {});
    CHECK_THROWS_AS(darwin_lagrangian(s, units), Error);
  }
}

TEST_CASE("total Lagrangian") {
  const UnitSystem units;
  SUBCASE("flat, field-free value is Darwin plus rest masses") {
    const auto ctx = make_ctx(1.0, 1.0, 0.0);
    const auto s = orbit_state(units);
    const auto b = total_lagrangian(s, ctx, FieldConfiguration{});
    const double expected = darwin_lagrangian(s, units) -
                            (s.m1 + s.m2) * units.c * units.c;
    CHECK(b.total() == doctest::Approx(expected).epsilon(1e-14));
  }
  SUBCASE("gamma derivative at rest comes from the Coulomb prefactor") {
    const double chi = -2.0e-5;
    const auto s = TwoParticleState::velocities(1.0, 2.0, 1.0, {0.7, 0.0, 0.0}, {-0.3, 0.0, 0.0},
                                                {}, {});
    // the breakdown is linear in gamma, so the wide stencil is exact
    const double dg = 0.05;
    const auto bp = total_lagrangian(s, make_ctx(1.0 + dg, 1.0, chi), FieldConfiguration{});
    const auto bm = total_lagrangian(s, make_ctx(1.0 - dg, 1.0, chi), FieldConfiguration{});
    const double derivative = (bp.total_without_rest() - bm.total_without_rest()) / (2.0 * dg);
    const double expected = -chi * units.coulomb_factor() * s.e1 * s.e2 / norm(s.rel());
    CHECK(derivative == doctest::Approx(expected).epsilon(1e-8));
  }
  SUBCASE("translation invariance") {
    const auto ctx = make_ctx(1.2, 0.8, -1.0e-5);
    auto s = orbit_state(units);
    const auto b0 = total_lagrangian(s, ctx, FieldConfiguration{});
    const Vec3 shift{3.0, -1.0, 2.0};
    s.r1 += shift;
    s.r2 += shift;
    const auto b1 = total_lagrangian(s, ctx, FieldConfiguration{});
    CHECK(b0.total() == doctest::Approx(b1.total()).epsilon(1e-14));
  }
  SUBCASE("particle exchange symmetry of the gravity terms") {
    const auto ctx = make_ctx(1.1, 1.4, -3.0e-5);
    const auto s = orbit_state(units);
    auto swapped = s;
    std::swap(swapped.m1, swapped.m2);
    std::swap(swapped.e1, swapped.e2);
    std::swap(swapped.r1, swapped.r2);
    std::swap(swapped.u1, swapped.u2);
    const auto b0 = total_lagrangian(s, ctx, FieldConfiguration{});
    const auto b1 = total_lagrangian(swapped, ctx, FieldConfiguration{});
    CHECK(b0.total() == doctest::Approx(b1.total()).epsilon(1e-14));
  }
}

TEST_CASE("numerical Legendre transform") {
  const UnitSystem units;
  SUBCASE("quadratic Lagrangian gives p^2/2m") {
    const double m1 = 1.3, m2 = 2.1;
    const auto L = [&](const Vec3& v1, const Vec3& v2) {
      return 0.5 * m1 * norm2(v1) + 0.5 * m2 * norm2(v2);
    };
    const auto state = TwoParticleState::momenta(m1, m2, 1.0, {1.0, 0.0, 0.0}, {}, {0.7, -0.2, 0.4},
                                                 {0.1, 0.3, -0.5});
    const double expected = norm2(state.u1) / (2.0 * m1) + norm2(state.u2) / (2.0 * m2);
    CHECK(numerical_legendre(L, state, units) == doctest::Approx(expected).epsilon(1e-10));
  }
  SUBCASE("relativistic Lagrangian gives the full dispersion relation") {
    const double m1 = 1.0, m2 = 3.0;
    const double c = units.c, c2 = c * c;
    const auto L = [&](const Vec3& v1, const Vec3& v2) {
      return -m1 * c2 * std::sqrt(1.0 - norm2(v1) / c2) - m2 * c2 * std::sqrt(1.0 - norm2(v2) / c2);
    };
    const auto state = TwoParticleState::momenta(m1, m2, 1.0, {1.0, 0.0, 0.0}, {},
                                                 {0.1 * m1 * c, 0.0, 0.05 * m1 * c},
                                                 {0.0, -0.12 * m2 * c, 0.0});
    const double expected = std::sqrt(m1 * m1 * c2 * c2 + norm2(state.u1) * c2) +
                            std::sqrt(m2 * m2 * c2 * c2 + norm2(state.u2) * c2);
    CHECK(numerical_legendre(L, state, units) == doctest::Approx(expected).epsilon(1e-8));
  }
  SUBCASE("Legendre involution returns the Lagrangian") {
    const auto ctx = make_ctx(1.0, 1.0, -1.0e-5);
    const auto vel = orbit_state(units);
    const auto L = [&](const Vec3& v1, const Vec3& v2) {
      TwoParticleState s = vel;
      s.u1 = v1;
      s.u2 = v2;
      const auto b = total_lagrangian(s, ctx, FieldConfiguration{});
      return b.total_without_rest();
    };
    // momenta conjugate to the state's velocities, via the implementation path
    const double h = 1.0e-6 * units.c;
    auto grad = [&](int particle, int comp) {
      TwoParticleState sp = vel, sm = vel;
      Vec3& vp = particle == 0 ? sp.u1 : sp.u2;
      Vec3& vm = particle == 0 ? sm.u1 : sm.u2;
      vp[comp] += h;
      vm[comp] -= h;
      return (L(sp.u1, sp.u2) - L(sm.u1, sm.u2)) / (2.0 * h);
    };
    TwoParticleState momentum_state = vel;
    momentum_state.rep = TwoParticleState::Rep::Momentum;
    for (int comp = 0; comp < 3; ++comp) {
      momentum_state.u1[comp] = grad(0, comp);
      momentum_state.u2[comp] = grad(1, comp);
    }
    // H as a black box of the momenta, then transform back in the velocities
    const auto H = [&](const Vec3& p1, const Vec3& p2) {
      TwoParticleState s = momentum_state;
      s.u1 = p1;
      s.u2 = p2;
      return numerical_legendre(L, s, units);
    };
    TwoParticleState velocity_as_target = vel;
    velocity_as_target.rep = TwoParticleState::Rep::Momentum;  // role swap: targets are velocities
    const double l_back = numerical_legendre(H, velocity_as_target, units);
    CHECK(l_back == doctest::Approx(L(vel.u1, vel.u2)).epsilon(1e-6));
  }
  SUBCASE("non-convex Lagrangian is rejected") {
    const auto L = [](const Vec3& v1, const Vec3& v2) { return -norm2(v1) - norm2(v2); };
    const auto state =
        TwoParticleState::momenta(1.0, 1.0, 1.0, {1.0, 0.0, 0.0}, {}, {0.1, 0.0, 0.0}, {});
    CHECK_THROWS_AS(numerical_legendre(L, state, UnitSystem{}), Error);
  }
}
