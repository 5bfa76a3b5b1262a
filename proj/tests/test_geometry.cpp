#include "doctest.h"

#include <cmath>

#include "core/error.hpp"
#include "core/geometry.hpp"

using namespace ppn;
using namespace ppn::geometry;

namespace {

PpnContext make_ctx(double gamma, double beta, double chi) {
  PpnContext ctx;
  ctx.gamma = gamma;
  ctx.beta = beta;
  ctx.phi = chi * ctx.units.c * ctx.units.c;
  return ctx;
}

}  // namespace

TEST_CASE("flat limit of the metric") {
  const auto m = metric_components(make_ctx(1.0, 1.0, 0.0));
  CHECK(m.g00 == -1.0);
  CHECK(m.g_space == 1.0);
  CHECK(m.inv_g00 == -1.0);
  CHECK(m.inv_g_space == 1.0);
  CHECK(m.sqrt_minus_g == 1.0);
}

TEST_CASE("metric at gamma = beta = 1, phi/c^2 = -1e-6") {
  const auto m = metric_components(make_ctx(1.0, 1.0, -1.0e-6));
  CHECK(m.g00 == doctest::Approx(-1.0 + 2.0e-6 - 2.0e-12).epsilon(1e-15));
  CHECK(m.g_space == doctest::Approx(1.0 + 2.0e-6).epsilon(1e-15));
  CHECK(m.sqrt_minus_g == doctest::Approx(1.0 + 2.0e-6).epsilon(1e-15));
}

TEST_CASE("metric times inverse deviates from identity only at second order") {
  // closed forms: g00 g^00 - 1 = -(2 beta + ...) chi^2 + ..., spatial part
  // exactly -4 gamma^2 chi^2
  for (double gamma : {0.0, 0.7, 1.0, 2.0}) {
    for (double beta : {0.0, 1.0, 2.0}) {
      for (double chi : {-1.0e-3, -1.0e-5, 1.0e-4}) {
        const auto m = metric_components(make_ctx(gamma, beta, chi));
        const double devaa = m.g_space * m.inv_g_space - 1.0;
        // the raw product rounds at machine epsilon, so compare absolutely
        CHECK(std::abs(devaa - (-4.0 * gamma * gamma * chi * chi)) <= 1.0e-15);
        const double dev00 = std::abs(m.g00 * m.inv_g00 - 1.0);
        CHECK(dev00 <= (4.0 * gamma * gamma + 4.0 * beta + 9.0) * chi * chi);
        // the plain quadratic bound holds in the GR neighbourhood
        if (gamma <= 1.5 && beta <= 1.5) {
          CHECK(dev00 <= 10.0 * chi * chi);
          CHECK(std::abs(devaa) <= 10.0 * chi * chi);
        }
      }
    }
  }
}

TEST_CASE("weak-field guard rejects |phi|/c^2 >= 1e-2") {
  CHECK_THROWS_AS(metric_components(make_ctx(1.0, 1.0, 0.02)), Error);
  CHECK_THROWS_AS(metric_components(make_ctx(1.0, 1.0, -0.5)), Error);
}

TEST_CASE("spatial inner product variants") {
  const Vec3 ex{1.0, 0.0, 0.0};
  SUBCASE("flat limit") {
    const auto ctx = make_ctx(1.0, 1.0, 0.0);
    CHECK(spatial_inner(ctx, ex, ex, InnerVariant::Metric) == 1.0);
    CHECK(spatial_inner(ctx, ex, ex, InnerVariant::Inverse) == 1.0);
  }
  SUBCASE("hand value at gamma = 1, phi/c^2 = 1e-4") {
    const auto ctx = make_ctx(1.0, 1.0, 1.0e-4);
    CHECK(spatial_inner(ctx, ex, ex, InnerVariant::Metric) == doctest::Approx(0.9998).epsilon(1e-14));
  }
  SUBCASE("metric/inverse duality to second order") {
    const Vec3 u{0.3, -1.2, 0.5};
    for (double chi : {-1.0e-3, 1.0e-4}) {
      const auto ctx = make_ctx(1.3, 0.9, chi);
      const double product = spatial_inner(ctx, u, u, InnerVariant::Metric) *
                             spatial_inner(ctx, u, u, InnerVariant::Inverse);
      const double flat = dot(u, u) * dot(u, u);
      CHECK(std::abs(product - flat) <= 30.0 * chi * chi * flat);
    }
  }
}

TEST_CASE("physical field components") {
  SUBCASE("flat limit is the identity") {
    const auto ctx = make_ctx(1.0, 1.0, 0.0);
    const auto [e, b] = to_physical_fields(ctx, {1.0, 2.0, 3.0}, {0.5, 0.0, -1.0});
    CHECK(e.x == 1.0);
    CHECK(e.y == 2.0);
    CHECK(b.z == -1.0);
  }
  SUBCASE("magnetic factor at gamma = 1, phi/c^2 = -1e-6") {
    const auto ctx = make_ctx(1.0, 1.0, -1.0e-6);
    const auto [e, b] = to_physical_fields(ctx, {0.0, 0.0, 0.0}, {0.0, 0.0, 1.0});
    CHECK(b.z == doctest::Approx(1.0 - 2.0e-6).epsilon(1e-13));
    (void)e;
  }
  SUBCASE("E.B rescales consistently with the component factors") {
    const double chi = 1.0e-5;
    const auto ctx = make_ctx(1.4, 0.8, chi);
    const Vec3 E{0.3, 1.0, -0.2}, B{1.1, -0.4, 0.9};
    const auto [ep, bp] = to_physical_fields(ctx, E, B);
    const auto m = metric_components(ctx);
    const double expected =
        dot(E, B) * (1.0 + ctx.gamma * chi) * (1.0 + 2.0 * ctx.gamma * chi) / std::sqrt(-m.g00);
    CHECK(dot(ep, bp) == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("physical dipole moment") {
  SUBCASE("flat limit") {
    const auto d = to_physical_dipole(make_ctx(1.0, 1.0, 0.0), {1.0, 2.0, 3.0});
    CHECK(d.x == 1.0);
  }
  SUBCASE("gamma = 2, phi/c^2 = 1e-6") {
    const auto d = to_physical_dipole(make_ctx(2.0, 1.0, 1.0e-6), {1.0, 0.0, 0.0});
    CHECK(d.x == doctest::Approx(1.0 - 2.0e-6).epsilon(1e-14));
  }
  SUBCASE("round trip with the inverse factor") {
    const double chi = -1.0e-4;
    const auto ctx = make_ctx(1.5, 1.0, chi);
    const Vec3 d0{0.7, -0.1, 0.4};
    const Vec3 back = to_physical_dipole(ctx, d0) * (1.0 + ctx.gamma * chi);
    CHECK(norm(back - d0) <= 10.0 * chi * chi * norm(d0));
  }
}

TEST_CASE("tetrad orthonormality") {
  SUBCASE("closed-form deviation across the (gamma, beta) grid") {
    for (double gamma = 0.0; gamma <= 2.0; gamma += 0.25) {
      for (double beta = 0.0; beta <= 2.0; beta += 0.25) {
        const double chi = -2.0e-4;
        const auto ctx = make_ctx(gamma, beta, chi);
        const auto [dev00, devaa] = tetrad_orthonormality_deviation(ctx);
        // reference: plain products of the metric and tetrad factors
        const auto m = metric_components(ctx);
        const auto t = tetrad(ctx);
        const double raw00 = m.g00 * t.e0_factor * t.e0_factor + 1.0;
        const double rawaa = m.g_space * t.ea_factor * t.ea_factor - 1.0;
        CHECK(dev00 == doctest::Approx(raw00).epsilon(1e-6));
        CHECK(devaa == doctest::Approx(rawaa).epsilon(1e-6));
        // leading closed forms
        CHECK(std::abs(dev00 - (3.0 - 2.0 * beta) * chi * chi) <=
              5.0 * std::abs(chi * chi * chi) * (1.0 + beta));
        CHECK(std::abs(devaa - (-3.0 * gamma * gamma * chi * chi)) <=
              5.0 * std::abs(chi * chi * chi) * (1.0 + gamma * gamma * gamma));
      }
    }
  }
  SUBCASE("quadratic bound in the GR neighbourhood") {
    for (double gamma : {0.5, 1.0, 1.5}) {
      for (double beta : {0.5, 1.0, 1.5}) {
        for (double chi : {-1.0e-3, 1.0e-4, -1.0e-5}) {
          const auto [dev00, devaa] = tetrad_orthonormality_deviation(make_ctx(gamma, beta, chi));
          CHECK(std::abs(dev00) <= 10.0 * chi * chi);
          CHECK(std::abs(devaa) <= 10.0 * chi * chi);
        }
      }
    }
  }
}

TEST_CASE("determinant consistency") {
  for (double gamma : {0.0, 1.0, 2.0}) {
    for (double chi : {-1.0e-3, 1.0e-4}) {
      const auto m = metric_components(make_ctx(gamma, 1.2, chi));
      const double det = -m.g00 * m.g_space * m.g_space * m.g_space;
      const double diff = m.sqrt_minus_g * m.sqrt_minus_g - det;
      CHECK(std::abs(diff) <= 40.0 * chi * chi);
    }
  }
}

TEST_CASE("metric varies smoothly in gamma, beta, phi") {
  const double chi = -5.0e-4;
  const double dg = 1.0e-6;
  auto g00_of_beta = [&](double beta) { return metric_components(make_ctx(1.0, beta, chi)).g00; };
  const double dbeta = (g00_of_beta(1.0 + dg) - g00_of_beta(1.0 - dg)) / (2.0 * dg);
  CHECK(dbeta == doctest::Approx(-2.0 * chi * chi).epsilon(1e-6));

  auto gsp_of_gamma = [&](double gamma) {
    return metric_components(make_ctx(gamma, 1.0, chi)).g_space;
  };
  const double dgamma = (gsp_of_gamma(1.0 + dg) - gsp_of_gamma(1.0 - dg)) / (2.0 * dg);
  CHECK(dgamma == doctest::Approx(-2.0 * chi).epsilon(1e-9));
}
