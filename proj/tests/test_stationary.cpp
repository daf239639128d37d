#include <doctest.h>

#include <cmath>

#include "elmg/stationary.hpp"

using namespace elmg;

TEST_CASE("qpt lines") {
  ModelParams p;
  p.omega_x = 0.0;
  auto lines = qpt_lines(p);
  CHECK(lines.gs == doctest::Approx(-0.5));
  CHECK(lines.es == doctest::Approx(0.5));

  p.omega_x = 4.0;
  lines = qpt_lines(p);
  CHECK(lines.es == doctest::Approx(2.0615528128088303).epsilon(1e-12));

  for (const double om : {0.3, 1.0, 2.5, 7.0}) {
    p.omega_x = om;
    lines = qpt_lines(p);
    CHECK(lines.es == doctest::Approx(-lines.gs).epsilon(1e-15));
  }
}

TEST_CASE("points 1 and 2 carry the +/- sqrt(1+omega_x^2) energies") {
  ModelParams p;
  p.omega_x = 4.0;
  p.xi_y = 1.0;
  const double nu = std::sqrt(17.0);
  const auto pts = stationary_points(p);

  REQUIRE(pts.size() == 4);
  CHECK(pts[0].valid);
  CHECK(pts[1].valid);
  CHECK(pts[0].energy == doctest::Approx(nu).epsilon(1e-12));
  CHECK(pts[1].energy == doctest::Approx(-nu).epsilon(1e-12));
  // energy-carrying branch of the phi = 0 point is arccos(-1/nu)
  CHECK(pts[0].point.theta == doctest::Approx(std::acos(-1.0 / nu)).epsilon(1e-9));
  CHECK(pts[1].point.theta == doctest::Approx(std::acos(1.0 / nu)).epsilon(1e-9));
  CHECK(pts[0].gradient_norm < 1e-9);
  CHECK(pts[1].gradient_norm < 1e-9);
}

TEST_CASE("point 4 closed form and validity boundary") {
  ModelParams p;
  p.omega_x = 4.0;
  p.xi_y = 3.0;
  const auto sp = stationary_point(p, 4);
  CHECK(sp.point.theta == doctest::Approx(std::acos(-1.0 / 6.0)).epsilon(1e-9));
  CHECK(sp.point.phi ==
        doctest::Approx(std::acos(4.0 / std::sqrt(35.0))).epsilon(1e-9));
  CHECK(sp.energy == doctest::Approx(17.0 / 12.0 + 3.0).epsilon(1e-12));
  CHECK(sp.gradient_norm < 1e-9);

  // validity flips at xi_y = sqrt(17)/2 ~ 2.0616
  p.xi_y = 2.0;
  CHECK_FALSE(stationary_points(p)[3].valid);
  CHECK_THROWS_AS(stationary_point(p, 4), domain_error);
  p.xi_y = 2.1;
  CHECK(stationary_points(p)[3].valid);
}

TEST_CASE("point 3 located numerically in its domain") {
  ModelParams p;
  p.omega_x = 4.0;
  p.xi_y = -3.0;
  const auto sp = stationary_point(p, 3);
  CHECK(sp.gradient_norm < 1e-9);
  CHECK(sp.energy ==
        doctest::Approx((1.0 + 16.0) / (4.0 * p.xi_y) + p.xi_y).epsilon(1e-12));

  p.xi_y = -1.0;  // above -sqrt(17)/2: invalid
  CHECK_FALSE(stationary_points(p)[2].valid);
}

TEST_CASE("free spin minimum at the north pole") {
  ModelParams p;
  p.omega_x = 0.0;
  p.xi_y = 0.0;
  const auto sp = stationary_point(p, 2);
  CHECK(sp.point.theta == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(sp.energy == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("every valid point passes the zero-gradient oracle") {
  for (const double om : {0.0, 0.7, 4.0}) {
    for (const double xi : {-3.0, -0.2, 0.9, 3.0}) {
      ModelParams p;
      p.omega_x = om;
      p.xi_y = xi;
      for (const auto& sp : stationary_points(p)) {
        if (!sp.valid) continue;
        CAPTURE(om);
        CAPTURE(xi);
        CAPTURE(sp.label);
        CHECK(sp.gradient_norm <= 1e-9);
        // closed-form energies
        const double nu = std::sqrt(1.0 + om * om);
        if (sp.label == 1) CHECK(sp.energy == doctest::Approx(nu).epsilon(1e-12));
        if (sp.label == 2) CHECK(sp.energy == doctest::Approx(-nu).epsilon(1e-12));
        if (sp.label >= 3) {
          CHECK(sp.energy ==
                doctest::Approx((1.0 + om * om) / (4.0 * xi) + xi).epsilon(1e-11));
        }
      }
    }
  }
}
