#include <doctest.h>

#include <cmath>
#include <random>

#include "elmg/complexity.hpp"
#include "elmg/stationary.hpp"

using namespace elmg;

namespace {
ModelParams params(double omega_x, double xi_y, double eps = 0.01) {
  ModelParams p;
  p.omega_x = omega_x;
  p.xi_y = xi_y;
  p.epsilon = eps;
  p.j = 100.0;
  return p;
}
}  // namespace

TEST_CASE("heisenberg group element") {
  const HeisenbergElement a{0.3, -0.2, 0.05};
  const HeisenbergElement id{};

  SUBCASE("group law with the identity") {
    const auto left = id.compose(a);
    CHECK(left.x1 == a.x1);
    CHECK(left.x2 == a.x2);
    CHECK(left.x3 == a.x3);
  }
  SUBCASE("element composed with its inverse is the identity") {
    const auto prod = a.compose(a.inverse());
    CHECK(std::abs(prod.x1) < 1e-15);
    CHECK(std::abs(prod.x2) < 1e-15);
    CHECK(std::abs(prod.x3) < 1e-15);
  }
  SUBCASE("central coordinate picks up the x1*y2 shear") {
    const HeisenbergElement b{0.1, 0.4, 0.0};
    const auto prod = a.compose(b);
    CHECK(prod.x3 == doctest::Approx(a.x3 + b.x3 + a.x1 * b.x2));
  }
}

TEST_CASE("evolved kick operator as a group element") {
  const auto p = params(4.0, 1.0);

  SUBCASE("t = 0") {
    const auto e = fotoc_operator_element(Phase::symmetric, p, 0.0);
    CHECK(e.x1 == doctest::Approx(p.epsilon));
    CHECK(e.x2 == doctest::Approx(0.0));
    CHECK(e.x3 == doctest::Approx(0.0));
  }
  SUBCASE("symmetric phase at t = 1") {
    const auto e = fotoc_operator_element(Phase::symmetric, p, 1.0);
    const double w = effective_hamiltonian(Phase::symmetric, p).frequency;
    CHECK(e.x1 == doctest::Approx(0.01 * std::cos(w)).epsilon(1e-12));
    CHECK(e.x1 == doctest::Approx(0.01 * std::cos(2.9587)).epsilon(1e-4));
    const auto q = heisenberg_quadratures(Phase::symmetric, p, 1.0);
    CHECK(e.x3 == doctest::Approx(0.5 * 1e-4 * q.q_coeff * q.p_coeff).epsilon(1e-12));
  }
}

TEST_CASE("closed-form complexity") {
  const auto p = params(4.0, 1.0);

  SUBCASE("t = 0 value and nonnegativity") {
    CHECK(nielsen_complexity(Phase::symmetric, p, 0.0) ==
          doctest::Approx(1e-4).epsilon(1e-12));
    for (double t = 0.0; t < 6.0; t += 0.1) {
      CHECK(nielsen_complexity(Phase::symmetric, p, t) >= 0.0);
    }
  }
  SUBCASE("symmetric phase oscillates between the quadrature extremes") {
    const auto h = effective_hamiltonian(Phase::symmetric, p);
    const double nu = std::sqrt(17.0);
    const double lo = 1e-4 * std::min(1.0, h.gamma_minus / nu);
    const double hi = 1e-4 * std::max(1.0, h.gamma_minus / nu);
    double seen_lo = 1e9, seen_hi = -1e9;
    const double period = M_PI / h.frequency;
    for (double t = 0.0; t <= 2.0 * period; t += period / 400.0) {
      const double c = nielsen_complexity(Phase::symmetric, p, t);
      seen_lo = std::min(seen_lo, c);
      seen_hi = std::max(seen_hi, c);
      CHECK(c >= lo - 1e-12);
      CHECK(c <= hi + 1e-12);
    }
    CHECK(seen_lo == doctest::Approx(lo).epsilon(1e-4));
    CHECK(seen_hi == doctest::Approx(hi).epsilon(1e-4));
    // periodicity pi/omega
    CHECK(nielsen_complexity(Phase::symmetric, p, 0.37) ==
          doctest::Approx(nielsen_complexity(Phase::symmetric, p, 0.37 + period))
              .epsilon(1e-9));
  }
}

TEST_CASE("analytic derivative against central differences") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> uom(0.2, 5.0);
  std::uniform_real_distribution<double> u01(0.1, 0.85);
  std::uniform_real_distribution<double> ut(0.0, 12.0);
  int checked = 0;
  for (int k = 0; k < 50; ++k) {
    const double om = uom(rng);
    const double xc = 0.5 * std::sqrt(1.0 + om * om);
    const Phase phase = (k % 2 == 0) ? Phase::symmetric : Phase::broken;
    const double xi = (phase == Phase::symmetric) ? u01(rng) * xc
                                                  : xc * (1.0 + u01(rng));
    const auto p = params(om, xi);
    const double t = ut(rng);
    const double analytic = nc_derivative(phase, p, t);
    const double h = 1e-6;
    auto pp = p, pm = p;
    pp.xi_y += h;
    pm.xi_y -= h;
    const double fd = (nielsen_complexity(phase, pp, t) -
                       nielsen_complexity(phase, pm, t)) /
                      (2.0 * h);
    const double scale = std::max(std::abs(analytic), 1e-9);
    CHECK(std::abs(analytic - fd) / scale < 1e-6);
    ++checked;
  }
  CHECK(checked == 50);
}

TEST_CASE("derivative on the transition line") {
  auto p = params(4.0, 0.0);
  p.xi_y = 0.5 * std::sqrt(17.0);
  CHECK_THROWS_AS(nc_derivative(Phase::symmetric, p, 10.0), domain_error);
  CHECK_THROWS_AS(nc_derivative(Phase::broken, p, 10.0), domain_error);

  SUBCASE("one-sided symmetric limit") {
    const double limit = nc_qpt_limit(Phase::symmetric, p, 10.0);
    CHECK(limit == doctest::Approx(1e-4 * 200.0 * std::sqrt(17.0)).epsilon(1e-12));
    CHECK(limit / 1e-4 == doctest::Approx(824.62).epsilon(1e-4));
    // approach from below
    const double xc = 0.5 * std::sqrt(17.0);
    double prev_err = 1e300;
    for (const double off : {1e-3, 1e-4, 1e-5, 1e-6}) {
      auto ps = params(4.0, xc - off);
      const double err = std::abs(nc_derivative(Phase::symmetric, ps, 10.0) - limit);
      CHECK(err < prev_err);
      prev_err = err;
    }
  }
  SUBCASE("broken-side divergence scan") {
    CHECK(std::isinf(nc_qpt_limit(Phase::broken, p, 10.0)));
    const double xc = 0.5 * std::sqrt(17.0);
    // mid-phase scale of the derivative, far from the line
    double mid = 0.0;
    for (double xi = 1.3 * xc; xi <= 3.0 * xc; xi += 0.1 * xc) {
      auto pb = params(4.0, xi);
      mid = std::max(mid, std::abs(nc_derivative(Phase::broken, pb, 10.0)));
    }
    double prev = 0.0;
    for (const double off : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10}) {
      auto pb = params(4.0, xc + off);
      const double mag = std::abs(nc_derivative(Phase::broken, pb, 10.0));
      CHECK(mag > prev);
      prev = mag;
    }
    CHECK(prev > 1e3 * mid);  // grows without bound approaching the line
  }
}

TEST_CASE("geodesic shooting solve") {
  const auto p = params(4.0, 1.0);

  SUBCASE("identity target gives the zero path") {
    const auto path = geodesic_solve(HeisenbergElement{});
    CHECK(path.cost < 1e-14);
    for (const auto& x : path.position) {
      CHECK(std::abs(x[0]) < 1e-12);
      CHECK(std::abs(x[1]) < 1e-12);
      CHECK(std::abs(x[2]) < 1e-12);
    }
  }

  SUBCASE("kick-operator target reproduces the straight-line family") {
    const auto target = fotoc_operator_element(Phase::symmetric, p, 1.0);
    const auto path = geodesic_solve(target);
    const auto q = heisenberg_quadratures(Phase::symmetric, p, 1.0);
    const double a = p.epsilon * q.q_coeff;
    const double b = p.epsilon * q.p_coeff;
    double worst = 0.0;
    for (std::size_t i = 0; i < path.tau.size(); ++i) {
      const double tau = path.tau[i];
      worst = std::max(worst, std::abs(path.position[i][0] - a * tau));
      worst = std::max(worst, std::abs(path.position[i][1] - b * tau));
      worst = std::max(worst,
                       std::abs(path.position[i][2] - 0.5 * a * b * tau * tau));
    }
    CHECK(worst < 1e-8);
    const double closed_form = nielsen_complexity(Phase::symmetric, p, 1.0);
    CHECK(std::abs(path.cost - closed_form) / closed_form < 1e-6);
  }

  SUBCASE("quadrature along the closed-form path matches the analytic cost") {
    const auto target = fotoc_operator_element(Phase::broken, params(4.0, 3.0), 2.0);
    const int n = 512;
    std::vector<double> tau(n + 1);
    std::vector<std::array<double, 3>> pos(n + 1);
    for (int i = 0; i <= n; ++i) {
      const double u = static_cast<double>(i) / n;
      tau[i] = u;
      pos[i] = {target.x1 * u, target.x2 * u, target.x3 * u * u};
    }
    const double cost = path_cost(tau, pos);
    const double analytic = target.x1 * target.x1 + target.x2 * target.x2;
    CHECK(std::abs(cost - analytic) / analytic < 1e-5);
  }

  SUBCASE("no sampled perturbed path beats the geodesic cost") {
    const auto target = fotoc_operator_element(Phase::symmetric, p, 0.7);
    const auto best = geodesic_solve(target);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> amp(-0.5, 0.5);
    std::uniform_int_distribution<int> mode(1, 4);
    const int n = 512;
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> tau(n + 1);
      std::vector<std::array<double, 3>> pos(n + 1);
      const double s1 = amp(rng) * target.x1, s2 = amp(rng) * target.x2,
                   s3 = amp(rng) * std::max(std::abs(target.x3), 1e-4);
      const int m1 = mode(rng), m2 = mode(rng), m3 = mode(rng);
      for (int i = 0; i <= n; ++i) {
        const double u = static_cast<double>(i) / n;
        const double bump1 = s1 * std::sin(m1 * M_PI * u);
        const double bump2 = s2 * std::sin(m2 * M_PI * u);
        const double bump3 = s3 * std::sin(m3 * M_PI * u);
        tau[i] = u;
        pos[i] = {target.x1 * u + bump1, target.x2 * u + bump2,
                  target.x3 * u * u + bump3};
      }
      CHECK(path_cost(tau, pos) >= best.cost - 1e-10);
    }
  }
}

TEST_CASE("complexity is not -log(fotoc)") {
  ModelParams p = params(4.0, 1.0);
  p.j = 100.0;
  const Model m = make_model(p);
  const Propagator prop(m.hamiltonian);
  const auto sp = stationary_point(p, 1);
  const Matrix gen = rotated_quadrature(m.ops, sp.point, 0);
  FotocSpec spec{Generator::Custom, gen, p.epsilon, sp.point, false};
  const auto grid = uniform_grid(0.0, 10.0, 201);

  const auto rep = complexity_vs_neglog_fotoc(Phase::symmetric, m, prop, spec, grid);
  CHECK_FALSE(rep.degenerate);
  CHECK(rep.excluded == 0);
  CHECK(rep.max_abs_mismatch > 0.1 * rep.max_scale);

  SUBCASE("eps = 0 is flagged degenerate") {
    FotocSpec zero = spec;
    zero.epsilon = 0.0;
    ModelParams p0 = p;
    p0.epsilon = 0.0;
    const Model m0 = make_model(p0);
    const auto rep0 =
        complexity_vs_neglog_fotoc(Phase::symmetric, m0, prop, zero, grid);
    CHECK(rep0.degenerate);
  }
}
