#include "elmg/complexity.hpp"

#include <cmath>
#include <limits>

namespace elmg {

namespace {

using State6 = std::array<double, 6>;  // (x1, x2, x3, v1, v2, v3)

// Geodesic equations of the right-invariant metric
//   ds^2 = (1+x2^2) dx1^2 + dx2^2 + dx3^2 - 2 x2 dx1 dx3.
// Note: these are the Euler-Lagrange equations of that metric; the
// straight-line family x1,x2 ~ tau, x3 ~ tau^2 solves them.
State6 rhs(const State6& y) {
  const double x2 = y[1];
  const double v1 = y[3], v2 = y[4], v3 = y[5];
  State6 d;
  d[0] = v1;
  d[1] = v2;
  d[2] = v3;
  d[3] = -v2 * (x2 * v1 - v3);
  d[4] = -v1 * (v3 - x2 * v1);
  d[5] = v2 * ((1.0 - x2 * x2) * v1 + x2 * v3);
  return d;
}

State6 rk4_step(const State6& y, double h) {
  auto add = [](const State6& a, const State6& b, double s) {
    State6 r;
    for (int i = 0; i < 6; ++i) r[i] = a[i] + s * b[i];
    return r;
  };
  const State6 k1 = rhs(y);
  const State6 k2 = rhs(add(y, k1, 0.5 * h));
  const State6 k3 = rhs(add(y, k2, 0.5 * h));
  const State6 k4 = rhs(add(y, k3, h));
  State6 out;
  for (int i = 0; i < 6; ++i) {
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

std::vector<State6> integrate(const std::array<double, 3>& v0, int steps) {
  std::vector<State6> traj(steps + 1);
  traj[0] = {0, 0, 0, v0[0], v0[1], v0[2]};
  const double h = 1.0 / steps;
  for (int i = 0; i < steps; ++i) traj[i + 1] = rk4_step(traj[i], h);
  return traj;
}

double simpson(const std::vector<double>& f, double h) {
  const std::size_t n = f.size() - 1;  // must be even
  double s = f[0] + f[n];
  for (std::size_t i = 1; i < n; i += 2) s += 4.0 * f[i];
  for (std::size_t i = 2; i < n; i += 2) s += 2.0 * f[i];
  return s * h / 3.0;
}

std::array<double, 3> control_values(const State6& y) {
  // Y^1 = -v1, Y^2 = -v2, Y^3 = -(v3 - x2 v1)
  return {-y[3], -y[4], -(y[5] - y[1] * y[3])};
}

}  // namespace

HeisenbergElement fotoc_operator_element(Phase phase, const ModelParams& p, double t) {
  const QuadraturePair q = heisenberg_quadratures(phase, p, t);
  const double e = p.epsilon;
  return {e * q.q_coeff, e * q.p_coeff, 0.5 * e * e * q.q_coeff * q.p_coeff};
}

double nielsen_complexity(Phase phase, const ModelParams& p, double t) {
  const QuadraturePair q = heisenberg_quadratures(phase, p, t);
  return p.epsilon * p.epsilon *
         (q.q_coeff * q.q_coeff + q.p_coeff * q.p_coeff);
}

double nc_derivative(Phase phase, const ModelParams& p, double t) {
  const QuadraturePair q = heisenberg_quadratures(phase, p, t);
  const QuadraturePair dq = heisenberg_quadratures_dxi(phase, p, t);
  return 2.0 * p.epsilon * p.epsilon *
         (q.q_coeff * dq.q_coeff + q.p_coeff * dq.p_coeff);
}

double nc_qpt_limit(Phase phase, const ModelParams& p, double t) {
  const double nu = std::sqrt(1.0 + p.omega_x * p.omega_x);
  const double e2 = p.epsilon * p.epsilon;
  switch (phase) {
    case Phase::symmetric:
      return e2 * 2.0 * t * t * nu;
    case Phase::ground:
      return -e2 * 2.0 * t * t * nu;
    case Phase::broken:
      return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

GeodesicPath geodesic_solve(const HeisenbergElement& target,
                            const GeodesicSolveOptions& options) {
  if (options.steps < 8 || options.steps % 2 != 0) {
    throw domain_error("geodesic_solve: steps must be even and >= 8");
  }
  std::array<double, 3> v = {target.x1, target.x2, 0.0};

  auto boundary_residual = [&](const std::array<double, 3>& v0,
                               std::vector<State6>* traj_out) {
    const auto traj = integrate(v0, options.steps);
    const State6& end = traj.back();
    std::array<double, 3> r = {end[0] - target.x1, end[1] - target.x2,
                               end[2] - target.x3};
    if (traj_out) *traj_out = traj;
    return r;
  };

  std::vector<State6> traj;
  std::array<double, 3> res = boundary_residual(v, &traj);
  double rn = std::hypot(res[0], std::hypot(res[1], res[2]));

  for (int it = 0; it < options.max_newton && rn > options.tolerance; ++it) {
    // Finite-difference Jacobian dr/dv0.
    double jac[3][3];
    const double h = std::max(1e-7, 1e-7 * rn);
    for (int c = 0; c < 3; ++c) {
      auto vp = v, vm = v;
      vp[c] += h;
      vm[c] -= h;
      const auto rp = boundary_residual(vp, nullptr);
      const auto rm = boundary_residual(vm, nullptr);
      for (int r = 0; r < 3; ++r) jac[r][c] = (rp[r] - rm[r]) / (2.0 * h);
    }
    // Solve jac * dv = res with partial-pivot elimination.
    double a[3][4];
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) a[r][c] = jac[r][c];
      a[r][3] = res[r];
    }
    for (int c = 0; c < 3; ++c) {
      int piv = c;
      for (int r = c + 1; r < 3; ++r) {
        if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
      }
      std::swap(a[c], a[piv]);
      if (std::abs(a[c][c]) < 1e-14) {
        throw numeric_error("geodesic_solve: singular shooting Jacobian");
      }
      for (int r = 0; r < 3; ++r) {
        if (r == c) continue;
        const double f = a[r][c] / a[c][c];
        for (int k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
      }
    }
    for (int c = 0; c < 3; ++c) v[c] -= a[c][3] / a[c][c];
    res = boundary_residual(v, &traj);
    rn = std::hypot(res[0], std::hypot(res[1], res[2]));
  }
  if (rn > options.tolerance) {
    throw numeric_error("geodesic_solve: shooting did not converge, residual " +
                        std::to_string(rn));
  }

  GeodesicPath path;
  path.boundary_residual = rn;
  const int n = options.steps;
  path.tau.resize(n + 1);
  path.position.resize(n + 1);
  path.velocity.resize(n + 1);
  path.controls.resize(n + 1);
  std::vector<double> integrand(n + 1);
  for (int i = 0; i <= n; ++i) {
    path.tau[i] = static_cast<double>(i) / n;
    path.position[i] = {traj[i][0], traj[i][1], traj[i][2]};
    path.velocity[i] = {traj[i][3], traj[i][4], traj[i][5]};
    path.controls[i] = control_values(traj[i]);
    const auto& y = path.controls[i];
    integrand[i] = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
  }
  path.cost = simpson(integrand, 1.0 / n);
  return path;
}

double path_cost(const std::vector<double>& tau,
                 const std::vector<std::array<double, 3>>& position) {
  if (tau.size() != position.size() || tau.size() < 3 || tau.size() % 2 == 0) {
    throw domain_error("path_cost: need an odd number (>= 3) of matching samples");
  }
  const std::size_t n = tau.size() - 1;
  const double h = tau[1] - tau[0];
  // central-difference velocities, one-sided at the ends
  std::vector<double> integrand(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    std::array<double, 3> v;
    if (i == 0) {
      for (int c = 0; c < 3; ++c) v[c] = (position[1][c] - position[0][c]) / h;
    } else if (i == n) {
      for (int c = 0; c < 3; ++c) v[c] = (position[n][c] - position[n - 1][c]) / h;
    } else {
      for (int c = 0; c < 3; ++c) {
        v[c] = (position[i + 1][c] - position[i - 1][c]) / (2.0 * h);
      }
    }
    const double y3 = v[2] - position[i][1] * v[0];
    integrand[i] = v[0] * v[0] + v[1] * v[1] + y3 * y3;
  }
  return simpson(integrand, h);
}

ComplexityFotocReport complexity_vs_neglog_fotoc(Phase phase, const Model& m,
                                                 const Propagator& prop,
                                                 const FotocSpec& spec,
                                                 const std::vector<double>& times) {
  ComplexityFotocReport rep;
  rep.times = times;
  const TimeSeries f = fotoc(m, prop, spec, times);
  ModelParams p = m.params;
  p.epsilon = spec.epsilon;

  bool all_zero = true;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double c = nielsen_complexity(phase, p, times[i]);
    const double fv = f.values[i].real();
    rep.complexity.push_back(c);
    if (fv <= 0.0) {
      rep.neglog_fotoc.push_back(std::numeric_limits<double>::quiet_NaN());
      ++rep.excluded;
      continue;
    }
    const double nl = -std::log(fv);
    rep.neglog_fotoc.push_back(nl);
    if (c != 0.0 || nl > 1e-14) all_zero = false;
    rep.max_abs_mismatch = std::max(rep.max_abs_mismatch, std::abs(c - nl));
    rep.max_scale = std::max({rep.max_scale, c, std::abs(nl)});
  }
  rep.degenerate = all_zero;
  return rep;
}

}  // namespace elmg
