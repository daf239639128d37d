#include "elmg/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace elmg {

namespace {

constexpr double kGradTol = 1e-9;

// One Newton refinement pass in (Q,P) with the analytic gradient and a
// finite-difference Hessian.  Closed-form seeds are already accurate, so a
// handful of iterations reaches |grad| ~ 1e-14.
std::array<double, 2> refine(const ModelParams& p, double q0, double p0) {
  double q = q0, pc = p0;
  for (int it = 0; it < 60; ++it) {
    const auto g = classical_gradient_qp(p, q, pc);
    const double gn = std::hypot(g[0], g[1]);
    if (gn < 1e-14) break;
    const double h = 1e-6;
    const auto gqp = classical_gradient_qp(p, q + h, pc);
    const auto gqm = classical_gradient_qp(p, q - h, pc);
    const auto gpp = classical_gradient_qp(p, q, pc + h);
    const auto gpm = classical_gradient_qp(p, q, pc - h);
    const double hqq = (gqp[0] - gqm[0]) / (2 * h);
    const double hqp = (gpp[0] - gpm[0]) / (2 * h);
    const double hpq = (gqp[1] - gqm[1]) / (2 * h);
    const double hpp = (gpp[1] - gpm[1]) / (2 * h);
    const double det = hqq * hpp - hqp * hpq;
    if (std::abs(det) < 1e-14) break;
    q -= (hpp * g[0] - hqp * g[1]) / det;
    pc -= (-hpq * g[0] + hqq * g[1]) / det;
  }
  return {q, pc};
}

StationaryPoint make_point(const ModelParams& p, int label, const BlochPoint& seed,
                           bool valid) {
  StationaryPoint sp;
  sp.label = label;
  sp.valid = valid;
  if (!valid) {
    sp.point = seed;
    sp.energy = classical_energy(p, seed);
    sp.gradient_norm = std::numeric_limits<double>::quiet_NaN();
    return sp;
  }
  // The canonical chart is singular at theta = pi; points in the southern
  // hemisphere are refined in the antipodal chart theta' = pi - theta, where
  // the energy surface is the same function with the sign of omega flipped.
  const bool south = seed.theta > 0.5 * M_PI;
  ModelParams chart = p;
  BlochPoint chart_seed = seed;
  if (south) {
    chart.omega = -p.omega;
    chart_seed.theta = M_PI - seed.theta;
  }
  const auto qp0 = canonical_coordinates(chart_seed);
  const auto qp = refine(chart, qp0[0], qp0[1]);
  BlochPoint refined = bloch_from_canonical(qp[0], qp[1]);
  if (south) refined.theta = M_PI - refined.theta;
  sp.point = refined;
  sp.energy = classical_energy_qp(chart, qp[0], qp[1]);
  const auto g = classical_gradient_qp(chart, qp[0], qp[1]);
  sp.gradient_norm = std::hypot(g[0], g[1]);
  return sp;
}

}  // namespace

std::vector<StationaryPoint> stationary_points(const ModelParams& p) {
  const double nu = std::sqrt(1.0 + p.omega_x * p.omega_x);
  std::vector<StationaryPoint> out;

  // Points 1 and 2 exist for all parameters.  The branch carrying energy
  // +sqrt(1+omega_x^2) at phi = 0 is arccos(-1/nu); arccos(+1/nu) at phi = pi
  // carries -sqrt(1+omega_x^2).  A zero-gradient check confirms both.
  BlochPoint b1{std::acos(-1.0 / nu), 0.0};
  BlochPoint b2{std::acos(+1.0 / nu), M_PI};
  out.push_back(make_point(p, 1, b1, true));
  out.push_back(make_point(p, 2, b2, true));

  // Point 3: valid only for xi_y <= -sqrt(1+omega_x^2)/2.
  {
    const bool valid = p.xi_y <= -0.5 * nu;
    BlochPoint seed{0.0, 0.0};
    if (valid) {
      const double ct = -1.0 / (2.0 * p.xi_y);
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      const double denom = 2.0 * p.xi_y * st;  // negative in this domain
      const double cp = (std::abs(denom) > 0) ? p.omega_x / denom : 0.0;
      seed.theta = std::acos(std::clamp(ct, -1.0, 1.0));
      seed.phi = std::acos(std::clamp(cp, -1.0, 1.0));
      // phi in (pi/2, pi]; take the upper-half representative.
    }
    out.push_back(make_point(p, 3, seed, valid));
  }

  // Point 4: valid only for xi_y >= +sqrt(1+omega_x^2)/2.
  {
    const bool valid = p.xi_y >= 0.5 * nu;
    BlochPoint seed{0.0, 0.0};
    if (valid) {
      const double ct = -1.0 / (2.0 * p.xi_y);
      const double cp = p.omega_x / std::sqrt(4.0 * p.xi_y * p.xi_y - 1.0);
      seed.theta = std::acos(std::clamp(ct, -1.0, 1.0));
      seed.phi = std::acos(std::clamp(cp, -1.0, 1.0));
    }
    out.push_back(make_point(p, 4, seed, valid));
  }
  return out;
}

StationaryPoint stationary_point(const ModelParams& p, int label) {
  const auto pts = stationary_points(p);
  for (const auto& sp : pts) {
    if (sp.label == label) {
      if (!sp.valid) {
        throw domain_error("stationary_point: point " + std::to_string(label) +
                           " is outside its validity domain at xi_y = " +
                           std::to_string(p.xi_y));
      }
      return sp;
    }
  }
  throw domain_error("stationary_point: label must be 1..4");
}

QptLines qpt_lines(const ModelParams& p) {
  const double nu = std::sqrt(1.0 + p.omega_x * p.omega_x);
  return {-0.5 * nu, +0.5 * nu};
}

}  // namespace elmg
