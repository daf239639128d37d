#include "elmg/geodesic.hpp"

#include <algorithm>
#include <cmath>

namespace elmg {

// ---------------------------------------------------------------------------
// Bicubic

Bicubic::Bicubic(double x0, double hx, int nx, double y0, double hy, int ny,
                 std::vector<double> values)
    : x0_(x0), hx_(hx), y0_(y0), hy_(hy), nx_(nx), ny_(ny), v_(std::move(values)) {
  if (nx_ < 2 || ny_ < 2 || v_.size() != static_cast<std::size_t>(nx_) * ny_) {
    throw contract_error("Bicubic: bad grid shape");
  }
}

double Bicubic::node(int ix, int iy) const {
  ix = std::clamp(ix, 0, nx_ - 1);
  iy = std::clamp(iy, 0, ny_ - 1);
  return v_[static_cast<std::size_t>(iy) * nx_ + ix];
}

bool Bicubic::contains(double x, double y) const {
  return x >= x0_ && x <= x0_ + hx_ * (nx_ - 1) && y >= y0_ &&
         y <= y0_ + hy_ * (ny_ - 1);
}

Bicubic::Cell Bicubic::locate(double x, double y) const {
  double fx = (x - x0_) / hx_;
  double fy = (y - y0_) / hy_;
  int ix = static_cast<int>(std::floor(fx));
  int iy = static_cast<int>(std::floor(fy));
  ix = std::clamp(ix, 0, nx_ - 2);
  iy = std::clamp(iy, 0, ny_ - 2);
  return {ix, iy, fx - ix, fy - iy};
}

namespace {
double cr(double p0, double p1, double p2, double p3, double u) {
  return 0.5 * (2.0 * p1 + (p2 - p0) * u +
                (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * u * u +
                (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * u * u * u);
}
double cr_du(double p0, double p1, double p2, double p3, double u) {
  return 0.5 * ((p2 - p0) + 2.0 * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * u +
                3.0 * (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * u * u);
}
}  // namespace

double Bicubic::value(double x, double y) const {
  const Cell c = locate(x, y);
  double rows[4];
  for (int r = 0; r < 4; ++r) {
    const int iy = c.iy - 1 + r;
    rows[r] = cr(node(c.ix - 1, iy), node(c.ix, iy), node(c.ix + 1, iy),
                 node(c.ix + 2, iy), c.u);
  }
  return cr(rows[0], rows[1], rows[2], rows[3], c.w);
}

double Bicubic::ddx(double x, double y) const {
  const Cell c = locate(x, y);
  double rows[4];
  for (int r = 0; r < 4; ++r) {
    const int iy = c.iy - 1 + r;
    rows[r] = cr_du(node(c.ix - 1, iy), node(c.ix, iy), node(c.ix + 1, iy),
                    node(c.ix + 2, iy), c.u);
  }
  return cr(rows[0], rows[1], rows[2], rows[3], c.w) / hx_;
}

double Bicubic::ddy(double x, double y) const {
  const Cell c = locate(x, y);
  double rows[4];
  for (int r = 0; r < 4; ++r) {
    const int iy = c.iy - 1 + r;
    rows[r] = cr(node(c.ix - 1, iy), node(c.ix, iy), node(c.ix + 1, iy),
                 node(c.ix + 2, iy), c.u);
  }
  return cr_du(rows[0], rows[1], rows[2], rows[3], c.w) / hy_;
}

// ---------------------------------------------------------------------------
// MetricInterpolant

MetricInterpolant::MetricInterpolant(const MetricField& field) : field_(&field) {
  const auto& a = field.axes;
  std::vector<double> comp[3];
  for (auto& v : comp) v.resize(field.g.size());
  for (std::size_t n = 0; n < field.g.size(); ++n) {
    comp[0][n] = field.g[n](0, 0);
    comp[1][n] = field.g[n](0, 1);
    comp[2][n] = field.g[n](1, 1);
  }
  for (int k = 0; k < 3; ++k) {
    comp_[k] = Bicubic(a.omega_x0, a.hx(), a.nx, a.xi_y0, a.hy(), a.ny,
                       std::move(comp[k]));
  }
}

bool MetricInterpolant::contains(double x, double y) const {
  return comp_[0].contains(x, y);
}

bool MetricInterpolant::stencil_masked(double x, double y) const {
  const auto& a = field_->axes;
  const int ix = std::clamp(
      static_cast<int>(std::floor((x - a.omega_x0) / a.hx())), 0, a.nx - 2);
  const int iy = std::clamp(
      static_cast<int>(std::floor((y - a.xi_y0) / a.hy())), 0, a.ny - 2);
  for (int r = -1; r <= 2; ++r) {
    for (int c = -1; c <= 2; ++c) {
      const int jx = std::clamp(ix + c, 0, a.nx - 1);
      const int jy = std::clamp(iy + r, 0, a.ny - 1);
      if (!field_->valid(jx, jy)) return true;
    }
  }
  return false;
}

Eigen::Matrix2d MetricInterpolant::metric(double x, double y) const {
  Eigen::Matrix2d g;
  g(0, 0) = comp_[0].value(x, y);
  g(0, 1) = g(1, 0) = comp_[1].value(x, y);
  g(1, 1) = comp_[2].value(x, y);
  return g;
}

Eigen::Matrix<double, 2, 4> MetricInterpolant::christoffel(double x, double y) const {
  Eigen::Matrix2d g = metric(x, y);
  Eigen::Matrix2d dg[2];
  dg[0](0, 0) = comp_[0].ddx(x, y);
  dg[0](0, 1) = dg[0](1, 0) = comp_[1].ddx(x, y);
  dg[0](1, 1) = comp_[2].ddx(x, y);
  dg[1](0, 0) = comp_[0].ddy(x, y);
  dg[1](0, 1) = dg[1](1, 0) = comp_[1].ddy(x, y);
  dg[1](1, 1) = comp_[2].ddy(x, y);

  const Eigen::Matrix2d ginv = g.inverse();
  Eigen::Matrix<double, 2, 4> gamma;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int l = 0; l < 2; ++l) {
        double s = 0.0;
        for (int m = 0; m < 2; ++m) {
          s += ginv(i, m) * (dg[j](m, l) + dg[l](m, j) - dg[m](j, l));
        }
        gamma(i, 2 * j + l) = 0.5 * s;
      }
    }
  }
  return gamma;
}

// ---------------------------------------------------------------------------
// Integration

std::string termination_name(GeodesicTermination r) {
  switch (r) {
    case GeodesicTermination::phase_boundary: return "phase_boundary";
    case GeodesicTermination::grid_edge: return "grid_edge";
    case GeodesicTermination::tau_max: return "tau_max";
  }
  return "?";
}

namespace {

using State4 = Eigen::Vector4d;  // (omega_x, xi_y, v_omega, v_xi)

State4 geodesic_rhs(const MetricInterpolant& interp, const State4& s) {
  const auto gamma = interp.christoffel(s[0], s[1]);
  const double v[2] = {s[2], s[3]};
  State4 d;
  d[0] = v[0];
  d[1] = v[1];
  for (int i = 0; i < 2; ++i) {
    double acc = 0.0;
    for (int j = 0; j < 2; ++j) {
      for (int l = 0; l < 2; ++l) acc += gamma(i, 2 * j + l) * v[j] * v[l];
    }
    d[2 + i] = -acc;
  }
  return d;
}

// distance to the phase's transition line, in xi_y at fixed omega_x
double line_distance(Phase phase, double omega_x, double xi_y) {
  const double xc = 0.5 * std::sqrt(1.0 + omega_x * omega_x);
  const double line = (phase == Phase::ground) ? -xc : xc;
  return std::abs(xi_y - line);
}

}  // namespace

GeodesicResult geodesic_integrate(const MetricField& field,
                                  const Eigen::Vector2d& start, double v0_xi,
                                  const GeodesicOptions& options) {
  const MetricInterpolant interp(field);
  if (!interp.contains(start[0], start[1])) {
    throw domain_error("geodesic_integrate: start outside the field");
  }
  if (interp.stencil_masked(start[0], start[1])) {
    throw numeric_error("geodesic_integrate: start inside a masked region");
  }

  // initial omega_x velocity from g_ij v^i v^j = 1
  const Eigen::Matrix2d g0 = interp.metric(start[0], start[1]);
  const double a = g0(0, 0);
  const double b = 2.0 * g0(0, 1) * v0_xi;
  const double c = g0(1, 1) * v0_xi * v0_xi - 1.0;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0 || std::abs(a) < 1e-300) {
    throw domain_error(
        "geodesic_integrate: no real root for the initial omega_x velocity "
        "(metric signature)");
  }
  const double root = options.positive_branch ? (-b + std::sqrt(disc)) / (2.0 * a)
                                              : (-b - std::sqrt(disc)) / (2.0 * a);

  State4 s;
  s << start[0], start[1], root, v0_xi;

  GeodesicResult out;
  auto record = [&](double tau) {
    const Eigen::Matrix2d g = interp.metric(s[0], s[1]);
    const Eigen::Vector2d v(s[2], s[3]);
    const double norm = v.dot(g * v);
    out.tau.push_back(tau);
    out.position.emplace_back(s[0], s[1]);
    out.velocity.push_back(v);
    out.residual.push_back(std::abs(norm - 1.0));
    out.max_residual = std::max(out.max_residual, out.residual.back());
  };
  record(0.0);

  // Dormand-Prince 5(4); the right side is autonomous so the stage abscissae
  // are not needed.
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  double tau = 0.0;
  double h = std::min(options.max_step, 1e-3);
  int rejections = 0;
  out.termination = GeodesicTermination::tau_max;

  while (tau < options.tau_max) {
    // stop conditions at the current point
    const double dist = line_distance(field.phase, s[0], s[1]);
    if (dist <= options.boundary_delta) {
      out.termination = GeodesicTermination::phase_boundary;
      break;
    }
    if (!interp.contains(s[0], s[1])) {
      out.termination = GeodesicTermination::grid_edge;
      break;
    }
    if (interp.stencil_masked(s[0], s[1])) {
      throw numeric_error("geodesic_integrate: path entered a masked region");
    }

    // keep steps short when closing in on the stop band
    const double speed = std::hypot(s[2], s[3]);
    double hcap = options.max_step;
    if (speed > 0.0) {
      hcap = std::min(hcap, std::max(1e-4, 0.5 * (dist - 0.5 * options.boundary_delta) /
                                                speed));
    }
    h = std::min({h, hcap, options.tau_max - tau});
    h = std::max(h, 1e-12);

    const State4 k1 = geodesic_rhs(interp, s);
    const State4 k2 = geodesic_rhs(interp, s + h * a21 * k1);
    const State4 k3 = geodesic_rhs(interp, s + h * (a31 * k1 + a32 * k2));
    const State4 k4 = geodesic_rhs(interp, s + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const State4 k5 =
        geodesic_rhs(interp, s + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const State4 k6 = geodesic_rhs(
        interp, s + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const State4 snew =
        s + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const State4 k7 = geodesic_rhs(interp, snew);
    const State4 err_vec =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double scale = std::max(1.0, snew.cwiseAbs().maxCoeff());
    const double err = err_vec.cwiseAbs().maxCoeff() / (options.rel_tol * scale);

    if (err <= 1.0) {
      tau += h;
      s = snew;
      record(tau);
      rejections = 0;
    } else if (++rejections > 60) {
      throw numeric_error("geodesic_integrate: step control stalled");
    }
    const double factor = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::clamp(factor, 0.2, 5.0);
    h = std::min(h, options.max_step);
  }

  out.length_affine = out.tau.empty() ? 0.0 : out.tau.back();
  // direct arc-length quadrature (trapezoid over the recorded samples)
  double len = 0.0;
  for (std::size_t i = 1; i < out.tau.size(); ++i) {
    const auto gl = interp.metric(out.position[i - 1][0], out.position[i - 1][1]);
    const auto gr = interp.metric(out.position[i][0], out.position[i][1]);
    const double fl = std::sqrt(std::max(0.0, out.velocity[i - 1].dot(gl * out.velocity[i - 1])));
    const double fr = std::sqrt(std::max(0.0, out.velocity[i].dot(gr * out.velocity[i])));
    len += 0.5 * (fl + fr) * (out.tau[i] - out.tau[i - 1]);
  }
  out.length_quadrature = len;
  return out;
}

double fubini_study_length(const GeodesicResult& path) {
  return path.length_affine;
}

}  // namespace elmg
