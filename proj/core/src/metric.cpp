#include "elmg/metric.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace elmg {

Eigen::Matrix3d metric_first_order(Phase phase, const ParameterPoint& x, double j,
                                   double epsilon) {
  ModelParams p;
  p.omega_x = x.omega_x;
  p.xi_y = x.xi_y;
  p.j = j;
  require_phase_domain(phase, p);

  const double om = x.omega_x, xi = x.xi_y, t = x.t;
  const double nu2 = 1.0 + om * om;        // 1 + omega_x^2
  const double nu = std::sqrt(nu2);
  const double ej = epsilon * std::sqrt(j);

  Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
  switch (phase) {
    case Phase::symmetric: {
      const double gm = nu - 2.0 * xi;
      const double w = std::pow(nu2, 0.25) * std::sqrt(gm);
      const double c = std::cos(w * t);
      g(0, 0) = ej * om * t * (2.0 * xi * xi - 3.0 * xi * nu + nu2) * c /
                (std::pow(nu2, 1.75) * std::pow(gm, 1.5));
      g(0, 1) = -ej * t * c / (2.0 * std::pow(nu2, 0.75) * std::sqrt(gm));
      g(0, 2) = ej * std::sqrt(gm) * c / (2.0 * std::pow(nu2, 0.75));
      break;
    }
    case Phase::ground: {
      const double gp = nu + 2.0 * xi;
      const double w = std::pow(nu2, 0.25) * std::sqrt(gp);
      const double c = std::cos(w * t);
      const double s = std::sin(w * t);
      g(0, 0) = ej * om * t * (2.0 * xi * xi + 3.0 * xi * nu + nu2) * c /
                    (std::pow(nu2, 1.75) * std::pow(gp, 1.5)) -
                ej * om * xi * s / (nu2 * nu2 * gp);
      g(0, 1) = ej * t * c / (2.0 * std::pow(nu2, 0.75) * std::sqrt(gp)) +
                ej * s / (2.0 * nu2 * gp);
      g(0, 2) = ej * std::sqrt(gp) * c / (2.0 * std::pow(nu2, 0.75));
      break;
    }
    case Phase::broken:
      throw domain_error(
          "metric_first_order: no closed form in the broken phase; use the "
          "numerical metric");
  }
  g(1, 0) = g(0, 1);
  g(2, 0) = g(0, 2);
  return g;
}

MetricField build_metric_field(Phase phase, const GridAxes& axes, double t, double j,
                               double epsilon, const MetricFieldOptions& options) {
  if (axes.nx < 2 || axes.ny < 2) {
    throw domain_error("build_metric_field: grid must be at least 2x2");
  }
  if (options.source == MetricSource::zeroth_plus_printed && phase == Phase::broken) {
    throw domain_error(
        "build_metric_field: printed first-order terms do not exist in the "
        "broken phase; use MetricSource::numerical_total");
  }

  MetricField field;
  field.axes = axes;
  field.phase = phase;
  field.t = t;
  field.j = j;
  field.epsilon = epsilon;
  field.j_normalized = options.normalize_by_j;
  field.g.assign(static_cast<std::size_t>(axes.nx) * axes.ny, Eigen::Matrix2d::Zero());
  field.mask.assign(field.g.size(), 0);

  QgtSettings settings;
  settings.phase = phase;
  settings.j = j;
  settings.h = options.h;
  settings.frame = options.frame;
  settings.include_time = false;

  const int nthreads = std::max(1, options.threads);
  std::atomic<int> next{0};
  const int total = axes.nx * axes.ny;

  auto worker = [&]() {
    QgtEngine engine(settings);
    for (int node = next.fetch_add(1); node < total; node = next.fetch_add(1)) {
      const int ix = node % axes.nx;
      const int iy = node / axes.nx;
      ParameterPoint x{axes.x(ix), axes.y(iy), t};
      ModelParams p;
      p.omega_x = x.omega_x;
      p.xi_y = x.xi_y;
      p.j = j;
      if (!in_phase_domain(phase, p)) continue;
      try {
        Eigen::Matrix2d g2;
        if (options.source == MetricSource::numerical_total) {
          const Eigen::Matrix3d g3 = engine.metric(x, epsilon, nullptr);
          g2 = g3.topLeftCorner<2, 2>();
        } else {
          const Eigen::Matrix3d g0 = engine.metric(x, 0.0, nullptr);
          const Eigen::Matrix3d g1 = metric_first_order(phase, x, j, epsilon);
          g2 = (g0 + g1).topLeftCorner<2, 2>();
        }
        if (options.normalize_by_j) g2 /= j;
        // curvature needs a positive-definite block
        if (!(g2(0, 0) > 0.0) || !(g2.determinant() > 0.0)) continue;
        field.g[node] = g2;
        field.mask[node] = 1;
      } catch (const error&) {
        // node stays masked
      }
    }
  };

  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return field;
}

MetricField metric_field_from_function(
    const GridAxes& axes, const std::function<Eigen::Matrix2d(double, double)>& fn) {
  MetricField field;
  field.axes = axes;
  field.g.assign(static_cast<std::size_t>(axes.nx) * axes.ny, Eigen::Matrix2d::Zero());
  field.mask.assign(field.g.size(), 1);
  for (int iy = 0; iy < axes.ny; ++iy) {
    for (int ix = 0; ix < axes.nx; ++ix) {
      field.g[field.index(ix, iy)] = fn(axes.x(ix), axes.y(iy));
    }
  }
  return field;
}

MetricField coarsen(const MetricField& field) {
  const auto& a = field.axes;
  if (a.nx % 2 == 0 || a.ny % 2 == 0) {
    throw domain_error("coarsen: grid extents must be odd");
  }
  MetricField out = field;
  out.axes.nx = (a.nx + 1) / 2;
  out.axes.ny = (a.ny + 1) / 2;
  out.g.assign(static_cast<std::size_t>(out.axes.nx) * out.axes.ny,
               Eigen::Matrix2d::Zero());
  out.mask.assign(out.g.size(), 0);
  for (int iy = 0; iy < out.axes.ny; ++iy) {
    for (int ix = 0; ix < out.axes.nx; ++ix) {
      out.g[out.index(ix, iy)] = field.g[field.index(2 * ix, 2 * iy)];
      out.mask[out.index(ix, iy)] = field.mask[field.index(2 * ix, 2 * iy)];
    }
  }
  return out;
}

}  // namespace elmg
