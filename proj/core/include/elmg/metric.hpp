#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "elmg/qgt.hpp"

namespace elmg {

/// First-order (in epsilon) information metric of the kicked state in the
/// thermodynamic limit, coordinates (omega_x, xi_y, t); components scale as
/// eps*sqrt(j).  Available for the symmetric and ground phases only; the
/// broken phase has no closed form and must use the numerical metric.
Eigen::Matrix3d metric_first_order(Phase phase, const ParameterPoint& x, double j,
                                   double epsilon);

/// Uniform rectangular grid over (omega_x, xi_y) at fixed t.
struct GridAxes {
  double omega_x0 = 0.0, omega_x1 = 1.0;
  int nx = 2;
  double xi_y0 = 0.0, xi_y1 = 1.0;
  int ny = 2;

  double hx() const { return nx > 1 ? (omega_x1 - omega_x0) / (nx - 1) : 0.0; }
  double hy() const { return ny > 1 ? (xi_y1 - xi_y0) / (ny - 1) : 0.0; }
  double x(int ix) const { return omega_x0 + hx() * ix; }
  double y(int iy) const { return xi_y0 + hy() * iy; }
};

/// 2x2 (omega_x, xi_y)-block metric sampled on a grid; nodes that fail to
/// evaluate (phase domain, eigenstate selection, positive-definiteness) are
/// masked.
struct MetricField {
  GridAxes axes;
  Phase phase = Phase::ground;
  double t = 0.0, j = 0.0, epsilon = 0.0;
  bool j_normalized = false;
  std::vector<Eigen::Matrix2d> g;   ///< row-major, index iy*nx + ix
  std::vector<std::uint8_t> mask;   ///< 1 = valid

  int index(int ix, int iy) const { return iy * axes.nx + ix; }
  bool valid(int ix, int iy) const { return mask[index(ix, iy)] != 0; }
};

enum class MetricSource {
  numerical_total,       ///< full finite-j QGT at the given epsilon
  zeroth_plus_printed,   ///< numerical QGT at eps = 0 plus the printed
                         ///< first-order terms (symmetric/ground only)
};

struct MetricFieldOptions {
  MetricSource source = MetricSource::zeroth_plus_printed;
  GeneratorFrame frame = GeneratorFrame::stationary;
  bool normalize_by_j = false;  ///< divide the metric by j (intensive convention)
  int threads = 1;
  double h = 1e-4;
};

MetricField build_metric_field(Phase phase, const GridAxes& axes, double t, double j,
                               double epsilon, const MetricFieldOptions& options = {});

/// Field from an explicit callable (analytic test metrics, synthetic data).
MetricField metric_field_from_function(
    const GridAxes& axes, const std::function<Eigen::Matrix2d(double, double)>& fn);

/// Stride-2 subsample (doubles the spacing); used for grid-halving
/// convergence checks.  Requires odd nx and ny.
MetricField coarsen(const MetricField& field);

}  // namespace elmg
