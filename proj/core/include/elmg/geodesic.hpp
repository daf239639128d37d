#pragma once

#include <string>

#include "elmg/interp.hpp"
#include "elmg/metric.hpp"

namespace elmg {

enum class GeodesicTermination { phase_boundary, grid_edge, tau_max };

std::string termination_name(GeodesicTermination r);

struct GeodesicOptions {
  double tau_max = 50.0;
  double rel_tol = 1e-9;         ///< adaptive RK error control
  double boundary_delta = 0.02;  ///< stop band around the transition line
  bool positive_branch = true;   ///< root choice for the initial omega_x velocity
  double max_step = 0.05;
};

struct GeodesicResult {
  std::vector<double> tau;
  std::vector<Eigen::Vector2d> position;  ///< (omega_x, xi_y)
  std::vector<Eigen::Vector2d> velocity;
  std::vector<double> residual;           ///< |g(v,v) - 1| per sample
  GeodesicTermination termination = GeodesicTermination::tau_max;
  double max_residual = 0.0;
  double length_affine = 0.0;      ///< tau extent (unit-speed normalization)
  double length_quadrature = 0.0;  ///< direct arc-length quadrature
};

/// Integrates the geodesic equation on the bicubic interpolant of the metric
/// field, starting from `start` with the given initial xi_y velocity; the
/// omega_x velocity is solved from g_ij v^i v^j = 1.
///
/// Unit-speed normalization is conserved by the flow, so the recorded
/// residual measures integration error only.  Terminates in the
/// boundary_delta band around the phase's transition line, at the grid edge,
/// or at tau_max.  Throws domain_error when the initial velocity has no real
/// root and numeric_error when the path crosses masked nodes.
GeodesicResult geodesic_integrate(const MetricField& field,
                                  const Eigen::Vector2d& start, double v0_xi,
                                  const GeodesicOptions& options = {});

/// Arc length of the path; equals the affine extent for unit-speed paths and
/// is cross-checked against quadrature in GeodesicResult.
double fubini_study_length(const GeodesicResult& path);

/// Bicubic view of a metric field: value and first partials of every
/// component, plus Christoffel symbols assembled from them.  Shared by the
/// integrator and by tests.
class MetricInterpolant {
 public:
  explicit MetricInterpolant(const MetricField& field);

  Eigen::Matrix2d metric(double x, double y) const;
  /// gamma(i, 2j+l) = Gamma^i_{jl}
  Eigen::Matrix<double, 2, 4> christoffel(double x, double y) const;
  bool contains(double x, double y) const;
  /// True when the 4x4 interpolation stencil at (x, y) touches a masked node.
  bool stencil_masked(double x, double y) const;

 private:
  const MetricField* field_;
  Bicubic comp_[3];  // g00, g01, g11
};

}  // namespace elmg
