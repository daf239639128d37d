#pragma once

#include "elmg/metric.hpp"

namespace elmg {

/// Christoffel symbols of the second kind per grid node, from central
/// differences of the metric.  Symmetric in the lower pair; boundary nodes
/// and neighbours of masked nodes are masked.
struct ChristoffelField {
  GridAxes axes;
  /// gamma[node](i, 2*j + l) = Gamma^i_{jl}, i,j,l in {0,1}
  std::vector<Eigen::Matrix<double, 2, 4>> gamma;
  std::vector<std::uint8_t> mask;

  int index(int ix, int iy) const { return iy * axes.nx + ix; }
  double get(int node, int i, int j, int l) const { return gamma[node](i, 2 * j + l); }
};

ChristoffelField christoffel(const MetricField& field);

/// Scalar curvature per node from the Riemann contraction of the Christoffel
/// field (one more layer of central differences).
struct CurvatureField {
  GridAxes axes;
  std::vector<double> ricci;
  std::vector<std::uint8_t> mask;

  int index(int ix, int iy) const { return iy * axes.nx + ix; }
};

CurvatureField ricci_scalar(const MetricField& field);

/// Max |R_fine - R_coarse| / |R_fine| over nodes valid in both fields;
/// the grid-halving convergence estimate.
double grid_halving_deviation(const CurvatureField& fine, const CurvatureField& coarse);

}  // namespace elmg
