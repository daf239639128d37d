#pragma once

#include <vector>

#include "elmg/model.hpp"

namespace elmg {

/// Stationary point of the classical energy surface.
///
/// Labels follow the standard enumeration of this model:
///   1: (arccos(-1/sqrt(1+omega_x^2)), 0)    energy +sqrt(1+omega_x^2)
///   2: (arccos(+1/sqrt(1+omega_x^2)), pi)   energy -sqrt(1+omega_x^2)
///   3: mirror of 4, valid xi_y <= -sqrt(1+omega_x^2)/2
///   4: (arccos(-1/(2 xi_y)), arccos(omega_x/sqrt(4 xi_y^2-1))),
///      valid xi_y >= +sqrt(1+omega_x^2)/2
/// Points 3 and 4 share the energy (1+omega_x^2)/(4 xi_y) + xi_y.
struct StationaryPoint {
  int label = 0;
  BlochPoint point;
  double energy = 0.0;
  bool valid = false;          ///< inside the point's parameter domain
  double gradient_norm = 0.0;  ///< |grad h| in canonical coordinates
};

/// All four stationary points.  Every point returned with valid=true has been
/// refined by a Newton solve on the canonical-coordinate gradient and passes
/// |grad h| <= 1e-9; the closed forms only seed the solver.
std::vector<StationaryPoint> stationary_points(const ModelParams& p);

/// Single labelled point; throws domain_error when it is invalid at p.
StationaryPoint stationary_point(const ModelParams& p, int label);

struct QptLines {
  double gs;  ///< ground-state transition   xi_y = -sqrt(1+omega_x^2)/2
  double es;  ///< excited-state transition  xi_y = +sqrt(1+omega_x^2)/2
};

QptLines qpt_lines(const ModelParams& p);

}  // namespace elmg
