#pragma once

#include <array>
#include <vector>

#include "elmg/dynamics.hpp"
#include "elmg/effective.hpp"

namespace elmg {

/// Upper-triangular unipotent 3x3 coordinates (x1, x2, x3):
///   [[1, x1, x3], [0, 1, x2], [0, 0, 1]].
struct HeisenbergElement {
  double x1 = 0.0, x2 = 0.0, x3 = 0.0;

  HeisenbergElement compose(const HeisenbergElement& rhs) const {
    return {x1 + rhs.x1, x2 + rhs.x2, x3 + rhs.x3 + x1 * rhs.x2};
  }
  HeisenbergElement inverse() const { return {-x1, -x2, -x3 + x1 * x2}; }
};

/// Group element of the evolved kick operator:
/// (eps*q_coeff, eps*p_coeff, eps^2*q_coeff*p_coeff/2).
HeisenbergElement fotoc_operator_element(Phase phase, const ModelParams& p, double t);

/// Closed-form circuit complexity eps^2 (q_coeff^2 + p_coeff^2).
double nielsen_complexity(Phase phase, const ModelParams& p, double t);

/// Analytic d/d(xi_y) of the closed form.  Throws domain_error on the
/// transition line itself; see nc_qpt_limit for the one-sided limits.
double nc_derivative(Phase phase, const ModelParams& p, double t);

/// One-sided limit of nc_derivative on the transition line: finite
/// +-eps^2 * 2 t^2 sqrt(1+omega_x^2) from the symmetric/ground side,
/// +infinity in magnitude from the broken side.
double nc_qpt_limit(Phase phase, const ModelParams& p, double t);

/// Boundary-value geodesic on the Heisenberg group with the right-invariant
/// quadratic cost.
struct GeodesicPath {
  std::vector<double> tau;                       ///< samples on [0, 1]
  std::vector<std::array<double, 3>> position;   ///< (x1, x2, x3)(tau)
  std::vector<std::array<double, 3>> velocity;
  std::vector<std::array<double, 3>> controls;   ///< Y^I(tau)
  double cost = 0.0;                             ///< quadrature of sum |Y^I|^2
  double boundary_residual = 0.0;                ///< |x(1) - target|
};

struct GeodesicSolveOptions {
  int steps = 1024;          ///< RK4 steps; also the Simpson grid
  double tolerance = 1e-10;  ///< boundary residual target
  int max_newton = 40;
};

/// Shooting solve of the geodesic equations with U(0) = identity,
/// U(1) = target.  Throws numeric_error with the residual when Newton fails.
GeodesicPath geodesic_solve(const HeisenbergElement& target,
                            const GeodesicSolveOptions& options = {});

/// Cost of an explicitly given path (Simpson quadrature of sum |Y^I|^2);
/// used to probe minimality against perturbed paths.
double path_cost(const std::vector<double>& tau,
                 const std::vector<std::array<double, 3>>& position);

/// Tabulates closed-form complexity against -log of the finite-j FOTOC and
/// reports how far the two stay apart.
struct ComplexityFotocReport {
  std::vector<double> times;
  std::vector<double> complexity;
  std::vector<double> neglog_fotoc;
  double max_abs_mismatch = 0.0;  ///< max_t |C + log F|
  double max_scale = 0.0;         ///< max over t of max(C, |log F|)
  int excluded = 0;               ///< samples dropped because F = 0
  bool degenerate = false;        ///< both identically zero (eps = 0)
};

ComplexityFotocReport complexity_vs_neglog_fotoc(Phase phase, const Model& m,
                                                 const Propagator& prop,
                                                 const FotocSpec& spec,
                                                 const std::vector<double>& times);

}  // namespace elmg
