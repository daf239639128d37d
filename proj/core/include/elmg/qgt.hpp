#pragma once

#include <Eigen/Dense>
#include <optional>

#include "elmg/effective.hpp"
#include "elmg/model.hpp"

namespace elmg {

/// Coordinates x^i = (omega_x, xi_y, t) of the three-parameter state family.
struct ParameterPoint {
  double omega_x = 0.0;
  double xi_y = 0.0;
  double t = 0.0;
};

/// Frame of the kick generator.
///  - stationary: quadrature of the fluctuation mode around the phase's
///    stationary point (the frame in which the effective Hamiltonians and
///    the first-order metric are written);
///  - lab: plain J_x / sqrt(j).
enum class GeneratorFrame { stationary, lab };

struct QgtSettings {
  Phase phase = Phase::ground;
  double j = 100.0;
  double h = 1e-4;  ///< central-difference parameter step
  GeneratorFrame frame = GeneratorFrame::stationary;
  bool include_time = true;    ///< compute the t row/column as well
  double ambiguity = 0.05;     ///< relative overlap window treated as ambiguous
  bool resolve_doublet = true; ///< project onto quasi-degenerate doublets
  bool validate_step = false;  ///< Richardson consistency check on h
};

struct QgtDiagnostics {
  double top_overlap = 0.0;
  double second_overlap = 0.0;
  bool doublet_resolved = false;
  double step_check = 0.0;  ///< relative h vs h/2 deviation (when validated)
};

/// Finite-j quantum geometric tensor of the kicked eigenstate.
///
/// The state at x is built by exact diagonalization: the eigenstate of H(x)
/// with maximal overlap against the phase's stationary-point coherent state,
/// kicked by e^{iHt} e^{i eps Q} e^{-iHt}.  Quasi-degenerate doublets in the
/// broken phase are resolved by projecting the coherent state onto the
/// two-dimensional eigenspace; genuinely ambiguous selections throw
/// domain_error with both candidates reported.
///
/// g_ij = Re[<d_i psi|d_j psi> - <d_i psi|psi><psi|d_j psi>] with central
/// differences and the phase gauge fixed by a positive overlap against the
/// center state.
class QgtEngine {
 public:
  explicit QgtEngine(const QgtSettings& settings);

  Eigen::Matrix3d metric(const ParameterPoint& x, double epsilon,
                         QgtDiagnostics* diag = nullptr) const;

  /// Odd-in-epsilon part (g(+eps) - g(-eps)) / (2 eps): the first-order
  /// correction produced by the kick.
  Eigen::Matrix3d metric_first_order_extracted(const ParameterPoint& x,
                                               double epsilon) const;

  const QgtSettings& settings() const { return settings_; }

 private:
  Vector build_state(const ParameterPoint& x, double epsilon,
                     QgtDiagnostics* diag) const;
  Vector select_eigenstate(const Eigen::VectorXd& evals, const Matrix& evecs,
                           const Vector& reference, QgtDiagnostics* diag) const;

  QgtSettings settings_;
  CollectiveSpinOps ops_;
  // fixed spectral factors reused across parameter points
  Eigen::VectorXd jx_evals_;
  Matrix jx_evecs_;
  Eigen::VectorXd jy_evals_;
  Matrix jy_evecs_;
};

/// Stationary point whose coherent state seeds the eigenstate selection for
/// a phase: point 1 (symmetric), 4 (broken), 2 (ground).
int phase_anchor_label(Phase phase);

}  // namespace elmg
