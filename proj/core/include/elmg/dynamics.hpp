#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elmg/model.hpp"
#include "elmg/stationary.hpp"

namespace elmg {

/// Sampled scalar observable over a time grid.
struct TimeSeries {
  std::vector<double> times;
  std::vector<Complex> values;
  std::string label;

  void validate() const;  ///< equal lengths, strictly increasing times
};

std::vector<double> uniform_grid(double t0, double t1, int count);
std::vector<double> log_grid(double t0, double t1, int count);

/// Spectral form of exp(-iHt).  Immutable and shareable across threads.
class Propagator {
 public:
  explicit Propagator(const Matrix& hamiltonian);

  Vector evolve(const Vector& psi, double t) const;  ///< e^{-iHt} psi
  const Eigen::VectorXd& eigenvalues() const { return evals_; }
  const Matrix& eigenvectors() const { return evecs_; }
  std::uint64_t fingerprint() const { return fingerprint_; }
  int dim() const { return static_cast<int>(evals_.size()); }

  /// Rebuild VDV^dagger and compare against the source Hamiltonian.
  double reconstruction_error() const;

 private:
  Eigen::VectorXd evals_;
  Matrix evecs_;
  Matrix source_;
  std::uint64_t fingerprint_ = 0;
};

enum class Generator { Q, P, Jx, Jy, Jz, Custom };

/// Specification of a fidelity out-of-time-order correlator
///   F(t) = |<z| e^{iHt} e^{i eps G} e^{-iHt} |z>|^2
/// with optional time rescaling G -> G t.  Q and P are the oscillator
/// quadratures of the collective mode, Q = J_x/sqrt(j), P = -J_y/sqrt(j).
struct FotocSpec {
  Generator generator = Generator::Q;
  Matrix custom;  ///< used when generator == Custom; must be Hermitian
  double epsilon = 0.01;
  BlochPoint start;
  bool rescale_time = false;
};

/// Resolve the generator matrix for the given operator set.
/// Throws domain_error when the custom matrix is not Hermitian to 1e-12.
Matrix generator_matrix(const FotocSpec& spec, const CollectiveSpinOps& ops);

TimeSeries fotoc(const Model& m, const Propagator& prop, const FotocSpec& spec,
                 const std::vector<double>& times);
TimeSeries fotoc(const Model& m, const FotocSpec& spec, const std::vector<double>& times);

/// F_Q(t) + F_P(t) on a shared grid.
TimeSeries fotoc_sum_qp(const Model& m, const Propagator& prop, double epsilon,
                        const BlochPoint& start, const std::vector<double>& times);

/// Second-order form 1 - eps^2 sigma_G^2(t) with the variance taken in the
/// Heisenberg picture on the initial coherent state.
TimeSeries variance_fotoc(const Model& m, const Propagator& prop, const FotocSpec& spec,
                          const std::vector<double>& times);

/// Loschmidt echo |<z| e^{iHt} e^{-i(H - eps G)t} |z>|^2.
TimeSeries loschmidt_echo(const Model& m, const Propagator& prop, const FotocSpec& spec,
                          const std::vector<double>& times);

/// Slope/intercept report for |F(G -> G t, t) - L(t)| against t on a log-log
/// grid.  exact_agreement is set when every difference is at rounding level.
struct ScalingReport {
  double slope = 0.0;
  double intercept = 0.0;
  double max_difference = 0.0;
  bool exact_agreement = false;
  std::vector<double> times;
  std::vector<double> differences;
};

ScalingReport le_fotoc_scaling(const Model& m, const Propagator& prop,
                               const FotocSpec& spec, const std::vector<double>& t_list);

/// Exponential-growth fit of 1 - Re F over a window.
struct LyapunovFit {
  double lambda_q = 0.0;      ///< fitted rate of 1 - Re F
  double lambda_cl = 0.0;     ///< classical exponent (NaN when not real)
  double ratio = 0.0;         ///< lambda_q / (2 lambda_cl)
  double t0 = 0.0, t1 = 0.0;  ///< fit window actually used
  double residual = 0.0;      ///< rms residual of the log-linear fit
  bool exponential = false;   ///< residual small enough to call it exponential
};

/// Classical instability exponent sqrt(sqrt(1+omega_x^2)(2 xi_y - sqrt(1+omega_x^2))).
/// Real only above the excited-state transition line; NaN otherwise.
double classical_lyapunov(const ModelParams& p);

/// Least-squares slope of log(1 - Re F) on the sub-series where
/// 1 - Re F lies in [lo, hi] (defaults 1e-4, 1e-1).  Throws numeric_error when
/// the window contains non-positive values or fewer than 8 samples.
LyapunovFit lyapunov_fit(const ModelParams& p, const TimeSeries& one_minus_f,
                         std::optional<double> lo = std::nullopt,
                         std::optional<double> hi = std::nullopt);

/// Least-squares line y = a x + b; returns {a, b, rms residual}.
std::array<double, 3> linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace elmg
