#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "elmg/model.hpp"

namespace elmg {

/// Thermodynamic-limit phase of the model.  "symmetric" and "broken" refer to
/// the excited-state expansion around stationary points 1 and 4; "ground" to
/// the ground-state expansion around point 2.
enum class Phase { symmetric, broken, ground };

std::string phase_name(Phase phase);
Phase phase_from_name(const std::string& name);

/// Critical coupling xi_c = sqrt(1 + omega_x^2)/2 of the excited-state line;
/// the ground-state line sits at -xi_c.
double xi_critical(const ModelParams& p);

/// Throws domain_error (naming the violated inequality) when p lies outside
/// the validity domain of the phase.
void require_phase_domain(Phase phase, const ModelParams& p);
bool in_phase_domain(Phase phase, const ModelParams& p);

/// Quadratic collective Hamiltonian
///   H = j*c0 + cqq Q^2 + cpp P^2 + cqp (QP + PQ)
/// describing a harmonic oscillator of the given frequency.
struct QuadraticHamiltonian {
  Phase phase;
  double c0 = 0.0;   ///< extensive constant, units of j
  double cqq = 0.0;
  double cpp = 0.0;
  double cqp = 0.0;
  double frequency = 0.0;
  double gamma_minus = 0.0;  ///< sqrt(1+omega_x^2) - 2 xi_y
  double gamma_plus = 0.0;   ///< sqrt(1+omega_x^2) + 2 xi_y
};

QuadraticHamiltonian effective_hamiltonian(Phase phase, const ModelParams& p);

/// Heisenberg-picture coefficients of the evolved quadrature,
///   Q(t) = q_coeff * Q + p_coeff * P.
struct QuadraturePair {
  double q_coeff = 1.0;  ///< value 1 at t = 0
  double p_coeff = 0.0;  ///< value 0 at t = 0
};

/// Closed-form quadrature evolution.
QuadraturePair heisenberg_quadratures(Phase phase, const ModelParams& p, double t);

/// Analytic d/d(xi_y) of the closed forms (no finite differences).
QuadraturePair heisenberg_quadratures_dxi(Phase phase, const ModelParams& p, double t);

/// Ground truth for the quadrature evolution: numerically exponentiated
/// classical flow of a quadratic Hamiltonian.  det S = 1; first row carries
/// (q_coeff, p_coeff) of Q(t), second row those of P(t).
Eigen::Matrix2d symplectic_oracle(Phase phase, const ModelParams& p, double t);

/// Linear canonical map to the mode operators diagonalizing the phase
/// Hamiltonian: Q = uq g^dag + conj(uq) g,  P = up g^dag + conj(up) g.
struct BogoliubovTransform {
  Phase phase;
  Complex uq{0.0, 0.0};
  Complex up{0.0, 0.0};

  /// [g, g^dag] implied by inverting the transform with [Q,P] = i; 1 when
  /// canonical.
  double induced_commutator() const;
  /// Vacuum covariance of (Q, P); det = 1/4 for a canonical transform.
  Eigen::Matrix2d vacuum_covariance() const;
};

BogoliubovTransform bogoliubov(Phase phase, const ModelParams& p);

/// Mode-space displacement amplitude of the evolved kick operator:
/// e^{i eps Q(t)} displaces the phase vacuum by alpha = i*eps*B(t) with
/// B = uq*q_coeff + up*p_coeff.
Complex displacement_amplitude(Phase phase, const ModelParams& p, double t);

/// Kicked phase vacuum expanded over mode Fock states.
struct PerturbedGaussianState {
  Phase phase;
  double t = 0.0;
  double epsilon = 0.0;
  Complex b{0.0, 0.0};        ///< displacement amplitude B(t)
  Vector amplitudes;          ///< c_l, l = 0..n_max
  double tail = 0.0;          ///< 1 - sum |c_l|^2
  Eigen::Vector2d center;     ///< (<Q>, <P>)
  Eigen::Matrix2d covariance; ///< t-independent vacuum covariance
  double mean_occupation = 0.0;
};

/// Requires n_max >= 8; throws truncation_error when the Fock tail exceeds
/// 1e-10.
PerturbedGaussianState perturbed_state(Phase phase, const ModelParams& p, double t,
                                       int n_max = 32);

struct PhaseSpaceSnapshot {
  Eigen::Vector2d center;
  Eigen::Matrix2d covariance;
};

/// First and second moments of the kicked vacuum: the center follows the
/// reversed classical flow of the initial momentum displacement (0, eps),
/// the covariance never moves (quasi-scrambling).
PhaseSpaceSnapshot phase_space_snapshot(Phase phase, const ModelParams& p, double t);

}  // namespace elmg
