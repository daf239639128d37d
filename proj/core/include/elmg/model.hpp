#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "elmg/errors.hpp"

namespace elmg {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// Point in parameter space of the collective-spin model
///   H = omega*J_z + omega_x*J_x + (xi_y/j)*J_y^2 ,   omega fixed to 1.
struct ModelParams {
  double omega_x = 0.0;  ///< linear transverse field strength
  double xi_y = 0.0;     ///< quadratic coupling strength
  double j = 0.5;        ///< spin quantum number, half-integer, dimension 2j+1
  double epsilon = 0.01; ///< perturbation strength of the weak kick
  double omega = 1.0;    ///< two-level splitting, fixed to 1

  /// Throws domain_error unless 2j is a positive integer (to 1e-9) and
  /// epsilon >= 0.  Prints a warning to stderr when epsilon > 0.1, where
  /// the small-perturbation expansions stop being trustworthy.
  void validate() const;

  /// 2j as an exact integer.
  long long two_j() const;
  /// Hilbert-space dimension d = 2j + 1.
  int dim() const { return static_cast<int>(two_j()) + 1; }
};

/// Dense collective spin operators in the |j,m> basis, m = -j..+j ascending.
struct CollectiveSpinOps {
  Matrix jx, jy, jz;  ///< Hermitian d x d
  Matrix j2;          ///< J^2 = Jx^2 + Jy^2 + Jz^2 = j(j+1) * identity
  Matrix jplus;       ///< ladder operator J+ (convenience, J- = adjoint)
  double j = 0.0;
  int dim = 0;
};

/// Point on the Bloch sphere.  The canonical-coordinate image satisfies
/// Q^2 + P^2 = 2(1 - cos theta) with Q = sqrt(2(1-cos theta)) cos phi,
/// P = -sqrt(2(1-cos theta)) sin phi.
struct BlochPoint {
  double theta = 0.0;  ///< polar angle in [0, pi]
  double phi = 0.0;    ///< azimuth in [0, 2*pi)

  void validate() const;
};

/// Canonical coordinates (Q, P) of a Bloch point.
std::array<double, 2> canonical_coordinates(const BlochPoint& b);
/// Inverse map; requires Q^2 + P^2 <= 4.
BlochPoint bloch_from_canonical(double q, double p);

/// Ladder-operator construction of the spin-j operators.
/// Guards: 2j must be a positive integer, d = 2j+1 <= 4096.
CollectiveSpinOps build_spin_ops(double j);

/// H = J_z + omega_x J_x + (xi_y/j) J_y^2 (times omega = 1).
/// Throws contract_error when ops were built for a different j.
Matrix build_hamiltonian(const ModelParams& p, const CollectiveSpinOps& ops);

/// Parameters plus the operators and Hamiltonian built for them.
struct Model {
  ModelParams params;
  CollectiveSpinOps ops;
  Matrix hamiltonian;
};

Model make_model(const ModelParams& p);

/// Bloch coherent state |z> = (1+|z|^2)^{-j} e^{z J+} |j,-j> with
/// z = tan(theta/2) e^{-i phi}.  theta = pi maps to the limit state |j,+j>.
/// Amplitudes are evaluated in log space so large j is safe.
///
/// Note the polarization convention: this lowest-weight construction gives
/// <J_z> = -j cos(theta), <J_x> = +j sin(theta) cos(phi),
/// <J_y> = -j sin(theta) sin(phi); it reproduces the classical energy
/// surface used throughout (see classical_energy).
Vector coherent_state(const CollectiveSpinOps& ops, const BlochPoint& b);

/// <J_x>, <J_y>, <J_z> on a state.
std::array<double, 3> polarization(const CollectiveSpinOps& ops, const Vector& psi);

/// Classical energy per spin
///   h = -cos(theta) + omega_x sin(theta) cos(phi) + xi_y sin^2(theta) sin^2(phi).
double classical_energy(const ModelParams& p, const BlochPoint& b);

/// h expressed in canonical coordinates (polynomial chart, regular at theta=0):
///   h = -1 + (Q^2+P^2)/2 + omega_x Q sqrt(1-(Q^2+P^2)/4) + xi_y P^2 (1-(Q^2+P^2)/4)
double classical_energy_qp(const ModelParams& p, double q, double p_coord);

/// Gradient (dh/dQ, dh/dP); the stationary-point oracle.
std::array<double, 2> classical_gradient_qp(const ModelParams& p, double q, double p_coord);

/// Unitary D with D|j,-j> = |z>, used to build frame-adapted quadratures.
Matrix coherent_displacement_unitary(const CollectiveSpinOps& ops, const BlochPoint& b);

/// Quadrature operator of the fluctuation mode around the frame whose south
/// pole is the given Bloch point: \tilde J_x / sqrt(j) (axis = 0) or
/// -\tilde J_y / sqrt(j) (axis = 1).
Matrix rotated_quadrature(const CollectiveSpinOps& ops, const BlochPoint& b, int axis);

}  // namespace elmg
