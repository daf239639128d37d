#include "elmg/model.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace elmg {

namespace {
constexpr double kHalfIntegerTol = 1e-9;
constexpr int kDimGuard = 4096;
const Complex kI(0.0, 1.0);
}  // namespace

void ModelParams::validate() const {
  const double tj = 2.0 * j;
  if (!(tj > 0.0) || std::abs(tj - std::llround(tj)) > kHalfIntegerTol) {
    throw domain_error("ModelParams: 2j must be a positive integer, got j = " +
                       std::to_string(j));
  }
  if (epsilon < 0.0) {
    throw domain_error("ModelParams: epsilon must be >= 0");
  }
  if (epsilon > 0.1) {
    std::cerr << "elmg: warning: epsilon = " << epsilon
              << " > 0.1; perturbative expansions may be inaccurate\n";
  }
}

long long ModelParams::two_j() const {
  const double tj = 2.0 * j;
  if (!(tj > 0.0) || std::abs(tj - std::llround(tj)) > kHalfIntegerTol) {
    throw domain_error("2j must be a positive integer, got j = " + std::to_string(j));
  }
  return std::llround(tj);
}

void BlochPoint::validate() const {
  if (!(theta >= 0.0 && theta <= M_PI)) {
    throw domain_error("BlochPoint: theta must lie in [0, pi]");
  }
  if (!std::isfinite(phi)) {
    throw domain_error("BlochPoint: phi must be finite");
  }
}

std::array<double, 2> canonical_coordinates(const BlochPoint& b) {
  const double s = std::sqrt(2.0 * (1.0 - std::cos(b.theta)));
  return {s * std::cos(b.phi), -s * std::sin(b.phi)};
}

BlochPoint bloch_from_canonical(double q, double p) {
  const double s2 = q * q + p * p;
  if (s2 > 4.0 + 1e-12) {
    throw domain_error("bloch_from_canonical: Q^2 + P^2 must be <= 4");
  }
  const double c = 1.0 - 0.5 * std::min(s2, 4.0);
  BlochPoint b;
  b.theta = std::acos(std::clamp(c, -1.0, 1.0));
  b.phi = (s2 > 0.0) ? std::atan2(-p, q) : 0.0;
  if (b.phi < 0.0) b.phi += 2.0 * M_PI;
  return b;
}

CollectiveSpinOps build_spin_ops(double j) {
  const double tj = 2.0 * j;
  if (!(tj > 0.0) || std::abs(tj - std::llround(tj)) > kHalfIntegerTol) {
    throw domain_error("build_spin_ops: 2j must be a positive integer");
  }
  const long long two_j = std::llround(tj);
  const long long d = two_j + 1;
  if (d > kDimGuard) {
    throw resource_error("build_spin_ops: dimension " + std::to_string(d) +
                         " exceeds guard " + std::to_string(kDimGuard));
  }

  CollectiveSpinOps ops;
  ops.j = 0.5 * static_cast<double>(two_j);
  ops.dim = static_cast<int>(d);

  Matrix jp = Matrix::Zero(d, d);
  Matrix jz = Matrix::Zero(d, d);
  for (long long k = 0; k < d; ++k) {
    const double m = -ops.j + static_cast<double>(k);
    jz(k, k) = m;
    if (k + 1 < d) {
      // J+ |j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>
      jp(k + 1, k) = std::sqrt(ops.j * (ops.j + 1.0) - m * (m + 1.0));
    }
  }
  const Matrix jm = jp.adjoint();
  ops.jplus = jp;
  ops.jx = 0.5 * (jp + jm);
  ops.jy = (jp - jm) / (2.0 * kI);
  ops.jz = jz;
  ops.j2 = ops.jx * ops.jx + ops.jy * ops.jy + ops.jz * ops.jz;
  return ops;
}

Matrix build_hamiltonian(const ModelParams& p, const CollectiveSpinOps& ops) {
  p.validate();
  if (ops.dim != p.dim() || std::abs(ops.j - p.j) > kHalfIntegerTol) {
    throw contract_error("build_hamiltonian: operators built for j = " +
                         std::to_string(ops.j) + ", params have j = " +
                         std::to_string(p.j));
  }
  return p.omega * ops.jz + p.omega_x * ops.jx + (p.xi_y / p.j) * (ops.jy * ops.jy);
}

Model make_model(const ModelParams& p) {
  p.validate();
  Model m;
  m.params = p;
  m.ops = build_spin_ops(p.j);
  m.hamiltonian = build_hamiltonian(p, m.ops);
  return m;
}

Vector coherent_state(const CollectiveSpinOps& ops, const BlochPoint& b) {
  b.validate();
  const long long two_j = std::llround(2.0 * ops.j);
  const long long d = two_j + 1;
  Vector psi = Vector::Zero(d);

  if (b.theta == 0.0) {
    psi(0) = 1.0;
    return psi;
  }
  if (std::abs(b.theta - M_PI) < 1e-15) {
    psi(d - 1) = 1.0;  // z -> infinity limit state |j,+j>
    return psi;
  }

  // log-space amplitudes: c_k = sqrt(C(2j,k)) tan(theta/2)^k e^{-ik phi}
  //                            / (1+tan^2(theta/2))^j
  const double ltan = std::log(std::tan(0.5 * b.theta));
  const double lnorm =
      static_cast<double>(two_j) * std::log(std::cos(0.5 * b.theta));
  // (1+|z|^2)^{-j} = cos^{2j}(theta/2)
  const double lg2j = std::lgamma(static_cast<double>(two_j) + 1.0);
  for (long long k = 0; k < d; ++k) {
    const double lbinom = 0.5 * (lg2j - std::lgamma(static_cast<double>(k) + 1.0) -
                                 std::lgamma(static_cast<double>(two_j - k) + 1.0));
    const double mag = std::exp(lbinom + static_cast<double>(k) * ltan + lnorm);
    psi(k) = mag * std::exp(-kI * (static_cast<double>(k) * b.phi));
  }
  psi.normalize();  // removes residual rounding at the 1e-16 level
  return psi;
}

std::array<double, 3> polarization(const CollectiveSpinOps& ops, const Vector& psi) {
  const Complex x = psi.dot(ops.jx * psi);
  const Complex y = psi.dot(ops.jy * psi);
  const Complex z = psi.dot(ops.jz * psi);
  return {x.real(), y.real(), z.real()};
}

double classical_energy(const ModelParams& p, const BlochPoint& b) {
  const double st = std::sin(b.theta), ct = std::cos(b.theta);
  const double sp = std::sin(b.phi), cp = std::cos(b.phi);
  return -p.omega * ct + p.omega_x * st * cp + p.xi_y * st * st * sp * sp;
}

double classical_energy_qp(const ModelParams& p, double q, double pc) {
  const double s2 = q * q + pc * pc;
  const double w = 1.0 - 0.25 * s2;
  return -p.omega * (1.0 - 0.5 * s2) + p.omega_x * q * std::sqrt(w) +
         p.xi_y * pc * pc * w;
}

std::array<double, 2> classical_gradient_qp(const ModelParams& p, double q, double pc) {
  const double s2 = q * q + pc * pc;
  const double w = 1.0 - 0.25 * s2;
  const double sw = std::sqrt(w);
  // d/dq [q sqrt(w)] = sqrt(w) - q^2/(4 sqrt(w));  d/dp [..] = -q p/(4 sqrt(w))
  const double dq = p.omega * q + p.omega_x * (sw - 0.25 * q * q / sw) -
                    0.5 * p.xi_y * pc * pc * q;
  const double dp = p.omega * pc - 0.25 * p.omega_x * q * pc / sw +
                    p.xi_y * (2.0 * pc * w - 0.5 * pc * pc * pc);
  return {dq, dp};
}

Matrix coherent_displacement_unitary(const CollectiveSpinOps& ops, const BlochPoint& b) {
  b.validate();
  // D = exp(zeta J+ - zeta* J-), zeta = (theta/2) e^{-i phi}
  const Complex zeta = 0.5 * b.theta * std::exp(-kI * b.phi);
  const Matrix a = zeta * ops.jplus - std::conj(zeta) * ops.jplus.adjoint();
  // a is anti-Hermitian; exponentiate through the Hermitian matrix i*a.
  Eigen::SelfAdjointEigenSolver<Matrix> es(kI * a);
  if (es.info() != Eigen::Success) {
    throw numeric_error("coherent_displacement_unitary: eigensolver failed");
  }
  const auto& v = es.eigenvectors();
  Vector phases(ops.dim);
  for (int k = 0; k < ops.dim; ++k) {
    phases(k) = std::exp(-kI * es.eigenvalues()(k));
  }
  return v * phases.asDiagonal() * v.adjoint();
}

Matrix rotated_quadrature(const CollectiveSpinOps& ops, const BlochPoint& b, int axis) {
  if (axis != 0 && axis != 1) {
    throw domain_error("rotated_quadrature: axis must be 0 (Q) or 1 (P)");
  }
  const Matrix d = coherent_displacement_unitary(ops, b);
  const double sj = std::sqrt(ops.j);
  const Matrix base = (axis == 0) ? Matrix(ops.jx / sj) : Matrix(-ops.jy / sj);
  return d * base * d.adjoint();
}

}  // namespace elmg
