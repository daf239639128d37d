#include "elmg/effective.hpp"

#include <cmath>

namespace elmg {

namespace {
const Complex kI(0.0, 1.0);

double quartic_root(double x) { return std::sqrt(std::sqrt(x)); }
}  // namespace

std::string phase_name(Phase phase) {
  switch (phase) {
    case Phase::symmetric: return "symmetric";
    case Phase::broken: return "broken";
    case Phase::ground: return "ground";
  }
  return "?";
}

Phase phase_from_name(const std::string& name) {
  if (name == "symmetric" || name == "sym") return Phase::symmetric;
  if (name == "broken") return Phase::broken;
  if (name == "ground") return Phase::ground;
  throw domain_error("unknown phase '" + name + "' (symmetric|broken|ground)");
}

double xi_critical(const ModelParams& p) {
  return 0.5 * std::sqrt(1.0 + p.omega_x * p.omega_x);
}

bool in_phase_domain(Phase phase, const ModelParams& p) {
  const double xc = xi_critical(p);
  switch (phase) {
    case Phase::symmetric: return p.xi_y < xc;
    case Phase::broken: return p.xi_y > xc;
    case Phase::ground: return p.xi_y > -xc;
  }
  return false;
}

void require_phase_domain(Phase phase, const ModelParams& p) {
  if (in_phase_domain(phase, p)) return;
  const double xc = xi_critical(p);
  switch (phase) {
    case Phase::symmetric:
      throw domain_error("symmetric phase requires xi_y < sqrt(1+omega_x^2)/2 = " +
                         std::to_string(xc) + ", got xi_y = " + std::to_string(p.xi_y));
    case Phase::broken:
      throw domain_error("broken phase requires xi_y > sqrt(1+omega_x^2)/2 = " +
                         std::to_string(xc) + ", got xi_y = " + std::to_string(p.xi_y));
    case Phase::ground:
      throw domain_error("ground phase requires xi_y > -sqrt(1+omega_x^2)/2 = " +
                         std::to_string(-xc) + ", got xi_y = " + std::to_string(p.xi_y));
  }
}

QuadraticHamiltonian effective_hamiltonian(Phase phase, const ModelParams& p) {
  require_phase_domain(phase, p);
  const double nu = std::sqrt(1.0 + p.omega_x * p.omega_x);
  QuadraticHamiltonian h;
  h.phase = phase;
  h.gamma_minus = nu - 2.0 * p.xi_y;
  h.gamma_plus = nu + 2.0 * p.xi_y;
  switch (phase) {
    case Phase::symmetric:
      h.c0 = nu;
      h.cpp = -0.5 * h.gamma_minus;
      h.cqq = -0.5 * nu;
      h.cqp = 0.0;
      h.frequency = quartic_root(1.0 + p.omega_x * p.omega_x) * std::sqrt(h.gamma_minus);
      break;
    case Phase::broken: {
      const double xi = p.xi_y;
      const double w2 = 4.0 * xi * xi - p.omega_x * p.omega_x - 1.0;
      const double d = 4.0 * xi * xi - 1.0;
      h.c0 = (4.0 * xi * xi + p.omega_x * p.omega_x + 1.0) / (4.0 * xi);
      h.cpp = -xi * w2 / d;
      h.cqp = 0.5 * p.omega_x * std::sqrt(w2) / d;
      h.cqq = -(16.0 * std::pow(xi, 4) - 8.0 * xi * xi + p.omega_x * p.omega_x + 1.0) /
              (4.0 * xi * d);
      h.frequency = std::sqrt(w2);
      break;
    }
    case Phase::ground:
      h.c0 = -nu;
      h.cpp = 0.5 * h.gamma_plus;
      h.cqq = 0.5 * nu;
      h.cqp = 0.0;
      h.frequency = quartic_root(1.0 + p.omega_x * p.omega_x) * std::sqrt(h.gamma_plus);
      break;
  }
  return h;
}

QuadraturePair heisenberg_quadratures(Phase phase, const ModelParams& p, double t) {
  require_phase_domain(phase, p);
  const double nu = std::sqrt(1.0 + p.omega_x * p.omega_x);
  const double s4 = quartic_root(1.0 + p.omega_x * p.omega_x);
  QuadraturePair out;
  switch (phase) {
    case Phase::symmetric: {
      const double g = nu - 2.0 * p.xi_y;
      const double w = s4 * std::sqrt(g);
      out.q_coeff = std::cos(w * t);
      out.p_coeff = -(std::sqrt(g) / s4) * std::sin(w * t);
      break;
    }
    case Phase::broken: {
      const double xi = p.xi_y;
      const double w = std::sqrt(4.0 * xi * xi - p.omega_x * p.omega_x - 1.0);
      const double d = 4.0 * xi * xi - 1.0;
      out.q_coeff = std::cos(w * t) + p.omega_x * std::sin(w * t) / d;
      out.p_coeff = -2.0 * xi * w * std::sin(w * t) / d;
      break;
    }
    case Phase::ground: {
      const double g = nu + 2.0 * p.xi_y;
      const double w = s4 * std::sqrt(g);
      out.q_coeff = std::cos(w * t);
      out.p_coeff = (std::sqrt(g) / s4) * std::sin(w * t);
      break;
    }
  }
  return out;
}

QuadraturePair heisenberg_quadratures_dxi(Phase phase, const ModelParams& p, double t) {
  require_phase_domain(phase, p);
  const double nu = std::sqrt(1.0 + p.omega_x * p.omega_x);
  const double s4 = quartic_root(1.0 + p.omega_x * p.omega_x);
  QuadraturePair out;
  switch (phase) {
    case Phase::symmetric: {
      const double g = nu - 2.0 * p.xi_y;
      const double sg = std::sqrt(g);
      const double w = s4 * sg;
      const double dw = -s4 / sg;  // d omega / d xi_y
      out.q_coeff = -std::sin(w * t) * t * dw;
      out.p_coeff = std::sin(w * t) / (s4 * sg) - (sg / s4) * std::cos(w * t) * t * dw;
      break;
    }
    case Phase::broken: {
      const double xi = p.xi_y;
      const double w2 = 4.0 * xi * xi - p.omega_x * p.omega_x - 1.0;
      const double w = std::sqrt(w2);
      const double d = 4.0 * xi * xi - 1.0;
      const double dw = 4.0 * xi / w;
      const double c1 = p.omega_x / d;
      const double dc1 = -8.0 * xi * p.omega_x / (d * d);
      const double c2 = 2.0 * xi * w / d;
      const double dc2 = (2.0 * w + 8.0 * xi * xi / w) / d - 16.0 * xi * xi * w / (d * d);
      const double sn = std::sin(w * t), cs = std::cos(w * t);
      out.q_coeff = -sn * t * dw + dc1 * sn + c1 * cs * t * dw;
      out.p_coeff = -dc2 * sn - c2 * cs * t * dw;
      break;
    }
    case Phase::ground: {
      const double g = nu + 2.0 * p.xi_y;
      const double sg = std::sqrt(g);
      const double w = s4 * sg;
      const double dw = s4 / sg;
      out.q_coeff = -std::sin(w * t) * t * dw;
      out.p_coeff = std::sin(w * t) / (s4 * sg) + (sg / s4) * std::cos(w * t) * t * dw;
      break;
    }
  }
  return out;
}

Eigen::Matrix2d symplectic_oracle(Phase phase, const ModelParams& p, double t) {
  const QuadraticHamiltonian h = effective_hamiltonian(phase, p);
  // Coefficient flow: d/dt (f, g)^T = N (f, g)^T.
  Eigen::Matrix2d n;
  n << 2.0 * h.cqp, -2.0 * h.cqq, 2.0 * h.cpp, -2.0 * h.cqp;

  // Scaling-and-squaring Taylor exponential, independent of the closed forms.
  Eigen::Matrix2d a = n * t;
  int squarings = 0;
  double norm = a.cwiseAbs().maxCoeff();
  while (norm > 0.25 && squarings < 60) {
    a *= 0.5;
    norm *= 0.5;
    ++squarings;
  }
  Eigen::Matrix2d result = Eigen::Matrix2d::Identity();
  Eigen::Matrix2d term = Eigen::Matrix2d::Identity();
  for (int k = 1; k <= 16; ++k) {
    term = term * a / static_cast<double>(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result.transpose();  // rows carry the (Q(t), P(t)) coefficients
}

double BogoliubovTransform::induced_commutator() const {
  // Invert (Q;P) = [[uq, uq*],[up, up*]] (g^dag; g) and evaluate [g, g^dag]
  // from [Q, P] = i.
  const Complex det = uq * std::conj(up) - std::conj(uq) * up;
  if (std::abs(det) < 1e-300) return 0.0;
  const Complex gq = -up / det;       // g = gq Q + gp P
  const Complex gp = uq / det;
  const Complex gdq = std::conj(up) / det;  // g^dag = gdq Q + gdp P
  const Complex gdp = -std::conj(uq) / det;
  const Complex comm = (gq * gdp - gp * gdq) * kI;
  return comm.real();
}

Eigen::Matrix2d BogoliubovTransform::vacuum_covariance() const {
  Eigen::Matrix2d s;
  const double sqq = std::norm(uq);
  const double spp = std::norm(up);
  const double sqp = (uq * std::conj(up)).real();
  s << sqq, sqp, sqp, spp;
  return s;
}

BogoliubovTransform bogoliubov(Phase phase, const ModelParams& p) {
  require_phase_domain(phase, p);
  const double nu = std::sqrt(1.0 + p.omega_x * p.omega_x);
  BogoliubovTransform b;
  b.phase = phase;
  switch (phase) {
    case Phase::symmetric: {
      const double g = nu - 2.0 * p.xi_y;
      b.uq = quartic_root(g / (4.0 * nu));
      b.up = kI * quartic_root(nu / (4.0 * g));
      break;
    }
    case Phase::ground: {
      const double g = nu + 2.0 * p.xi_y;
      b.uq = quartic_root(g / (4.0 * nu));
      b.up = kI * quartic_root(nu / (4.0 * g));
      break;
    }
    case Phase::broken: {
      const double xi = p.xi_y;
      const double w = std::sqrt(4.0 * xi * xi - p.omega_x * p.omega_x - 1.0);
      const double d = 4.0 * xi * xi - 1.0;
      b.uq = std::sqrt(xi * w / d);
      b.up = p.omega_x / std::sqrt(4.0 * xi * w * d) + kI * std::sqrt(d / (4.0 * xi * w));
      break;
    }
  }
  return b;
}

Complex displacement_amplitude(Phase phase, const ModelParams& p, double t) {
  const BogoliubovTransform b = bogoliubov(phase, p);
  const QuadraturePair q = heisenberg_quadratures(phase, p, t);
  return b.uq * q.q_coeff + b.up * q.p_coeff;
}

PerturbedGaussianState perturbed_state(Phase phase, const ModelParams& p, double t,
                                       int n_max) {
  if (n_max < 8) {
    throw domain_error("perturbed_state: n_max must be >= 8");
  }
  p.validate();
  PerturbedGaussianState st;
  st.phase = phase;
  st.t = t;
  st.epsilon = p.epsilon;
  st.b = displacement_amplitude(phase, p, t);

  const Complex alpha = kI * p.epsilon * st.b;
  const double a2 = std::norm(alpha);
  st.amplitudes = Vector::Zero(n_max + 1);
  double sum = 0.0;
  Complex coeff = std::exp(Complex(-0.5 * a2, 0.0));
  for (int l = 0; l <= n_max; ++l) {
    if (l > 0) coeff *= alpha / std::sqrt(static_cast<double>(l));
    st.amplitudes(l) = coeff;
    sum += std::norm(coeff);
  }
  st.tail = 1.0 - sum;
  if (st.tail > 1e-10) {
    throw truncation_error("perturbed_state: Fock tail " + std::to_string(st.tail) +
                           " above 1e-10; raise n_max");
  }
  const auto snap = phase_space_snapshot(phase, p, t);
  st.center = snap.center;
  st.covariance = snap.covariance;
  st.mean_occupation = p.epsilon * p.epsilon * std::norm(st.b);
  return st;
}

PhaseSpaceSnapshot phase_space_snapshot(Phase phase, const ModelParams& p, double t) {
  const BogoliubovTransform b = bogoliubov(phase, p);
  const QuadraturePair q = heisenberg_quadratures(phase, p, t);
  PhaseSpaceSnapshot out;
  // e^{-i eps Q(t)} Q e^{i eps Q(t)} = Q - eps p_coeff;  P -> P + eps q_coeff
  out.center << -p.epsilon * q.p_coeff, p.epsilon * q.q_coeff;
  out.covariance = b.vacuum_covariance();
  return out;
}

}  // namespace elmg
