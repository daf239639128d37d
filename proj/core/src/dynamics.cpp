#include "elmg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "elmg/hash.hpp"

namespace elmg {

namespace {
const Complex kI(0.0, 1.0);

Vector phase_vector(const Eigen::VectorXd& evals, double t) {
  Vector ph(evals.size());
  for (Eigen::Index k = 0; k < evals.size(); ++k) {
    ph(k) = std::exp(-kI * (evals(k) * t));
  }
  return ph;
}
}  // namespace

void TimeSeries::validate() const {
  if (times.size() != values.size()) {
    throw contract_error("TimeSeries: times/values length mismatch");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw contract_error("TimeSeries: times must be strictly increasing");
    }
  }
}

std::vector<double> uniform_grid(double t0, double t1, int count) {
  if (count < 1 || !(t1 >= t0)) {
    throw domain_error("uniform_grid: need count >= 1 and t1 >= t0");
  }
  std::vector<double> t(count);
  if (count == 1) {
    t[0] = t0;
    return t;
  }
  const double dt = (t1 - t0) / (count - 1);
  for (int i = 0; i < count; ++i) t[i] = t0 + dt * i;
  return t;
}

std::vector<double> log_grid(double t0, double t1, int count) {
  if (!(t0 > 0.0) || !(t1 > t0) || count < 2) {
    throw domain_error("log_grid: need 0 < t0 < t1 and count >= 2");
  }
  std::vector<double> t(count);
  const double l0 = std::log(t0), l1 = std::log(t1);
  for (int i = 0; i < count; ++i) {
    t[i] = std::exp(l0 + (l1 - l0) * i / (count - 1));
  }
  return t;
}

Propagator::Propagator(const Matrix& hamiltonian) {
  if (hamiltonian.rows() != hamiltonian.cols()) {
    throw contract_error("Propagator: matrix must be square");
  }
  const double herm =
      (hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
  if (herm > 1e-10 * scale) {
    throw contract_error("Propagator: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian);
  if (es.info() != Eigen::Success) {
    throw numeric_error("Propagator: eigensolver failed to converge at dim " +
                        std::to_string(hamiltonian.rows()));
  }
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
  source_ = hamiltonian;
  fingerprint_ = fnv1a64_span(hamiltonian.data(),
                              static_cast<std::size_t>(hamiltonian.size()));
}

Vector Propagator::evolve(const Vector& psi, double t) const {
  if (psi.size() != evals_.size()) {
    throw contract_error("Propagator::evolve: state dimension mismatch");
  }
  Vector c = evecs_.adjoint() * psi;
  c.array() *= phase_vector(evals_, t).array();
  return evecs_ * c;
}

double Propagator::reconstruction_error() const {
  const Matrix rebuilt =
      evecs_ * evals_.cast<Complex>().asDiagonal() * evecs_.adjoint();
  return (rebuilt - source_).cwiseAbs().maxCoeff();
}

Matrix generator_matrix(const FotocSpec& spec, const CollectiveSpinOps& ops) {
  const double sj = std::sqrt(ops.j);
  Matrix g;
  switch (spec.generator) {
    case Generator::Q:
      g = ops.jx / sj;
      break;
    case Generator::P:
      g = -ops.jy / sj;
      break;
    case Generator::Jx:
      g = ops.jx;
      break;
    case Generator::Jy:
      g = ops.jy;
      break;
    case Generator::Jz:
      g = ops.jz;
      break;
    case Generator::Custom:
      g = spec.custom;
      break;
  }
  if (g.rows() != ops.dim || g.cols() != ops.dim) {
    throw contract_error("generator_matrix: dimension mismatch");
  }
  if ((g - g.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff())) {
    throw domain_error("generator_matrix: generator must be Hermitian");
  }
  return g;
}

TimeSeries fotoc(const Model& m, const Propagator& prop, const FotocSpec& spec,
                 const std::vector<double>& times) {
  const Matrix g = generator_matrix(spec, m.ops);
  Eigen::SelfAdjointEigenSolver<Matrix> ges(g);
  if (ges.info() != Eigen::Success) {
    throw numeric_error("fotoc: generator eigensolver failed");
  }
  const Vector z = coherent_state(m.ops, spec.start);

  TimeSeries out;
  out.times = times;
  out.values.resize(times.size());
  out.label = "fotoc";
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const Vector psi_t = prop.evolve(z, t);
    const Vector w = ges.eigenvectors().adjoint() * psi_t;
    const double scale = spec.rescale_time ? t : 1.0;
    Complex overlap(0.0, 0.0);
    for (Eigen::Index k = 0; k < w.size(); ++k) {
      overlap += std::exp(kI * (spec.epsilon * scale * ges.eigenvalues()(k))) *
                 std::norm(w(k));
    }
    out.values[i] = Complex(std::norm(overlap), 0.0);
  }
  return out;
}

TimeSeries fotoc(const Model& m, const FotocSpec& spec, const std::vector<double>& times) {
  Propagator prop(m.hamiltonian);
  return fotoc(m, prop, spec, times);
}

TimeSeries fotoc_sum_qp(const Model& m, const Propagator& prop, double epsilon,
                        const BlochPoint& start, const std::vector<double>& times) {
  FotocSpec q{Generator::Q, {}, epsilon, start, false};
  FotocSpec p{Generator::P, {}, epsilon, start, false};
  TimeSeries fq = fotoc(m, prop, q, times);
  const TimeSeries fp = fotoc(m, prop, p, times);
  for (std::size_t i = 0; i < fq.values.size(); ++i) fq.values[i] += fp.values[i];
  fq.label = "fotoc_q_plus_p";
  return fq;
}

TimeSeries variance_fotoc(const Model& m, const Propagator& prop, const FotocSpec& spec,
                          const std::vector<double>& times) {
  const Matrix g = generator_matrix(spec, m.ops);
  const Matrix g2 = g * g;
  const Vector z = coherent_state(m.ops, spec.start);

  TimeSeries out;
  out.times = times;
  out.values.resize(times.size());
  out.label = "variance_fotoc";
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Vector psi_t = prop.evolve(z, times[i]);
    const double scale = spec.rescale_time ? times[i] : 1.0;
    const double mean = psi_t.dot(g * psi_t).real();
    const double mean2 = psi_t.dot(g2 * psi_t).real();
    const double var = (mean2 - mean * mean) * scale * scale;
    out.values[i] = Complex(1.0 - spec.epsilon * spec.epsilon * var, 0.0);
  }
  return out;
}

TimeSeries loschmidt_echo(const Model& m, const Propagator& prop, const FotocSpec& spec,
                          const std::vector<double>& times) {
  const Matrix g = generator_matrix(spec, m.ops);
  const Propagator perturbed(Matrix(m.hamiltonian - spec.epsilon * g));
  const Vector z = coherent_state(m.ops, spec.start);

  TimeSeries out;
  out.times = times;
  out.values.resize(times.size());
  out.label = "loschmidt_echo";
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Vector forward = prop.evolve(z, times[i]);
    const Vector backward = perturbed.evolve(z, times[i]);
    out.values[i] = Complex(std::norm(forward.dot(backward)), 0.0);
  }
  return out;
}

std::array<double, 3> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw numeric_error("linear_fit: need at least two points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-300) {
    throw numeric_error("linear_fit: degenerate abscissae");
  }
  const double a = (n * sxy - sx * sy) / det;
  const double b = (sy * sxx - sx * sxy) / det;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (a * x[i] + b);
    ss += r * r;
  }
  return {a, b, std::sqrt(ss / n)};
}

ScalingReport le_fotoc_scaling(const Model& m, const Propagator& prop,
                               const FotocSpec& spec, const std::vector<double>& t_list) {
  if (!spec.rescale_time) {
    throw domain_error("le_fotoc_scaling: spec must have the rescale flag set");
  }
  const TimeSeries f = fotoc(m, prop, spec, t_list);
  const TimeSeries l = loschmidt_echo(m, prop, spec, t_list);

  ScalingReport rep;
  rep.times = t_list;
  rep.differences.resize(t_list.size());
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    rep.differences[i] = std::abs(f.values[i].real() - l.values[i].real());
    rep.max_difference = std::max(rep.max_difference, rep.differences[i]);
  }
  if (rep.max_difference < 1e-13) {
    rep.exact_agreement = true;
    return rep;
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    if (rep.differences[i] > 1e-15 && t_list[i] > 0.0) {
      lx.push_back(std::log(t_list[i]));
      ly.push_back(std::log(rep.differences[i]));
    }
  }
  const auto fit = linear_fit(lx, ly);
  rep.slope = fit[0];
  rep.intercept = fit[1];
  return rep;
}

double classical_lyapunov(const ModelParams& p) {
  const double nu = std::sqrt(1.0 + p.omega_x * p.omega_x);
  const double arg = nu * (2.0 * p.xi_y - nu);
  if (arg <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return std::sqrt(arg);
}

LyapunovFit lyapunov_fit(const ModelParams& p, const TimeSeries& one_minus_f,
                         std::optional<double> lo_opt, std::optional<double> hi_opt) {
  one_minus_f.validate();
  const double lo = lo_opt.value_or(1e-4);
  const double hi = hi_opt.value_or(1e-1);
  if (!(lo > 0.0) || !(hi > lo)) {
    throw domain_error("lyapunov_fit: need 0 < lo < hi");
  }

  const auto& vals = one_minus_f.values;
  const std::size_t n = vals.size();
  std::size_t i_lo = 0, i_hi = n;
  if (!lo_opt && !hi_opt) {
    // Default window: the pre-saturation growth segment, from the first
    // sample reaching lo up to the first sample reaching hi or, when hi is
    // never reached (saturation below hi), the first approach of the global
    // maximum.
    double vmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) vmax = std::max(vmax, vals[i].real());
    i_lo = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (vals[i].real() >= lo) {
        i_lo = i;
        break;
      }
    }
    const double ceiling = std::min(hi, 0.8 * vmax);
    for (std::size_t i = i_lo; i < n; ++i) {
      if (vals[i].real() >= ceiling) {
        i_hi = i + 1;
        break;
      }
    }
  }
  std::vector<double> tx, ly;
  for (std::size_t i = i_lo; i < std::min(i_hi, n); ++i) {
    const double v = vals[i].real();
    if (v < lo || v > hi) continue;
    if (v <= 0.0) {
      throw numeric_error("lyapunov_fit: non-positive value inside window");
    }
    tx.push_back(one_minus_f.times[i]);
    ly.push_back(std::log(v));
  }
  if (tx.size() < 8) {
    throw numeric_error("lyapunov_fit: window holds fewer than 8 samples");
  }
  const auto fit = linear_fit(tx, ly);

  LyapunovFit out;
  out.lambda_q = fit[0];
  out.lambda_cl = classical_lyapunov(p);
  out.ratio = out.lambda_q / (2.0 * out.lambda_cl);
  out.t0 = tx.front();
  out.t1 = tx.back();
  out.residual = fit[2];
  // exponential growth = a tight log-linear fit spanning at least half a
  // decade of increase
  out.exponential =
      fit[2] < 0.5 && out.lambda_q * (out.t1 - out.t0) >= 0.5 * std::log(10.0);
  return out;
}

}  // namespace elmg
