#include "elmg/qgt.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "elmg/stationary.hpp"

namespace elmg {

namespace {
const Complex kI(0.0, 1.0);

Vector apply_diag_phases(const Matrix& v, const Eigen::VectorXd& mu, double angle,
                         const Vector& psi) {
  // v * diag(e^{i angle mu}) * v^dag * psi
  Vector c = v.adjoint() * psi;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    c(k) *= std::exp(kI * (angle * mu(k)));
  }
  return v * c;
}

void gauge_fix(Vector& psi, const Vector& reference) {
  const Complex ov = reference.dot(psi);
  const double mag = std::abs(ov);
  if (mag < 1e-14) return;  // orthogonal to reference; leave as is
  psi *= std::conj(ov) / mag;
}
}  // namespace

int phase_anchor_label(Phase phase) {
  switch (phase) {
    case Phase::symmetric: return 1;
    case Phase::broken: return 4;
    case Phase::ground: return 2;
  }
  return 0;
}

QgtEngine::QgtEngine(const QgtSettings& settings) : settings_(settings) {
  ops_ = build_spin_ops(settings.j);
  Eigen::SelfAdjointEigenSolver<Matrix> ex(ops_.jx);
  Eigen::SelfAdjointEigenSolver<Matrix> ey(ops_.jy);
  if (ex.info() != Eigen::Success || ey.info() != Eigen::Success) {
    throw numeric_error("QgtEngine: spin-operator eigensolver failed");
  }
  jx_evals_ = ex.eigenvalues();
  jx_evecs_ = ex.eigenvectors();
  jy_evals_ = ey.eigenvalues();
  jy_evecs_ = ey.eigenvectors();
}

Vector QgtEngine::select_eigenstate(const Eigen::VectorXd& evals, const Matrix& evecs,
                                    const Vector& reference,
                                    QgtDiagnostics* diag) const {
  const Eigen::Index d = evals.size();
  Eigen::Index best = 0, second = 0;
  double o1 = -1.0, o2 = -1.0;
  for (Eigen::Index n = 0; n < d; ++n) {
    const double o = std::norm(evecs.col(n).dot(reference));
    if (o > o1) {
      o2 = o1;
      second = best;
      o1 = o;
      best = n;
    } else if (o > o2) {
      o2 = o;
      second = n;
    }
  }
  if (diag) {
    diag->top_overlap = o1;
    diag->second_overlap = o2;
  }

  const double gap = std::abs(evals(best) - evals(second));
  // typical neighbor spacing around the selected level
  std::vector<double> spacings;
  for (Eigen::Index n = std::max<Eigen::Index>(1, best - 5);
       n < std::min(d, best + 6); ++n) {
    spacings.push_back(std::abs(evals(n) - evals(n - 1)));
  }
  std::nth_element(spacings.begin(), spacings.begin() + spacings.size() / 2,
                   spacings.end());
  const double spacing = spacings[spacings.size() / 2];

  const bool comparable = o2 >= 0.2 * o1;
  const bool quasi_degenerate = gap < 0.25 * spacing;
  if (comparable && quasi_degenerate && settings_.resolve_doublet) {
    // Max-overlap state inside the two-dimensional quasi-degenerate span.
    Vector psi = evecs.col(best) * (evecs.col(best).dot(reference)) +
                 evecs.col(second) * (evecs.col(second).dot(reference));
    psi.normalize();
    if (diag) diag->doublet_resolved = true;
    return psi;
  }
  if (o2 >= (1.0 - settings_.ambiguity) * o1 && !quasi_degenerate) {
    throw domain_error(
        "eigenstate selection ambiguous: overlaps " + std::to_string(o1) + " and " +
        std::to_string(o2) + " at energies " + std::to_string(evals(best)) + ", " +
        std::to_string(evals(second)));
  }
  return evecs.col(best);
}

Vector QgtEngine::build_state(const ParameterPoint& x, double epsilon,
                              QgtDiagnostics* diag) const {
  ModelParams p;
  p.omega_x = x.omega_x;
  p.xi_y = x.xi_y;
  p.j = ops_.j;
  p.epsilon = std::abs(epsilon);

  const StationaryPoint anchor = stationary_point(p, phase_anchor_label(settings_.phase));
  const Vector z = coherent_state(ops_, anchor.point);

  const Matrix h = build_hamiltonian(p, ops_);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) {
    throw numeric_error("QgtEngine: Hamiltonian eigensolver failed");
  }
  Vector psi = select_eigenstate(es.eigenvalues(), es.eigenvectors(), z, diag);
  if (epsilon == 0.0) return psi;

  // kick: U(t) e^{i eps Q} U(-t), with Q either the lab quadrature
  // Jx/sqrt(j) or the same operator conjugated into the stationary frame
  // D = e^{-i phi Jz} e^{i theta Jy} e^{i phi Jz}.
  const double sj = std::sqrt(ops_.j);
  auto evolve = [&](const Vector& v, double time) {
    Vector c = es.eigenvectors().adjoint() * v;
    for (Eigen::Index k = 0; k < c.size(); ++k) {
      c(k) *= std::exp(-kI * (es.eigenvalues()(k) * time));
    }
    return Vector(es.eigenvectors() * c);
  };

  psi = evolve(psi, x.t);
  if (settings_.frame == GeneratorFrame::stationary) {
    const double theta = anchor.point.theta;
    const double phi = anchor.point.phi;
    auto jz_phase = [&](const Vector& v, double angle) {
      Vector out = v;
      for (Eigen::Index k = 0; k < out.size(); ++k) {
        const double m = -ops_.j + static_cast<double>(k);
        out(k) *= std::exp(kI * (angle * m));
      }
      return out;
    };
    // e^{i eps Q~} = D e^{i eps Q} D^dag: apply D^dag, kick in the lab frame,
    // then D, each factored as e^{-i phi Jz} e^{+-i theta Jy} e^{i phi Jz}.
    // The azimuthal orientation of the frame is not fixed by the quadratic
    // expansion (it is even in the quadratures); the sign below selects the
    // orientation whose first-order metric matches the closed forms.
    psi = jz_phase(psi, phi);
    psi = apply_diag_phases(jy_evecs_, jy_evals_, -theta, psi);
    psi = jz_phase(psi, -phi);
    psi = apply_diag_phases(jx_evecs_, jx_evals_, -epsilon / sj, psi);
    psi = jz_phase(psi, phi);
    psi = apply_diag_phases(jy_evecs_, jy_evals_, theta, psi);
    psi = jz_phase(psi, -phi);
  } else {
    psi = apply_diag_phases(jx_evecs_, jx_evals_, epsilon / sj, psi);
  }
  psi = evolve(psi, -x.t);
  return psi;
}

Eigen::Matrix3d QgtEngine::metric(const ParameterPoint& x, double epsilon,
                                  QgtDiagnostics* diag) const {
  auto compute = [&](double h) {
    const Vector center = build_state(x, epsilon, diag);
    const int ncoord = settings_.include_time ? 3 : 2;
    std::vector<Vector> deriv(3, Vector::Zero(center.size()));
    for (int i = 0; i < ncoord; ++i) {
      ParameterPoint xp = x, xm = x;
      if (i == 0) {
        xp.omega_x += h;
        xm.omega_x -= h;
      } else if (i == 1) {
        xp.xi_y += h;
        xm.xi_y -= h;
      } else {
        xp.t += h;
        xm.t -= h;
      }
      Vector plus = build_state(xp, epsilon, nullptr);
      Vector minus = build_state(xm, epsilon, nullptr);
      gauge_fix(plus, center);
      gauge_fix(minus, center);
      deriv[i] = (plus - minus) / (2.0 * h);
    }
    Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
    for (int i = 0; i < ncoord; ++i) {
      const Complex di_psi = deriv[i].dot(center);  // <d_i psi | psi>
      for (int jdx = i; jdx < ncoord; ++jdx) {
        const Complex overlap = deriv[i].dot(deriv[jdx]);
        const Complex berry = di_psi * center.dot(deriv[jdx]);
        g(i, jdx) = (overlap - berry).real();
        g(jdx, i) = g(i, jdx);
      }
    }
    return g;
  };

  Eigen::Matrix3d g = compute(settings_.h);
  if (settings_.validate_step) {
    const Eigen::Matrix3d g_half = compute(0.5 * settings_.h);
    const double scale = std::max(1e-300, g.cwiseAbs().maxCoeff());
    const double dev = (g - g_half).cwiseAbs().maxCoeff() / scale;
    if (diag) diag->step_check = dev;
    if (dev > 0.05) {
      throw numeric_error("qgt: finite-difference step inconsistent (deviation " +
                          std::to_string(dev) + "); adjust h");
    }
    g = g_half;  // finer estimate
  }
  return g;
}

Eigen::Matrix3d QgtEngine::metric_first_order_extracted(const ParameterPoint& x,
                                                        double epsilon) const {
  const Eigen::Matrix3d plus = metric(x, epsilon, nullptr);
  const Eigen::Matrix3d minus = metric(x, -epsilon, nullptr);
  return (plus - minus) / (2.0 * epsilon);
}

}  // namespace elmg
