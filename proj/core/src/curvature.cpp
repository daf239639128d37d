#include "elmg/curvature.hpp"

#include <cmath>

namespace elmg {

namespace {

// metric partial d_k g at a node by central differences; k=0 -> omega_x
bool metric_derivative(const MetricField& f, int ix, int iy, int k,
                       Eigen::Matrix2d& out) {
  const int nx = f.axes.nx, ny = f.axes.ny;
  int ixp = ix, ixm = ix, iyp = iy, iym = iy;
  double h;
  if (k == 0) {
    ixp = ix + 1;
    ixm = ix - 1;
    h = f.axes.hx();
  } else {
    iyp = iy + 1;
    iym = iy - 1;
    h = f.axes.hy();
  }
  if (ixm < 0 || iym < 0 || ixp >= nx || iyp >= ny) return false;
  if (!f.valid(ixp, iyp) || !f.valid(ixm, iym)) return false;
  out = (f.g[f.index(ixp, iyp)] - f.g[f.index(ixm, iym)]) / (2.0 * h);
  return true;
}

}  // namespace

ChristoffelField christoffel(const MetricField& field) {
  ChristoffelField out;
  out.axes = field.axes;
  out.gamma.assign(field.g.size(), Eigen::Matrix<double, 2, 4>::Zero());
  out.mask.assign(field.g.size(), 0);

  for (int iy = 0; iy < field.axes.ny; ++iy) {
    for (int ix = 0; ix < field.axes.nx; ++ix) {
      const int node = field.index(ix, iy);
      if (!field.mask[node]) continue;
      Eigen::Matrix2d dg[2];
      if (!metric_derivative(field, ix, iy, 0, dg[0]) ||
          !metric_derivative(field, ix, iy, 1, dg[1])) {
        continue;
      }
      const Eigen::Matrix2d& g = field.g[node];
      const double det = g.determinant();
      if (!(det > 0.0) || !std::isfinite(det)) continue;
      const Eigen::Matrix2d ginv = g.inverse();

      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          for (int l = j; l < 2; ++l) {
            double s = 0.0;
            for (int m = 0; m < 2; ++m) {
              s += ginv(i, m) *
                   (dg[j](m, l) + dg[l](m, j) - dg[m](j, l));
            }
            const double v = 0.5 * s;
            out.gamma[node](i, 2 * j + l) = v;
            out.gamma[node](i, 2 * l + j) = v;
          }
        }
      }
      out.mask[node] = 1;
    }
  }
  return out;
}

CurvatureField ricci_scalar(const MetricField& field) {
  const ChristoffelField cf = christoffel(field);
  CurvatureField out;
  out.axes = field.axes;
  out.ricci.assign(field.g.size(), 0.0);
  out.mask.assign(field.g.size(), 0);

  const double h[2] = {field.axes.hx(), field.axes.hy()};
  auto gamma_at = [&](int ix, int iy) { return cf.gamma[cf.index(ix, iy)]; };

  for (int iy = 0; iy < field.axes.ny; ++iy) {
    for (int ix = 0; ix < field.axes.nx; ++ix) {
      const int node = field.index(ix, iy);
      if (!cf.mask[node]) continue;
      if (ix - 1 < 0 || iy - 1 < 0 || ix + 1 >= field.axes.nx ||
          iy + 1 >= field.axes.ny) {
        continue;
      }
      if (!cf.mask[cf.index(ix - 1, iy)] || !cf.mask[cf.index(ix + 1, iy)] ||
          !cf.mask[cf.index(ix, iy - 1)] || !cf.mask[cf.index(ix, iy + 1)]) {
        continue;
      }
      // dGamma[k](i, 2j+l) = d_k Gamma^i_{jl}
      Eigen::Matrix<double, 2, 4> dgam[2];
      dgam[0] = (gamma_at(ix + 1, iy) - gamma_at(ix - 1, iy)) / (2.0 * h[0]);
      dgam[1] = (gamma_at(ix, iy + 1) - gamma_at(ix, iy - 1)) / (2.0 * h[1]);
      const auto& gam = cf.gamma[node];
      auto G = [&](int i, int j, int l) { return gam(i, 2 * j + l); };
      auto dG = [&](int k, int i, int j, int l) { return dgam[k](i, 2 * j + l); };

      // R^r_{s m n} = d_m G^r_{n s} - d_n G^r_{m s}
      //              + G^r_{m a} G^a_{n s} - G^r_{n a} G^a_{m s}
      const Eigen::Matrix2d ginv = field.g[node].inverse();
      double r_scalar = 0.0;
      for (int s = 0; s < 2; ++s) {
        for (int n = 0; n < 2; ++n) {
          double ric = 0.0;  // R_{sn} = R^m_{s m n}
          for (int m = 0; m < 2; ++m) {
            double sum = dG(m, m, n, s) - dG(n, m, m, s);
            for (int a = 0; a < 2; ++a) {
              sum += G(m, m, a) * G(a, n, s) - G(m, n, a) * G(a, m, s);
            }
            ric += sum;
          }
          r_scalar += ginv(s, n) * ric;
        }
      }
      if (!std::isfinite(r_scalar)) continue;
      out.ricci[node] = r_scalar;
      out.mask[node] = 1;
    }
  }
  return out;
}

double grid_halving_deviation(const CurvatureField& fine, const CurvatureField& coarse) {
  double worst = 0.0;
  for (int iy = 0; iy < coarse.axes.ny; ++iy) {
    for (int ix = 0; ix < coarse.axes.nx; ++ix) {
      if (!coarse.mask[coarse.index(ix, iy)]) continue;
      const int fx = 2 * ix, fy = 2 * iy;
      if (fx >= fine.axes.nx || fy >= fine.axes.ny) continue;
      if (!fine.mask[fine.index(fx, fy)]) continue;
      const double rf = fine.ricci[fine.index(fx, fy)];
      const double rc = coarse.ricci[coarse.index(ix, iy)];
      if (std::abs(rf) < 1e-12) continue;
      worst = std::max(worst, std::abs(rf - rc) / std::abs(rf));
    }
  }
  return worst;
}

}  // namespace elmg
