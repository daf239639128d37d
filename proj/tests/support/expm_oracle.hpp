#pragma once

// Independent dense matrix exponential for small systems: plain
// scaling-and-squaring with a Taylor series.  Deliberately avoids the
// spectral route used by the library so it can act as an oracle for it.

#include <Eigen/Dense>
#include <complex>

namespace elmg_test {

inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
  Eigen::MatrixXcd x = a;
  int squarings = 0;
  double norm = x.cwiseAbs().maxCoeff() * x.rows();
  while (norm > 0.25 && squarings < 80) {
    x *= 0.5;
    norm *= 0.5;
    ++squarings;
  }
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd term = result;
  for (int k = 1; k <= 30; ++k) {
    term = term * x / static_cast<double>(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

}  // namespace elmg_test
