#pragma once

#include <vector>

#include "elmg/errors.hpp"

namespace elmg {

/// C^1 bicubic (Catmull-Rom tensor product) interpolation of scalar data on
/// a uniform grid, with analytic first partials.  Out-of-range stencil
/// indices are clamped to the edge.
class Bicubic {
 public:
  Bicubic() = default;
  Bicubic(double x0, double hx, int nx, double y0, double hy, int ny,
          std::vector<double> values);

  double value(double x, double y) const;
  double ddx(double x, double y) const;
  double ddy(double x, double y) const;

  bool contains(double x, double y) const;

 private:
  struct Cell {
    int ix, iy;
    double u, w;
  };
  Cell locate(double x, double y) const;
  double node(int ix, int iy) const;

  double x0_ = 0, hx_ = 1, y0_ = 0, hy_ = 1;
  int nx_ = 0, ny_ = 0;
  std::vector<double> v_;
};

}  // namespace elmg
