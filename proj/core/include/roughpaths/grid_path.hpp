#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace rp {

// R^d-valued path sampled on the uniform grid 0 = t_0 < ... < t_n = T.
struct GridPath {
  double horizon = 1.0;
  Eigen::MatrixXd values;  // (n+1) x d, row i = value at t_i

  GridPath() = default;
  GridPath(double T, Eigen::MatrixXd vals) : horizon(T), values(std::move(vals)) {
    if (horizon <= 0.0) throw std::invalid_argument("GridPath: horizon must be positive");
    if (values.rows() < 2) throw std::invalid_argument("GridPath: need at least 2 nodes");
  }

  int steps() const { return static_cast<int>(values.rows()) - 1; }
  int dim() const { return static_cast<int>(values.cols()); }
  double dt() const { return horizon / steps(); }
  double time(int i) const { return horizon * i / steps(); }
};

}  // namespace rp
