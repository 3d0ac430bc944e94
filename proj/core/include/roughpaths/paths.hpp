#pragma once

#include <Eigen/Dense>

#include "roughpaths/lie_basis.hpp"
#include "roughpaths/tensor.hpp"

namespace rp {

// Piecewise linear path in R^d: knots (time, point) with strictly increasing
// times and at least two knots.
class PiecewiseLinearPath {
 public:
  PiecewiseLinearPath(std::vector<double> times, Eigen::MatrixXd points);

  // Constant path at the origin over [0, 1].
  static PiecewiseLinearPath trivial(int dim);
  // Straight segment from 0 to v over [0, 1].
  static PiecewiseLinearPath segment(const Eigen::VectorXd& v);

  int dim() const { return static_cast<int>(points_.cols()); }
  std::size_t knot_count() const { return times_.size(); }
  const std::vector<double>& times() const { return times_; }
  const Eigen::MatrixXd& points() const { return points_; }

  double t_begin() const { return times_.front(); }
  double t_end() const { return times_.back(); }
  double duration() const { return t_end() - t_begin(); }

  Eigen::VectorXd at(double t) const;  // linear interpolation, clamped ends
  Eigen::VectorXd increment() const { return points_.row(points_.rows() - 1) - points_.row(0); }

  double one_variation() const;  // sum of segment lengths
  double q_variation(double q) const;

 private:
  std::vector<double> times_;
  Eigen::MatrixXd points_;  // one row per knot
};

// Concatenation; the second path's time axis is shifted to start at p's end,
// and its points are translated so the trace continues from p's endpoint.
PiecewiseLinearPath concat(const PiecewiseLinearPath& p, const PiecewiseLinearPath& q);

// Time reversal on the same time interval.
PiecewiseLinearPath reverse(const PiecewiseLinearPath& p);

// Spatial scaling: values multiplied by lambda (signature dilates by lambda).
PiecewiseLinearPath scale_path(const PiecewiseLinearPath& p, double lambda);

// Affine reparametrization onto [0, 1].
PiecewiseLinearPath normalize_time(const PiecewiseLinearPath& p);

// Maps the motion affinely into the middle third of the (shifted) interval
// and pads with constant ends; the signature is unchanged.
PiecewiseLinearPath reparametrize_middle_third(const PiecewiseLinearPath& p);

// Truncated signature of order l: tensor product of exp(segment increments).
TruncatedTensor signature(const PiecewiseLinearPath& path, int level);

// lie_project(tensor_log(signature)).
LieCoordinates log_signature(const PiecewiseLinearPath& path, int level);

// Path over [0,1] whose log-signature at level |alpha| is exactly the Lyndon
// basis bracket sigma(alpha): a segment for letters, otherwise the commutator
// loop path(u) . path(v) . path(u)^{-1} . path(v)^{-1} for the standard
// factorization alpha = uv (top-level junk is central and cancels).
PiecewiseLinearPath generator_path(const Word& alpha, int level);

// Constructive inverse of the log-signature: returns a path over [0,1] with
// log_signature(result, u.level) = u, built level by level. The top-level
// correction w = log(S_l(base)^{-1} (x) exp(u)) lies in L_l and is realized by
// dilated generator paths (reversed for negative weights).
PiecewiseLinearPath path_from_log_signature(const LieCoordinates& u);

struct CcNormBounds {
  double lower = 0.0;  // homogeneous-norm proxy max_k ||(exp u)_k||^{1/k}
  double upper = 0.0;  // 1-variation of the constructed realization
};

// Two-sided surrogate for the Carnot-Caratheodory norm of exp(u).
CcNormBounds cc_norm_bounds(const LieCoordinates& u);

}  // namespace rp
