#include "roughpaths/paths.hpp"

#include <cmath>
#include <stdexcept>

namespace rp {

PiecewiseLinearPath::PiecewiseLinearPath(std::vector<double> times, Eigen::MatrixXd points)
    : times_(std::move(times)), points_(std::move(points)) {
  if (times_.size() < 2) throw std::invalid_argument("PiecewiseLinearPath: need at least 2 knots");
  if (static_cast<Eigen::Index>(times_.size()) != points_.rows())
    throw std::invalid_argument("PiecewiseLinearPath: times/points size mismatch");
  for (std::size_t i = 1; i < times_.size(); ++i)
    if (!(times_[i] > times_[i - 1]))
      throw std::invalid_argument("PiecewiseLinearPath: times must be strictly increasing");
}

PiecewiseLinearPath PiecewiseLinearPath::trivial(int dim) {
  return PiecewiseLinearPath({0.0, 1.0}, Eigen::MatrixXd::Zero(2, dim));
}

PiecewiseLinearPath PiecewiseLinearPath::segment(const Eigen::VectorXd& v) {
  Eigen::MatrixXd pts(2, v.size());
  pts.row(0).setZero();
  pts.row(1) = v.transpose();
  return PiecewiseLinearPath({0.0, 1.0}, std::move(pts));
}

Eigen::VectorXd PiecewiseLinearPath::at(double t) const {
  if (t <= times_.front()) return points_.row(0);
  if (t >= times_.back()) return points_.row(points_.rows() - 1);
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - times_.begin());
  const double w = (t - times_[i - 1]) / (times_[i] - times_[i - 1]);
  return (1.0 - w) * points_.row(i - 1).transpose() + w * points_.row(i).transpose();
}

double PiecewiseLinearPath::one_variation() const {
  double s = 0.0;
  for (Eigen::Index i = 1; i < points_.rows(); ++i)
    s += (points_.row(i) - points_.row(i - 1)).norm();
  return s;
}

double PiecewiseLinearPath::q_variation(double q) const {
  if (q < 1.0) throw std::invalid_argument("q_variation: need q >= 1");
  if (q == 1.0) return one_variation();
  // Monotone dynamic programming over knot subsets: exact for grid data.
  const Eigen::Index n = points_.rows();
  std::vector<double> best(n, 0.0);
  for (Eigen::Index j = 1; j < n; ++j) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < j; ++i) {
      const double cand = best[i] + std::pow((points_.row(j) - points_.row(i)).norm(), q);
      m = std::max(m, cand);
    }
    best[j] = m;
  }
  return std::pow(best[n - 1], 1.0 / q);
}

PiecewiseLinearPath concat(const PiecewiseLinearPath& p, const PiecewiseLinearPath& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("concat: dimension mismatch");
  const double shift = p.t_end() - q.t_begin();
  const Eigen::RowVectorXd offset =
      p.points().row(p.points().rows() - 1) - q.points().row(0);
  std::vector<double> times = p.times();
  Eigen::MatrixXd pts(p.knot_count() + q.knot_count() - 1, p.dim());
  pts.topRows(p.points().rows()) = p.points();
  for (std::size_t i = 1; i < q.knot_count(); ++i) {
    times.push_back(q.times()[i] + shift);
    pts.row(p.points().rows() + i - 1) = q.points().row(i) + offset;
  }
  return PiecewiseLinearPath(std::move(times), std::move(pts));
}

PiecewiseLinearPath reverse(const PiecewiseLinearPath& p) {
  const std::size_t n = p.knot_count();
  std::vector<double> times(n);
  Eigen::MatrixXd pts(n, p.dim());
  for (std::size_t i = 0; i < n; ++i) {
    times[i] = p.t_begin() + (p.t_end() - p.times()[n - 1 - i]);
    pts.row(i) = p.points().row(n - 1 - i);
  }
  return PiecewiseLinearPath(std::move(times), std::move(pts));
}

PiecewiseLinearPath scale_path(const PiecewiseLinearPath& p, double lambda) {
  return PiecewiseLinearPath(p.times(), lambda * p.points());
}

PiecewiseLinearPath normalize_time(const PiecewiseLinearPath& p) {
  std::vector<double> times(p.knot_count());
  for (std::size_t i = 0; i < times.size(); ++i)
    times[i] = (p.times()[i] - p.t_begin()) / p.duration();
  return PiecewiseLinearPath(std::move(times), p.points());
}

PiecewiseLinearPath reparametrize_middle_third(const PiecewiseLinearPath& p) {
  const double T = p.duration();
  std::vector<double> times;
  times.reserve(p.knot_count() + 2);
  Eigen::MatrixXd pts(p.knot_count() + 2, p.dim());
  times.push_back(0.0);
  pts.row(0) = p.points().row(0);
  for (std::size_t i = 0; i < p.knot_count(); ++i) {
    times.push_back(T / 3.0 + (p.times()[i] - p.t_begin()) / 3.0);
    pts.row(i + 1) = p.points().row(i);
  }
  times.push_back(T);
  pts.row(p.knot_count() + 1) = p.points().row(p.knot_count() - 1);
  return PiecewiseLinearPath(std::move(times), std::move(pts));
}

TruncatedTensor signature(const PiecewiseLinearPath& path, int level) {
  TruncatedTensor sig = TruncatedTensor::unit(path.dim(), level);
  TruncatedTensor seg(path.dim(), level);
  for (Eigen::Index i = 1; i < path.points().rows(); ++i) {
    const Eigen::RowVectorXd delta = path.points().row(i) - path.points().row(i - 1);
    if (delta.norm() == 0.0) continue;
    for (int j = 0; j < path.dim(); ++j) seg.data()[1 + j] = delta[j];
    sig = tensor_mul(sig, tensor_exp(seg));
  }
  return sig;
}

LieCoordinates log_signature(const PiecewiseLinearPath& path, int level) {
  return lie_project(tensor_log(signature(path, level)));
}

namespace {

PiecewiseLinearPath widen_to(const PiecewiseLinearPath& p, int dim) {
  if (p.dim() == dim) return p;
  Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(p.knot_count(), dim);
  pts.leftCols(p.dim()) = p.points();
  return PiecewiseLinearPath(p.times(), std::move(pts));
}

}  // namespace

PiecewiseLinearPath generator_path(const Word& alpha, int level) {
  if (static_cast<int>(alpha.size()) > level)
    throw std::invalid_argument("generator_path: word longer than level");
  if (!is_lyndon(alpha))
    throw std::invalid_argument("generator_path: '" + word_to_string(alpha) +
                                "' is not Lyndon-decomposable");
  // The path lives in R^{max letter}; callers widen as needed.
  int dim = 0;
  for (int letter : alpha) dim = std::max(dim, letter);
  if (alpha.size() == 1) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    v[alpha[0] - 1] = 1.0;
    return PiecewiseLinearPath::segment(v);
  }
  auto [u, v] = standard_factorization(alpha);
  const PiecewiseLinearPath a = widen_to(generator_path(u, level), dim);
  const PiecewiseLinearPath b = widen_to(generator_path(v, level), dim);
  return normalize_time(concat(concat(concat(a, b), reverse(a)), reverse(b)));
}

PiecewiseLinearPath path_from_log_signature(const LieCoordinates& u) {
  const int d = u.dim;
  const int l = u.level;

  // Base: realize the level-1 part as a single segment.
  Eigen::VectorXd v1 = u.coords.head(d);
  PiecewiseLinearPath path = v1.norm() > 0.0
                                 ? PiecewiseLinearPath::segment(v1)
                                 : PiecewiseLinearPath::trivial(d);
  for (int k = 2; k <= l; ++k) {
    // Correction at level k: w = log(S_k(path)^{-1} (x) exp(pi_k u)) in L_k.
    const LieBasis& bk = lie_basis(d, k);
    const TruncatedTensor sig = signature(path, k);
    const TruncatedTensor target = tensor_exp(bk.embed(project_level(u, k)));
    const TruncatedTensor w = tensor_log(tensor_mul(tensor_inverse(sig), target));
    double rel = 0.0;
    LieCoordinates wc = bk.project(w, &rel);
    // w is supported on level k by construction; realize each Lyndon component.
    for (std::size_t i = 0; i < bk.dimension(); ++i) {
      if (bk.words()[i].size() != static_cast<std::size_t>(k)) continue;
      const double lam = wc.coords[i];
      if (lam == 0.0) continue;
      PiecewiseLinearPath g = widen_to(generator_path(bk.words()[i], k), d);
      g = scale_path(g, std::pow(std::abs(lam), 1.0 / k));
      if (lam < 0.0) g = reverse(g);
      path = concat(path, g);
    }
  }
  return normalize_time(path);
}

CcNormBounds cc_norm_bounds(const LieCoordinates& u) {
  CcNormBounds b;
  if (u.coords.norm() == 0.0) return b;
  b.lower = homogeneous_norm(tensor_exp(lie_embed(u)));
  b.upper = path_from_log_signature(u).one_variation();
  return b;
}

}  // namespace rp
