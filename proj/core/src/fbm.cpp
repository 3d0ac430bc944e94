#include "roughpaths/fbm.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "roughpaths/mc.hpp"

namespace rp {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton iteration.
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n) : x(n), w(n) {
    for (int i = 0; i < n; ++i) {
      double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        const double dp = n * (t * p1 - p0) / (t * t - 1.0);
        const double step = p1 / dp;
        t -= step;
        if (std::abs(step) < 1e-15) break;
      }
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (t * p1 - p0) / (t * t - 1.0);
      x[i] = t;
      w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
  }
};

const GaussLegendre& gl12() {
  static GaussLegendre g(12);
  return g;
}
const GaussLegendre& gl8() {
  static GaussLegendre g(8);
  return g;
}

template <class F>
double quad(const F& f, double a, double b, const GaussLegendre& g) {
  if (b <= a) return 0.0;
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * f(mid + half * g.x[i]);
  return half * s;
}

constexpr double kHalfTol = 1e-9;

// Composed fractional-integral kernel k(t,s) of the operator K, without the
// scale normalization. H > 1/2: k = s^{-a} J / Gamma(a) with a = H - 1/2 and
// J = int_s^t u^a (u-s)^{a-1} du. H < 1/2: k = s^{-a} (t-s)^{H-1/2}
// int_0^1 w^{a-1} (1-w)^{2H-1} (s+(t-s)w)^a dw / (Gamma(2H) Gamma(a)) with
// a = 1/2 - H. Power substitutions remove the endpoint singularities.
class FractionalKernel {
 public:
  explicit FractionalKernel(double hurst) : h_(hurst), a_(std::abs(hurst - 0.5)) {
    if (std::abs(hurst - 0.5) < kHalfTol) {
      flat_ = true;
    } else if (hurst > 0.5) {
      norm_ = 1.0 / std::tgamma(a_);
    } else {
      norm_ = 1.0 / (std::tgamma(2.0 * h_) * std::tgamma(a_));
    }
  }

  bool flat() const { return flat_; }

  double value(double t, double s) const {
    if (flat_) return 1.0;
    if (s <= 0.0 || s >= t) return 0.0;
    if (h_ > 0.5) {
      const double inva = 1.0 / a_;
      const auto f = [&](double xi) { return std::pow(s + (t - s) * std::pow(xi, inva), a_); };
      const double J = std::pow(t - s, a_) * inva * quad(f, 0.0, 1.0, gl12());
      return std::pow(s, -a_) * J * norm_;
    }
    const double inva = 1.0 / a_;
    const double inv2h = 1.0 / (2.0 * h_);
    const auto g = [&](double w) { return std::pow(s + (t - s) * w, a_); };
    const auto fl = [&](double xi) {
      const double w = std::pow(xi, inva);
      return g(w) * std::pow(1.0 - w, 2.0 * h_ - 1.0);
    };
    const auto fr = [&](double z) {
      const double w = 1.0 - std::pow(z, inv2h);
      return g(w) * std::pow(w, a_ - 1.0);
    };
    const double left = inva * quad(fl, 0.0, std::pow(0.5, a_), gl12());
    const double right = inv2h * quad(fr, 0.0, std::pow(0.5, 2.0 * h_), gl12());
    return std::pow(s, -a_) * std::pow(t - s, h_ - 0.5) * norm_ * (left + right);
  }

  // int_{s0}^{s1} k(t, s) ds with substitutions at s0 = 0 and s1 = t.
  double cell_integral(double t, double s0, double s1) const {
    s1 = std::min(s1, t);
    if (s1 <= s0) return 0.0;
    if (flat_) return s1 - s0;
    if (s0 <= 0.0) {
      const double p = 1.0 - a_;
      const auto f = [&](double xi) {
        const double s = std::pow(xi, 1.0 / p);
        return value(t, s) * (1.0 / p) * std::pow(xi, 1.0 / p - 1.0);
      };
      return quad(f, 0.0, std::pow(s1, p), gl12());
    }
    if (h_ < 0.5 && s1 >= t) {
      const double q = h_ + 0.5;
      const auto f = [&](double z) {
        const double s = t - std::pow(z, 1.0 / q);
        return value(t, s) * (1.0 / q) * std::pow(z, 1.0 / q - 1.0);
      };
      return quad(f, 0.0, std::pow(t - s0, q), gl12());
    }
    return quad([&](double s) { return value(t, s); }, s0, s1, gl8());
  }

 private:
  double h_;
  double a_;
  double norm_ = 1.0;
  bool flat_ = false;
};

}  // namespace

FbmSpec::FbmSpec(double H, int d, double T, int n) : hurst(H), dim(d), horizon(T), steps(n) {
  if (!(H > 0.25 && H < 1.0))
    throw std::invalid_argument("hurst must lie in (0.25,1)");
  if (d < 1) throw std::invalid_argument("FbmSpec: dim must be positive");
  if (T <= 0.0) throw std::invalid_argument("FbmSpec: horizon must be positive");
  if (n < 2) throw std::invalid_argument("FbmSpec: need steps >= 2");
}

double fbm_covariance(double s, double t, double hurst) {
  if (s < 0.0 || t < 0.0) throw std::invalid_argument("fbm_covariance: need s,t >= 0");
  return 0.5 * (std::pow(s, 2.0 * hurst) + std::pow(t, 2.0 * hurst) -
                std::pow(std::abs(t - s), 2.0 * hurst));
}

Eigen::MatrixXd fbm_covariance_matrix(const FbmSpec& spec) {
  const int n = spec.steps;
  Eigen::MatrixXd cov(n, n);
  for (int i = 0; i < n; ++i) {
    const double ti = spec.horizon * (i + 1) / n;
    for (int j = 0; j <= i; ++j) {
      const double tj = spec.horizon * (j + 1) / n;
      cov(i, j) = cov(j, i) = fbm_covariance(ti, tj, spec.hurst);
    }
  }
  return cov;
}

FbmSampler::FbmSampler(const FbmSpec& spec) : spec_(spec) {
  Eigen::MatrixXd cov = fbm_covariance_matrix(spec);
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    const double jitter = 1e-12 * cov.trace() / cov.rows();
    cov.diagonal().array() += jitter;
    llt.compute(cov);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error(
          "FbmSampler: covariance not positive definite at this grid (grid too fine or extreme "
          "Hurst)");
  }
  chol_ = llt.matrixL();
}

GridPath FbmSampler::sample(std::uint64_t seed, std::uint64_t index) const {
  const int n = spec_.steps;
  const int d = spec_.dim;
  auto eng = stream_engine(seed, index);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd z(n, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = normal(eng);
  Eigen::MatrixXd vals = Eigen::MatrixXd::Zero(n + 1, d);
  vals.bottomRows(n) = chol_.triangularView<Eigen::Lower>() * z;
  return GridPath(spec_.horizon, std::move(vals));
}

std::vector<GridPath> FbmSampler::sample_many(std::uint64_t seed, int count) const {
  std::vector<GridPath> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) out.push_back(sample(seed, k));
  return out;
}

std::vector<GridPath> sample_fbm(const FbmSpec& spec, std::uint64_t seed, int count) {
  if (count < 1) throw std::invalid_argument("sample_fbm: count must be >= 1");
  return FbmSampler(spec).sample_many(seed, count);
}

CameronMartinOperator::CameronMartinOperator(double hurst, int steps, double horizon)
    : hurst_(hurst), n_(steps), horizon_(horizon) {
  if (!(hurst > 0.25 && hurst < 1.0)) throw std::invalid_argument("hurst must lie in (0.25,1)");
  if (steps < 2) throw std::invalid_argument("CameronMartinOperator: need steps >= 2");
  const FractionalKernel kernel(hurst);
  const double dt = horizon_ / n_;

  k_.setZero(n_, n_);
  for (int i = 0; i < n_; ++i) {
    const double t = dt * (i + 1);
    for (int j = 0; j <= i; ++j) k_(i, j) = kernel.cell_integral(t, dt * j, dt * (j + 1));
  }

  // Refined subcell partition for the Gram identity: within the first cell a
  // two-sided geometric grading, flat split elsewhere.
  const int half = 12, msub = 8;
  std::vector<double> edges{0.0};
  for (int i = 0; i < half; ++i)
    edges.push_back(dt * 0.5 * std::pow(2.0, -(half - 1 - i)));
  for (int i = half - 2; i >= 0; --i)
    edges.push_back(dt - dt * 0.5 * std::pow(2.0, -(half - 1 - i)));
  edges.push_back(dt);
  for (int j = 1; j < n_; ++j)
    for (int m = 1; m <= msub; ++m) edges.push_back(dt * j + dt * m / msub);
  const int M = static_cast<int>(edges.size()) - 1;
  fine_widths_.resize(M);
  for (int j = 0; j < M; ++j) fine_widths_[j] = edges[j + 1] - edges[j];
  k_fine_.setZero(n_, M);
  for (int i = 0; i < n_; ++i) {
    const double t = dt * (i + 1);
    for (int j = 0; j < M && edges[j] < t; ++j)
      k_fine_(i, j) = kernel.cell_integral(t, edges[j], std::min(edges[j + 1], t));
  }

  // Calibrate C_H by fitting the Gram identity against the covariance matrix.
  const Eigen::MatrixXd g0 =
      k_fine_ * fine_widths_.cwiseInverse().asDiagonal() * k_fine_.transpose();
  const Eigen::MatrixXd cov = fbm_covariance_matrix(FbmSpec(hurst, 1, horizon_, n_));
  const double c2 = (g0.array() * cov.array()).sum() / (g0.array() * g0.array()).sum();
  c_h_ = std::sqrt(c2);
  k_ *= c_h_;
  k_fine_ *= c_h_;
}

Eigen::VectorXd CameronMartinOperator::apply(const Eigen::VectorXd& phi) const {
  if (phi.size() != n_) throw std::invalid_argument("CameronMartinOperator::apply: size mismatch");
  return k_.triangularView<Eigen::Lower>() * phi;
}

Eigen::VectorXd CameronMartinOperator::solve(const Eigen::VectorXd& h) const {
  if (h.size() != n_) throw std::invalid_argument("CameronMartinOperator::solve: size mismatch");
  return k_.triangularView<Eigen::Lower>().solve(h);
}

Eigen::MatrixXd CameronMartinOperator::gram() const {
  return k_fine_ * fine_widths_.cwiseInverse().asDiagonal() * k_fine_.transpose();
}

GridPath apply_K(const GridPath& phi, double hurst) {
  const CameronMartinOperator op(hurst, phi.steps(), phi.horizon);
  Eigen::MatrixXd vals = Eigen::MatrixXd::Zero(phi.values.rows(), phi.values.cols());
  for (int j = 0; j < phi.dim(); ++j)
    vals.col(j).tail(phi.steps()) = op.apply(phi.values.col(j).tail(phi.steps()));
  return GridPath(phi.horizon, std::move(vals));
}

namespace {

struct FactorKey {
  double hurst;
  int steps;
  bool operator<(const FactorKey& o) const {
    return hurst < o.hurst || (hurst == o.hurst && steps < o.steps);
  }
};

std::mutex factor_mutex;
std::map<FactorKey, std::shared_ptr<Eigen::MatrixXd>> factor_cache;

// Lower Cholesky factor of the unit-horizon covariance matrix.
std::shared_ptr<Eigen::MatrixXd> unit_factor(double hurst, int steps) {
  std::lock_guard<std::mutex> lock(factor_mutex);
  const FactorKey key{hurst, steps};
  auto it = factor_cache.find(key);
  if (it != factor_cache.end()) return it->second;
  Eigen::MatrixXd cov = fbm_covariance_matrix(FbmSpec(hurst, 1, 1.0, steps));
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    cov.diagonal().array() += 1e-12 * cov.trace() / cov.rows();
    llt.compute(cov);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("cm_norm: covariance factorization failed");
  }
  auto factor = std::make_shared<Eigen::MatrixXd>(llt.matrixL());
  factor_cache.emplace(key, factor);
  return factor;
}

double cm_norm_impl(const GridPath& h, double hurst) {
  if (h.values.row(0).norm() != 0.0)
    throw std::invalid_argument("cm_norm: path must start at the origin");
  auto factor = unit_factor(hurst, h.steps());
  double sq = 0.0;
  for (int j = 0; j < h.dim(); ++j) {
    Eigen::VectorXd y =
        factor->triangularView<Eigen::Lower>().solve(h.values.col(j).tail(h.steps()));
    sq += y.squaredNorm();
  }
  // Norm over [0,T] via the exact grid scaling ||h||_{[0,T]} = T^{-H} ||h(T.)||_{[0,1]}.
  return std::sqrt(sq) * std::pow(h.horizon, -hurst);
}

}  // namespace

double cm_norm(const GridPath& h, double hurst) { return cm_norm_impl(h, hurst); }

CmNormDiagnostic cm_norm_diagnostic(const GridPath& h, double hurst) {
  CmNormDiagnostic d;
  d.value = cm_norm_impl(h, hurst);
  const int n = h.steps();
  if (n >= 4 && n % 2 == 0) {
    Eigen::MatrixXd coarse(n / 2 + 1, h.dim());
    for (int i = 0; i <= n / 2; ++i) coarse.row(i) = h.values.row(2 * i);
    d.half_grid_value = cm_norm_impl(GridPath(h.horizon, std::move(coarse)), hurst);
  } else {
    d.half_grid_value = d.value;
  }
  d.relative_drift = std::abs(d.value - d.half_grid_value) / std::max(d.value, 1e-300);
  return d;
}

double qvar_norm(const GridPath& p, double q) {
  if (q < 1.0) throw std::invalid_argument("qvar_norm: need q >= 1");
  const int n = p.steps();
  if (q == 1.0) {
    double s = 0.0;
    for (int i = 1; i <= n; ++i) s += (p.values.row(i) - p.values.row(i - 1)).norm();
    return s;
  }
  std::vector<double> best(n + 1, 0.0);
  for (int j = 1; j <= n; ++j) {
    double m = 0.0;
    for (int i = 0; i < j; ++i)
      m = std::max(m, best[i] + std::pow((p.values.row(j) - p.values.row(i)).norm(), q));
    best[j] = m;
  }
  return std::pow(best[n], 1.0 / q);
}

void clear_cm_factor_cache() {
  std::lock_guard<std::mutex> lock(factor_mutex);
  factor_cache.clear();
}

}  // namespace rp
