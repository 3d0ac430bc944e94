#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <vector>

#include "roughpaths/grid_path.hpp"

namespace rp {

// Fractional Brownian motion on [0, T] sampled at n uniform steps.
struct FbmSpec {
  double hurst = 0.5;
  int dim = 1;
  double horizon = 1.0;
  int steps = 64;

  FbmSpec(double H, int d, double T, int n);
};

// R(s,t) = (s^{2H} + t^{2H} - |t-s|^{2H}) / 2
double fbm_covariance(double s, double t, double hurst);

// Covariance matrix of (B_{t_1},...,B_{t_n}) on the interior grid nodes.
Eigen::MatrixXd fbm_covariance_matrix(const FbmSpec& spec);

// Exact sampler by Cholesky factorization of the grid covariance. The factor
// is computed once per spec and shared; sampling is deterministic given
// (seed, sample index) and independent across samples, so shards can be drawn
// in any order.
class FbmSampler {
 public:
  explicit FbmSampler(const FbmSpec& spec);

  const FbmSpec& spec() const { return spec_; }

  GridPath sample(std::uint64_t seed, std::uint64_t index) const;
  std::vector<GridPath> sample_many(std::uint64_t seed, int count) const;

 private:
  FbmSpec spec_;
  Eigen::MatrixXd chol_;  // lower factor of the covariance matrix
};

std::vector<GridPath> sample_fbm(const FbmSpec& spec, std::uint64_t seed, int count);

// Grid realization of the Cameron-Martin operator K from the fractional
// integral representation: scalar cell values phi |-> path node values K phi.
// Entries integrate the composed kernel exactly over each cell against
// piecewise constant phi; the normalization C_H is calibrated once per
// operator by fitting the Gram identity K K^* = covariance.
class CameronMartinOperator {
 public:
  CameronMartinOperator(double hurst, int steps, double horizon = 1.0);

  double hurst() const { return hurst_; }
  int steps() const { return n_; }
  double horizon() const { return horizon_; }
  double normalization() const { return c_h_; }

  // h = K phi: phi holds n cell values, the result holds n node values
  // (h(0) = 0 is implicit).
  Eigen::VectorXd apply(const Eigen::VectorXd& phi) const;

  // phi = K^{-1} h by triangular solve; h holds n node values.
  Eigen::VectorXd solve(const Eigen::VectorXd& h) const;

  // Gram matrix of the operator with the L^2 cell weights, evaluated on a
  // refined subcell partition; approximates the covariance matrix.
  Eigen::MatrixXd gram() const;

  const Eigen::MatrixXd& matrix() const { return k_; }

 private:
  double hurst_;
  int n_;
  double horizon_;
  double c_h_ = 1.0;
  Eigen::MatrixXd k_;       // n x n lower triangular, coarse cells
  Eigen::MatrixXd k_fine_;  // n x M on the refined subcell partition
  Eigen::VectorXd fine_widths_;
};

GridPath apply_K(const GridPath& phi, double hurst);

// Cameron-Martin norm of a scalar or vector grid path starting at 0, computed
// through the exact causal factorization of the grid covariance (the grid
// RKHS norm). Coordinates are independent, so norms add in squares.
double cm_norm(const GridPath& h, double hurst);

// Re-evaluates the norm on the half grid; a large drift flags a path that is
// not resolvable at this resolution.
struct CmNormDiagnostic {
  double value = 0.0;
  double half_grid_value = 0.0;
  double relative_drift = 0.0;
};
CmNormDiagnostic cm_norm_diagnostic(const GridPath& h, double hurst);

// Grid q-variation (exact for piecewise linear data).
double qvar_norm(const GridPath& p, double q);

// Shared per-(H, n, T) inverse-factor cache used by cm_norm.
void clear_cm_factor_cache();

}  // namespace rp
