#pragma once

#include <cstddef>
#include <vector>

#include "roughpaths/words.hpp"

namespace rp {

// Element of the truncated tensor algebra T^(l)(R^d), stored as one dense
// coefficient array graded by word length. Level k occupies d^k slots in
// row-major word order; the scalar slot is level 0.
class TruncatedTensor {
 public:
  TruncatedTensor(int dim, int level);

  static TruncatedTensor unit(int dim, int level);                    // the tensor 1
  static TruncatedTensor basis(int dim, int level, const Word& w);    // e_(w)

  int dim() const { return dim_; }
  int level() const { return level_; }

  double scalar() const { return c_[0]; }
  double& scalar() { return c_[0]; }

  // Coefficient of the word w (|w| <= level).
  double coeff(const Word& w) const;
  double& coeff(const Word& w);

  std::size_t level_offset(int k) const { return offsets_[k]; }
  std::size_t level_size(int k) const { return offsets_[k + 1] - offsets_[k]; }
  std::size_t size() const { return c_.size(); }

  const std::vector<double>& data() const { return c_; }
  std::vector<double>& data() { return c_; }

  TruncatedTensor& operator+=(const TruncatedTensor& o);
  TruncatedTensor& operator-=(const TruncatedTensor& o);
  TruncatedTensor& operator*=(double s);

 private:
  int dim_;
  int level_;
  std::vector<std::size_t> offsets_;  // level k block is [offsets_[k], offsets_[k+1])
  std::vector<double> c_;
};

TruncatedTensor operator+(TruncatedTensor a, const TruncatedTensor& b);
TruncatedTensor operator-(TruncatedTensor a, const TruncatedTensor& b);
TruncatedTensor operator*(double s, TruncatedTensor a);

// Graded convolution truncated at the common level. Associative; unit is 1.
TruncatedTensor tensor_mul(const TruncatedTensor& a, const TruncatedTensor& b);

// exp(a) = sum_k a^{(x)k} / k! for a with zero scalar part.
TruncatedTensor tensor_exp(const TruncatedTensor& a);

// Truncated Mercator series on (g - 1); inverse of tensor_exp on scalar-1 input.
TruncatedTensor tensor_log(const TruncatedTensor& g);

// Group inverse of a scalar-1 element: geometric series in (g - 1).
TruncatedTensor tensor_inverse(const TruncatedTensor& g);

// Dilation: level-k block scaled by lambda^k. Requires lambda > 0.
TruncatedTensor dilate(const TruncatedTensor& a, double lambda);

// Hilbert-Schmidt (Euclidean) norm of the whole coefficient array.
double hs_norm(const TruncatedTensor& a);

// rho_HS(g1, g2) = ||g2 - g1||_HS with the scalar slot excluded.
double hs_distance(const TruncatedTensor& g1, const TruncatedTensor& g2);

// max_k ||a_k||_HS^{1/k} over levels k = 1..l (homogeneous norm proxy).
double homogeneous_norm(const TruncatedTensor& a);

}  // namespace rp
