#pragma once

#include <Eigen/Dense>
#include <vector>

#include "roughpaths/tensor.hpp"
#include "roughpaths/words.hpp"

namespace rp {

// Coordinates of an element of the free nilpotent Lie algebra g^(l) in the
// Lyndon basis: one coordinate per Lyndon word of length 1..l, graded by
// length then lexicographic. The basis bracket of a Lyndon word w is the
// Chen-Fox-Lyndon bracketing sigma(w) = [sigma(u), sigma(v)] with w = uv the
// standard factorization. This basis is not HS-orthonormal; HS norms of Lie
// elements are taken after lie_embed.
struct LieCoordinates {
  int dim = 0;
  int level = 0;
  Eigen::VectorXd coords;

  LieCoordinates() = default;
  LieCoordinates(int d, int l);

  std::size_t size() const { return static_cast<std::size_t>(coords.size()); }
};

LieCoordinates operator+(const LieCoordinates& a, const LieCoordinates& b);
LieCoordinates operator-(const LieCoordinates& a, const LieCoordinates& b);
LieCoordinates operator*(double s, LieCoordinates a);

// Precomputed Lyndon-basis tables for one (dim, level) pair: the words, their
// bracket expansions in the tensor algebra, and per-level least squares
// factorizations for projecting tensors back onto the basis.
class LieBasis {
 public:
  LieBasis(int dim, int level);

  int dim() const { return dim_; }
  int level() const { return level_; }
  const std::vector<Word>& words() const { return words_; }
  std::size_t dimension() const { return words_.size(); }

  // sigma(words()[i]) as a tensor (supported on level |words()[i]|).
  const TruncatedTensor& bracket_tensor(std::size_t i) const { return brackets_[i]; }

  std::size_t index_of(const Word& w) const;

  TruncatedTensor embed(const LieCoordinates& c) const;

  // Least squares coordinates of `a`, which must carry zero scalar slot.
  // relative_residual receives ||a - embed(coords)|| / max(||a||, 1e-300).
  LieCoordinates project(const TruncatedTensor& a, double* relative_residual = nullptr) const;

 private:
  int dim_;
  int level_;
  std::vector<Word> words_;
  std::vector<TruncatedTensor> brackets_;
  std::vector<std::size_t> grade_begin_;  // index of first word of each length
  // per level k: d^k x witt(d,k) embedding matrix and its QR factorization
  std::vector<Eigen::MatrixXd> level_mat_;
  std::vector<Eigen::ColPivHouseholderQR<Eigen::MatrixXd>> level_qr_;
};

// Shared, lazily built basis table (thread safe).
const LieBasis& lie_basis(int dim, int level);

TruncatedTensor lie_embed(const LieCoordinates& c);

// Projects a tensor that lies in g^(l) onto Lyndon coordinates. Throws if the
// residual after re-embedding exceeds `tol` relative to the input norm.
LieCoordinates lie_project(const TruncatedTensor& a, double tol = 1e-10);

// Baker-Campbell-Hausdorff product: lie_project(log(exp(u) (x) exp(v))).
LieCoordinates bch(const LieCoordinates& u, const LieCoordinates& v);

LieCoordinates dilate(const LieCoordinates& u, double lambda);

// HS norm of the embedded element (the Lyndon basis is not orthonormal).
double hs_norm(const LieCoordinates& u);

// Canonical projection g^(l) -> g^(m), m <= l.
LieCoordinates project_level(const LieCoordinates& u, int m);

}  // namespace rp
