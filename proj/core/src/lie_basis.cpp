#include "roughpaths/lie_basis.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace rp {

namespace {

// [a, b] = a(x)b - b(x)a
TruncatedTensor bracket(const TruncatedTensor& a, const TruncatedTensor& b) {
  return tensor_mul(a, b) - tensor_mul(b, a);
}

}  // namespace

LieCoordinates::LieCoordinates(int d, int l) : dim(d), level(l) {
  coords = Eigen::VectorXd::Zero(lie_dimension(d, l));
}

LieCoordinates operator+(const LieCoordinates& a, const LieCoordinates& b) {
  if (a.dim != b.dim || a.level != b.level)
    throw std::invalid_argument("LieCoordinates: dimension/level mismatch");
  LieCoordinates r = a;
  r.coords += b.coords;
  return r;
}

LieCoordinates operator-(const LieCoordinates& a, const LieCoordinates& b) {
  if (a.dim != b.dim || a.level != b.level)
    throw std::invalid_argument("LieCoordinates: dimension/level mismatch");
  LieCoordinates r = a;
  r.coords -= b.coords;
  return r;
}

LieCoordinates operator*(double s, LieCoordinates a) {
  a.coords *= s;
  return a;
}

LieBasis::LieBasis(int dim, int level) : dim_(dim), level_(level) {
  words_ = lyndon_words(dim, level);
  brackets_.reserve(words_.size());
  std::map<Word, std::size_t> pos;
  for (std::size_t i = 0; i < words_.size(); ++i) pos[words_[i]] = i;

  for (const Word& w : words_) {
    if (w.size() == 1) {
      brackets_.push_back(TruncatedTensor::basis(dim, level, w));
    } else {
      auto [u, v] = standard_factorization(w);
      brackets_.push_back(bracket(brackets_[pos.at(u)], brackets_[pos.at(v)]));
    }
  }

  grade_begin_.assign(level + 2, words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const int k = static_cast<int>(words_[i].size());
    if (grade_begin_[k] == words_.size()) grade_begin_[k] = i;
  }
  for (int k = level; k >= 1; --k)
    if (grade_begin_[k] == words_.size()) grade_begin_[k] = grade_begin_[k + 1];

  level_mat_.resize(level + 1);
  level_qr_.resize(level + 1);
  TruncatedTensor probe(dim, level);
  for (int k = 1; k <= level; ++k) {
    const std::size_t rows = probe.level_size(k);
    const std::size_t cols = witt_dimension(dim, k);
    Eigen::MatrixXd M(rows, cols);
    std::size_t c = 0;
    for (std::size_t i = grade_begin_[k]; i < words_.size() && words_[i].size() == static_cast<std::size_t>(k); ++i, ++c) {
      const auto& t = brackets_[i];
      const std::size_t off = t.level_offset(k);
      for (std::size_t r = 0; r < rows; ++r) M(r, c) = t.data()[off + r];
    }
    level_mat_[k] = M;
    level_qr_[k] = M.colPivHouseholderQr();
  }
}

std::size_t LieBasis::index_of(const Word& w) const {
  const int k = static_cast<int>(w.size());
  if (k < 1 || k > level_) throw std::invalid_argument("LieBasis::index_of: bad word length");
  for (std::size_t i = grade_begin_[k]; i < words_.size() && words_[i].size() == w.size(); ++i)
    if (words_[i] == w) return i;
  throw std::invalid_argument("LieBasis::index_of: '" + word_to_string(w) + "' is not Lyndon");
}

TruncatedTensor LieBasis::embed(const LieCoordinates& c) const {
  if (c.dim != dim_ || c.level != level_)
    throw std::invalid_argument("LieBasis::embed: dimension/level mismatch");
  TruncatedTensor out(dim_, level_);
  std::size_t i = 0;
  for (int k = 1; k <= level_; ++k) {
    const std::size_t cols = level_mat_[k].cols();
    const std::size_t off = out.level_offset(k);
    Eigen::Map<Eigen::VectorXd> block(out.data().data() + off, level_mat_[k].rows());
    block = level_mat_[k] * c.coords.segment(i, cols);
    i += cols;
  }
  return out;
}

LieCoordinates LieBasis::project(const TruncatedTensor& a, double* relative_residual) const {
  if (a.dim() != dim_ || a.level() != level_)
    throw std::invalid_argument("LieBasis::project: dimension/level mismatch");
  LieCoordinates out(dim_, level_);
  double res2 = 0.0;
  double in2 = a.scalar() * a.scalar();
  res2 += a.scalar() * a.scalar();  // scalar slot must be zero for Lie elements
  std::size_t i = 0;
  for (int k = 1; k <= level_; ++k) {
    const std::size_t off = a.level_offset(k);
    Eigen::Map<const Eigen::VectorXd> block(a.data().data() + off, level_mat_[k].rows());
    Eigen::VectorXd x = level_qr_[k].solve(block);
    out.coords.segment(i, x.size()) = x;
    res2 += (level_mat_[k] * x - block).squaredNorm();
    in2 += block.squaredNorm();
    i += x.size();
  }
  if (relative_residual)
    *relative_residual = std::sqrt(res2) / std::max(std::sqrt(in2), 1e-300);
  return out;
}

const LieBasis& lie_basis(int dim, int level) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<LieBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(dim, level);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<LieBasis>(dim, level)).first;
  return *it->second;
}

TruncatedTensor lie_embed(const LieCoordinates& c) {
  return lie_basis(c.dim, c.level).embed(c);
}

LieCoordinates lie_project(const TruncatedTensor& a, double tol) {
  double rel = 0.0;
  LieCoordinates c = lie_basis(a.dim(), a.level()).project(a, &rel);
  if (rel > tol)
    throw std::invalid_argument("lie_project: input is not a Lie element (relative residual " +
                                std::to_string(rel) + ")");
  return c;
}

LieCoordinates bch(const LieCoordinates& u, const LieCoordinates& v) {
  if (u.dim != v.dim || u.level != v.level)
    throw std::invalid_argument("bch: dimension/level mismatch");
  const TruncatedTensor g = tensor_mul(tensor_exp(lie_embed(u)), tensor_exp(lie_embed(v)));
  return lie_project(tensor_log(g));
}

LieCoordinates dilate(const LieCoordinates& u, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
  const LieBasis& basis = lie_basis(u.dim, u.level);
  LieCoordinates out = u;
  double lk = 1.0;
  int k = 0;
  for (std::size_t i = 0; i < basis.dimension(); ++i) {
    const int len = static_cast<int>(basis.words()[i].size());
    while (k < len) {
      lk *= lambda;
      ++k;
    }
    out.coords[i] *= lk;
  }
  return out;
}

double hs_norm(const LieCoordinates& u) { return hs_norm(lie_embed(u)); }

LieCoordinates project_level(const LieCoordinates& u, int m) {
  if (m < 1 || m > u.level) throw std::invalid_argument("project_level: bad target level");
  const LieBasis& src = lie_basis(u.dim, u.level);
  LieCoordinates out(u.dim, m);
  std::size_t j = 0;
  for (std::size_t i = 0; i < src.dimension(); ++i) {
    if (static_cast<int>(src.words()[i].size()) <= m) out.coords[j++] = u.coords[i];
  }
  return out;
}

}  // namespace rp
