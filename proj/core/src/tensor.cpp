#include "roughpaths/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace rp {

namespace {

void check_match(const TruncatedTensor& a, const TruncatedTensor& b, const char* who) {
  if (a.dim() != b.dim() || a.level() != b.level())
    throw std::invalid_argument(std::string(who) + ": dimension/level mismatch");
}

constexpr double kScalarSlack = 1e-12;

}  // namespace

TruncatedTensor::TruncatedTensor(int dim, int level) : dim_(dim), level_(level) {
  if (dim < 1 || level < 1) throw std::invalid_argument("TruncatedTensor: need dim >= 1, level >= 1");
  offsets_.resize(level + 2);
  offsets_[0] = 0;
  std::size_t block = 1;
  for (int k = 0; k <= level; ++k) {
    offsets_[k + 1] = offsets_[k] + block;
    block *= dim;
  }
  c_.assign(offsets_[level + 1], 0.0);
}

TruncatedTensor TruncatedTensor::unit(int dim, int level) {
  TruncatedTensor t(dim, level);
  t.c_[0] = 1.0;
  return t;
}

TruncatedTensor TruncatedTensor::basis(int dim, int level, const Word& w) {
  TruncatedTensor t(dim, level);
  t.coeff(w) = 1.0;
  return t;
}

double TruncatedTensor::coeff(const Word& w) const {
  const int k = static_cast<int>(w.size());
  if (k > level_) throw std::invalid_argument("TruncatedTensor::coeff: word longer than level");
  return c_[offsets_[k] + word_index(dim_, w)];
}

double& TruncatedTensor::coeff(const Word& w) {
  const int k = static_cast<int>(w.size());
  if (k > level_) throw std::invalid_argument("TruncatedTensor::coeff: word longer than level");
  return c_[offsets_[k] + word_index(dim_, w)];
}

TruncatedTensor& TruncatedTensor::operator+=(const TruncatedTensor& o) {
  check_match(*this, o, "operator+=");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

TruncatedTensor& TruncatedTensor::operator-=(const TruncatedTensor& o) {
  check_match(*this, o, "operator-=");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

TruncatedTensor& TruncatedTensor::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

TruncatedTensor operator+(TruncatedTensor a, const TruncatedTensor& b) { return a += b; }
TruncatedTensor operator-(TruncatedTensor a, const TruncatedTensor& b) { return a -= b; }
TruncatedTensor operator*(double s, TruncatedTensor a) { return a *= s; }

TruncatedTensor tensor_mul(const TruncatedTensor& a, const TruncatedTensor& b) {
  check_match(a, b, "tensor_mul");
  const int d = a.dim();
  const int l = a.level();
  TruncatedTensor out(d, l);
  const auto& ac = a.data();
  const auto& bc = b.data();
  auto& oc = out.data();
  for (int k = 0; k <= l; ++k) {
    // level k of the product: sum over i + j = k
    for (int i = 0, j = k; i <= k; ++i, --j) {
      const std::size_t ai = a.level_offset(i);
      const std::size_t bj = b.level_offset(j);
      const std::size_t ni = a.level_size(i);
      const std::size_t nj = b.level_size(j);
      std::size_t o = out.level_offset(k);
      for (std::size_t p = 0; p < ni; ++p) {
        const double ap = ac[ai + p];
        if (ap == 0.0) {
          o += nj;
          continue;
        }
        for (std::size_t q = 0; q < nj; ++q) oc[o++] += ap * bc[bj + q];
      }
    }
  }
  return out;
}

TruncatedTensor tensor_exp(const TruncatedTensor& a) {
  if (std::abs(a.scalar()) > kScalarSlack)
    throw std::invalid_argument("tensor_exp: nonzero scalar part");
  const int l = a.level();
  // Horner form: 1 + a(1 + a/2(1 + ... a/l)); a^{l+1} vanishes.
  TruncatedTensor acc = TruncatedTensor::unit(a.dim(), l);
  for (int k = l; k >= 1; --k) {
    acc = tensor_mul(a, acc);
    acc *= 1.0 / k;
    acc.scalar() += 1.0;
  }
  return acc;
}

TruncatedTensor tensor_log(const TruncatedTensor& g) {
  if (std::abs(g.scalar() - 1.0) > kScalarSlack)
    throw std::invalid_argument("tensor_log: scalar part must equal 1");
  const int l = g.level();
  TruncatedTensor x = g;
  x.scalar() = 0.0;
  // log(1+x) = x(1 - x(1/2 - x(1/3 - ...))) via Horner on the truncated series.
  TruncatedTensor acc = x;
  acc *= ((l % 2 == 0) ? -1.0 : 1.0) / l;
  for (int k = l - 1; k >= 1; --k) {
    acc.scalar() += ((k % 2 == 0) ? -1.0 : 1.0) / k;
    acc = tensor_mul(x, acc);
  }
  return acc;
}

TruncatedTensor tensor_inverse(const TruncatedTensor& g) {
  if (std::abs(g.scalar() - 1.0) > kScalarSlack)
    throw std::invalid_argument("tensor_inverse: scalar part must equal 1");
  const int l = g.level();
  TruncatedTensor x = g;
  x.scalar() = 0.0;
  // (1+x)^{-1} = 1 - x + x^2 - ... truncated at level l.
  TruncatedTensor acc = TruncatedTensor::unit(g.dim(), l);
  for (int k = 0; k < l; ++k) {
    acc = tensor_mul(x, acc);
    acc *= -1.0;
    acc.scalar() += 1.0;
  }
  return acc;
}

TruncatedTensor dilate(const TruncatedTensor& a, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
  TruncatedTensor out = a;
  double lk = 1.0;
  for (int k = 1; k <= a.level(); ++k) {
    lk *= lambda;
    const std::size_t off = a.level_offset(k);
    const std::size_t n = a.level_size(k);
    for (std::size_t i = 0; i < n; ++i) out.data()[off + i] *= lk;
  }
  return out;
}

double hs_norm(const TruncatedTensor& a) {
  double s = 0.0;
  for (double x : a.data()) s += x * x;
  return std::sqrt(s);
}

double hs_distance(const TruncatedTensor& g1, const TruncatedTensor& g2) {
  check_match(g1, g2, "hs_distance");
  double s = 0.0;
  for (std::size_t i = 1; i < g1.size(); ++i) {
    const double d = g2.data()[i] - g1.data()[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double homogeneous_norm(const TruncatedTensor& a) {
  double best = 0.0;
  for (int k = 1; k <= a.level(); ++k) {
    double s = 0.0;
    const std::size_t off = a.level_offset(k);
    for (std::size_t i = 0; i < a.level_size(k); ++i) {
      const double x = a.data()[off + i];
      s += x * x;
    }
    best = std::max(best, std::pow(std::sqrt(s), 1.0 / k));
  }
  return best;
}

}  // namespace rp
