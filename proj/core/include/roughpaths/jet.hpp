#pragma once

#include <cstdint>
#include <vector>

namespace rp {

// Multi-index table for truncated multivariate Taylor (jet) arithmetic in
// `nvars` variables up to total degree `order`, with a dense product table.
class JetTable {
 public:
  JetTable(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(indices_.size()); }

  const std::vector<int>& multi_index(int i) const { return indices_[i]; }
  int degree(int i) const { return degrees_[i]; }

  // Index of beta + e_q, or -1 if it exceeds the order.
  int bump(int i, int q) const { return bump_[i * nvars_ + q]; }

  // Index of the sum of multi-indices i and j, or -1 if it exceeds the order.
  int product_index(int i, int j) const { return prod_[i * size_ + j]; }

 private:
  int nvars_;
  int order_;
  int size_ = 0;
  std::vector<std::vector<int>> indices_;
  std::vector<int> degrees_;
  std::vector<int> bump_;
  std::vector<int> prod_;
};

const JetTable& jet_table(int nvars, int order);

// Truncated Taylor expansion of a scalar quantity at a point. Order-0 slot is
// the plain value; arithmetic is exact on polynomials up to the order.
class Jet {
 public:
  Jet() = default;
  Jet(double v) : table_(nullptr), c_{v} {}  // scalar constant, attaches lazily
  Jet(const JetTable* table, double v);

  static Jet variable(const JetTable& table, int index, double value);

  double value() const { return c_.empty() ? 0.0 : c_[0]; }
  const JetTable* table() const { return table_; }
  const std::vector<double>& coeffs() const { return c_; }
  double coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : 0.0; }

  // d/dx_q as a jet of one lower order on the same table.
  Jet partial(int q) const;

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);

 private:
  static const JetTable* join(const Jet& a, const Jet& b);
  const JetTable* table_ = nullptr;  // nullptr: pure constant
  std::vector<double> c_;
};

}  // namespace rp
