#include "roughpaths/jet.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace rp {

namespace {

std::vector<std::vector<int>> graded_multi_indices(int nvars, int order) {
  std::vector<std::vector<int>> all;
  std::vector<int> cur(nvars, 0);
  // enumerate by total degree, lexicographic within a degree
  for (int deg = 0; deg <= order; ++deg) {
    std::fill(cur.begin(), cur.end(), 0);
    cur[nvars - 1] = deg;
    while (true) {
      std::vector<int> rev(cur.rbegin(), cur.rend());
      all.push_back(rev);
      // next composition of deg into nvars parts (colex on cur)
      int i = nvars - 1;
      while (i > 0 && cur[i] == 0) --i;
      if (i == 0) break;
      const int v = cur[i];
      cur[i] = 0;
      cur[i - 1] += 1;
      cur[nvars - 1] = v - 1;
    }
  }
  return all;
}

std::int64_t pack(const std::vector<int>& mi, int base) {
  std::int64_t key = 0;
  for (int e : mi) key = key * base + e;
  return key;
}

}  // namespace

JetTable::JetTable(int nvars, int order) : nvars_(nvars), order_(order) {
  if (nvars < 1 || order < 0) throw std::invalid_argument("JetTable: bad arguments");
  indices_ = graded_multi_indices(nvars, order);
  size_ = static_cast<int>(indices_.size());
  if (size_ > 4000)
    throw std::invalid_argument("JetTable: jet dimension too large for dense tables");
  degrees_.resize(size_);
  std::map<std::int64_t, int> lookup;
  const int base = order + 2;
  for (int i = 0; i < size_; ++i) {
    int d = 0;
    for (int e : indices_[i]) d += e;
    degrees_[i] = d;
    lookup[pack(indices_[i], base)] = i;
  }
  bump_.assign(static_cast<std::size_t>(size_) * nvars_, -1);
  for (int i = 0; i < size_; ++i) {
    for (int q = 0; q < nvars_; ++q) {
      if (degrees_[i] + 1 > order_) continue;
      std::vector<int> mi = indices_[i];
      ++mi[q];
      bump_[static_cast<std::size_t>(i) * nvars_ + q] = lookup.at(pack(mi, base));
    }
  }
  prod_.assign(static_cast<std::size_t>(size_) * size_, -1);
  for (int i = 0; i < size_; ++i) {
    for (int j = 0; j < size_; ++j) {
      if (degrees_[i] + degrees_[j] > order_) continue;
      std::vector<int> mi = indices_[i];
      for (int q = 0; q < nvars_; ++q) mi[q] += indices_[j][q];
      prod_[static_cast<std::size_t>(i) * size_ + j] = lookup.at(pack(mi, base));
    }
  }
}

const JetTable& jet_table(int nvars, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<JetTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(nvars, order);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<JetTable>(nvars, order)).first;
  return *it->second;
}

Jet::Jet(const JetTable* table, double v) : table_(table) {
  c_.assign(table ? table->size() : 1, 0.0);
  c_[0] = v;
}

Jet Jet::variable(const JetTable& table, int index, double value) {
  Jet j(&table, value);
  if (table.order() >= 1) j.c_[table.bump(0, index)] = 1.0;
  return j;
}

Jet Jet::partial(int q) const {
  if (!table_) return Jet(0.0);
  Jet out(table_, 0.0);
  const int n = table_->size();
  for (int i = 0; i < n; ++i) {
    const int src = table_->bump(i, q);
    if (src >= 0) out.c_[i] = c_[src] * (table_->multi_index(i)[q] + 1);
  }
  return out;
}

const JetTable* Jet::join(const Jet& a, const Jet& b) {
  if (a.table_ && b.table_ && a.table_ != b.table_)
    throw std::invalid_argument("Jet: mixing jets from different tables");
  return a.table_ ? a.table_ : b.table_;
}

Jet operator+(const Jet& a, const Jet& b) {
  const JetTable* t = Jet::join(a, b);
  if (!t) return Jet(a.value() + b.value());
  Jet out(t, 0.0);
  for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = a.coeff(i) + b.coeff(i);
  return out;
}

Jet operator-(const Jet& a, const Jet& b) {
  const JetTable* t = Jet::join(a, b);
  if (!t) return Jet(a.value() - b.value());
  Jet out(t, 0.0);
  for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = a.coeff(i) - b.coeff(i);
  return out;
}

Jet operator*(const Jet& a, const Jet& b) {
  const JetTable* t = Jet::join(a, b);
  if (!t) return Jet(a.value() * b.value());
  Jet out(t, 0.0);
  if (!a.table_) {
    const double s = a.value();
    for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = s * b.coeff(i);
    return out;
  }
  if (!b.table_) {
    const double s = b.value();
    for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = s * a.coeff(i);
    return out;
  }
  const int n = t->size();
  for (int i = 0; i < n; ++i) {
    const double ai = a.c_[i];
    if (ai == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const int k = t->product_index(i, j);
      if (k >= 0) out.c_[k] += ai * b.c_[j];
    }
  }
  return out;
}

}  // namespace rp
