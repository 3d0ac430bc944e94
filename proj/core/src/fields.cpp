#include "roughpaths/fields.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "roughpaths/tensor.hpp"

namespace rp {

namespace {

// DW . A: directional derivative of the jet vector W along the jet vector A.
std::vector<Jet> directional_derivative(const std::vector<Jet>& w, const std::vector<Jet>& a) {
  const int n = static_cast<int>(w.size());
  std::vector<Jet> out(n);
  for (int p = 0; p < n; ++p) {
    Jet acc(0.0);
    for (int q = 0; q < n; ++q) acc = acc + w[p].partial(q) * a[q];
    out[p] = acc;
  }
  return out;
}

std::vector<Jet> bracket_jets(const VectorFieldSystem& fields, const Word& alpha,
                              const Eigen::VectorXd& x, int order) {
  if (alpha.size() == 1) return fields.field_jets(alpha[0] - 1, x, order);
  const Word beta(alpha.begin() + 1, alpha.end());
  const std::vector<Jet> b = bracket_jets(fields, beta, x, order + 1);
  const std::vector<Jet> vi = fields.field_jets(alpha[0] - 1, x, order + 1);
  const std::vector<Jet> db_vi = directional_derivative(b, vi);
  const std::vector<Jet> dvi_b = directional_derivative(vi, b);
  std::vector<Jet> out(b.size());
  for (std::size_t p = 0; p < b.size(); ++p) out[p] = db_vi[p] - dvi_b[p];
  return out;
}

Eigen::VectorXd jet_values(const std::vector<Jet>& jets) {
  Eigen::VectorXd v(jets.size());
  for (std::size_t i = 0; i < jets.size(); ++i) v[i] = jets[i].value();
  return v;
}

}  // namespace

VectorFieldSystem::VectorFieldSystem(int state_dim, int driver_dim,
                                     std::vector<std::shared_ptr<const Expr>> components)
    : n_(state_dim), d_(driver_dim), comp_(std::move(components)) {
  if (n_ < 1 || d_ < 1) throw std::invalid_argument("VectorFieldSystem: bad dimensions");
  if (comp_.size() != static_cast<std::size_t>(n_ * d_))
    throw std::invalid_argument("VectorFieldSystem: wrong number of components");
}

Eigen::VectorXd VectorFieldSystem::eval_field(int field, const Eigen::VectorXd& x) const {
  std::vector<double> vars(x.data(), x.data() + x.size());
  Eigen::VectorXd out(n_);
  for (int p = 0; p < n_; ++p) out[p] = comp_[field * n_ + p]->eval(vars);
  return out;
}

std::vector<Jet> VectorFieldSystem::field_jets(int field, const Eigen::VectorXd& x,
                                               int order) const {
  const JetTable& table = jet_table(n_, order);
  std::vector<Jet> vars(n_);
  for (int q = 0; q < n_; ++q) vars[q] = Jet::variable(table, q, x[q]);
  std::vector<Jet> out(n_);
  for (int p = 0; p < n_; ++p) out[p] = comp_[field * n_ + p]->eval(vars);
  return out;
}

VectorFieldSystem parse_fields(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  while (std::getline(in, header)) {
    if (!header.empty() && header[0] != '#') break;
  }
  std::istringstream hs(header);
  int n = 0, d = 0;
  if (!(hs >> n >> d) || n < 1 || d < 1)
    throw std::runtime_error("parse_fields: expected header 'N d'");
  std::vector<std::shared_ptr<const Expr>> comp(static_cast<std::size_t>(n) * d);
  int line_no = 1;
  for (int a = 0; a < d; ++a) {
    std::string line;
    do {
      if (!std::getline(in, line))
        throw std::runtime_error("parse_fields: missing line for field " + std::to_string(a + 1));
      ++line_no;
    } while (line.empty() || line[0] == '#');
    std::stringstream ls(line);
    std::string cell;
    for (int p = 0; p < n; ++p) {
      if (!std::getline(ls, cell, ','))
        throw std::runtime_error("parse_fields: field " + std::to_string(a + 1) + " needs " +
                                 std::to_string(n) + " comma-separated components");
      comp[a * n + p] = parse_expression(cell, n, line_no);
    }
  }
  return VectorFieldSystem(n, d, std::move(comp));
}

VectorFieldSystem load_fields_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read field file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fields(ss.str());
}

VectorFieldSystem builtin_fields(const std::string& name) {
  if (name == "identity2") return parse_fields("2 2\n1,0\n0,1\n");
  if (name == "identity3") return parse_fields("3 3\n1,0,0\n0,1,0\n0,0,1\n");
  if (name == "heisenberg") return parse_fields("3 2\n1,0,-x2*0.5\n0,1,x1*0.5\n");
  std::string options;
  for (const auto& s : builtin_field_names()) options += (options.empty() ? "" : ", ") + s;
  throw std::invalid_argument("unknown field system '" + name + "' (available: " + options + ")");
}

std::vector<std::string> builtin_field_names() { return {"identity2", "identity3", "heisenberg"}; }

Eigen::VectorXd v_alpha_composed(const VectorFieldSystem& fields, const Word& alpha,
                                 const Eigen::VectorXd& x) {
  if (alpha.empty()) throw std::invalid_argument("v_alpha_composed: empty word");
  const int r = static_cast<int>(alpha.size());
  std::vector<Jet> w = fields.field_jets(alpha[r - 1] - 1, x, r - 1);
  for (int k = r - 2; k >= 0; --k) {
    const std::vector<Jet> vi = fields.field_jets(alpha[k] - 1, x, r - 1);
    w = directional_derivative(w, vi);
  }
  return jet_values(w);
}

Eigen::VectorXd v_alpha_bracket(const VectorFieldSystem& fields, const Word& alpha,
                                const Eigen::VectorXd& x) {
  if (alpha.empty()) throw std::invalid_argument("v_alpha_bracket: empty word");
  return jet_values(bracket_jets(fields, alpha, x, 0));
}

double hypoellipticity_gap(const VectorFieldSystem& fields, int l0, double lo, double hi,
                           int grid_per_axis) {
  if (l0 < 1) throw std::invalid_argument("hypoellipticity_gap: need l0 >= 1");
  if (grid_per_axis < 1) throw std::invalid_argument("hypoellipticity_gap: need grid >= 1");
  const int n = fields.state_dim();
  const int d = fields.driver_dim();
  std::vector<Word> words;
  for (int k = 1; k <= l0; ++k) {
    const std::size_t count = static_cast<std::size_t>(std::pow(d, k));
    for (std::size_t idx = 0; idx < count; ++idx) words.push_back(word_at(d, k, idx));
  }
  double gap = std::numeric_limits<double>::infinity();
  std::vector<int> pos(n, 0);
  Eigen::VectorXd x(n);
  while (true) {
    for (int q = 0; q < n; ++q)
      x[q] = grid_per_axis == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * pos[q] / (grid_per_axis - 1);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    for (const Word& w : words) {
      const Eigen::VectorXd v = v_alpha_bracket(fields, w, x);
      gram.noalias() += v * v.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
    gap = std::min(gap, es.eigenvalues().minCoeff());
    int q = 0;
    while (q < n && ++pos[q] == grid_per_axis) pos[q++] = 0;
    if (q == n) break;
  }
  return std::max(gap, 0.0);
}

ComposedFieldTable::ComposedFieldTable(const VectorFieldSystem& fields, const Eigen::VectorXd& x,
                                       int level)
    : level_(level), dim_(fields.driver_dim()) {
  offsets_.assign(level + 2, 0);
  std::size_t total = 0, block = 1;
  for (int k = 1; k <= level; ++k) {
    block *= dim_;
    offsets_[k] = total;
    total += block;
  }
  offsets_[level + 1] = total;
  values_.resize(total);

  // Right fold sharing suffixes: jets of V_(beta) at order level - |beta|,
  // extended on the left one letter at a time.
  struct Rec {
    std::vector<std::vector<Jet>> suffix_jets;  // per suffix of current length
  };
  // iterative over word length: keep jets for all words of length k
  std::vector<std::vector<Jet>> cur(dim_);
  for (int a = 0; a < dim_; ++a) {
    cur[a] = fields.field_jets(a, x, level - 1);
    values_[offsets_[1] + a] = jet_values(cur[a]);
  }
  std::vector<std::vector<Jet>> vi(dim_);
  for (int a = 0; a < dim_; ++a) vi[a] = fields.field_jets(a, x, level - 1);
  for (int k = 2; k <= level; ++k) {
    std::vector<std::vector<Jet>> next(values_.size() ? static_cast<std::size_t>(std::pow(dim_, k))
                                                      : 0);
    for (std::size_t tail = 0; tail < cur.size(); ++tail) {
      for (int a = 0; a < dim_; ++a) {
        const std::size_t idx = static_cast<std::size_t>(a) * cur.size() + tail;
        next[idx] = directional_derivative(cur[tail], vi[a]);
        values_[offsets_[k] + idx] = jet_values(next[idx]);
      }
    }
    cur = std::move(next);
  }
}

const Eigen::VectorXd& ComposedFieldTable::value(const Word& alpha) const {
  const int k = static_cast<int>(alpha.size());
  if (k < 1 || k > level_) throw std::invalid_argument("ComposedFieldTable: bad word length");
  std::size_t idx = 0;
  for (int letter : alpha) idx = idx * dim_ + (letter - 1);
  return values_[offsets_[k] + idx];
}

Eigen::VectorXd taylor_F(const VectorFieldSystem& fields, const LieCoordinates& u,
                         const Eigen::VectorXd& x, int level) {
  if (u.dim != fields.driver_dim())
    throw std::invalid_argument("taylor_F: driver dimension mismatch");
  const LieCoordinates ul = u.level == level ? u : project_level(u, level);
  const TruncatedTensor g = tensor_exp(lie_embed(ul));
  const ComposedFieldTable table(fields, x, level);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(fields.state_dim());
  const int d = fields.driver_dim();
  for (int k = 1; k <= level; ++k) {
    const std::size_t off = g.level_offset(k);
    const std::size_t nk = g.level_size(k);
    for (std::size_t idx = 0; idx < nk; ++idx) {
      const double c = g.data()[off + idx];
      if (c == 0.0) continue;
      out.noalias() += c * table.value(word_at(d, k, idx));
    }
  }
  return out;
}

Eigen::MatrixXd jacobian_F(const VectorFieldSystem& fields, const LieCoordinates& u,
                           const Eigen::VectorXd& x, int level) {
  const LieCoordinates ul = u.level == level ? u : project_level(u, level);
  const LieBasis& basis = lie_basis(ul.dim, level);
  const TruncatedTensor a = basis.embed(ul);
  const ComposedFieldTable table(fields, x, level);
  const int d = fields.driver_dim();
  const int m = static_cast<int>(basis.dimension());

  // powers of a for the exp differential
  std::vector<TruncatedTensor> pw;
  pw.push_back(TruncatedTensor::unit(ul.dim, level));
  for (int k = 1; k <= level; ++k) pw.push_back(tensor_mul(pw.back(), a));
  std::vector<double> inv_fact(level + 2, 1.0);
  for (int k = 1; k <= level + 1; ++k) inv_fact[k] = inv_fact[k - 1] / k;

  Eigen::MatrixXd jac(fields.state_dim(), m);
  for (int c = 0; c < m; ++c) {
    const TruncatedTensor& e = basis.bracket_tensor(c);
    // d exp(a)[e] = sum_{k>=1} (1/k!) sum_{p+q=k-1} a^p e a^q
    TruncatedTensor dg(ul.dim, level);
    for (int k = 1; k <= level; ++k)
      for (int p = 0; p + 1 <= k; ++p) {
        const int q = k - 1 - p;
        dg += inv_fact[k] * tensor_mul(tensor_mul(pw[p], e), pw[q]);
      }
    Eigen::VectorXd col = Eigen::VectorXd::Zero(fields.state_dim());
    for (int k = 1; k <= level; ++k) {
      const std::size_t off = dg.level_offset(k);
      for (std::size_t idx = 0; idx < dg.level_size(k); ++idx) {
        const double w = dg.data()[off + idx];
        if (w == 0.0) continue;
        col.noalias() += w * table.value(word_at(d, k, idx));
      }
    }
    jac.col(c) = col;
  }
  return jac;
}

Eigen::VectorXd taylor_step(const VectorFieldSystem& fields, const Eigen::VectorXd& delta,
                            const Eigen::VectorXd& x, int order) {
  // F_m(delta, x) = sum_{r=1..m} (1/r!) (V_delta . grad)^{r-1} V_delta (x)
  const int n = fields.state_dim();
  const JetTable& table = jet_table(n, order - 1);
  std::vector<Jet> vars(n);
  for (int q = 0; q < n; ++q) vars[q] = Jet::variable(table, q, x[q]);
  std::vector<Jet> vdelta(n, Jet(0.0));
  for (int a = 0; a < fields.driver_dim(); ++a) {
    if (delta[a] == 0.0) continue;
    for (int p = 0; p < n; ++p)
      vdelta[p] = vdelta[p] + Jet(delta[a]) * fields.component(a, p).eval(vars);
  }
  Eigen::VectorXd out = jet_values(vdelta);
  std::vector<Jet> w = vdelta;
  double fact = 1.0;
  for (int r = 2; r <= order; ++r) {
    w = directional_derivative(w, vdelta);
    fact /= r;
    out += fact * jet_values(w);
  }
  return out;
}

}  // namespace rp
