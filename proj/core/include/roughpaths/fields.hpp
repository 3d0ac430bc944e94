#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "roughpaths/expr.hpp"
#include "roughpaths/jet.hpp"
#include "roughpaths/lie_basis.hpp"
#include "roughpaths/words.hpp"

namespace rp {

// Driving vector fields V_1..V_d on R^N given as expression trees; jets of
// any order are evaluated by forward-mode truncated Taylor arithmetic.
class VectorFieldSystem {
 public:
  VectorFieldSystem(int state_dim, int driver_dim,
                    std::vector<std::shared_ptr<const Expr>> components);

  int state_dim() const { return n_; }
  int driver_dim() const { return d_; }

  const Expr& component(int field, int coord) const { return *comp_[field * n_ + coord]; }

  Eigen::VectorXd eval_field(int field, const Eigen::VectorXd& x) const;

  // All N components of field `field` as jets of the requested order at x.
  std::vector<Jet> field_jets(int field, const Eigen::VectorXd& x, int order) const;

 private:
  int n_;
  int d_;
  std::vector<std::shared_ptr<const Expr>> comp_;  // field-major: comp_[a*N + p]
};

// Field file: header "N d", then d lines with N comma-separated expressions.
VectorFieldSystem parse_fields(const std::string& text);
VectorFieldSystem load_fields_file(const std::string& path);

// Canonical test systems: identity2, identity3, heisenberg.
VectorFieldSystem builtin_fields(const std::string& name);
std::vector<std::string> builtin_field_names();

// V_(alpha): iterated directional derivatives, right fold over the word.
Eigen::VectorXd v_alpha_composed(const VectorFieldSystem& fields, const Word& alpha,
                                 const Eigen::VectorXd& x);

// V_[alpha]: right-nested bracket [V_i, V_[beta]] for alpha = (i, beta).
Eigen::VectorXd v_alpha_bracket(const VectorFieldSystem& fields, const Word& alpha,
                                const Eigen::VectorXd& x);

// Minimum over a grid in the box [lo, hi]^N of the smallest eigenvalue of
// sum_{alpha in A_1(l0)} V_[alpha] V_[alpha]^T; zero is a reported outcome.
double hypoellipticity_gap(const VectorFieldSystem& fields, int l0, double lo, double hi,
                           int grid_per_axis);

// Values of V_(alpha) for all words |alpha| <= level at one point.
class ComposedFieldTable {
 public:
  ComposedFieldTable(const VectorFieldSystem& fields, const Eigen::VectorXd& x, int level);

  const Eigen::VectorXd& value(const Word& alpha) const;
  int level() const { return level_; }

 private:
  int level_;
  int dim_;
  std::vector<std::size_t> offsets_;
  std::vector<Eigen::VectorXd> values_;  // indexed by level offset + word index
};

// Taylor approximation map F_l(u, x) = sum_alpha V_(alpha)(x) (exp u)^alpha.
Eigen::VectorXd taylor_F(const VectorFieldSystem& fields, const LieCoordinates& u,
                         const Eigen::VectorXd& x, int level);

// Jacobian of F_l with respect to the Lyndon coordinates of u (N x dim g^(l)).
Eigen::MatrixXd jacobian_F(const VectorFieldSystem& fields, const LieCoordinates& u,
                           const Eigen::VectorXd& x, int level);

// One Davie step: increment of the order-m Taylor flow along a straight chord
// delta, i.e. F_m(delta, x) with delta treated as a level-1 log-signature.
Eigen::VectorXd taylor_step(const VectorFieldSystem& fields, const Eigen::VectorXd& delta,
                            const Eigen::VectorXd& x, int order);

}  // namespace rp
