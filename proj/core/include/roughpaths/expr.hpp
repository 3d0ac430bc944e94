#pragma once

#include <memory>
#include <string>
#include <vector>

namespace rp {

// Arithmetic expression over variables x1..xN with +, -, *, unary minus,
// integer powers and parentheses.
class Expr {
 public:
  enum class Kind { Constant, Variable, Add, Sub, Mul, Neg, Pow };

  Kind kind = Kind::Constant;
  double value = 0.0;  // Constant
  int var = 0;         // Variable (0-based)
  int exponent = 1;    // Pow
  std::shared_ptr<const Expr> lhs, rhs;

  // Evaluates over any ring with +, -, * and scalar construction from double.
  template <class T>
  T eval(const std::vector<T>& vars) const {
    switch (kind) {
      case Kind::Constant:
        return T(value);
      case Kind::Variable:
        return vars.at(var);
      case Kind::Add:
        return lhs->eval(vars) + rhs->eval(vars);
      case Kind::Sub:
        return lhs->eval(vars) - rhs->eval(vars);
      case Kind::Mul:
        return lhs->eval(vars) * rhs->eval(vars);
      case Kind::Neg:
        return T(0.0) - lhs->eval(vars);
      case Kind::Pow: {
        T base = lhs->eval(vars);
        T acc(1.0);
        for (int i = 0; i < exponent; ++i) acc = acc * base;
        return acc;
      }
    }
    return T(0.0);
  }
};

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(const std::string& msg, int line_, int column_)
      : std::runtime_error(msg + " at line " + std::to_string(line_) + ", column " +
                           std::to_string(column_)),
        line(line_),
        column(column_) {}
};

// Parses one expression. `state_dim` bounds the variable indices (x1..xN);
// `line` is carried into error messages.
std::shared_ptr<const Expr> parse_expression(const std::string& text, int state_dim, int line = 1);

}  // namespace rp
