#include "roughpaths/expr.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace rp {

namespace {

using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr make_const(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Constant;
  e->value = v;
  return e;
}

ExprPtr make_binary(Expr::Kind k, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

class Parser {
 public:
  Parser(const std::string& text, int state_dim, int line)
      : text_(text), n_(state_dim), line_(line) {}

  ExprPtr run() {
    ExprPtr e = sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("syntax error: " + msg, line_, static_cast<int>(pos_) + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  ExprPtr sum() {
    ExprPtr e = consume('-') ? negate(product()) : product();
    while (true) {
      if (consume('+'))
        e = make_binary(Expr::Kind::Add, e, product());
      else if (consume('-'))
        e = make_binary(Expr::Kind::Sub, e, product());
      else
        return e;
    }
  }

  ExprPtr negate(ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Neg;
    e->lhs = std::move(a);
    return e;
  }

  ExprPtr product() {
    ExprPtr e = power();
    while (consume('*')) e = make_binary(Expr::Kind::Mul, e, power());
    return e;
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (consume('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == start) fail("expected a non-negative integer exponent");
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Pow;
      e->lhs = std::move(base);
      e->exponent = std::atoi(text_.substr(start, pos_ - start).c_str());
      return e;
    }
    return base;
  }

  ExprPtr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = sum();
      if (!consume(')')) fail("expected ')'");
      return e;
    }
    if (c == '-') {
      ++pos_;
      return negate(atom());
    }
    if (c == 'x') {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == start) fail("expected a variable index after 'x'");
      const int idx = std::atoi(text_.substr(start, pos_ - start).c_str());
      if (idx < 1 || idx > n_)
        fail("unknown variable x" + text_.substr(start, pos_ - start) + " (state dimension " +
             std::to_string(n_) + ")");
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Variable;
      e->var = idx - 1;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      char* end = nullptr;
      const double v = std::strtod(text_.c_str() + pos_, &end);
      if (end == text_.c_str() + pos_) fail("expected a number");
      pos_ = end - text_.c_str();
      return make_const(v);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& text_;
  int n_;
  int line_;
  std::size_t pos_ = 0;
};

}  // namespace

std::shared_ptr<const Expr> parse_expression(const std::string& text, int state_dim, int line) {
  return Parser(text, state_dim, line).run();
}

}  // namespace rp
