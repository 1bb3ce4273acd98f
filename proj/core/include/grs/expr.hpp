#pragma once

// Closed-form scalar expressions in the variable `u`, evaluated on Jet2.
//
// Grammar: + - * / ^ (right-associative), unary minus, parentheses, numeric
// literals, the constants `pi` and `e`, one-argument elementary functions
// (sin, cos, tan, sinh, cosh, tanh, exp, log, sqrt, asin, atan) and the
// two-argument forms pow(a, b) and atan2(y, x).

#include <memory>
#include <string>
#include <string_view>

#include "grs/jet.hpp"

namespace grs {

class Expr {
 public:
  /// Throws ConfigError with the offending position on a syntax error.
  static Expr parse(std::string_view text);

  Jet2 eval(const Jet2& u) const;
  Jet2 eval_at(double u) const { return eval(Jet2::variable(u)); }

  const std::string& text() const { return text_; }

  struct Node;

 private:
  Expr(std::string text, std::shared_ptr<const Node> root)
      : text_(std::move(text)), root_(std::move(root)) {}

  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace grs
