#include "grs/expr.hpp"

#include <cctype>
#include <charconv>
#include <numbers>
#include <vector>

#include "grs/errors.hpp"

namespace grs {

struct Expr::Node {
  enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call, Atan2 };
  Kind kind = Kind::Number;
  double value = 0.0;
  ElemFn fn = ElemFn::Sin;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind k, std::vector<NodePtr> args = {}, double value = 0.0) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->args = std::move(args);
  n->value = value;
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse_all() {
    NodePtr n = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("expression '" + std::string(s_) + "': " + what + " at position " +
                      std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Node::Kind::Add, {lhs, term()});
      } else if (accept('-')) {
        lhs = make(Node::Kind::Sub, {lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Node::Kind::Mul, {lhs, unary()});
      } else if (accept('/')) {
        lhs = make(Node::Kind::Div, {lhs, unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Node::Kind::Neg, {unary()});
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Node::Kind::Pow, {base, unary()});
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (accept('(')) {
      NodePtr n = expr();
      expect(')');
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    double v = 0.0;
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{}) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return make(Node::Kind::Number, {}, v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = s_.substr(start, pos_ - start);
    if (name == "u") return make(Node::Kind::Var);
    if (name == "pi") return make(Node::Kind::Number, {}, std::numbers::pi);
    if (name == "e") return make(Node::Kind::Number, {}, std::numbers::e);
    if (name == "pow" || name == "atan2") {
      expect('(');
      NodePtr a = expr();
      expect(',');
      NodePtr b = expr();
      expect(')');
      return make(name == "pow" ? Node::Kind::Pow : Node::Kind::Atan2, {a, b});
    }
    ElemFn fn{};
    try {
      fn = elem_fn_from_name(name);
    } catch (const DomainError&) {
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    expect('(');
    NodePtr arg = expr();
    expect(')');
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Call;
    n->fn = fn;
    n->args = {arg};
    return n;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

Jet2 eval_node(const Node& n, const Jet2& u) {
  switch (n.kind) {
    case Node::Kind::Number: return Jet2::constant(n.value);
    case Node::Kind::Var: return u;
    case Node::Kind::Neg: return -eval_node(*n.args[0], u);
    case Node::Kind::Add: return eval_node(*n.args[0], u) + eval_node(*n.args[1], u);
    case Node::Kind::Sub: return eval_node(*n.args[0], u) - eval_node(*n.args[1], u);
    case Node::Kind::Mul: return eval_node(*n.args[0], u) * eval_node(*n.args[1], u);
    case Node::Kind::Div: return eval_node(*n.args[0], u) / eval_node(*n.args[1], u);
    case Node::Kind::Pow: return pow(eval_node(*n.args[0], u), eval_node(*n.args[1], u));
    case Node::Kind::Call: return jet_apply(n.fn, eval_node(*n.args[0], u));
    case Node::Kind::Atan2: return atan2(eval_node(*n.args[0], u), eval_node(*n.args[1], u));
  }
  throw DomainError("corrupt expression node");
}

}  // namespace

Expr Expr::parse(std::string_view text) {
  Parser p(text);
  NodePtr root = p.parse_all();
  return Expr(std::string(text), std::move(root));
}

Jet2 Expr::eval(const Jet2& u) const { return eval_node(*root_, u); }

}  // namespace grs
