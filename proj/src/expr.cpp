#include "qspec/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>

#include "qspec/errors.hpp"

namespace qspec {

namespace {

enum class Op {
  Const, Norm, WeightedSum, Coord,
  Add, Sub, Mul, Div, Neg,
  Sin, Cos, Exp, Abs, Sqrt, Min, Max,
};

}  // namespace

struct Expr::Node {
  Op op = Op::Const;
  double value = 0.0;
  std::size_t coord = 0;
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

struct Parser {
  const std::string& src;
  const Space& space;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("expression error at position " + std::to_string(pos) +
                      " in '" + src + "': " + msg);
  }

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr,
               double value = 0.0, std::size_t coord = 0) {
    auto n = std::make_shared<Expr::Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    n->value = value;
    n->coord = coord;
    return n;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (eat('+'))
        lhs = make(Op::Add, lhs, parse_term());
      else if (eat('-'))
        lhs = make(Op::Sub, lhs, parse_term());
      else
        return lhs;
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      if (eat('*'))
        lhs = make(Op::Mul, lhs, parse_factor());
      else if (eat('/'))
        lhs = make(Op::Div, lhs, parse_factor());
      else
        return lhs;
    }
  }

  NodePtr parse_factor() {
    if (eat('-')) return make(Op::Neg, parse_factor());
    return parse_primary();
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
      ++pos;
    return src.substr(start, pos - start);
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of input");
    char c = src[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      char* end = nullptr;
      double v = std::strtod(src.c_str() + pos, &end);
      pos = static_cast<std::size_t>(end - src.c_str());
      return make(Op::Const, nullptr, nullptr, v);
    }
    if (eat('(')) {
      NodePtr inner = parse_expr();
      if (!eat(')')) fail("missing ')'");
      return inner;
    }
    std::string name = ident();
    if (name.empty()) fail(std::string("unexpected character '") + c + "'");
    if (name == "pi")
      return make(Op::Const, nullptr, nullptr, 3.14159265358979323846);
    if (name == "r") return make(Op::Norm);
    if (name == "s") return make(Op::WeightedSum);
    if (name.size() >= 2 && name[0] == 'x') {
      char* end = nullptr;
      long idx = std::strtol(name.c_str() + 1, &end, 10);
      if (*end != '\0' || idx < 0) fail("bad coordinate '" + name + "'");
      if (static_cast<std::size_t>(idx) >= space.dim())
        fail("coordinate " + name + " out of range for dim " +
             std::to_string(space.dim()));
      return make(Op::Coord, nullptr, nullptr, 0.0,
                  static_cast<std::size_t>(idx));
    }
    auto unary = [&](Op op) {
      if (!eat('(')) fail("expected '(' after " + name);
      NodePtr a = parse_expr();
      if (!eat(')')) fail("missing ')'");
      return make(op, a);
    };
    if (name == "sin") return unary(Op::Sin);
    if (name == "cos") return unary(Op::Cos);
    if (name == "exp") return unary(Op::Exp);
    if (name == "abs") return unary(Op::Abs);
    if (name == "sqrt") return unary(Op::Sqrt);
    if (name == "min" || name == "max") {
      if (!eat('(')) fail("expected '(' after " + name);
      NodePtr a = parse_expr();
      if (!eat(',')) fail("expected ',' in " + name);
      NodePtr b = parse_expr();
      if (!eat(')')) fail("missing ')'");
      return make(name == "min" ? Op::Min : Op::Max, a, b);
    }
    fail("unknown identifier '" + name + "'");
  }
};

double eval_node(const Expr::Node& n, const Vec& x, const Space& space) {
  auto ev = [&](const NodePtr& p) { return eval_node(*p, x, space); };
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Norm: return space.norm(x);
    case Op::WeightedSum: return space.weighted_sum(x);
    case Op::Coord: return x[n.coord];
    case Op::Add: return ev(n.a) + ev(n.b);
    case Op::Sub: return ev(n.a) - ev(n.b);
    case Op::Mul: return ev(n.a) * ev(n.b);
    case Op::Div: return ev(n.a) / ev(n.b);
    case Op::Neg: return -ev(n.a);
    case Op::Sin: return std::sin(ev(n.a));
    case Op::Cos: return std::cos(ev(n.a));
    case Op::Exp: return std::exp(ev(n.a));
    case Op::Abs: return std::fabs(ev(n.a));
    case Op::Sqrt: return std::sqrt(ev(n.a));
    case Op::Min: return std::min(ev(n.a), ev(n.b));
    case Op::Max: return std::max(ev(n.a), ev(n.b));
  }
  return 0.0;
}

}  // namespace

Expr::Expr(std::string source, std::shared_ptr<const Node> root, Space space)
    : source_(std::move(source)), root_(std::move(root)), space_(std::move(space)) {}

Expr Expr::parse(const std::string& source, const Space& space) {
  Parser p{source, space};
  NodePtr root = p.parse_expr();
  p.skip_ws();
  if (p.pos != source.size()) p.fail("trailing input");
  return Expr(source, root, space);
}

double Expr::eval(const Vec& x) const { return eval_node(*root_, x, space_); }

}  // namespace qspec
