#include "charred/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>

namespace charred {

namespace {

constexpr std::array<const char*, kNumVars> kVarNames = {"x", "t", "u", "s", "w"};

NodePtr make_constant(double c) {
  auto n = std::make_shared<ExprNode>();
  n->tag = ExprNode::Tag::Constant;
  n->value = c;
  return n;
}

NodePtr make_variable(Var v) {
  auto n = std::make_shared<ExprNode>();
  n->tag = ExprNode::Tag::Variable;
  n->var = v;
  return n;
}

NodePtr make_unary(UnaryOp op, NodePtr child) {
  auto n = std::make_shared<ExprNode>();
  n->tag = ExprNode::Tag::Unary;
  n->uop = op;
  n->a = std::move(child);
  return n;
}

NodePtr make_binary(BinaryOp op, NodePtr lhs, NodePtr rhs) {
  auto n = std::make_shared<ExprNode>();
  n->tag = ExprNode::Tag::Binary;
  n->bop = op;
  n->a = std::move(lhs);
  n->b = std::move(rhs);
  return n;
}

[[noreturn]] void domain_error(const std::string& what) {
  throw ExprError(ExprError::Kind::Domain, "domain error: " + what);
}

double eval_unary(UnaryOp op, double v) {
  switch (op) {
    case UnaryOp::Neg: return -v;
    case UnaryOp::Exp: {
      double r = std::exp(v);
      if (!std::isfinite(r)) domain_error("exp overflow");
      return r;
    }
    case UnaryOp::Ln:
      if (v <= 0.0) domain_error("ln of non-positive value");
      return std::log(v);
    case UnaryOp::Sqrt:
      if (v < 0.0) domain_error("sqrt of negative value");
      return std::sqrt(v);
    case UnaryOp::Sin: return std::sin(v);
    case UnaryOp::Cos: return std::cos(v);
    case UnaryOp::Tan: {
      double r = std::tan(v);
      if (!std::isfinite(r)) domain_error("tan at pole");
      return r;
    }
    case UnaryOp::Arctan: return std::atan(v);
    case UnaryOp::Arccos:
      if (v < -1.0 || v > 1.0) domain_error("arccos outside [-1,1]");
      return std::acos(v);
    case UnaryOp::Abs: return std::fabs(v);
  }
  domain_error("bad unary op");
}

double eval_binary(BinaryOp op, double a, double b) {
  double r;
  switch (op) {
    case BinaryOp::Add: r = a + b; break;
    case BinaryOp::Sub: r = a - b; break;
    case BinaryOp::Mul: r = a * b; break;
    case BinaryOp::Div:
      if (b == 0.0) domain_error("division by zero");
      r = a / b;
      break;
    case BinaryOp::Pow: {
      if (a == 0.0 && b < 0.0) domain_error("zero base with negative exponent");
      if (a < 0.0 && b != std::rint(b))
        domain_error("negative base with non-integer exponent");
      r = std::pow(a, b);
      break;
    }
    default: domain_error("bad binary op");
  }
  if (!std::isfinite(r)) domain_error("non-finite result");
  return r;
}

double eval_node(const ExprNode* n, const Bindings& b) {
  switch (n->tag) {
    case ExprNode::Tag::Constant: return n->value;
    case ExprNode::Tag::Variable:
      if (!b.has(n->var))
        throw ExprError(ExprError::Kind::UnboundVariable,
                        std::string("unbound variable '") + var_name(n->var) + "'");
      return b.get(n->var);
    case ExprNode::Tag::Unary: return eval_unary(n->uop, eval_node(n->a.get(), b));
    case ExprNode::Tag::Binary:
      return eval_binary(n->bop, eval_node(n->a.get(), b), eval_node(n->b.get(), b));
  }
  domain_error("bad node");
}

// ---------------------------------------------------------------------------
// Parser

struct FunctionEntry {
  const char* name;
  UnaryOp op;
};

constexpr FunctionEntry kFunctions[] = {
    {"exp", UnaryOp::Exp},       {"ln", UnaryOp::Ln},
    {"sqrt", UnaryOp::Sqrt},     {"sin", UnaryOp::Sin},
    {"cos", UnaryOp::Cos},       {"tan", UnaryOp::Tan},
    {"arctan", UnaryOp::Arctan}, {"atan", UnaryOp::Arctan},
    {"arccos", UnaryOp::Arccos}, {"acos", UnaryOp::Arccos},
    {"arcos", UnaryOp::Arccos},  // spelling used in the source formulas
    {"abs", UnaryOp::Abs},
};

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  NodePtr run() {
    skip_ws();
    if (pos_ >= text_.size())
      throw ExprError(ExprError::Kind::Syntax, "empty expression", 0);
    NodePtr e = parse_sum();
    skip_ws();
    if (pos_ < text_.size())
      throw ExprError(ExprError::Kind::Syntax,
                      "unexpected character at offset " + std::to_string(pos_), pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
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

  [[noreturn]] void fail(const std::string& msg) {
    throw ExprError(ExprError::Kind::Syntax,
                    msg + " at offset " + std::to_string(pos_), pos_);
  }

  NodePtr parse_sum() {
    NodePtr lhs = parse_product();
    for (;;) {
      if (eat('+')) lhs = make_binary(BinaryOp::Add, lhs, parse_product());
      else if (eat('-')) lhs = make_binary(BinaryOp::Sub, lhs, parse_product());
      else return lhs;
    }
  }

  NodePtr parse_product() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (eat('*')) lhs = make_binary(BinaryOp::Mul, lhs, parse_unary());
      else if (eat('/')) lhs = make_binary(BinaryOp::Div, lhs, parse_unary());
      else return lhs;
    }
  }

  NodePtr parse_unary() {
    if (eat('-')) return make_unary(UnaryOp::Neg, parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (eat('^')) return make_binary(BinaryOp::Pow, base, parse_unary());
    return base;
  }

  NodePtr parse_primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      NodePtr e = parse_sum();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    fail("expected expression");
  }

  NodePtr parse_number() {
    skip_ws();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{}) fail("bad number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return make_constant(value);
  }

  NodePtr parse_ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    if (peek() == '(') {
      for (const auto& f : kFunctions) {
        if (name == f.name) {
          ++pos_;  // consume '('
          NodePtr arg = parse_sum();
          if (!eat(')')) fail("expected ')'");
          return make_unary(f.op, arg);
        }
      }
      throw ExprError(ExprError::Kind::UnknownFunction,
                      "unknown function '" + name + "' at offset " + std::to_string(start),
                      start);
    }
    if (auto v = var_from_name(name)) return make_variable(*v);
    if (name == "pi") return make_constant(M_PI);
    if (name == "e") return make_constant(M_E);
    throw ExprError(ExprError::Kind::UnknownIdentifier,
                    "unknown identifier '" + name + "' at offset " + std::to_string(start),
                    start);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printer

const char* unary_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg: return "-";
    case UnaryOp::Exp: return "exp";
    case UnaryOp::Ln: return "ln";
    case UnaryOp::Sqrt: return "sqrt";
    case UnaryOp::Sin: return "sin";
    case UnaryOp::Cos: return "cos";
    case UnaryOp::Tan: return "tan";
    case UnaryOp::Arctan: return "arctan";
    case UnaryOp::Arccos: return "arccos";
    case UnaryOp::Abs: return "abs";
  }
  return "?";
}

// Precedence levels: 1 add/sub, 2 mul/div, 3 unary minus, 4 pow, 5 atom.
int node_prec(const ExprNode* n) {
  switch (n->tag) {
    case ExprNode::Tag::Constant: return n->value < 0.0 ? 3 : 5;
    case ExprNode::Tag::Variable: return 5;
    case ExprNode::Tag::Unary: return n->uop == UnaryOp::Neg ? 3 : 5;
    case ExprNode::Tag::Binary:
      switch (n->bop) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return 1;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 2;
        case BinaryOp::Pow: return 4;
      }
  }
  return 5;
}

void print_node(const ExprNode* n, int min_prec, std::string& out) {
  int prec = node_prec(n);
  bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (n->tag) {
    case ExprNode::Tag::Constant: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", n->value);
      out += buf;
      break;
    }
    case ExprNode::Tag::Variable:
      out += var_name(n->var);
      break;
    case ExprNode::Tag::Unary:
      if (n->uop == UnaryOp::Neg) {
        out += '-';
        print_node(n->a.get(), 3, out);
      } else {
        out += unary_name(n->uop);
        out += '(';
        print_node(n->a.get(), 0, out);
        out += ')';
      }
      break;
    case ExprNode::Tag::Binary: {
      const char* sym = nullptr;
      int lmin = prec, rmin = prec + 1;
      switch (n->bop) {
        case BinaryOp::Add: sym = " + "; break;
        case BinaryOp::Sub: sym = " - "; break;
        case BinaryOp::Mul: sym = "*"; break;
        case BinaryOp::Div: sym = "/"; break;
        case BinaryOp::Pow:
          sym = "^";
          lmin = 5;      // base must be an atom
          rmin = 3;      // exponent may be a unary chain (right associative)
          break;
      }
      print_node(n->a.get(), lmin, out);
      out += sym;
      print_node(n->b.get(), rmin, out);
      break;
    }
  }
  if (parens) out += ')';
}

// ---------------------------------------------------------------------------
// Differentiation helpers (smart constructors fold trivial identities)

bool is_const(const NodePtr& n, double v) {
  return n->tag == ExprNode::Tag::Constant && n->value == v;
}

NodePtr c_add(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return make_binary(BinaryOp::Add, std::move(a), std::move(b));
}

NodePtr c_sub(NodePtr a, NodePtr b) {
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return make_unary(UnaryOp::Neg, std::move(b));
  return make_binary(BinaryOp::Sub, std::move(a), std::move(b));
}

NodePtr c_mul(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return make_constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  return make_binary(BinaryOp::Mul, std::move(a), std::move(b));
}

NodePtr c_div(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0)) return make_constant(0.0);
  if (is_const(b, 1.0)) return a;
  return make_binary(BinaryOp::Div, std::move(a), std::move(b));
}

NodePtr c_neg(NodePtr a) {
  if (a->tag == ExprNode::Tag::Constant) return make_constant(-a->value);
  return make_unary(UnaryOp::Neg, std::move(a));
}

NodePtr diff_node(const NodePtr& n, Var v) {
  switch (n->tag) {
    case ExprNode::Tag::Constant: return make_constant(0.0);
    case ExprNode::Tag::Variable: return make_constant(n->var == v ? 1.0 : 0.0);
    case ExprNode::Tag::Unary: {
      NodePtr f = n->a;
      NodePtr fd = diff_node(f, v);
      switch (n->uop) {
        case UnaryOp::Neg: return c_neg(fd);
        case UnaryOp::Exp: return c_mul(fd, make_unary(UnaryOp::Exp, f));
        case UnaryOp::Ln: return c_div(fd, f);
        case UnaryOp::Sqrt:
          return c_div(fd, c_mul(make_constant(2.0), make_unary(UnaryOp::Sqrt, f)));
        case UnaryOp::Sin: return c_mul(fd, make_unary(UnaryOp::Cos, f));
        case UnaryOp::Cos: return c_neg(c_mul(fd, make_unary(UnaryOp::Sin, f)));
        case UnaryOp::Tan:
          return c_div(fd, make_binary(BinaryOp::Pow, make_unary(UnaryOp::Cos, f),
                                       make_constant(2.0)));
        case UnaryOp::Arctan:
          return c_div(fd, c_add(make_constant(1.0),
                                 make_binary(BinaryOp::Pow, f, make_constant(2.0))));
        case UnaryOp::Arccos:
          return c_neg(c_div(
              fd, make_unary(UnaryOp::Sqrt,
                             c_sub(make_constant(1.0),
                                   make_binary(BinaryOp::Pow, f, make_constant(2.0))))));
        case UnaryOp::Abs:
          // d|f| = f' * f/|f|; undefined (domain error) at f = 0
          return c_mul(fd, c_div(f, make_unary(UnaryOp::Abs, f)));
      }
      break;
    }
    case ExprNode::Tag::Binary: {
      NodePtr f = n->a, g = n->b;
      switch (n->bop) {
        case BinaryOp::Add: return c_add(diff_node(f, v), diff_node(g, v));
        case BinaryOp::Sub: return c_sub(diff_node(f, v), diff_node(g, v));
        case BinaryOp::Mul:
          return c_add(c_mul(diff_node(f, v), g), c_mul(f, diff_node(g, v)));
        case BinaryOp::Div:
          return c_div(c_sub(c_mul(diff_node(f, v), g), c_mul(f, diff_node(g, v))),
                       make_binary(BinaryOp::Pow, g, make_constant(2.0)));
        case BinaryOp::Pow: {
          if (g->tag == ExprNode::Tag::Constant) {
            double c = g->value;
            NodePtr power =
                c == 2.0 ? f
                         : make_binary(BinaryOp::Pow, f, make_constant(c - 1.0));
            return c_mul(c_mul(make_constant(c), power), diff_node(f, v));
          }
          // f^g = exp(g ln f): (f^g)' = f^g (g' ln f + g f'/f)
          NodePtr fg = make_binary(BinaryOp::Pow, f, g);
          NodePtr term = c_add(c_mul(diff_node(g, v), make_unary(UnaryOp::Ln, f)),
                               c_mul(g, c_div(diff_node(f, v), f)));
          return c_mul(fg, term);
        }
      }
      break;
    }
  }
  domain_error("bad node");
}

// ---------------------------------------------------------------------------
// Polynomial profile

constexpr std::size_t kMaxPolyDegree = 64;

using Coeffs = std::vector<double>;

std::optional<Coeffs> convolve(const Coeffs& a, const Coeffs& b) {
  if (a.size() + b.size() - 1 > kMaxPolyDegree + 1) return std::nullopt;
  Coeffs r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::optional<Coeffs> poly_of(const ExprNode* n, Var v) {
  switch (n->tag) {
    case ExprNode::Tag::Constant: return Coeffs{n->value};
    case ExprNode::Tag::Variable:
      if (n->var == v) return Coeffs{0.0, 1.0};
      return std::nullopt;
    case ExprNode::Tag::Unary: {
      if (n->uop != UnaryOp::Neg) return std::nullopt;
      auto c = poly_of(n->a.get(), v);
      if (!c) return std::nullopt;
      for (double& x : *c) x = -x;
      return c;
    }
    case ExprNode::Tag::Binary: {
      auto lhs = poly_of(n->a.get(), v);
      if (!lhs) return std::nullopt;
      switch (n->bop) {
        case BinaryOp::Add:
        case BinaryOp::Sub: {
          auto rhs = poly_of(n->b.get(), v);
          if (!rhs) return std::nullopt;
          Coeffs r(std::max(lhs->size(), rhs->size()), 0.0);
          for (std::size_t i = 0; i < lhs->size(); ++i) r[i] += (*lhs)[i];
          double sign = n->bop == BinaryOp::Add ? 1.0 : -1.0;
          for (std::size_t i = 0; i < rhs->size(); ++i) r[i] += sign * (*rhs)[i];
          return r;
        }
        case BinaryOp::Mul: {
          auto rhs = poly_of(n->b.get(), v);
          if (!rhs) return std::nullopt;
          return convolve(*lhs, *rhs);
        }
        case BinaryOp::Div: {
          const ExprNode* d = n->b.get();
          if (d->tag != ExprNode::Tag::Constant || d->value == 0.0) return std::nullopt;
          for (double& x : *lhs) x /= d->value;
          return lhs;
        }
        case BinaryOp::Pow: {
          const ExprNode* e = n->b.get();
          if (e->tag != ExprNode::Tag::Constant) return std::nullopt;
          double k = e->value;
          if (k < 0.0 || k != std::rint(k)) return std::nullopt;
          auto acc = Coeffs{1.0};
          for (int i = 0; i < static_cast<int>(k); ++i) {
            auto next = convolve(acc, *lhs);
            if (!next) return std::nullopt;
            acc = *next;
          }
          return acc;
        }
      }
      break;
    }
  }
  return std::nullopt;
}

}  // namespace

namespace exprdetail {

NodePtr fold(const NodePtr& n) {
  if (n->tag == ExprNode::Tag::Constant || n->tag == ExprNode::Tag::Variable) return n;
  if (n->tag == ExprNode::Tag::Unary) {
    NodePtr child = fold(n->a);
    if (child->tag == ExprNode::Tag::Constant) {
      try {
        return make_constant(eval_unary(n->uop, child->value));
      } catch (const ExprError&) {
      }
    }
    return child == n->a ? n : make_unary(n->uop, child);
  }
  NodePtr a = fold(n->a), b = fold(n->b);
  if (a->tag == ExprNode::Tag::Constant && b->tag == ExprNode::Tag::Constant) {
    try {
      return make_constant(eval_binary(n->bop, a->value, b->value));
    } catch (const ExprError&) {
    }
  }
  return (a == n->a && b == n->b) ? n : make_binary(n->bop, a, b);
}

}  // namespace exprdetail

const char* var_name(Var v) { return kVarNames[static_cast<std::size_t>(v)]; }

std::optional<Var> var_from_name(const std::string& name) {
  for (std::size_t i = 0; i < kNumVars; ++i)
    if (name == kVarNames[i]) return static_cast<Var>(i);
  return std::nullopt;
}

Expression Expression::parse(const std::string& text) {
  if (text.empty())
    throw ExprError(ExprError::Kind::Syntax, "empty expression", 0);
  return Expression(Parser(text).run());
}

Expression Expression::constant(double c) { return Expression(make_constant(c)); }

Expression Expression::variable(Var v) { return Expression(make_variable(v)); }

double Expression::evaluate(const Bindings& bindings) const {
  return eval_node(root_.get(), bindings);
}

Expression Expression::differentiate(Var v) const {
  return Expression(exprdetail::fold(diff_node(root_, v)));
}

std::optional<PolynomialProfile> Expression::polynomial_profile(Var v) const {
  NodePtr folded = exprdetail::fold(root_);
  auto coeffs = poly_of(folded.get(), v);
  if (!coeffs) return std::nullopt;
  while (coeffs->size() > 1 && coeffs->back() == 0.0) coeffs->pop_back();
  PolynomialProfile p;
  p.degree = static_cast<int>(coeffs->size()) - 1;
  p.coefficients = std::move(*coeffs);
  return p;
}

std::array<bool, kNumVars> Expression::variables() const {
  std::array<bool, kNumVars> seen{};
  auto walk = [&seen](auto&& self, const ExprNode* n) -> void {
    switch (n->tag) {
      case ExprNode::Tag::Variable: seen[static_cast<std::size_t>(n->var)] = true; break;
      case ExprNode::Tag::Unary: self(self, n->a.get()); break;
      case ExprNode::Tag::Binary:
        self(self, n->a.get());
        self(self, n->b.get());
        break;
      default: break;
    }
  };
  if (root_) walk(walk, root_.get());
  return seen;
}

std::string Expression::str() const {
  std::string out;
  if (root_) print_node(root_.get(), 0, out);
  return out;
}

}  // namespace charred
