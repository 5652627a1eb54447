#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace charred {

// The five variables expressions may reference. x,t are grid coordinates,
// u the unknown, s,w the two arguments of the class-II source F(s,w).
enum class Var { X = 0, T, U, S, W };

constexpr std::size_t kNumVars = 5;

const char* var_name(Var v);
std::optional<Var> var_from_name(const std::string& name);

enum class UnaryOp { Neg, Exp, Ln, Sqrt, Sin, Cos, Tan, Arctan, Arccos, Abs };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct ExprError : std::runtime_error {
  enum class Kind {
    Syntax,
    UnknownIdentifier,
    UnknownFunction,
    UnboundVariable,
    Domain,
  };
  ExprError(Kind k, const std::string& msg, std::size_t offset = npos)
      : std::runtime_error(msg), kind(k), offset(offset) {}
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  Kind kind;
  std::size_t offset;  // byte offset into the source text, for parse errors
};

// Variable -> value map for evaluation.
class Bindings {
 public:
  Bindings() { bound_.fill(false); }
  Bindings& set(Var v, double value) {
    values_[static_cast<std::size_t>(v)] = value;
    bound_[static_cast<std::size_t>(v)] = true;
    return *this;
  }
  bool has(Var v) const { return bound_[static_cast<std::size_t>(v)]; }
  double get(Var v) const { return values_[static_cast<std::size_t>(v)]; }

 private:
  std::array<double, kNumVars> values_{};
  std::array<bool, kNumVars> bound_;
};

struct ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Tag { Constant, Variable, Unary, Binary };
  Tag tag;
  double value = 0.0;           // Constant
  Var var = Var::X;             // Variable
  UnaryOp uop = UnaryOp::Neg;   // Unary
  BinaryOp bop = BinaryOp::Add; // Binary
  NodePtr a, b;                 // child / lhs, rhs
};

struct PolynomialProfile {
  int degree;
  std::vector<double> coefficients;  // ascending, size degree+1
};

// Immutable arithmetic expression over {x,t,u,s,w}.
class Expression {
 public:
  Expression() = default;
  explicit Expression(NodePtr root) : root_(std::move(root)) {}

  static Expression parse(const std::string& text);
  static Expression constant(double c);
  static Expression variable(Var v);

  bool empty() const { return root_ == nullptr; }
  const NodePtr& root() const { return root_; }

  double evaluate(const Bindings& bindings) const;

  // Symbolic derivative; constant subtrees are folded, nothing more.
  Expression differentiate(Var v) const;

  // Degree and ascending coefficients if, after constant folding, the
  // expression is a polynomial in `v` with no other variable present.
  std::optional<PolynomialProfile> polynomial_profile(Var v) const;

  // Set of variables occurring in the tree.
  std::array<bool, kNumVars> variables() const;

  std::string str() const;

 private:
  NodePtr root_;
};

namespace exprdetail {
NodePtr fold(const NodePtr& n);
}

}  // namespace charred
