#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>

#include "bochnerlab/jet.hpp"

namespace bochnerlab::expr {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int offset);
  int offset;
};

struct EvalDomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class NodeKind {
  Constant,
  Variable,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Neg,
  Sin,
  Cos,
  Exp,
  Sqrt,
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind;
  double value = 0.0;    // Constant
  int var = -1;          // Variable, 0-based
  int exponent = 0;      // Pow
  NodePtr lhs, rhs;      // children; unary ops use lhs only
};

// Scalar function of x1..xd given as a closed-form expression.
//
// Grammar (lowest to highest binding, +-*/ left associative):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' integer)?
//   base   := number | 'x' integer | '(' expr ')' | func '(' expr ')' | '-' base
//   func   := sin | cos | exp | sqrt
// Variables are 1-based: "x1".."xd".  The integer exponent may be negative.
class Expression {
public:
  Expression() = default;
  Expression(NodePtr root, int dim);

  static Expression parse(const std::string& text, int dim);

  // canonical text form; parsing it back yields a structurally equal tree
  std::string print() const;

  const NodePtr& root() const { return root_; }
  int dim() const { return dim_; }

  friend bool operator==(const Expression& a, const Expression& b);

private:
  NodePtr root_;
  int dim_ = 0;
};

// structural tree equality (Constant compares by exact double value)
bool equal(const NodePtr& a, const NodePtr& b);

// builder interface for programmatic trees; dimension is attached at the end
NodePtr constant(double v);
NodePtr variable(int var);  // 0-based
NodePtr add(NodePtr a, NodePtr b);
NodePtr sub(NodePtr a, NodePtr b);
NodePtr mul(NodePtr a, NodePtr b);
NodePtr div(NodePtr a, NodePtr b);
NodePtr pow(NodePtr a, int exponent);
NodePtr neg(NodePtr a);
NodePtr sin(NodePtr a);
NodePtr cos(NodePtr a);
NodePtr exp(NodePtr a);
NodePtr sqrt(NodePtr a);

// truncated Taylor expansion around `point`; order 0..4
jets::Jet eval_jet(const Expression& e, std::span<const double> point, int order);

// evaluation with variables bound to given jets (for composing with charts)
jets::Jet eval_jet(const Expression& e, std::span<const jets::Jet> env);

double eval_value(const Expression& e, std::span<const double> point);

}  // namespace bochnerlab::expr
