#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>

namespace riccilab {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace expr {

/// A chart point: one value per declared coordinate, in declaration order.
using Point = std::array<double, 4>;

enum class BinaryOp : unsigned char { Add, Sub, Mul, Div, Pow };

enum class Func : unsigned char { Exp, Log, Sqrt, Sin, Cos, Tan, Sinh, Cosh, Tanh };

struct Node;

// Immutable scalar expression in the chart coordinates. Copies share the
// underlying AST, so passing Expression by value is cheap and thread-safe.
//
// The static builders fold constants and drop algebraic no-ops (x+0, 1*x, ...);
// they are what differentiation and all tensor-field algebra go through. The
// parser bypasses the folding so that a parsed AST mirrors the source text.
class Expression {
 public:
  Expression() = default;

  static Expression number(double value);
  static Expression pi();
  static Expression coordinate(int index, std::string name);
  static Expression unary_minus(Expression a);
  static Expression binary(BinaryOp op, Expression a, Expression b);
  static Expression call(Func f, Expression a);

  static Expression add(Expression a, Expression b) { return binary(BinaryOp::Add, std::move(a), std::move(b)); }
  static Expression sub(Expression a, Expression b) { return binary(BinaryOp::Sub, std::move(a), std::move(b)); }
  static Expression mul(Expression a, Expression b) { return binary(BinaryOp::Mul, std::move(a), std::move(b)); }
  static Expression div(Expression a, Expression b) { return binary(BinaryOp::Div, std::move(a), std::move(b)); }
  static Expression pow(Expression a, Expression b) { return binary(BinaryOp::Pow, std::move(a), std::move(b)); }
  static Expression sqrt(Expression a) { return call(Func::Sqrt, std::move(a)); }

  bool valid() const { return node_ != nullptr; }
  const Node& node() const { return *node_; }
  const Node* raw() const { return node_.get(); }

  /// True when the expression is a plain numeric literal.
  bool is_number() const;
  /// Literal value; only meaningful when is_number().
  double number_value() const;
  bool is_zero() const { return is_number() && number_value() == 0.0; }

 private:
  friend Expression make_node(Node n);
  explicit Expression(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Node {
  enum class Kind : unsigned char { Number, Pi, Coordinate, Negate, Binary, Call };

  Kind kind;
  double number = 0.0;
  int coord = -1;          // coordinate index, Kind::Coordinate only
  std::string name;        // coordinate name as written in the source
  BinaryOp op = BinaryOp::Add;
  Func fn = Func::Exp;
  Expression a, b;         // operands (a = unary/left, b = right)
  long source_pos = -1;    // offset into the parsed text; -1 for synthesized nodes
};

struct ParseError : Error {
  ParseError(const std::string& message, std::size_t pos);
  std::size_t position;
};

struct EvalError : Error {
  EvalError(const std::string& message, const Expression& subexpression, long pos);
  long position;  // source offset of the failing subexpression, -1 if synthesized
};

/// Parses an expression over the given coordinate names. Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | primary ('^' factor)?
///   primary:= NUMBER | IDENT | IDENT '(' expr (',' expr)* ')' | '(' expr ')'
/// '^' is right-associative and -x^2 parses as -(x^2). Functions:
/// exp log sqrt sin cos tan sinh cosh tanh pow; constant: pi.
Expression parse(std::string_view source, std::span<const std::string> coordinates);

double evaluate(const Expression& e, const Point& p);

/// Exact symbolic partial derivative with respect to coordinate `coord`.
Expression differentiate(const Expression& e, int coord);

/// Round-trippable text form (minimal parentheses, shortest digits).
std::string to_string(const Expression& e);

// Memoizing evaluation context for one point. Expressions produced by the
// differential-geometry layer share large sub-DAGs (metric inverse,
// Christoffel symbols, ...); evaluating a whole batch of components through
// one Evaluator makes the cost linear in the number of distinct nodes.
class Evaluator {
 public:
  explicit Evaluator(const Point& p) : point_(p) {}

  double operator()(const Expression& e);
  const Point& point() const { return point_; }

 private:
  double eval(const Expression& e);

  // Each entry pins its expression: keys stay unique even when temporary
  // fields evaluated earlier through this Evaluator have been destroyed
  // (a recycled allocation could otherwise alias a stale memo slot).
  struct Entry {
    Expression pin;
    double value;
  };

  Point point_;
  std::unordered_map<const Node*, Entry> memo_;
};

}  // namespace expr
}  // namespace riccilab
