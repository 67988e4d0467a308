#include "riccilab/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <vector>

#include <fmt/format.h>

namespace riccilab::expr {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct FuncInfo {
  std::string_view name;
  Func fn;
};

// 'pow' is listed with the reserved function names but lowers to BinaryOp::Pow.
constexpr std::array<FuncInfo, 9> kFuncs = {{
    {"exp", Func::Exp},
    {"log", Func::Log},
    {"sqrt", Func::Sqrt},
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"tan", Func::Tan},
    {"sinh", Func::Sinh},
    {"cosh", Func::Cosh},
    {"tanh", Func::Tanh},
}};

std::optional<Func> lookup_func(std::string_view name) {
  for (const auto& f : kFuncs)
    if (f.name == name) return f.fn;
  return std::nullopt;
}

std::string_view func_name(Func fn) {
  for (const auto& f : kFuncs)
    if (f.fn == fn) return f.name;
  return "?";
}

}  // namespace

Expression make_node(Node n) {
  return Expression(std::make_shared<const Node>(std::move(n)));
}

bool Expression::is_number() const {
  return node_ && node_->kind == Node::Kind::Number;
}

double Expression::number_value() const { return node_->number; }

Expression Expression::number(double value) {
  Node n;
  n.kind = Node::Kind::Number;
  n.number = value;
  return make_node(std::move(n));
}

Expression Expression::pi() {
  Node n;
  n.kind = Node::Kind::Pi;
  return make_node(std::move(n));
}

Expression Expression::coordinate(int index, std::string name) {
  Node n;
  n.kind = Node::Kind::Coordinate;
  n.coord = index;
  n.name = std::move(name);
  return make_node(std::move(n));
}

Expression Expression::unary_minus(Expression a) {
  if (a.is_number()) return number(-a.number_value());
  if (a.node().kind == Node::Kind::Negate) return a.node().a;
  Node n;
  n.kind = Node::Kind::Negate;
  n.a = std::move(a);
  return make_node(std::move(n));
}

namespace {

// Evaluation rule for '^' shared by the evaluator and the constant folder.
// Returns nullopt when the combination is a domain error.
std::optional<double> pow_value(double base, double exponent) {
  if (base < 0.0 && exponent != std::floor(exponent)) return std::nullopt;
  if (base == 0.0 && exponent < 0.0) return std::nullopt;
  double r = std::pow(base, exponent);
  if (!std::isfinite(r)) return std::nullopt;
  return r;
}

std::optional<double> call_value(Func fn, double v) {
  double r = 0.0;
  switch (fn) {
    case Func::Exp: r = std::exp(v); break;
    case Func::Log:
      if (v <= 0.0) return std::nullopt;
      r = std::log(v);
      break;
    case Func::Sqrt:
      if (v < 0.0) return std::nullopt;
      r = std::sqrt(v);
      break;
    case Func::Sin: r = std::sin(v); break;
    case Func::Cos: r = std::cos(v); break;
    case Func::Tan: r = std::tan(v); break;
    case Func::Sinh: r = std::sinh(v); break;
    case Func::Cosh: r = std::cosh(v); break;
    case Func::Tanh: r = std::tanh(v); break;
  }
  if (!std::isfinite(r)) return std::nullopt;
  return r;
}

}  // namespace

Expression Expression::binary(BinaryOp op, Expression a, Expression b) {
  const bool an = a.is_number();
  const bool bn = b.is_number();
  switch (op) {
    case BinaryOp::Add:
      if (an && a.number_value() == 0.0) return b;
      if (bn && b.number_value() == 0.0) return a;
      if (an && bn) return number(a.number_value() + b.number_value());
      break;
    case BinaryOp::Sub:
      if (bn && b.number_value() == 0.0) return a;
      if (an && a.number_value() == 0.0) return unary_minus(std::move(b));
      if (an && bn) return number(a.number_value() - b.number_value());
      break;
    case BinaryOp::Mul:
      if ((an && a.number_value() == 0.0) || (bn && b.number_value() == 0.0)) return number(0.0);
      if (an && a.number_value() == 1.0) return b;
      if (bn && b.number_value() == 1.0) return a;
      if (an && a.number_value() == -1.0) return unary_minus(std::move(b));
      if (bn && b.number_value() == -1.0) return unary_minus(std::move(a));
      if (an && bn) return number(a.number_value() * b.number_value());
      break;
    case BinaryOp::Div:
      if (an && a.number_value() == 0.0 && !(bn && b.number_value() == 0.0)) return number(0.0);
      if (bn && b.number_value() == 1.0) return a;
      if (an && bn && b.number_value() != 0.0) return number(a.number_value() / b.number_value());
      break;
    case BinaryOp::Pow:
      if (bn && b.number_value() == 1.0) return a;
      if (bn && b.number_value() == 0.0) return number(1.0);
      if (an && bn) {
        if (auto v = pow_value(a.number_value(), b.number_value())) return number(*v);
      }
      break;
  }
  Node n;
  n.kind = Node::Kind::Binary;
  n.op = op;
  n.a = std::move(a);
  n.b = std::move(b);
  return make_node(std::move(n));
}

Expression Expression::call(Func f, Expression a) {
  if (a.is_number()) {
    if (auto v = call_value(f, a.number_value())) return number(*v);
  }
  Node n;
  n.kind = Node::Kind::Call;
  n.fn = f;
  n.a = std::move(a);
  return make_node(std::move(n));
}

ParseError::ParseError(const std::string& message, std::size_t pos)
    : Error(fmt::format("parse error at position {}: {}", pos, message)), position(pos) {}

EvalError::EvalError(const std::string& message, const Expression& sub, long pos)
    : Error(pos >= 0 ? fmt::format("evaluation error at position {}: {} in '{}'", pos, message, to_string(sub))
                     : fmt::format("evaluation error: {} in '{}'", message, to_string(sub))),
      position(pos) {}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
  enum class Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };
  Kind kind = Kind::End;
  std::size_t pos = 0;
  double number = 0.0;
  std::string_view text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    tok_ = Token{};
    tok_.pos = pos_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    char c = src_[pos_];
    switch (c) {
      case '+': tok_.kind = Token::Kind::Plus; ++pos_; return;
      case '-': tok_.kind = Token::Kind::Minus; ++pos_; return;
      case '*': tok_.kind = Token::Kind::Star; ++pos_; return;
      case '/': tok_.kind = Token::Kind::Slash; ++pos_; return;
      case '^': tok_.kind = Token::Kind::Caret; ++pos_; return;
      case '(': tok_.kind = Token::Kind::LParen; ++pos_; return;
      case ')': tok_.kind = Token::Kind::RParen; ++pos_; return;
      case ',': tok_.kind = Token::Kind::Comma; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      tok_.kind = Token::Kind::Ident;
      tok_.text = src_.substr(start, pos_ - start);
      return;
    }
    throw ParseError(fmt::format("unexpected character '{}'", c), pos_);
  }

  void lex_number() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // 'e' belongs to a following identifier, not an exponent
      }
    }
    std::string_view text = src_.substr(start, pos_ - start);
    if (text == ".") throw ParseError("malformed number", start);
    double value = 0.0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || p != text.data() + text.size())
      throw ParseError(fmt::format("malformed number '{}'", text), start);
    tok_.kind = Token::Kind::Number;
    tok_.number = value;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token tok_;
};

// Builds AST nodes verbatim, without the folding in Expression's public
// builders, so a parsed tree mirrors the source.
class Parser {
 public:
  Parser(std::string_view src, std::span<const std::string> coords)
      : lex_(src), coords_(coords) {}

  Expression run() {
    Expression e = parse_expr();
    if (lex_.peek().kind != Token::Kind::End)
      throw ParseError("expected end of input, '+', '-', '*', '/' or '^'", lex_.peek().pos);
    return e;
  }

 private:
  static Expression raw(Node n) { return make_node(std::move(n)); }

  Expression parse_expr() {
    Expression lhs = parse_term();
    while (true) {
      Token::Kind k = lex_.peek().kind;
      if (k != Token::Kind::Plus && k != Token::Kind::Minus) return lhs;
      Token t = lex_.take();
      Node n;
      n.kind = Node::Kind::Binary;
      n.op = k == Token::Kind::Plus ? BinaryOp::Add : BinaryOp::Sub;
      n.a = std::move(lhs);
      n.b = parse_term();
      n.source_pos = static_cast<long>(t.pos);
      lhs = raw(std::move(n));
    }
  }

  Expression parse_term() {
    Expression lhs = parse_factor();
    while (true) {
      Token::Kind k = lex_.peek().kind;
      if (k != Token::Kind::Star && k != Token::Kind::Slash) return lhs;
      Token t = lex_.take();
      Node n;
      n.kind = Node::Kind::Binary;
      n.op = k == Token::Kind::Star ? BinaryOp::Mul : BinaryOp::Div;
      n.a = std::move(lhs);
      n.b = parse_factor();
      n.source_pos = static_cast<long>(t.pos);
      lhs = raw(std::move(n));
    }
  }

  // factor := '-' factor | primary ('^' factor)?   so -x^2 == -(x^2)
  Expression parse_factor() {
    if (lex_.peek().kind == Token::Kind::Minus) {
      Token t = lex_.take();
      Node n;
      n.kind = Node::Kind::Negate;
      n.a = parse_factor();
      n.source_pos = static_cast<long>(t.pos);
      return raw(std::move(n));
    }
    Expression base = parse_primary();
    if (lex_.peek().kind == Token::Kind::Caret) {
      Token t = lex_.take();
      Node n;
      n.kind = Node::Kind::Binary;
      n.op = BinaryOp::Pow;
      n.a = std::move(base);
      n.b = parse_factor();
      n.source_pos = static_cast<long>(t.pos);
      return raw(std::move(n));
    }
    return base;
  }

  Expression parse_primary() {
    Token t = lex_.take();
    switch (t.kind) {
      case Token::Kind::Number: {
        Node n;
        n.kind = Node::Kind::Number;
        n.number = t.number;
        n.source_pos = static_cast<long>(t.pos);
        return raw(std::move(n));
      }
      case Token::Kind::LParen: {
        Expression e = parse_expr();
        expect(Token::Kind::RParen, "')'");
        return e;
      }
      case Token::Kind::Ident:
        return parse_ident(t);
      default:
        throw ParseError("expected a number, identifier or '('", t.pos);
    }
  }

  Expression parse_ident(const Token& t) {
    if (lex_.peek().kind == Token::Kind::LParen) {
      lex_.take();
      std::vector<Expression> args;
      args.push_back(parse_expr());
      while (lex_.peek().kind == Token::Kind::Comma) {
        lex_.take();
        args.push_back(parse_expr());
      }
      expect(Token::Kind::RParen, "')' or ','");
      if (t.text == "pow") {
        if (args.size() != 2)
          throw ParseError(fmt::format("function 'pow' takes 2 arguments, got {}", args.size()),
                           t.pos);
        Node n;
        n.kind = Node::Kind::Binary;
        n.op = BinaryOp::Pow;
        n.a = std::move(args[0]);
        n.b = std::move(args[1]);
        n.source_pos = static_cast<long>(t.pos);
        return raw(std::move(n));
      }
      auto fn = lookup_func(t.text);
      if (!fn) throw ParseError(fmt::format("unknown function '{}'", t.text), t.pos);
      if (args.size() != 1)
        throw ParseError(
            fmt::format("function '{}' takes 1 argument, got {}", t.text, args.size()), t.pos);
      Node n;
      n.kind = Node::Kind::Call;
      n.fn = *fn;
      n.a = std::move(args[0]);
      n.source_pos = static_cast<long>(t.pos);
      return raw(std::move(n));
    }
    if (t.text == "pi") {
      Node n;
      n.kind = Node::Kind::Pi;
      n.source_pos = static_cast<long>(t.pos);
      return raw(std::move(n));
    }
    if (t.text == "pow" || lookup_func(t.text))
      throw ParseError(fmt::format("reserved function name '{}' used as identifier", t.text),
                       t.pos);
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (coords_[i] == t.text) {
        Node n;
        n.kind = Node::Kind::Coordinate;
        n.coord = static_cast<int>(i);
        n.name = std::string(t.text);
        n.source_pos = static_cast<long>(t.pos);
        return raw(std::move(n));
      }
    }
    throw ParseError(fmt::format("unknown identifier '{}' (not a chart coordinate)", t.text),
                     t.pos);
  }

  void expect(Token::Kind k, const char* what) {
    if (lex_.peek().kind != k)
      throw ParseError(fmt::format("expected {}", what), lex_.peek().pos);
    lex_.take();
  }

  Lexer lex_;
  std::span<const std::string> coords_;
};

}  // namespace

Expression parse(std::string_view source, std::span<const std::string> coordinates) {
  if (source.empty()) throw ParseError("empty expression", 0);
  return Parser(source, coordinates).run();
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

double eval_plain(const Expression& e, const Point& p) {
  const Node& n = e.node();
  double r = 0.0;
  switch (n.kind) {
    case Node::Kind::Number: r = n.number; break;
    case Node::Kind::Pi: r = kPi; break;
    case Node::Kind::Coordinate: r = p[static_cast<std::size_t>(n.coord)]; break;
    case Node::Kind::Negate: r = -eval_plain(n.a, p); break;
    case Node::Kind::Binary: {
      double a = eval_plain(n.a, p);
      double b = eval_plain(n.b, p);
      switch (n.op) {
        case BinaryOp::Add: r = a + b; break;
        case BinaryOp::Sub: r = a - b; break;
        case BinaryOp::Mul: r = a * b; break;
        case BinaryOp::Div:
          if (b == 0.0) throw EvalError("division by zero", e, n.source_pos);
          r = a / b;
          break;
        case BinaryOp::Pow: {
          auto v = pow_value(a, b);
          if (!v) throw EvalError("power outside the real domain", e, n.source_pos);
          r = *v;
          break;
        }
      }
      break;
    }
    case Node::Kind::Call: {
      double a = eval_plain(n.a, p);
      auto v = call_value(n.fn, a);
      if (!v)
        throw EvalError(fmt::format("'{}' argument outside the real domain", func_name(n.fn)), e,
                        n.source_pos);
      r = *v;
      break;
    }
  }
  if (!std::isfinite(r)) throw EvalError("non-finite value", e, n.source_pos);
  return r;
}

}  // namespace

double evaluate(const Expression& e, const Point& p) { return eval_plain(e, p); }

double Evaluator::eval(const Expression& e) {
  const Node& n = e.node();
  // literal leaves are cheaper to recompute than to look up
  if (n.kind == Node::Kind::Number) return n.number;
  if (n.kind == Node::Kind::Pi) return kPi;
  if (n.kind == Node::Kind::Coordinate) return point_[static_cast<std::size_t>(n.coord)];

  if (auto it = memo_.find(&n); it != memo_.end()) return it->second.value;

  double r = 0.0;
  switch (n.kind) {
    case Node::Kind::Negate: r = -eval(n.a); break;
    case Node::Kind::Binary: {
      double a = eval(n.a);
      double b = eval(n.b);
      switch (n.op) {
        case BinaryOp::Add: r = a + b; break;
        case BinaryOp::Sub: r = a - b; break;
        case BinaryOp::Mul: r = a * b; break;
        case BinaryOp::Div:
          if (b == 0.0) throw EvalError("division by zero", e, n.source_pos);
          r = a / b;
          break;
        case BinaryOp::Pow: {
          auto v = pow_value(a, b);
          if (!v) throw EvalError("power outside the real domain", e, n.source_pos);
          r = *v;
          break;
        }
      }
      break;
    }
    case Node::Kind::Call: {
      double a = eval(n.a);
      auto v = call_value(n.fn, a);
      if (!v)
        throw EvalError(fmt::format("'{}' argument outside the real domain", func_name(n.fn)), e,
                        n.source_pos);
      r = *v;
      break;
    }
    default:
      throw Error("evaluate: malformed expression node");
  }
  if (!std::isfinite(r)) throw EvalError("non-finite value", e, n.source_pos);
  memo_.emplace(&n, Entry{e, r});
  return r;
}

double Evaluator::operator()(const Expression& e) { return eval(e); }

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

namespace {

// Cache of already-computed derivatives, keyed by source node. The entry pins
// the source expression so a recycled allocation can never alias a stale key.
// Differential-geometry code differentiates the same shared sub-DAGs (metric
// inverse, connection coefficients) from many components; memoizing here keeps
// the synthesized trees shared instead of duplicated per component.
struct DiffEntry {
  Expression pin;
  std::array<Expression, 4> d;
};
thread_local std::unordered_map<const Node*, DiffEntry> g_diff_cache;

Expression differentiate_uncached(const Expression& e, int coord);

}  // namespace

Expression differentiate(const Expression& e, int coord) {
  const Node& n = e.node();
  // trivial leaves are cheaper to rebuild than to cache
  if (n.kind == Node::Kind::Number || n.kind == Node::Kind::Pi)
    return Expression::number(0.0);
  if (n.kind == Node::Kind::Coordinate)
    return Expression::number(n.coord == coord ? 1.0 : 0.0);

  if (auto it = g_diff_cache.find(e.raw());
      it != g_diff_cache.end() && it->second.d[static_cast<std::size_t>(coord)].valid())
    return it->second.d[static_cast<std::size_t>(coord)];

  Expression r = differentiate_uncached(e, coord);
  DiffEntry& entry = g_diff_cache[e.raw()];  // (re)lookup: recursion may rehash
  if (!entry.pin.valid()) entry.pin = e;
  entry.d[static_cast<std::size_t>(coord)] = r;
  return r;
}

namespace {

Expression differentiate_uncached(const Expression& e, int coord) {
  using E = Expression;
  const Node& n = e.node();
  switch (n.kind) {
    case Node::Kind::Number:
    case Node::Kind::Pi:
      return E::number(0.0);
    case Node::Kind::Coordinate:
      return E::number(n.coord == coord ? 1.0 : 0.0);
    case Node::Kind::Negate:
      return E::unary_minus(differentiate(n.a, coord));
    case Node::Kind::Binary: {
      switch (n.op) {
        case BinaryOp::Add:
          return E::add(differentiate(n.a, coord), differentiate(n.b, coord));
        case BinaryOp::Sub:
          return E::sub(differentiate(n.a, coord), differentiate(n.b, coord));
        case BinaryOp::Mul:
          return E::add(E::mul(differentiate(n.a, coord), n.b),
                        E::mul(n.a, differentiate(n.b, coord)));
        case BinaryOp::Div:
          // (a'b - ab') / b^2
          return E::div(E::sub(E::mul(differentiate(n.a, coord), n.b),
                               E::mul(n.a, differentiate(n.b, coord))),
                        E::pow(n.b, E::number(2.0)));
        case BinaryOp::Pow: {
          if (n.b.is_number()) {
            // d(a^c) = c * a^(c-1) * a', valid for negative bases with integer c
            double c = n.b.number_value();
            return E::mul(E::mul(E::number(c), E::pow(n.a, E::number(c - 1.0))),
                          differentiate(n.a, coord));
          }
          // d(a^b) = a^b * (b' log a + b a'/a); real only for a > 0, which is
          // already the evaluation domain of a non-constant exponent
          return E::mul(e, E::add(E::mul(differentiate(n.b, coord), E::call(Func::Log, n.a)),
                                  E::div(E::mul(n.b, differentiate(n.a, coord)), n.a)));
        }
      }
      break;
    }
    case Node::Kind::Call: {
      Expression da = differentiate(n.a, coord);
      switch (n.fn) {
        case Func::Exp: return E::mul(da, e);
        case Func::Log: return E::div(da, n.a);
        case Func::Sqrt: return E::div(da, E::mul(E::number(2.0), e));
        case Func::Sin: return E::mul(da, E::call(Func::Cos, n.a));
        case Func::Cos: return E::unary_minus(E::mul(da, E::call(Func::Sin, n.a)));
        case Func::Tan: return E::div(da, E::pow(E::call(Func::Cos, n.a), E::number(2.0)));
        case Func::Sinh: return E::mul(da, E::call(Func::Cosh, n.a));
        case Func::Cosh: return E::mul(da, E::call(Func::Sinh, n.a));
        case Func::Tanh: return E::div(da, E::pow(E::call(Func::Cosh, n.a), E::number(2.0)));
      }
      break;
    }
  }
  throw Error("differentiate: malformed expression node");
}

}  // namespace

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

// Precedence levels: additive 1, multiplicative 2, unary minus 3, power 4,
// atoms 5. A child is parenthesized when its level is below the context's.
void write(std::string& out, const Expression& e, int context) {
  const Node& n = e.node();
  switch (n.kind) {
    case Node::Kind::Number: {
      char buf[32];
      double v = n.number;
      if (v < 0.0) {
        // negative literals only arise from folding; print as negation
        if (context > 3) {
          out += "(-";
          write(out, Expression::number(-v), 3);
          out += ')';
        } else {
          out += '-';
          write(out, Expression::number(-v), 4);
        }
        return;
      }
      auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
      out.append(buf, p);
      return;
    }
    case Node::Kind::Pi: out += "pi"; return;
    case Node::Kind::Coordinate: out += n.name; return;
    case Node::Kind::Negate: {
      if (context > 3) {
        out += "(-";
        write(out, n.a, 3);
        out += ')';
      } else {
        out += '-';
        write(out, n.a, 4);
      }
      return;
    }
    case Node::Kind::Binary: {
      int level = 0;
      const char* sym = "";
      switch (n.op) {
        case BinaryOp::Add: level = 1; sym = "+"; break;
        case BinaryOp::Sub: level = 1; sym = "-"; break;
        case BinaryOp::Mul: level = 2; sym = "*"; break;
        case BinaryOp::Div: level = 2; sym = "/"; break;
        case BinaryOp::Pow: level = 4; sym = "^"; break;
      }
      bool parens = level < context;
      if (parens) out += '(';
      if (n.op == BinaryOp::Pow) {
        write(out, n.a, 5);            // left operand of '^' must be atomic
        out += sym;
        write(out, n.b, 4);            // right-associative
      } else {
        write(out, n.a, level);
        out += sym;
        write(out, n.b, level + 1);    // left-associative
      }
      if (parens) out += ')';
      return;
    }
    case Node::Kind::Call:
      out += func_name(n.fn);
      out += '(';
      write(out, n.a, 1);
      out += ')';
      return;
  }
}

}  // namespace

std::string to_string(const Expression& e) {
  if (!e.valid()) return "<empty>";
  std::string out;
  write(out, e, 1);
  return out;
}

}  // namespace riccilab::expr
