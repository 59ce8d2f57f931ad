#include "bochnerlab/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <unordered_map>

namespace bochnerlab::expr {

ParseError::ParseError(const std::string& msg, int offset)
    : std::runtime_error(msg + " (at offset " + std::to_string(offset) + ")"),
      offset(offset) {}

namespace {

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

// ---------------------------------------------------------------- parsing

struct Token {
  enum Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Kind kind;
  int offset;
  double value = 0.0;
  std::string text;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok_.offset = static_cast<int>(pos_);
    if (pos_ >= text_.size()) {
      tok_.kind = Token::End;
      return;
    }
    char c = text_[pos_];
    switch (c) {
      case '+': tok_.kind = Token::Plus; ++pos_; return;
      case '-': tok_.kind = Token::Minus; ++pos_; return;
      case '*': tok_.kind = Token::Star; ++pos_; return;
      case '/': tok_.kind = Token::Slash; ++pos_; return;
      case '^': tok_.kind = Token::Caret; ++pos_; return;
      case '(': tok_.kind = Token::LParen; ++pos_; return;
      case ')': tok_.kind = Token::RParen; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      tok_.kind = Token::Ident;
      tok_.text = text_.substr(start, pos_ - start);
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", tok_.offset);
  }

  void lex_number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // "2e" is the number 2 followed by an identifier
      }
    }
    std::string s = text_.substr(start, pos_ - start);
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
      throw ParseError("malformed number '" + s + "'", static_cast<int>(start));
    tok_.kind = Token::Number;
    tok_.value = v;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token tok_;
};

class Parser {
public:
  Parser(const std::string& text, int dim) : lex_(text), dim_(dim) {}

  NodePtr run() {
    NodePtr e = parse_expr();
    const Token& t = lex_.peek();
    if (t.kind != Token::End)
      throw ParseError("unexpected trailing input", t.offset);
    return e;
  }

private:
  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
      Token op = lex_.take();
      NodePtr rhs = parse_term();
      lhs = op.kind == Token::Plus ? add(lhs, rhs) : sub(lhs, rhs);
    }
    return lhs;
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    while (lex_.peek().kind == Token::Star || lex_.peek().kind == Token::Slash) {
      Token op = lex_.take();
      NodePtr rhs = parse_factor();
      lhs = op.kind == Token::Star ? mul(lhs, rhs) : div(lhs, rhs);
    }
    return lhs;
  }

  NodePtr parse_factor() {
    NodePtr b = parse_base();
    if (lex_.peek().kind == Token::Caret) {
      lex_.take();
      int sign = 1;
      if (lex_.peek().kind == Token::Minus) {
        lex_.take();
        sign = -1;
      }
      Token t = lex_.take();
      if (t.kind != Token::Number || t.value != std::floor(t.value) || std::abs(t.value) > 1e9)
        throw ParseError("expected integer exponent after '^'", t.offset);
      return pow(b, sign * static_cast<int>(t.value));
    }
    return b;
  }

  NodePtr parse_base() {
    Token t = lex_.take();
    switch (t.kind) {
      case Token::Number:
        return constant(t.value);
      case Token::Minus:
        return neg(parse_base());
      case Token::LParen: {
        NodePtr e = parse_expr();
        expect(Token::RParen, "expected ')'");
        return e;
      }
      case Token::Ident:
        return parse_ident(t);
      default:
        throw ParseError("expected a number, variable, function or '('", t.offset);
    }
  }

  NodePtr parse_ident(const Token& t) {
    const std::string& s = t.text;
    if (s.size() >= 2 && s[0] == 'x' && std::isdigit(static_cast<unsigned char>(s[1]))) {
      int idx = 0;
      auto [p, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), idx);
      if (ec == std::errc() && p == s.data() + s.size()) {
        if (idx < 1 || idx > dim_)
          throw ParseError("variable " + s + " out of range for dimension " +
                               std::to_string(dim_),
                           t.offset);
        return variable(idx - 1);
      }
    }
    NodePtr (*fn)(NodePtr) = nullptr;
    if (s == "sin") fn = &sin;
    else if (s == "cos") fn = &cos;
    else if (s == "exp") fn = &exp;
    else if (s == "sqrt") fn = &sqrt;
    if (!fn) throw ParseError("unknown identifier '" + s + "'", t.offset);
    expect(Token::LParen, "expected '(' after function name");
    NodePtr arg = parse_expr();
    expect(Token::RParen, "expected ')'");
    return fn(arg);
  }

  void expect(Token::Kind k, const char* msg) {
    Token t = lex_.take();
    if (t.kind != k) throw ParseError(msg, t.offset);
  }

  Lexer lex_;
  int dim_;
};

// --------------------------------------------------------------- printing

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

bool prints_as_base(const Node& n) {
  switch (n.kind) {
    case NodeKind::Variable:
    case NodeKind::Neg:
    case NodeKind::Sin:
    case NodeKind::Cos:
    case NodeKind::Exp:
    case NodeKind::Sqrt:
      return true;
    case NodeKind::Constant:
      return true;  // the builder keeps constants non-negative
    default:
      return false;
  }
}

bool is_add_level(NodeKind k) { return k == NodeKind::Add || k == NodeKind::Sub; }
bool is_mul_level(NodeKind k) { return k == NodeKind::Mul || k == NodeKind::Div; }

void print_node(const Node& n, std::string& out);

void print_wrapped(const Node& n, bool wrap, std::string& out) {
  if (wrap) {
    out += '(';
    print_node(n, out);
    out += ')';
  } else {
    print_node(n, out);
  }
}

void print_node(const Node& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::Constant:
      out += format_double(n.value);
      return;
    case NodeKind::Variable:
      out += 'x';
      out += std::to_string(n.var + 1);
      return;
    case NodeKind::Add:
    case NodeKind::Sub: {
      print_node(*n.lhs, out);
      out += n.kind == NodeKind::Add ? '+' : '-';
      // the right operand must not reassociate with the chain
      bool wrap = is_add_level(n.rhs->kind) ||
                  (n.kind == NodeKind::Sub && n.rhs->kind == NodeKind::Neg);
      print_wrapped(*n.rhs, wrap, out);
      return;
    }
    case NodeKind::Mul:
    case NodeKind::Div: {
      print_wrapped(*n.lhs, is_add_level(n.lhs->kind), out);
      out += n.kind == NodeKind::Mul ? '*' : '/';
      bool wrap = is_add_level(n.rhs->kind) || is_mul_level(n.rhs->kind);
      print_wrapped(*n.rhs, wrap, out);
      return;
    }
    case NodeKind::Pow: {
      print_wrapped(*n.lhs, !prints_as_base(*n.lhs), out);
      out += '^';
      out += std::to_string(n.exponent);
      return;
    }
    case NodeKind::Neg:
      out += '-';
      print_wrapped(*n.lhs, !prints_as_base(*n.lhs), out);
      return;
    case NodeKind::Sin: out += "sin("; break;
    case NodeKind::Cos: out += "cos("; break;
    case NodeKind::Exp: out += "exp("; break;
    case NodeKind::Sqrt: out += "sqrt("; break;
  }
  print_node(*n.lhs, out);
  out += ')';
}

// ------------------------------------------------------------- evaluation

int max_variable(const Node& n) {
  int m = n.kind == NodeKind::Variable ? n.var : -1;
  if (n.lhs) m = std::max(m, max_variable(*n.lhs));
  if (n.rhs) m = std::max(m, max_variable(*n.rhs));
  return m;
}

class JetEvaluator {
public:
  explicit JetEvaluator(std::span<const jets::Jet> env) : env_(env) {}

  jets::Jet eval(const Node& n) {
    auto it = memo_.find(&n);
    if (it != memo_.end()) return it->second;
    jets::Jet r = compute(n);
    memo_.emplace(&n, r);
    return r;
  }

private:
  jets::Jet compute(const Node& n) {
    switch (n.kind) {
      case NodeKind::Constant:
        return jets::Jet::constant(env_[0].dim(), env_[0].order(), n.value);
      case NodeKind::Variable:
        return env_[n.var];
      case NodeKind::Add: return eval(*n.lhs) + eval(*n.rhs);
      case NodeKind::Sub: return eval(*n.lhs) - eval(*n.rhs);
      case NodeKind::Mul: return eval(*n.lhs) * eval(*n.rhs);
      case NodeKind::Div: return guarded(n, [&] { return eval(*n.lhs) / eval(*n.rhs); });
      case NodeKind::Pow: return guarded(n, [&] { return jets::pow(eval(*n.lhs), n.exponent); });
      case NodeKind::Neg: return -eval(*n.lhs);
      case NodeKind::Sin: return jets::sin(eval(*n.lhs));
      case NodeKind::Cos: return jets::cos(eval(*n.lhs));
      case NodeKind::Exp: return jets::exp(eval(*n.lhs));
      case NodeKind::Sqrt: return guarded(n, [&] { return jets::sqrt(eval(*n.lhs)); });
    }
    throw std::logic_error("unhandled node kind");
  }

  template <class F>
  jets::Jet guarded(const Node& n, F f) {
    try {
      return f();
    } catch (const jets::JetDomainError& e) {
      std::string text;
      print_node(n, text);
      throw EvalDomainError(std::string(e.what()) + " in '" + text + "'");
    }
  }

  std::span<const jets::Jet> env_;
  std::unordered_map<const Node*, jets::Jet> memo_;
};

}  // namespace

// ------------------------------------------------------------ public api

NodePtr constant(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("expression constants must be finite");
  // the grammar has no negative literals, so keep stored constants >= 0 and
  // express signs with an explicit Neg node; this makes print/parse a bijection
  if (v < 0.0) return neg(constant(-v));
  if (v == 0.0) v = 0.0;
  return make({.kind = NodeKind::Constant, .value = v});
}

NodePtr variable(int var) {
  if (var < 0) throw std::invalid_argument("variable index must be non-negative");
  return make({.kind = NodeKind::Variable, .var = var});
}

NodePtr add(NodePtr a, NodePtr b) { return make({.kind = NodeKind::Add, .lhs = a, .rhs = b}); }
NodePtr sub(NodePtr a, NodePtr b) { return make({.kind = NodeKind::Sub, .lhs = a, .rhs = b}); }
NodePtr mul(NodePtr a, NodePtr b) { return make({.kind = NodeKind::Mul, .lhs = a, .rhs = b}); }
NodePtr div(NodePtr a, NodePtr b) { return make({.kind = NodeKind::Div, .lhs = a, .rhs = b}); }
NodePtr pow(NodePtr a, int exponent) {
  return make({.kind = NodeKind::Pow, .exponent = exponent, .lhs = a});
}
NodePtr neg(NodePtr a) { return make({.kind = NodeKind::Neg, .lhs = a}); }
NodePtr sin(NodePtr a) { return make({.kind = NodeKind::Sin, .lhs = a}); }
NodePtr cos(NodePtr a) { return make({.kind = NodeKind::Cos, .lhs = a}); }
NodePtr exp(NodePtr a) { return make({.kind = NodeKind::Exp, .lhs = a}); }
NodePtr sqrt(NodePtr a) { return make({.kind = NodeKind::Sqrt, .lhs = a}); }

Expression::Expression(NodePtr root, int dim) : root_(std::move(root)), dim_(dim) {
  if (!root_) throw std::invalid_argument("expression root must not be null");
  if (dim < 1) throw std::invalid_argument("expression dimension must be positive");
  if (max_variable(*root_) >= dim)
    throw std::invalid_argument("expression references a variable beyond its dimension");
}

Expression Expression::parse(const std::string& text, int dim) {
  return Expression(Parser(text, dim).run(), dim);
}

std::string Expression::print() const {
  std::string out;
  print_node(*root_, out);
  return out;
}

bool equal(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::Constant: return a->value == b->value;
    case NodeKind::Variable: return a->var == b->var;
    case NodeKind::Pow: return a->exponent == b->exponent && equal(a->lhs, b->lhs);
    default: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
  }
}

bool operator==(const Expression& a, const Expression& b) {
  return a.dim_ == b.dim_ && equal(a.root_, b.root_);
}

jets::Jet eval_jet(const Expression& e, std::span<const jets::Jet> env) {
  if (static_cast<int>(env.size()) != e.dim())
    throw std::invalid_argument("environment size does not match expression dimension");
  return JetEvaluator(env).eval(*e.root());
}

jets::Jet eval_jet(const Expression& e, std::span<const double> point, int order) {
  if (static_cast<int>(point.size()) != e.dim())
    throw std::invalid_argument("point size does not match expression dimension");
  if (order < 0 || order > 4) throw std::invalid_argument("jet order must be 0..4");
  std::vector<jets::Jet> env;
  env.reserve(point.size());
  for (int i = 0; i < e.dim(); ++i)
    env.push_back(jets::Jet::variable(e.dim(), order, i, point[i]));
  return eval_jet(e, env);
}

double eval_value(const Expression& e, std::span<const double> point) {
  return eval_jet(e, point, 0).value();
}

}  // namespace bochnerlab::expr
