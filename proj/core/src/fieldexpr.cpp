#include "holocurve/fieldexpr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include "holocurve/errors.hpp"

namespace holocurve {

// ------------------------------------------------------------- Expr nodes

enum class NodeKind { Literal, Time, State, Negate, Add, Sub, Mul, Div, Power, Call };

struct Expr::Node {
  NodeKind kind;
  Complex value{};
  std::size_t index = 0;
  int exponent = 0;
  Function fn = Function::Exp;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
  long max_state = -1;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

Complex integer_power(Complex base, int exponent) {
  const bool invert = exponent < 0;
  unsigned long e = invert ? static_cast<unsigned long>(-static_cast<long>(exponent)) : static_cast<unsigned long>(exponent);
  Complex result = 1.0;
  while (e != 0) {
    if (e & 1UL) result *= base;
    base *= base;
    e >>= 1;
  }
  return invert ? 1.0 / result : result;
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Expr Expr::literal(Complex value) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Literal;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::time() {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Time;
  return Expr(std::move(n));
}

Expr Expr::state(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::State;
  n->index = index;
  n->max_state = static_cast<long>(index);
  return Expr(std::move(n));
}

namespace {

std::shared_ptr<Expr::Node> make_unary(NodeKind kind, const NodePtr& operand) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = kind;
  n->lhs = operand;
  n->max_state = operand->max_state;
  return n;
}

std::shared_ptr<Expr::Node> make_binary(NodeKind kind, const NodePtr& lhs, const NodePtr& rhs) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = kind;
  n->lhs = lhs;
  n->rhs = rhs;
  n->max_state = std::max(lhs->max_state, rhs->max_state);
  return n;
}

}  // namespace

Expr Expr::negate(Expr operand) { return Expr(make_unary(NodeKind::Negate, operand.node_)); }
Expr Expr::add(Expr lhs, Expr rhs) { return Expr(make_binary(NodeKind::Add, lhs.node_, rhs.node_)); }
Expr Expr::sub(Expr lhs, Expr rhs) { return Expr(make_binary(NodeKind::Sub, lhs.node_, rhs.node_)); }
Expr Expr::mul(Expr lhs, Expr rhs) { return Expr(make_binary(NodeKind::Mul, lhs.node_, rhs.node_)); }

Expr Expr::div(Expr lhs, Expr rhs) {
  if (rhs.depends_on_state()) throw ParameterError("state variable in denominator");
  return Expr(make_binary(NodeKind::Div, lhs.node_, rhs.node_));
}

Expr Expr::power(Expr base, int exponent) {
  if (exponent < 0 && base.depends_on_state()) throw ParameterError("state variable in denominator");
  auto n = make_unary(NodeKind::Power, base.node_);
  n->exponent = exponent;
  return Expr(std::move(n));
}

Expr Expr::call(Function fn, Expr argument) {
  auto n = make_unary(NodeKind::Call, argument.node_);
  n->fn = fn;
  return Expr(std::move(n));
}

bool Expr::depends_on_state() const noexcept { return node_->max_state >= 0; }
long Expr::max_state_index() const noexcept { return node_->max_state; }

namespace {

Complex evaluate_node(const Expr::Node& n, double t, std::span<const Complex> z) {
  switch (n.kind) {
    case NodeKind::Literal: return n.value;
    case NodeKind::Time: return t;
    case NodeKind::State: return z[n.index];
    case NodeKind::Negate: return -evaluate_node(*n.lhs, t, z);
    case NodeKind::Add: return evaluate_node(*n.lhs, t, z) + evaluate_node(*n.rhs, t, z);
    case NodeKind::Sub: return evaluate_node(*n.lhs, t, z) - evaluate_node(*n.rhs, t, z);
    case NodeKind::Mul: return evaluate_node(*n.lhs, t, z) * evaluate_node(*n.rhs, t, z);
    case NodeKind::Div: return evaluate_node(*n.lhs, t, z) / evaluate_node(*n.rhs, t, z);
    case NodeKind::Power: return integer_power(evaluate_node(*n.lhs, t, z), n.exponent);
    case NodeKind::Call: {
      const Complex arg = evaluate_node(*n.lhs, t, z);
      switch (n.fn) {
        case Function::Exp: return std::exp(arg);
        case Function::Sin: return std::sin(arg);
        case Function::Cos: return std::cos(arg);
      }
    }
  }
  return {};
}

void print_node(const Expr::Node& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::Literal:
      out += '(';
      out += format_real(n.value.real());
      if (n.value.imag() != 0.0) {
        out += '+';
        out += format_real(n.value.imag());
        out += 'i';
      }
      out += ')';
      return;
    case NodeKind::Time: out += 't'; return;
    case NodeKind::State: out += 'z' + std::to_string(n.index); return;
    case NodeKind::Negate:
      out += "(-";
      print_node(*n.lhs, out);
      out += ')';
      return;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: {
      static constexpr char ops[] = {'+', '-', '*', '/'};
      out += '(';
      print_node(*n.lhs, out);
      out += ops[static_cast<int>(n.kind) - static_cast<int>(NodeKind::Add)];
      print_node(*n.rhs, out);
      out += ')';
      return;
    }
    case NodeKind::Power:
      out += '(';
      print_node(*n.lhs, out);
      out += '^';
      out += std::to_string(n.exponent);
      out += ')';
      return;
    case NodeKind::Call:
      out += n.fn == Function::Exp ? "exp(" : n.fn == Function::Sin ? "sin(" : "cos(";
      print_node(*n.lhs, out);
      out += ')';
      return;
  }
}

}  // namespace

Complex Expr::evaluate(double t, std::span<const Complex> state) const { return evaluate_node(*node_, t, state); }

std::string Expr::to_string() const {
  std::string out;
  print_node(*node_, out);
  return out;
}

// -------------------------------------------------------------- FieldExpr

FieldExpr::FieldExpr(std::vector<Expr> coords, std::size_t dim) : coords_(std::move(coords)), dim_(dim) {
  if (dim == 0) throw ParameterError("field dimension must be >= 1");
  if (coords_.size() != dim) {
    throw ParameterError("field has " + std::to_string(coords_.size()) + " coordinates but dimension " +
                         std::to_string(dim));
  }
  for (const auto& e : coords_) {
    if (e.max_state_index() >= static_cast<long>(dim)) throw ParameterError("state index exceeds field dimension");
  }
}

FieldExpr FieldExpr::zero(std::size_t dim) { return FieldExpr(std::vector<Expr>(dim, Expr::literal(0.0)), dim); }

FieldExpr FieldExpr::combine(Complex a, const FieldExpr& lhs, Complex b, const FieldExpr& rhs) {
  if (lhs.dim_ != rhs.dim_) throw ParameterError("cannot combine fields of different dimensions");
  std::vector<Expr> coords;
  coords.reserve(lhs.dim_);
  for (std::size_t i = 0; i < lhs.dim_; ++i) {
    coords.push_back(Expr::add(Expr::mul(Expr::literal(a), lhs.coords_[i]), Expr::mul(Expr::literal(b), rhs.coords_[i])));
  }
  return FieldExpr(std::move(coords), lhs.dim_);
}

CVector FieldExpr::evaluate(double t, const CVector& state) const {
  if (state.size() != dim_) throw ParameterError("state dimension differs from field dimension");
  CVector out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = coords_[i].evaluate(t, state.entries());
  return out;
}

std::string FieldExpr::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ", ";
    out += coords_[i].to_string();
  }
  return out;
}

// ----------------------------------------------------------------- Parser

namespace {

enum class Tok { Number, Imaginary, Ident, Op, End };

struct Token {
  Tok kind;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token tok;
      tok.line = line_;
      tok.column = column_;
      if (pos_ >= src_.size()) {
        tok.kind = Tok::End;
        out.push_back(tok);
        return out;
      }
      const char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '.' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        lex_number(tok);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) advance();
        tok.kind = Tok::Ident;
        tok.text = std::string(src_.substr(start, pos_ - start));
      } else if (std::string_view("+-*/^(),{}[]=").find(c) != std::string_view::npos) {
        tok.kind = Tok::Op;
        tok.text = std::string(1, c);
        advance();
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
      }
      out.push_back(std::move(tok));
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void lex_number(Token& tok) {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      advance();
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        while (pos_ < look) advance();
        digits();
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ParseError("malformed number '" + text + "'", tok.line, tok.column);
    }
    tok.kind = Tok::Number;
    tok.number = value;
    tok.text = text;
    if (pos_ < src_.size() && src_[pos_] == 'i' &&
        !(pos_ + 1 < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_ + 1])) || src_[pos_ + 1] == '_'))) {
      advance();
      tok.kind = Tok::Imaginary;
      tok.text += 'i';
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

bool is_forbidden(std::string lowered) {
  std::transform(lowered.begin(), lowered.end(), lowered.begin(), [](unsigned char ch) { return std::tolower(ch); });
  static constexpr std::string_view forbidden[] = {"conj", "abs", "re", "im", "real", "imag", "arg", "norm"};
  return std::find(std::begin(forbidden), std::end(forbidden), lowered) != std::end(forbidden);
}

struct StateUse {
  long index = -1;
  int line = 0;
  int column = 0;
};

class Parser {
 public:
  // state_limit < 0: state variables allowed with any index (checked later);
  // state_limit == 0 with allow_time false: constant expressions only.
  Parser(std::vector<Token> toks, long state_limit, bool allow_time)
      : toks_(std::move(toks)), state_limit_(state_limit), allow_time_(allow_time) {}

  std::vector<Expr> parse_list() {
    std::vector<Expr> coords;
    coords.push_back(parse_expr());
    while (peek_op(",")) {
      next();
      coords.push_back(parse_expr());
    }
    return coords;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    while (peek_op("+") || peek_op("-")) {
      const bool plus = next().text == "+";
      Expr rhs = parse_term();
      lhs = plus ? Expr::add(lhs, rhs) : Expr::sub(lhs, rhs);
    }
    return lhs;
  }

  const Token& peek() const { return toks_[pos_]; }
  bool peek_op(std::string_view op) const { return peek().kind == Tok::Op && peek().text == op; }
  bool peek_ident(std::string_view id) const { return peek().kind == Tok::Ident && peek().text == id; }
  const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

  const Token& expect_op(std::string_view op) {
    if (!peek_op(op)) fail("expected '" + std::string(op) + "'");
    return next();
  }

  [[noreturn]] void fail(const std::string& message) const { fail_at(message, peek()); }
  [[noreturn]] static void fail_at(const std::string& message, const Token& tok) {
    throw ParseError(message, tok.line, tok.column);
  }

  const StateUse& max_state_use() const noexcept { return max_state_; }

 private:
  Expr parse_term() {
    Expr lhs = parse_factor();
    while (peek_op("*") || peek_op("/")) {
      const Token op = next();
      const Token& rhs_start = peek();
      Expr rhs = parse_factor();
      if (op.text == "*") {
        lhs = Expr::mul(lhs, rhs);
      } else {
        if (rhs.depends_on_state()) fail_at("state variable in denominator", rhs_start);
        lhs = Expr::div(lhs, rhs);
      }
    }
    return lhs;
  }

  Expr parse_factor() {
    if (peek_op("-")) {
      next();
      return Expr::negate(parse_factor());
    }
    if (peek_op("+")) {
      next();
      return parse_factor();
    }
    const Token& base_start = peek();
    Expr base = parse_base();
    if (peek_op("^")) {
      next();
      bool negative = false;
      if (peek_op("-")) {
        next();
        negative = true;
      }
      const Token& exp_tok = peek();
      if (exp_tok.kind != Tok::Number || exp_tok.text.find_first_not_of("0123456789") != std::string::npos) {
        fail("exponent must be an integer literal");
      }
      if (exp_tok.number > 1e6) fail("exponent too large");
      next();
      const int exponent = static_cast<int>(exp_tok.number) * (negative ? -1 : 1);
      if (exponent < 0 && base.depends_on_state()) fail_at("state variable in denominator", base_start);
      return Expr::power(base, exponent);
    }
    return base;
  }

  Expr parse_base() {
    const Token tok = peek();
    switch (tok.kind) {
      case Tok::Number: next(); return Expr::literal(tok.number);
      case Tok::Imaginary: next(); return Expr::literal(Complex(0.0, tok.number));
      case Tok::Op:
        if (tok.text == "(") {
          next();
          Expr inner = parse_expr();
          expect_op(")");
          return inner;
        }
        fail("unexpected '" + tok.text + "'");
      case Tok::End: fail("unexpected end of input");
      case Tok::Ident: break;
    }
    next();
    const std::string& id = tok.text;
    if (id == "t") {
      if (!allow_time_) fail_at("time variable not allowed here", tok);
      return Expr::time();
    }
    if (id == "i") return Expr::literal(Complex(0.0, 1.0));
    if (id == "exp" || id == "sin" || id == "cos") {
      expect_op("(");
      Expr arg = parse_expr();
      expect_op(")");
      const Function fn = id == "exp" ? Function::Exp : id == "sin" ? Function::Sin : Function::Cos;
      return Expr::call(fn, arg);
    }
    if (id.size() > 1 && id[0] == 'z' && id.find_first_not_of("0123456789", 1) == std::string::npos &&
        (id.size() == 2 || id[1] != '0')) {
      if (state_limit_ == 0) fail_at("state variable not allowed here", tok);
      long index = 0;
      std::from_chars(id.data() + 1, id.data() + id.size(), index);
      if (state_limit_ > 0 && index >= state_limit_) fail_at("unknown identifier '" + id + "'", tok);
      if (index > max_state_.index) max_state_ = {index, tok.line, tok.column};
      return Expr::state(static_cast<std::size_t>(index));
    }
    if (is_forbidden(id)) fail_at("forbidden non-holomorphic primitive '" + id + "'", tok);
    fail_at("unknown identifier '" + id + "'", tok);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  long state_limit_;
  bool allow_time_;
  StateUse max_state_;
};

double real_constant(Parser& p, const std::string& key) {
  const Token& start = p.peek();
  const Expr e = p.parse_expr();
  if (e.depends_on_state()) Parser::fail_at(key + " must be a constant", start);
  const Complex v = e.evaluate(0.0, {});
  if (v.imag() != 0.0 || !std::isfinite(v.real())) Parser::fail_at(key + " must be a finite real number", start);
  return v.real();
}

}  // namespace

FieldExpr parse_field(std::string_view source, std::size_t n) {
  if (n == 0) throw ParameterError("field dimension must be >= 1");
  Parser p(Lexer(source).run(), static_cast<long>(n), true);
  std::vector<Expr> coords = p.parse_list();
  if (p.peek().kind != Tok::End) p.fail("unexpected '" + p.peek().text + "'");
  if (coords.size() != n) {
    throw ParseError("expected " + std::to_string(n) + " coordinates, found " + std::to_string(coords.size()),
                     p.peek().line, p.peek().column);
  }
  return FieldExpr(std::move(coords), n);
}

Complex parse_constant(std::string_view source) {
  Parser p(Lexer(source).run(), 0, false);
  const Expr e = p.parse_expr();
  if (p.peek().kind != Tok::End) p.fail("unexpected '" + p.peek().text + "'");
  return e.evaluate(0.0, {});
}

Field parse_field_file(std::string_view text) {
  Parser p(Lexer(text).run(), -1, true);
  std::vector<Expr> coords = p.parse_list();
  if (!p.peek_ident("domain")) p.fail("expected 'domain { ... }' block after the coordinate list");
  p.next();
  p.expect_op("{");

  std::optional<double> t0, half_width, radius;
  double norm_p = kDefaultNormP;
  std::optional<std::vector<Complex>> center;
  for (;;) {
    const Token key = p.peek();
    if (key.kind != Tok::Ident) p.fail("expected a domain key");
    p.next();
    p.expect_op("=");
    if (key.text == "t0") {
      t0 = real_constant(p, "t0");
    } else if (key.text == "A") {
      half_width = real_constant(p, "A");
    } else if (key.text == "radius") {
      radius = real_constant(p, "radius");
    } else if (key.text == "p") {
      norm_p = real_constant(p, "p");
    } else if (key.text == "center") {
      p.expect_op("[");
      std::vector<Complex> values;
      for (;;) {
        const Token& start = p.peek();
        const Expr e = p.parse_expr();
        if (e.depends_on_state()) Parser::fail_at("center entries must be constants", start);
        values.push_back(e.evaluate(0.0, {}));
        if (p.peek_op(",")) {
          p.next();
          continue;
        }
        break;
      }
      p.expect_op("]");
      center = std::move(values);
    } else {
      Parser::fail_at("unknown domain key '" + key.text + "'", key);
    }
    if (p.peek_op(",")) {
      p.next();
      continue;
    }
    break;
  }
  const Token& close = p.peek();
  p.expect_op("}");
  if (p.peek().kind != Tok::End) p.fail("unexpected text after the domain block");

  if (!t0 || !half_width || !radius || !center) {
    Parser::fail_at("domain block needs t0, A, center and radius", close);
  }
  const std::size_t n = center->size();
  if (p.max_state_use().index >= static_cast<long>(n)) {
    const auto& use = p.max_state_use();
    throw ParseError("unknown identifier 'z" + std::to_string(use.index) + "' for dimension " + std::to_string(n),
                     use.line, use.column);
  }
  if (coords.size() != n) {
    throw ParseError("expected " + std::to_string(n) + " coordinates to match center, found " +
                         std::to_string(coords.size()),
                     1, 1);
  }
  try {
    Box box(Interval(*t0, *half_width), CVector(std::move(*center)), *radius, norm_p);
    return Field(FieldExpr(std::move(coords), n), std::move(box));
  } catch (const ParameterError& e) {
    throw ParseError(std::string("invalid domain: ") + e.what(), close.line, close.column);
  }
}

// ------------------------------------------------------------------ Field

Field::Field(FieldExpr expr, Box domain) : expr_(std::move(expr)), domain_(std::move(domain)) {
  if (expr_.dimension() != domain_.dimension()) throw ParameterError("field and domain dimensions differ");
}

Field Field::parse(std::string_view source, const Box& domain) {
  return Field(parse_field(source, domain.dimension()), domain);
}

Field Field::zero(const Box& domain) { return Field(FieldExpr::zero(domain.dimension()), domain); }

Field Field::combine(Complex a, const Field& lhs, Complex b, const Field& rhs) {
  return Field(FieldExpr::combine(a, lhs.expr_, b, rhs.expr_), lhs.domain_);
}

CVector eval_field(const Field& f, double t, const CVector& xi) {
  const Box& box = f.domain();
  if (!box.interval().contains(t)) {
    const double dist = std::max(box.interval().lo() - t, t - box.interval().hi());
    std::ostringstream os;
    os << "time " << t << " outside the field's interval";
    throw DomainError(os.str(), t, dist);
  }
  if (xi.size() != f.dimension()) throw ParameterError("state dimension differs from field dimension");
  const double margin = box.margin(xi);
  if (margin < 0.0) {
    std::ostringstream os;
    os << "state leaves the field's domain at t = " << t << " by " << -margin;
    throw DomainError(os.str(), t, -margin);
  }
  CVector out = f.expr().evaluate(t, xi);
  if (!out.all_finite()) {
    std::ostringstream os;
    os << "field evaluates to a non-finite value at t = " << t;
    throw EvaluationError(os.str(), 0);
  }
  return out;
}

}  // namespace holocurve
