#include "cotes/expr.hpp"

#include <array>
#include <cctype>
#include <optional>
#include <utility>

namespace cotes {

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;
using Op = Expression::Op;
using Func = Expression::Func;

constexpr std::array<std::pair<std::string_view, Func>, 9> kFunctions = {{
    {"sin", Func::sin},
    {"cos", Func::cos},
    {"tan", Func::tan},
    {"tanh", Func::tanh},
    {"exp", Func::exp},
    {"log", Func::log},
    {"sqrt", Func::sqrt},
    {"cbrt", Func::cbrt},
    {"abs", Func::abs},
}};

std::optional<Func> lookup_function(std::string_view name) {
  for (const auto& [candidate, func] : kFunctions) {
    if (candidate == name) return func;
  }
  return std::nullopt;
}

NodePtr make(Node node) {
  node.depends_on_x = node.op == Op::variable || (node.lhs && node.lhs->depends_on_x) ||
                      (node.rhs && node.rhs->depends_on_x);
  return std::make_shared<const Node>(std::move(node));
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse_all() {
    skip_space();
    if (at_end()) throw ParseError("empty expression", pos_);
    NodePtr root = parse_expr();
    skip_space();
    if (!at_end()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return root;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = make({Op::add, {}, {}, lhs, parse_term()});
      } else if (accept('-')) {
        lhs = make({Op::sub, {}, {}, lhs, parse_term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make({Op::mul, {}, {}, lhs, parse_unary()});
      } else if (accept('/')) {
        lhs = make({Op::div, {}, {}, lhs, parse_unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return make({Op::negate, {}, {}, parse_unary(), nullptr});
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    if (accept('^')) return make({Op::pow, {}, {}, base, parse_unary()});
    return base;
  }

  NodePtr parse_atom() {
    skip_space();
    if (at_end()) throw ParseError("expected expression", pos_);
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      expect_close();
      return inner;
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  void expect_close() {
    skip_space();
    if (at_end()) throw ParseError("expected expression or ')'", pos_);
    if (text_[pos_] != ')') throw ParseError(std::string("expected ')' but found '") + text_[pos_] + "'", pos_);
    ++pos_;
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t count = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++count;
      }
      return count;
    };
    std::size_t mantissa = digits();
    if (!at_end() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError("malformed number", start);
    if (!at_end() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    return make({Op::number, {}, std::string(text_.substr(start, pos_ - start)), nullptr, nullptr});
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") return make({Op::variable, {}, {}, nullptr, nullptr});
    if (name == "pi") return make({Op::pi, {}, {}, nullptr, nullptr});
    if (name == "e") return make({Op::e, {}, {}, nullptr, nullptr});
    const auto func = lookup_function(name);
    if (!func) throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    skip_space();
    if (at_end() || text_[pos_] != '(') {
      throw ParseError("expected '(' after '" + std::string(name) + "'", pos_);
    }
    ++pos_;
    NodePtr arg = parse_expr();
    expect_close();
    return make({Op::call, *func, {}, arg, nullptr});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Jet evaluation

struct Evaluator {
  const BigReal& x;
  int digits;  // guarded
  // Values only: points where the value exists but a derivative does not
  // (sqrt, cbrt, abs at 0) pass, with placeholder zero derivatives.
  bool value_only = false;

  BigReal constant(long v) const { return BigReal(v, digits); }

  Jet2 lift(BigReal value) const {
    return {std::move(value), constant(0), constant(0)};
  }

  // g(u) given g, g', g'' at u.f
  static Jet2 chain(const Jet2& u, BigReal g, BigReal g1, BigReal g2) {
    BigReal d1 = g1 * u.d1;
    BigReal d2 = g2 * u.d1 * u.d1 + g1 * u.d2;
    return {std::move(g), std::move(d1), std::move(d2)};
  }

  Jet2 eval(const Node& node) const {
    switch (node.op) {
      case Op::number:
        return lift(BigReal(node.literal, digits));
      case Op::variable:
        return {x, constant(1), constant(0)};
      case Op::pi:
        return lift(cotes::pi(digits));
      case Op::e:
        return lift(euler_e(digits));
      case Op::negate: {
        Jet2 u = eval(*node.lhs);
        return {-u.f, -u.d1, -u.d2};
      }
      case Op::add: {
        Jet2 a = eval(*node.lhs), b = eval(*node.rhs);
        return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2};
      }
      case Op::sub: {
        Jet2 a = eval(*node.lhs), b = eval(*node.rhs);
        return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2};
      }
      case Op::mul: {
        Jet2 a = eval(*node.lhs), b = eval(*node.rhs);
        return {a.f * b.f, a.d1 * b.f + a.f * b.d1, a.d2 * b.f + 2 * (a.d1 * b.d1) + a.f * b.d2};
      }
      case Op::div: {
        Jet2 a = eval(*node.lhs), b = eval(*node.rhs);
        if (b.f.is_zero()) throw DomainError("division by zero");
        BigReal q = a.f / b.f;
        BigReal q1 = (a.d1 - q * b.d1) / b.f;
        BigReal q2 = (a.d2 - 2 * (q1 * b.d1) - q * b.d2) / b.f;
        return {std::move(q), std::move(q1), std::move(q2)};
      }
      case Op::pow:
        return eval_pow(node);
      case Op::call:
        return eval_call(node.func, eval(*node.lhs));
    }
    throw std::logic_error("unhandled expression node");
  }

  Jet2 eval_pow(const Node& node) const {
    Jet2 a = eval(*node.lhs);
    if (!node.rhs->depends_on_x) {
      const BigReal b = eval(*node.rhs).f;
      if (b.is_integer() && abs(b) < BigReal(1L << 30, digits)) {
        const long n = mpfr_get_si(b.get(), MPFR_RNDN);
        if (a.f.is_zero() && n < 0) throw DomainError("negative power of zero");
        BigReal g = pow(a.f, n);
        BigReal g1 = n == 0 ? constant(0) : pow(a.f, n - 1) * n;
        BigReal g2 = (n == 0 || n == 1) ? constant(0) : pow(a.f, n - 2) * (n * (n - 1));
        return chain(a, std::move(g), std::move(g1), std::move(g2));
      }
      if (a.f.sign() <= 0) throw DomainError("non-integer power of a non-positive base");
      BigReal g = pow(a.f, b);
      BigReal g1 = b * g / a.f;
      BigReal g2 = (b - 1) * g1 / a.f;
      return chain(a, std::move(g), std::move(g1), std::move(g2));
    }
    // a^b = exp(b log a) with both sides varying.
    Jet2 b = eval(*node.rhs);
    if (a.f.sign() <= 0) throw DomainError("variable power of a non-positive base");
    const BigReal la = log(a.f);
    const BigReal ra = a.d1 / a.f;
    const BigReal g = pow(a.f, b.f);
    const BigReal w1 = b.d1 * la + b.f * ra;
    const BigReal w2 = b.d2 * la + 2 * (b.d1 * ra) + b.f * (a.d2 * a.f - a.d1 * a.d1) / (a.f * a.f);
    return {g, g * w1, g * (w1 * w1 + w2)};
  }

  Jet2 eval_call(Func func, const Jet2& u) const {
    switch (func) {
      case Func::sin: {
        BigReal s = cotes::sin(u.f), c = cotes::cos(u.f);
        return chain(u, s, c, -s);
      }
      case Func::cos: {
        BigReal s = cotes::sin(u.f), c = cotes::cos(u.f);
        return chain(u, c, -s, -c);
      }
      case Func::tan: {
        if (cotes::cos(u.f).is_zero()) throw DomainError("tan at a pole");
        BigReal t = cotes::tan(u.f);
        BigReal g1 = 1 + t * t;
        BigReal g2 = 2 * (t * g1);
        return chain(u, std::move(t), std::move(g1), std::move(g2));
      }
      case Func::tanh: {
        // sech^2 keeps the derivative accurate far out in the tails where
        // 1 - tanh^2 would round to zero.
        BigReal t = cotes::tanh(u.f);
        BigReal s = cotes::sech(u.f);
        BigReal g1 = s * s;
        BigReal g2 = -2 * (t * g1);
        return chain(u, std::move(t), std::move(g1), std::move(g2));
      }
      case Func::exp: {
        BigReal e = cotes::exp(u.f);
        return chain(u, e, e, e);
      }
      case Func::log: {
        if (u.f.sign() <= 0) throw DomainError("log of a non-positive number");
        BigReal inv = 1 / u.f;
        return chain(u, cotes::log(u.f), inv, -(inv * inv));
      }
      case Func::sqrt: {
        if (u.f.sign() < 0) throw DomainError("sqrt of a negative number");
        if (u.f.is_zero()) {
          if (value_only) return lift(constant(0));
          throw DomainError("sqrt is not differentiable at 0");
        }
        BigReal r = cotes::sqrt(u.f);
        BigReal g1 = 1 / (2 * r);
        BigReal g2 = -g1 / (2 * u.f);
        return chain(u, std::move(r), std::move(g1), std::move(g2));
      }
      case Func::cbrt: {
        if (u.f.is_zero()) {
          if (value_only) return lift(constant(0));
          throw DomainError("cbrt is not differentiable at 0");
        }
        BigReal r = cotes::cbrt(u.f);
        BigReal g1 = 1 / (3 * (r * r));
        BigReal g2 = -2 * g1 / (3 * u.f);
        return chain(u, std::move(r), std::move(g1), std::move(g2));
      }
      case Func::abs: {
        if (u.f.is_zero()) {
          if (value_only) return lift(constant(0));
          throw DomainError("abs is not differentiable at 0");
        }
        return chain(u, cotes::abs(u.f), constant(u.f.sign()), constant(0));
      }
    }
    throw std::logic_error("unhandled function");
  }
};

void render(const Node& node, std::string& out) {
  auto binary = [&](std::string_view name) {
    out += name;
    out += '(';
    render(*node.lhs, out);
    out += ", ";
    render(*node.rhs, out);
    out += ')';
  };
  switch (node.op) {
    case Op::number: out += node.literal; return;
    case Op::variable: out += 'x'; return;
    case Op::pi: out += "pi"; return;
    case Op::e: out += 'e'; return;
    case Op::negate:
      out += "neg(";
      render(*node.lhs, out);
      out += ')';
      return;
    case Op::add: binary("add"); return;
    case Op::sub: binary("sub"); return;
    case Op::mul: binary("mul"); return;
    case Op::div: binary("div"); return;
    case Op::pow: binary("pow"); return;
    case Op::call:
      out += function_name(node.func);
      out += '(';
      render(*node.lhs, out);
      out += ')';
      return;
  }
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t offset)
    : std::invalid_argument("syntax error at offset " + std::to_string(offset) + ": " + message), offset_(offset) {}

std::string_view function_name(Expression::Func func) {
  for (const auto& [name, candidate] : kFunctions) {
    if (candidate == func) return name;
  }
  return "?";
}

Expression Expression::parse(std::string_view text) { return Expression(Parser(text).parse_all()); }

Expression Expression::number(std::string literal) {
  BigReal probe(literal, 15);  // validates the literal
  (void)probe;
  return Expression(make({Op::number, {}, std::move(literal), nullptr, nullptr}));
}

Expression Expression::variable() { return Expression(make({Op::variable, {}, {}, nullptr, nullptr})); }

Expression Expression::constant(Op which) {
  if (which != Op::pi && which != Op::e) throw std::invalid_argument("not a named constant");
  return Expression(make({which, {}, {}, nullptr, nullptr}));
}

Expression Expression::negate(const Expression& operand) {
  return Expression(make({Op::negate, {}, {}, operand.root_, nullptr}));
}

Expression Expression::binary(Op op, const Expression& lhs, const Expression& rhs) {
  if (op != Op::add && op != Op::sub && op != Op::mul && op != Op::div && op != Op::pow) {
    throw std::invalid_argument("not a binary operator");
  }
  return Expression(make({op, {}, {}, lhs.root_, rhs.root_}));
}

Expression Expression::call(Func func, const Expression& arg) {
  return Expression(make({Op::call, func, {}, arg.root_, nullptr}));
}

Jet2 Expression::eval_jet(const BigReal& x, int digits) const {
  const int guarded = guarded_digits(digits);
  if (x.digits() >= guarded) return Evaluator{x, x.digits()}.eval(*root_);
  const BigReal widened = x.rounded_to(guarded);
  return Evaluator{widened, guarded}.eval(*root_);
}

BigReal Expression::eval(const BigReal& x, int digits) const {
  const int guarded = guarded_digits(digits);
  if (x.digits() >= guarded) return Evaluator{x, x.digits(), true}.eval(*root_).f;
  const BigReal widened = x.rounded_to(guarded);
  return Evaluator{widened, guarded, true}.eval(*root_).f;
}

std::string Expression::to_string() const {
  std::string out;
  render(*root_, out);
  return out;
}

}  // namespace cotes
