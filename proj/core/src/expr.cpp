#include "betacalc/expr.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

#include "betacalc/error.hpp"

namespace betacalc {

struct Expr::Node {
  Kind kind = Kind::number;
  double value = 0.0;
  int exponent = 0;
  Func fn = Func::abs;
  std::vector<Expr> args;
};

namespace {

constexpr std::array<std::pair<std::string_view, Func>, 9> kFunctions{{
    {"abs", Func::abs},
    {"sgn", Func::sgn},
    {"exp", Func::exp},
    {"log", Func::log},
    {"sin", Func::sin},
    {"cos", Func::cos},
    {"sqrt", Func::sqrt},
    {"min", Func::min},
    {"max", Func::max},
}};

bool is_variadic(Func fn) { return fn == Func::min || fn == Func::max; }

double sign_of(double t) {
  if (std::isnan(t)) return t;
  if (t > 0.0) return 1.0;
  if (t < 0.0) return -1.0;
  return 0.0;
}

}  // namespace

std::string_view to_string(Func fn) noexcept {
  for (const auto& [name, f] : kFunctions) {
    if (f == fn) return name;
  }
  return "?";
}

Expr::Expr() : Expr(number(0.0)) {}

Expr Expr::number(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::number;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::variable() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::variable;
  return Expr(std::move(n));
}

Expr Expr::negate(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::negate;
  n->args.push_back(std::move(operand));
  return Expr(std::move(n));
}

Expr Expr::binary(Kind op, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = op;
  n->args.push_back(std::move(lhs));
  n->args.push_back(std::move(rhs));
  return Expr(std::move(n));
}

Expr Expr::power(Expr base, int exponent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::pow;
  n->exponent = exponent;
  n->args.push_back(std::move(base));
  return Expr(std::move(n));
}

Expr Expr::call(Func fn, std::vector<Expr> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::call;
  n->fn = fn;
  n->args = std::move(args);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
double Expr::value() const noexcept { return node_->value; }
int Expr::exponent() const noexcept { return node_->exponent; }
Func Expr::func() const noexcept { return node_->fn; }
const std::vector<Expr>& Expr::children() const noexcept { return node_->args; }

double Expr::operator()(double x) const noexcept {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::number: return n.value;
    case Kind::variable: return x;
    case Kind::negate: return -n.args[0](x);
    case Kind::add: return n.args[0](x) + n.args[1](x);
    case Kind::sub: return n.args[0](x) - n.args[1](x);
    case Kind::mul: return n.args[0](x) * n.args[1](x);
    case Kind::div: return n.args[0](x) / n.args[1](x);
    case Kind::pow: return std::pow(n.args[0](x), static_cast<double>(n.exponent));
    case Kind::call: break;
  }
  const double v = n.args[0](x);
  switch (n.fn) {
    case Func::abs: return std::fabs(v);
    case Func::sgn: return sign_of(v);
    case Func::exp: return std::exp(v);
    case Func::log: return std::log(v);
    case Func::sin: return std::sin(v);
    case Func::cos: return std::cos(v);
    case Func::sqrt: return std::sqrt(v);
    case Func::min:
    case Func::max: {
      double acc = v;
      for (std::size_t i = 1; i < n.args.size(); ++i) {
        const double w = n.args[i](x);
        if (std::isnan(acc) || std::isnan(w)) {
          acc = std::numeric_limits<double>::quiet_NaN();
        } else {
          acc = (n.fn == Func::min) ? std::min(acc, w) : std::max(acc, w);
        }
      }
      return acc;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

bool operator==(const Expr& lhs, const Expr& rhs) noexcept {
  if (lhs.node_ == rhs.node_) return true;
  const auto& a = *lhs.node_;
  const auto& b = *rhs.node_;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::number:
      return std::bit_cast<std::uint64_t>(a.value) == std::bit_cast<std::uint64_t>(b.value);
    case Expr::Kind::variable:
      return true;
    case Expr::Kind::pow:
      if (a.exponent != b.exponent) return false;
      break;
    case Expr::Kind::call:
      if (a.fn != b.fn) return false;
      break;
    default:
      break;
  }
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!(a.args[i] == b.args[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) {
      fail({"+", "-", "*", "/", "^", "end of input"});
    }
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c && pos_ < text_.size()) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string msg = "syntax error at offset " + std::to_string(pos_) + ": expected one of {";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += ", ";
      msg += expected[i];
    }
    msg += "}";
    if (pos_ < text_.size()) {
      msg += ", found '";
      msg += text_[pos_];
      msg += "'";
    } else {
      msg += ", found end of input";
    }
    throw ParseError(ErrorCode::syntax_error, pos_, std::move(expected), msg);
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + parse_term();
      } else if (accept('-')) {
        lhs = lhs - parse_term();
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * parse_factor();
      } else if (accept('/')) {
        lhs = lhs / parse_factor();
      } else {
        return lhs;
      }
    }
  }

  Expr parse_factor() {
    if (accept('-')) return Expr::negate(parse_factor());
    Expr base = parse_atom();
    if (accept('^')) return Expr::power(std::move(base), parse_integer());
    return base;
  }

  int parse_integer() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t p = pos_;
    if (p < text_.size() && text_[p] == '-') ++p;
    const std::size_t digits = p;
    while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
    if (p == digits) fail({"integer"});
    int value = 0;
    const auto [end, ec] = std::from_chars(text_.data() + start, text_.data() + p, value);
    if (ec != std::errc{} || end != text_.data() + p) fail({"integer"});
    pos_ = p;
    return value;
  }

  std::optional<double> try_number() {
    skip_ws();
    std::size_t p = pos_;
    const auto digit = [&](std::size_t i) {
      return i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]));
    };
    bool any = false;
    while (digit(p)) { ++p; any = true; }
    if (p < text_.size() && text_[p] == '.') {
      ++p;
      while (digit(p)) { ++p; any = true; }
    }
    if (!any) return std::nullopt;
    if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
      if (digit(q)) {
        while (digit(q)) ++q;
        p = q;
      }
    }
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text_.data() + pos_, text_.data() + p, value);
    if (ec != std::errc{} || end != text_.data() + p) fail({"number"});
    pos_ = p;
    return value;
  }

  Expr parse_atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      if (!accept(')')) fail({")"});
      return inner;
    }
    if (auto num = try_number()) return Expr::number(*num);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "x") return Expr::variable();
      std::optional<Func> fn;
      for (const auto& [fname, f] : kFunctions) {
        if (fname == name) fn = f;
      }
      if (!fn) {
        throw ParseError(ErrorCode::unknown_identifier, start, {"x", "function name"},
                         "unknown identifier '" + std::string(name) + "' at offset " +
                             std::to_string(start));
      }
      if (!accept('(')) fail({"("});
      std::vector<Expr> args;
      args.push_back(parse_expr());
      while (accept(',')) args.push_back(parse_expr());
      if (!accept(')')) fail({",", ")"});
      if (!is_variadic(*fn) && args.size() != 1) {
        pos_ = start;
        fail({std::string(name) + " takes exactly one argument"});
      }
      if (is_variadic(*fn) && args.size() < 2) {
        pos_ = start;
        fail({std::string(name) + " takes at least two arguments"});
      }
      return Expr::call(*fn, std::move(args));
    }
    fail({"number", "x", "function name", "(", "-"});
  }
};

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), end);
}

void print(const Expr& e, std::string& out) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::number: {
      const double v = e.value();
      if (std::signbit(v)) {
        out += "(-";
        out += format_number(-v);
        out += ")";
      } else {
        out += format_number(v);
      }
      return;
    }
    case K::variable:
      out += "x";
      return;
    case K::negate:
      out += "-";
      print(e.children()[0], out);
      return;
    case K::add:
    case K::sub:
    case K::mul:
    case K::div: {
      const char* op = e.kind() == K::add   ? " + "
                       : e.kind() == K::sub ? " - "
                       : e.kind() == K::mul ? " * "
                                            : " / ";
      out += "(";
      print(e.children()[0], out);
      out += op;
      print(e.children()[1], out);
      out += ")";
      return;
    }
    case K::pow: {
      const Expr& base = e.children()[0];
      const bool wrap = base.kind() == K::negate || base.kind() == K::pow ||
                        (base.kind() == K::number && std::signbit(base.value()));
      if (wrap) out += "(";
      print(base, out);
      if (wrap) out += ")";
      out += "^";
      out += std::to_string(e.exponent());
      return;
    }
    case K::call: {
      out += to_string(e.func());
      out += "(";
      const auto& args = e.children();
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        print(args[i], out);
      }
      out += ")";
      return;
    }
  }
}

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

}  // namespace betacalc
