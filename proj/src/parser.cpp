#include "jonq/parser.hpp"

#include <array>
#include <cctype>

#include "jonq/errors.hpp"

namespace jonq {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

void check_variable(const std::string& var) {
  bool ok = !var.empty() && is_ident_start(var[0]);
  for (char c : var) ok = ok && is_ident_char(c);
  if (!ok) throw DomainError("invalid variable name '" + var + "'");
}

struct Ratio {
  UniPoly num;
  UniPoly den;
};

class Parser {
 public:
  Parser(std::string_view text, std::string var) : s_(text), var_(std::move(var)) {}

  UniPoly whole_poly() {
    UniPoly p = expr();
    expect_end();
    return p;
  }

  std::array<Ratio, 4> whole_matrix() {
    std::array<Ratio, 4> out;
    expect('[');
    for (int row = 0; row < 2; ++row) {
      if (row == 1) expect(',');
      expect('[');
      out[static_cast<std::size_t>(2 * row)] = entry();
      expect(',');
      out[static_cast<std::size_t>(2 * row + 1)] = entry();
      expect(']');
    }
    expect(']');
    expect_end();
    return out;
  }

  std::size_t pos() const { return pos_; }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }

  std::string describe_here() {
    if (at_end()) return "end of input";
    unsigned char c = static_cast<unsigned char>(s_[pos_]);
    if (std::isprint(c)) return std::string("'") + s_[pos_] + "'";
    static const char* hex = "0123456789abcdef";
    return std::string("byte 0x") + hex[c >> 4] + hex[c & 15];
  }

  void expect(char c) {
    if (peek() != c || at_end()) fail(std::string("expected '") + c + "', found " + describe_here());
    ++pos_;
  }

  void expect_end() {
    if (!at_end()) fail("unexpected " + describe_here());
  }

  void enter() {
    if (++depth_ > kMaxNesting) fail("expression nested too deeply");
  }

  void check_degree(const UniPoly& p, std::size_t at) const {
    if (p.degree() > kMaxParsedDegree) fail("degree exceeds " + std::to_string(kMaxParsedDegree), at);
  }

  Ratio entry() {
    if (at_end()) fail("expected a matrix entry, found end of input");
    UniPoly num = expr();
    UniPoly den = UniPoly::constant(1);
    if (peek() == '/') {
      ++pos_;
      std::size_t den_at = (skip_ws(), pos_);
      den = factor();
      if (den.is_zero()) fail("division by zero", den_at);
    }
    return {std::move(num), std::move(den)};
  }

  UniPoly expr() {
    enter();
    UniPoly acc;
    char c = peek();
    bool negate = false;
    if (c == '+' || c == '-') {
      negate = c == '-';
      ++pos_;
    }
    acc = term();
    if (negate) acc = -acc;
    for (;;) {
      c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      UniPoly t = term();
      if (c == '+') {
        acc += t;
      } else {
        acc -= t;
      }
    }
    --depth_;
    return acc;
  }

  UniPoly term() {
    std::size_t start = (skip_ws(), pos_);
    UniPoly acc = factor();
    while (peek() == '*') {
      ++pos_;
      UniPoly f = factor();
      if (!acc.is_zero() && !f.is_zero() && acc.degree() + f.degree() > kMaxParsedDegree) {
        fail("degree exceeds " + std::to_string(kMaxParsedDegree), start);
      }
      acc = acc * f;
    }
    return acc;
  }

  UniPoly factor() {
    std::size_t start = (skip_ws(), pos_);
    UniPoly base = atom();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    if (pos_ >= s_.size() || !is_digit(s_[pos_])) {
      fail("exponent must be a nonnegative integer literal, found " + describe_here());
    }
    std::size_t exp_at = pos_;
    long long e = 0;
    while (pos_ < s_.size() && is_digit(s_[pos_])) {
      e = e * 10 + (s_[pos_] - '0');
      if (e > kMaxParsedDegree) fail("exponent too large (limit " + std::to_string(kMaxParsedDegree) + ")", exp_at);
      ++pos_;
    }
    if (!base.is_zero() && base.degree() * e > kMaxParsedDegree) {
      fail("degree exceeds " + std::to_string(kMaxParsedDegree), start);
    }
    UniPoly r = pow(base, static_cast<int>(e));
    check_degree(r, start);
    return r;
  }

  UniPoly atom() {
    char c = peek();
    if (at_end()) fail("expected " + operand_hint() + ", found end of input");
    if (c == '(') {
      ++pos_;
      UniPoly inner = expr();
      expect(')');
      return inner;
    }
    if (is_digit(c)) return UniPoly::constant(Scalar(rational()));
    if (is_ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && is_ident_char(s_[pos_])) ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      if (var_.empty()) fail("unknown symbol '" + std::string(name) + "' (base entries are rational constants)", start);
      if (name != var_) fail("unknown symbol '" + std::string(name) + "'", start);
      return UniPoly::var();
    }
    fail("expected " + operand_hint() + ", found " + describe_here());
  }

  std::string operand_hint() const { return var_.empty() ? "a number or '('" : "a number, '" + var_ + "' or '('"; }

  Rational rational() {
    Integer num(digits(), 10);
    // A '/' followed by digits belongs to the literal; otherwise it is left
    // for the entry-level ratio.
    std::size_t save = pos_;
    if (peek() == '/') {
      ++pos_;
      skip_ws();
      if (pos_ < s_.size() && is_digit(s_[pos_])) {
        std::size_t den_at = pos_;
        Integer den(digits(), 10);
        if (den == 0) fail("zero denominator", den_at);
        Rational q(num, den);
        q.canonicalize();
        return q;
      }
      pos_ = save;
    }
    return Rational(num);
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string_view s_;
  std::string var_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

UniPoly parse_poly(std::string_view text, const std::string& var) {
  check_variable(var);
  return Parser(text, var).whole_poly();
}

Moebius parse_base(std::string_view text) {
  Parser p(text, "");
  std::array<Ratio, 4> e = p.whole_matrix();
  std::array<Scalar, 4> c;
  for (std::size_t i = 0; i < 4; ++i) c[i] = e[i].num.coeff(0) / e[i].den.coeff(0);
  return Moebius(c[0], c[1], c[2], c[3]);
}

JonquieresMap parse_map(const MapSource& src) {
  check_variable(src.variable);
  std::array<Ratio, 4> e = Parser(src.fiber_matrix_text, src.variable).whole_matrix();
  UniPoly l = UniPoly::constant(1);
  for (const auto& r : e) l = poly_lcm(l, r.den);
  std::array<UniPoly, 4> m;
  for (std::size_t i = 0; i < 4; ++i) {
    m[i] = e[i].den.is_one() ? e[i].num * l : e[i].num * exact_div(l, e[i].den);
  }
  FiberMatrix fiber(std::move(m[0]), std::move(m[1]), std::move(m[2]), std::move(m[3]));
  Moebius base = src.base_matrix_text ? parse_base(*src.base_matrix_text) : Moebius::identity();
  return JonquieresMap(std::move(fiber), std::move(base));
}

std::string format_fiber(const FiberMatrix& m, const std::string& var) {
  return "[[" + to_string(m.a(), var) + ", " + to_string(m.b(), var) + "],[" + to_string(m.c(), var) + ", " +
         to_string(m.d(), var) + "]]";
}

MapSource serialize(const JonquieresMap& f, const std::string& var) {
  check_variable(var);
  if (!f.is_rational()) throw DomainError("not serializable to base-rational syntax");
  MapSource out;
  out.variable = var;
  out.fiber_matrix_text = format_fiber(f.fiber(), var);
  if (!f.in_j0()) {
    const auto& h = f.base().entries();
    out.base_matrix_text = "[[" + h[0].rational_part().get_str() + ", " + h[1].rational_part().get_str() + "],[" +
                           h[2].rational_part().get_str() + ", " + h[3].rational_part().get_str() + "]]";
  }
  return out;
}

}  // namespace jonq
