#include "gadkit/poly_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

namespace gadkit {

namespace {

struct RawTerm {
  cplx coeff{1.0, 0.0};
  std::vector<std::pair<std::size_t, int>> vars;  // (index, exponent)
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<RawTerm> parse() {
    std::vector<RawTerm> terms;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (true) {
      skip_ws();
      if (at_end()) break;
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        advance();
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-' between terms");
      }
      RawTerm t = parse_term();
      t.coeff *= sign;
      terms.push_back(std::move(t));
      first = false;
    }
    return terms;
  }

 private:
  RawTerm parse_term() {
    RawTerm t;
    bool expect_factor = true;
    while (expect_factor) {
      skip_ws();
      if (at_end()) fail("unexpected end of input, expected a factor");
      char c = peek();
      if (c == 'x' || c == 'X') {
        advance();
        std::size_t idx = parse_uint("variable index");
        int e = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
          advance();
          skip_ws();
          e = static_cast<int>(parse_uint("exponent"));
        }
        t.vars.emplace_back(idx, e);
      } else if (c == '(') {
        t.coeff *= parse_complex();
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        t.coeff *= parse_real();
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
      skip_ws();
      expect_factor = !at_end() && peek() == '*';
      if (expect_factor) advance();
    }
    return t;
  }

  double parse_real() {
    const std::size_t start = pos_;
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    const std::size_t used = static_cast<std::size_t>(end - rest.c_str());
    if (used == 0) fail("malformed number");
    // strtod accepts "inf"/"nan"/hex; reject anything that is not a plain decimal
    for (std::size_t i = 0; i < used; ++i) {
      char ch = rest[i];
      if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '.' || ch == 'e' || ch == 'E' ||
            ch == '+' || ch == '-')) {
        pos_ = start;
        fail("malformed number");
      }
    }
    for (std::size_t i = 0; i < used; ++i) advance();
    return v;
  }

  // "(a+bi)", "(a-bi)", "(bi)", "(a)"
  cplx parse_complex() {
    advance();  // '('
    skip_ws();
    double re = 0.0;
    double im = 0.0;
    double sign = 1.0;
    if (peek_is('+') || peek_is('-')) {
      sign = peek() == '-' ? -1.0 : 1.0;
      advance();
      skip_ws();
    }
    double v = parse_real();
    skip_ws();
    if (peek_is('i')) {
      advance();
      im = sign * v;
    } else {
      re = sign * v;
      if (peek_is('+') || peek_is('-')) {
        double s2 = peek() == '-' ? -1.0 : 1.0;
        advance();
        skip_ws();
        double w = parse_real();
        skip_ws();
        if (!peek_is('i')) fail("expected 'i' after imaginary part");
        advance();
        im = s2 * w;
      }
    }
    skip_ws();
    if (!peek_is(')')) fail("expected ')'");
    advance();
    return {re, im};
  }

  std::size_t parse_uint(const char* what) {
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
      fail(std::string("expected ") + what);
    std::size_t v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<std::size_t>(peek() - '0');
      if (v > 1000000) fail(std::string(what) + " too large");
      advance();
    }
    return v;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  bool peek_is(char c) const { return !at_end() && text_[pos_] == c; }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

Poly parse_poly(std::string_view text, std::optional<std::size_t> nvars) {
  Parser parser(text);
  std::vector<RawTerm> raw = parser.parse();
  std::size_t needed = 1;
  for (const auto& t : raw)
    for (const auto& [idx, e] : t.vars) needed = std::max(needed, idx + 1);
  const std::size_t n = nvars.value_or(needed);
  if (needed > n)
    throw ParseError("variable x" + std::to_string(needed - 1) + " exceeds declared count " +
                         std::to_string(n),
                     1, 1);
  Poly p(n);
  for (const auto& t : raw) {
    std::vector<int> e(n, 0);
    for (const auto& [idx, ex] : t.vars) e[idx] += ex;
    p.add_term(MultiIndex(std::move(e)), t.coeff);
  }
  return p;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

namespace {

std::string monomial_text(const MultiIndex& alpha) {
  std::string s;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (!alpha[i]) continue;
    if (!s.empty()) s += '*';
    s += 'x' + std::to_string(i);
    if (alpha[i] > 1) s += '^' + std::to_string(alpha[i]);
  }
  return s;
}

}  // namespace

std::string to_string(const Poly& p, const PrintOptions& opts) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [alpha, c] = *it;
    const bool real = std::abs(c.imag()) <= opts.imag_tol * std::abs(c);
    const std::string mono = monomial_text(alpha);
    std::string coef;
    bool negative = false;
    if (real) {
      double re = c.real();
      negative = std::signbit(re);
      re = std::abs(re);
      if (!(re == 1.0 && !mono.empty())) coef = format_double(re);
    } else {
      coef = "(" + format_double(c.real()) + (std::signbit(c.imag()) ? "-" : "+") +
             format_double(std::abs(c.imag())) + "i)";
    }
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += coef;
    if (!coef.empty() && !mono.empty()) out += '*';
    out += mono;
  }
  return out;
}

}  // namespace gadkit
