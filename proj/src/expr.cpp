#include "ddecap/expr.hpp"

#include <cctype>

#include "ddecap/errors.hpp"

namespace ddecap {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Interval parse() {
    Interval v = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw DomainError("malformed expression \"" + s_ + "\": " + why);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  bool eat_word(const char* w) {
    skip();
    size_t n = std::char_traits<char>::length(w);
    if (s_.compare(i_, n, w) != 0) return false;
    if (i_ + n < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_ + n]))) return false;
    i_ += n;
    return true;
  }

  Interval expr() {
    Interval v = term();
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }

  Interval term() {
    Interval v = unary();
    for (;;) {
      if (eat('*'))
        v = v * unary();
      else if (eat('/'))
        v = v / unary();
      else
        return v;
    }
  }

  Interval unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }

  Interval primary() {
    if (eat('(')) {
      Interval v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (eat_word("pi")) return pi();
    if (eat_word("sqrt")) {
      if (!eat('(')) fail("sqrt needs '('");
      Interval v = expr();
      if (!eat(')')) fail("missing ')'");
      return sqrt(v);
    }
    return number();
  }

  Interval number() {
    skip();
    size_t start = i_;
    auto digits = [&] {
      size_t b = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return i_ - b;
    };
    size_t n = digits();
    if (i_ < s_.size() && s_[i_] == '.') {
      ++i_;
      n += digits();
    }
    if (n == 0) fail(i_ < s_.size() ? "unexpected '" + std::string(1, s_[i_]) + "'" : "unexpected end");
    if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
      ++i_;
      if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) ++i_;
      if (digits() == 0) fail("bad exponent");
    }
    return from_decimal(s_.substr(start, i_ - start));
  }

  const std::string& s_;
  size_t i_ = 0;
};

}  // namespace

Interval parse_expr(const std::string& text) {
  try {
    return Parser(text).parse();
  } catch (const DivisionByZeroInterval&) {
    throw DomainError("division by zero in \"" + text + "\"");
  }
}

double parse_exact(const std::string& text) {
  Interval v = parse_expr(text);
  if (!v.is_point()) throw DomainError("\"" + text + "\" is not exactly representable");
  return v.lo();
}

}  // namespace ddecap
