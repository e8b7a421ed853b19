#include <cctype>
#include <cmath>
#include <cstdlib>

#include "srgkit/error.hpp"
#include "srgkit/lti/transfer_function.hpp"

namespace srg::lti {

namespace {

// Unreduced rational value; reduction happens once at the end.
struct Rat {
  Poly n{0.0}, d{1.0};
};

Rat rmul(const Rat& a, const Rat& b) { return {poly_mul(a.n, b.n), poly_mul(a.d, b.d)}; }
Rat radd(const Rat& a, const Rat& b) {
  return {poly_add(poly_mul(a.n, b.d), poly_mul(b.n, a.d)), poly_mul(a.d, b.d)};
}
Rat rneg(const Rat& a) { return {poly_scale(a.n, -1.0), a.d}; }
Rat rinv(const Rat& a, std::size_t pos) {
  if (poly_is_zero(a.n)) throw Error(ErrorCode::ParseError, "division by zero at position " + std::to_string(pos));
  return {a.d, a.n};
}

class Parser {
 public:
  explicit Parser(const std::string& t) : t_(t) {}

  Rat parse() {
    Rat r = expr();
    skip();
    if (i_ != t_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, "transfer function '" + t_ + "': " + what + " at position " + std::to_string(i_));
  }
  void skip() {
    while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) ++i_;
  }
  char peek() {
    skip();
    return i_ < t_.size() ? t_[i_] : '\0';
  }

  Rat expr() {
    Rat r = term();
    for (;;) {
      const char c = peek();
      if (c == '+') {
        ++i_;
        r = radd(r, term());
      } else if (c == '-') {
        ++i_;
        r = radd(r, rneg(term()));
      } else {
        return r;
      }
    }
  }

  Rat term() {
    Rat r = unary();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++i_;
        r = rmul(r, unary());
      } else if (c == '/') {
        const std::size_t at = ++i_;
        r = rmul(r, rinv(unary(), at));
      } else if (c == '(' || c == 's' || std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        r = rmul(r, unary());
      } else {
        return r;
      }
    }
  }

  Rat unary() {
    if (peek() == '-') {
      ++i_;
      return rneg(unary());
    }
    if (peek() == '+') {
      ++i_;
      return unary();
    }
    return power();
  }

  Rat power() {
    Rat base = atom();
    if (peek() != '^') return base;
    ++i_;
    skip();
    bool neg = false;
    if (i_ < t_.size() && t_[i_] == '-') {
      neg = true;
      ++i_;
    }
    std::size_t start = i_;
    while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
    if (start == i_) fail("expected integer exponent");
    const int e = std::atoi(t_.substr(start, i_ - start).c_str());
    Rat r;
    r.n = {1.0};
    for (int k = 0; k < e; ++k) r = rmul(r, base);
    return neg ? rinv(r, start) : r;
  }

  Rat atom() {
    const char c = peek();
    if (c == '(') {
      ++i_;
      Rat r = expr();
      if (peek() != ')') fail("expected ')'");
      ++i_;
      return r;
    }
    if (c == 's') {
      ++i_;
      return {{0.0, 1.0}, {1.0}};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = t_.c_str() + i_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      i_ += std::size_t(end - begin);
      return {{v}, {1.0}};
    }
    fail(c == '\0' ? "unexpected end of input" : std::string("unexpected '") + c + "'");
  }

  const std::string& t_;
  std::size_t i_ = 0;
};

}  // namespace

TransferFunction parse_tf(const std::string& text) {
  Parser p(text);
  Rat r = p.parse();
  if (poly_is_zero(r.d)) throw Error(ErrorCode::ParseError, "transfer function '" + text + "': zero denominator");
  return TransferFunction(r.n, r.d, text);
}

}  // namespace srg::lti
