#include "mloop/scalar_expr.hpp"

#include <cctype>

#include "mloop/errors.hpp"

namespace mloop {

namespace {

/// Recursive-descent evaluator over the raw character stream.
class ScalarParser {
public:
  explicit ScalarParser(const std::string& text) : text_(text) {}

  Cyclo run() {
    Cyclo v = expression();
    skip_space();
    if (pos_ != text_.size())
      throw SyntaxError(pos_, "unexpected trailing input");
    return v;
  }

private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool at(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool eat(char c) {
    if (!at(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c, const char* what) {
    if (!eat(c)) throw SyntaxError(pos_, what);
  }

  unsigned long digits() {
    skip_space();
    if (pos_ >= text_.size() ||
        !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw SyntaxError(pos_, "expected a number");
    unsigned long v = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      unsigned long d = static_cast<unsigned long>(text_[pos_] - '0');
      if (v > (1000000000UL - d) / 10)
        throw SyntaxError(pos_, "numeric literal too large");
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  long signed_digits() {
    skip_space();
    bool neg = eat('-');
    unsigned long v = digits();
    return neg ? -static_cast<long>(v) : static_cast<long>(v);
  }

  Cyclo expression() {
    Cyclo v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }

  Cyclo term() {
    Cyclo v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        std::size_t where = pos_;
        Cyclo d = unary();
        if (d.is_zero()) throw DivisionByZero("division by zero at position " +
                                              std::to_string(where));
        v *= d.inverse();
      } else {
        return v;
      }
    }
  }

  Cyclo unary() {
    if (eat('-')) return Cyclo(0) - unary();
    return power();
  }

  Cyclo power() {
    Cyclo v = atom();
    if (eat('^')) {
      long e = signed_digits();
      if (v.is_zero() && e < 0)
        throw DivisionByZero("zero raised to a negative power");
      v = v.pow(e);
    }
    return v;
  }

  Cyclo atom() {
    skip_space();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Cyclo v = expression();
      expect(')', "expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return Cyclo(Rational(digits()));
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      std::string name;
      while (pos_ < text_.size() &&
             std::isalpha(static_cast<unsigned char>(text_[pos_])))
        name.push_back(text_[pos_++]);
      if (name != "zeta")
        throw SyntaxError(start, "unknown name '" + name + "'");
      expect('(', "expected '(' after zeta");
      std::size_t where = pos_;
      unsigned long n = digits();
      if (n == 0) throw SyntaxError(where, "zeta order must be positive");
      expect(')', "expected ')'");
      return Cyclo::zeta(static_cast<unsigned>(n));
    }
    throw SyntaxError(pos_, "unexpected character");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

Cyclo parse_scalar_expression(const std::string& text) {
  return ScalarParser(text).run();
}

}  // namespace mloop
