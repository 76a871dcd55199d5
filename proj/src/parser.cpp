#include "alginv/parser.hpp"

#include <cctype>

namespace alginv {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Polynomial parse() {
    skip_ws();
    if (at_end()) throw ParseError("empty expression", pos_);
    Polynomial p = expr();
    skip_ws();
    if (!at_end()) throw ParseError(std::string("unexpected '") + peek() + "'", pos_);
    return p;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    for (;;) {
      skip_ws();
      if (accept('*')) {
        acc = acc * unary();
        continue;
      }
      char c = peek();
      if (c == '/') throw ParseError("division is only allowed inside a rational literal", pos_);
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(' || c == '.')
        throw ParseError("implicit multiplication is not allowed", pos_);
      return acc;
    }
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      if (peek() == '-') throw ParseError("negative exponent", pos_);
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (start == pos_) throw ParseError("expected a non-negative integer exponent", pos_);
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 1000) throw ParseError("exponent too large", start);
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Polynomial primary() {
    skip_ws();
    std::size_t start = pos_;
    char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (!ring_->universe().find(name)) throw ParseError("unknown identifier '" + name + "'", start);
      return Polynomial::variable(ring_, name);
    }
    if (at_end()) throw ParseError("unexpected end of expression", pos_);
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Polynomial number() {
    std::size_t start = pos_;
    auto digits = [&] {
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    };
    digits();
    if (peek() == '.') {
      ++pos_;
      digits();
    }
    if (peek() == 'e' || peek() == 'E') {
      std::size_t save = pos_;
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        digits();
      } else {
        pos_ = save;
      }
    }
    // A '/' directly followed by digits continues a rational literal.
    if (peek() == '/' && pos_ + 1 < text_.size() &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      if (text_.substr(start, pos_ - start).find_first_of(".eE") != std::string_view::npos)
        throw ParseError("rational literals take integer numerator and denominator", start);
      ++pos_;
      digits();
    }
    try {
      return Polynomial::constant(ring_, parse_rational(text_.substr(start, pos_ - start)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), start);
    }
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  return Parser(text, ring).parse();
}

}  // namespace alginv
