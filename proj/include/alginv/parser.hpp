#pragma once

// Polynomial expression grammar:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' INTEGER)?
//   primary := NUMBER | IDENT | '(' expr ')'
//
// NUMBER is an integer, a decimal (1.25, 3e-2) or a rational literal 3/4.
// Implicit multiplication and division by non-literals are rejected.

#include <stdexcept>
#include <string>
#include <string_view>

#include "alginv/poly.hpp"

namespace alginv {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

}  // namespace alginv
