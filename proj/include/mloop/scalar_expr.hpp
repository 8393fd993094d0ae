#pragma once

#include <string>

#include "mloop/cyclotomic.hpp"

namespace mloop {

/// Parses and exactly evaluates a scalar expression over rational literals
/// and roots of unity: operators + - * / ^ (integer exponents), parentheses,
/// and zeta(n).  Throws SyntaxError with a 0-based character position, or
/// DivisionByZero.
Cyclo parse_scalar_expression(const std::string& text);

}  // namespace mloop
