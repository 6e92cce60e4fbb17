#pragma once

#include <string>

#include "ddecap/interval.hpp"

namespace ddecap {

// Outward enclosure of a parameter expression: decimal literals, `pi`,
// `sqrt(...)`, unary minus, + - * / and parentheses. Throws DomainError on
// malformed text.
Interval parse_expr(const std::string& text);

// A parameter that must be an exact double (e.g. the exponent k).
double parse_exact(const std::string& text);

}  // namespace ddecap
