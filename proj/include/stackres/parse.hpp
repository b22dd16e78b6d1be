#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stackres/mpoly.hpp"

namespace stackres {

// Parses text such as "x2^7 + x1^4*x2^4 - 3/2*x1^11" over the given field. Accepts + - * / ^,
// parentheses and integer or rational constants; in extension fields the identifier t denotes
// the field generator unless t is a declared variable. Division is only by nonzero constants.
//
// With no declared variables they are inferred: names are ordered x1, x2, z, y, x, s, u, then
// alphabetically, and a second variable is added when only one occurs (x pairs with y, x1 with
// x2, z with x, s with u). Putting z and y ahead of x makes the first variable the usual
// choice of tangent parameter in inputs such as y^2 - x^3. Errors are ParseError with the column of the problem.
MPoly parse_polynomial(std::string_view text, Field field, const std::vector<std::string>& variables = {},
                       bool allow_zero = false);

// Default variable list for a set of names found in the input.
std::vector<std::string> infer_variables(std::vector<std::string> names);

// Splits "x,y" or "x1 x2" into names.
std::vector<std::string> split_variable_list(std::string_view text);

}  // namespace stackres
