#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "degen/intmath.hpp"

namespace degen {

// Grammar: integers, single-letter variables, + - * ^ and parentheses.
// Juxtaposition is rejected. Errors carry the byte offset of the offending token.

// Univariate in x; coefficients low-to-high without trailing zeros.
std::vector<Int> parse_univariate(std::string_view text);

// Homogeneous cubic in X, Y, Z, W as a 20-vector indexed like cubic_monomials().
// Errors: SyntaxError; InvalidInput when the form is not a homogeneous cubic.
std::vector<Int> parse_cubic_form(std::string_view text);

// Exponent vectors (X, Y, Z, W) of the cubic monomials in lexicographic order,
// X^3 first and W^3 last.
const std::vector<std::array<int, 4>>& cubic_monomials();

std::string format_univariate(const std::vector<Int>& coeffs, const std::string& var = "x");
std::string format_cubic_form(const std::vector<Int>& coeffs);

}  // namespace degen
