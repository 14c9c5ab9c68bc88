#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "degen/intmath.hpp"

namespace degen {

using IntVector = std::vector<Int>;
using IntMatrix = std::vector<IntVector>;

IntMatrix identity_matrix(std::size_t n);
IntMatrix zero_matrix(std::size_t rows, std::size_t cols);
IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
IntVector mat_vec(const IntMatrix& a, const IntVector& x);
// Row vector times matrix.
IntVector vec_mat(const IntVector& x, const IntMatrix& a);
IntMatrix transpose(const IntMatrix& a);
std::size_t cols(const IntMatrix& a);
// Fraction-free Bareiss elimination; square input.
Int determinant(const IntMatrix& a);
std::string matrix_to_string(const IntMatrix& a);

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... , d_i >= 0.
// The inverses of U and V are carried along so no inversion is ever needed.
struct SmithForm {
  IntMatrix U, U_inv;
  IntMatrix V, V_inv;
  IntMatrix D;
  IntVector diagonal;  // min(rows, cols) entries
  std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& a);

// Invariant factors > 1 of Z^n / (row span of a), with one 0 per free rank.
IntVector cokernel_invariants(const IntMatrix& rows, std::size_t n);

}  // namespace degen
