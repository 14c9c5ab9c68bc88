#include "degen/smith.hpp"

#include <algorithm>
#include <sstream>

#include "degen/error.hpp"

namespace degen {

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix zero_matrix(std::size_t rows, std::size_t cols) { return IntMatrix(rows, IntVector(cols, 0)); }

std::size_t cols(const IntMatrix& a) { return a.empty() ? 0 : a[0].size(); }

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  if (cols(a) != b.size()) throw Error(ErrorCode::InvalidMatrix, "dimension mismatch in product");
  IntMatrix c = zero_matrix(a.size(), cols(b));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols(b); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

IntVector mat_vec(const IntMatrix& a, const IntVector& x) {
  if (cols(a) != x.size()) throw Error(ErrorCode::InvalidMatrix, "dimension mismatch in product");
  IntVector y(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  }
  return y;
}

IntVector vec_mat(const IntVector& x, const IntMatrix& a) {
  if (a.size() != x.size()) throw Error(ErrorCode::InvalidMatrix, "dimension mismatch in product");
  IntVector y(cols(a), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += x[i] * a[i][j];
  }
  return y;
}

IntMatrix transpose(const IntMatrix& a) {
  IntMatrix t = zero_matrix(cols(a), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < cols(a); ++j) t[j][i] = a[i][j];
  }
  return t;
}

Int determinant(const IntMatrix& a) {
  std::size_t n = a.size();
  if (n == 0) return 1;
  if (cols(a) != n) throw Error(ErrorCode::InvalidMatrix, "determinant of a non-square matrix");
  IntMatrix m = a;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::string matrix_to_string(const IntMatrix& a) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    out << (i ? ",[" : "[");
    for (std::size_t j = 0; j < a[i].size(); ++j) out << (j ? "," : "") << a[i][j];
    out << "]";
  }
  out << "]";
  return out.str();
}

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// Elementary operations applied to A together with the certificates.
struct Work {
  IntMatrix A, U, Ui, V, Vi;

  void swap_rows(std::size_t i, std::size_t j) {
    std::swap(A[i], A[j]);
    std::swap(U[i], U[j]);
    for (auto& row : Ui) std::swap(row[i], row[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& row : A) std::swap(row[i], row[j]);
    for (auto& row : V) std::swap(row[i], row[j]);
    std::swap(Vi[i], Vi[j]);
  }
  // row_i += k * row_t
  void add_row(std::size_t i, std::size_t t, const Int& k) {
    for (std::size_t c = 0; c < A[i].size(); ++c) A[i][c] += k * A[t][c];
    for (std::size_t c = 0; c < U[i].size(); ++c) U[i][c] += k * U[t][c];
    for (auto& row : Ui) row[t] -= k * row[i];
  }
  // col_j += k * col_t
  void add_col(std::size_t j, std::size_t t, const Int& k) {
    for (auto& row : A) row[j] += k * row[t];
    for (auto& row : V) row[j] += k * row[t];
    for (std::size_t c = 0; c < Vi[t].size(); ++c) Vi[t][c] -= k * Vi[j][c];
  }
  void negate_row(std::size_t i) {
    for (auto& v : A[i]) v = -v;
    for (auto& v : U[i]) v = -v;
    for (auto& row : Ui) row[i] = -row[i];
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.size();
  const std::size_t n = cols(a);
  for (const auto& row : a) {
    if (row.size() != n) throw Error(ErrorCode::InvalidMatrix, "ragged matrix");
  }
  Work w{a, identity_matrix(m), identity_matrix(m), identity_matrix(n), identity_matrix(n)};
  const std::size_t steps = std::min(m, n);
  std::size_t t = 0;
  for (; t < steps; ++t) {
    // Pivot: smallest nonzero magnitude in the trailing block.
    bool found = false;
    std::size_t pi = t, pj = t;
    Int best = 0;
    for (std::size_t i = t; i < m; ++i) {
      for (std::size_t j = t; j < n; ++j) {
        if (w.A[i][j] != 0 && (!found || int_abs(w.A[i][j]) < best)) {
          found = true;
          best = int_abs(w.A[i][j]);
          pi = i;
          pj = j;
        }
      }
    }
    if (!found) break;
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (w.A[i][t] == 0) continue;
        w.add_row(i, t, -floor_div(w.A[i][t], w.A[t][t]));
        if (w.A[i][t] != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (w.A[t][j] == 0) continue;
        w.add_col(j, t, -floor_div(w.A[t][j], w.A[t][t]));
        if (w.A[t][j] != 0) dirty = true;
      }
      if (dirty) {
        // A smaller remainder exists in row or column t; move it to the pivot.
        std::size_t bi = t, bj = t;
        Int b = int_abs(w.A[t][t]);
        for (std::size_t i = t + 1; i < m; ++i) {
          if (w.A[i][t] != 0 && int_abs(w.A[i][t]) < b) {
            b = int_abs(w.A[i][t]);
            bi = i;
            bj = t;
          }
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (w.A[t][j] != 0 && int_abs(w.A[t][j]) < b) {
            b = int_abs(w.A[t][j]);
            bi = t;
            bj = j;
          }
        }
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        continue;
      }
      // Row and column clear; enforce divisibility of the trailing block.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (w.A[i][j] % w.A[t][t] != 0) {
            bad = i;
            break;
          }
        }
      }
      if (bad == m) break;
      w.add_row(t, bad, 1);
    }
    if (w.A[t][t] < 0) w.negate_row(t);
  }
  SmithForm out;
  out.rank = t;
  out.D = w.A;
  out.U = std::move(w.U);
  out.U_inv = std::move(w.Ui);
  out.V = std::move(w.V);
  out.V_inv = std::move(w.Vi);
  for (std::size_t i = 0; i < steps; ++i) out.diagonal.push_back(out.D[i][i]);
  return out;
}

IntVector cokernel_invariants(const IntMatrix& rows, std::size_t n) {
  IntVector out;
  std::size_t rank = 0;
  if (!rows.empty()) {
    SmithForm s = smith_normal_form(rows);
    for (const auto& d : s.diagonal) {
      if (d == 0) continue;
      ++rank;
      if (d > 1) out.push_back(d);
    }
  }
  for (std::size_t i = rank; i < n; ++i) out.push_back(0);
  return out;
}

}  // namespace degen
