#pragma once

#include <optional>

#include "ttf/matrix.hpp"

namespace ttf {

struct RrefResult {
    Matrix r;
    size_t rank = 0;
    std::vector<size_t> pivots; // pivot column per nonzero row
};

// Reduced row echelon form (Gauss-Jordan, exact).  Idempotent: rref(rref(m)) == rref(m).
RrefResult rref(const Matrix& m);

size_t rank(const Matrix& m);

// Solutions of a * x = b where x, b are column-shaped (b may have several columns).
// `particular` is present iff the system is consistent; nullspace rows are a basis
// of { x : a x = 0 } written as row vectors (transposed solutions), in RREF.
struct LinearSolution {
    std::optional<Matrix> particular; // cols(a) x cols(b)
    Matrix nullspace;                 // k x cols(a)
};

LinearSolution solve(const Matrix& a, const Matrix& b);

// Basis of { x : a x = 0 } as rows (RREF), ambient dim = cols(a).
Matrix right_nullspace(const Matrix& a);
// Basis of { x : x a = 0 } as rows (RREF), ambient dim = rows(a).
Matrix left_nullspace(const Matrix& a);

// Solve x * a = b for row-shaped x (b may have several rows): returns rows(b) x rows(a).
std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b);

bool is_invertible(const Matrix& a);
Matrix inverse(const Matrix& a);

} // namespace ttf
