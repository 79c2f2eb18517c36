#include "ttf/linalg.hpp"

namespace ttf {

RrefResult rref(const Matrix& m) {
    RrefResult res;
    res.r = m;
    Matrix& a = res.r;
    const uint32_t p = a.modulus();
    size_t row = 0;
    for (size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        size_t piv = row;
        while (piv < a.rows() && a.at(piv, col) == 0) ++piv;
        if (piv == a.rows()) continue;
        if (piv != row)
            for (size_t j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(row, j));
        uint32_t inv = fp::inv(a.at(row, col), p);
        for (size_t j = col; j < a.cols(); ++j) a.at(row, j) = fp::mul(inv, a.at(row, j), p);
        for (size_t i = 0; i < a.rows(); ++i) {
            if (i == row) continue;
            uint32_t f = a.at(i, col);
            if (f == 0) continue;
            for (size_t j = col; j < a.cols(); ++j)
                a.at(i, j) = fp::sub(a.at(i, j), fp::mul(f, a.at(row, j), p), p);
        }
        res.pivots.push_back(col);
        ++row;
    }
    res.rank = row;
    return res;
}

size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix right_nullspace(const Matrix& a) {
    const uint32_t p = a.modulus();
    RrefResult rr = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (size_t c : rr.pivots) is_pivot[c] = true;
    std::vector<size_t> free_cols;
    for (size_t c = 0; c < a.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix basis(free_cols.size(), a.cols(), p);
    for (size_t k = 0; k < free_cols.size(); ++k) {
        size_t fc = free_cols[k];
        basis.at(k, fc) = 1 % p;
        for (size_t r = 0; r < rr.rank; ++r)
            basis.at(k, rr.pivots[r]) = fp::neg(rr.r.at(r, fc), p);
    }
    return rref(basis).r; // canonical
}

Matrix left_nullspace(const Matrix& a) { return right_nullspace(transpose(a)); }

LinearSolution solve(const Matrix& a, const Matrix& b) {
    if (a.modulus() != b.modulus()) throw Error(ErrorKind::ModulusMismatch, "solve: moduli differ");
    if (a.rows() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "solve: row counts differ");
    LinearSolution out;
    out.nullspace = right_nullspace(a);
    RrefResult rr = rref(hstack(a, b));
    // inconsistent iff some pivot lands in the b-block
    for (size_t c : rr.pivots)
        if (c >= a.cols()) return out;
    Matrix x(a.cols(), b.cols(), a.modulus());
    for (size_t r = 0; r < rr.rank; ++r) {
        size_t pc = rr.pivots[r];
        for (size_t j = 0; j < b.cols(); ++j) x.at(pc, j) = rr.r.at(r, a.cols() + j);
    }
    out.particular = x;
    return out;
}

std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw Error(ErrorKind::ShapeMismatch, "solve_left: col counts differ");
    LinearSolution s = solve(transpose(a), transpose(b));
    if (!s.particular) return std::nullopt;
    return transpose(*s.particular);
}

bool is_invertible(const Matrix& a) {
    return a.rows() == a.cols() && rank(a) == a.rows();
}

Matrix inverse(const Matrix& a) {
    if (a.rows() != a.cols()) throw Error(ErrorKind::ShapeMismatch, "inverse of non-square matrix");
    RrefResult rr = rref(hstack(a, Matrix::identity(a.rows(), a.modulus())));
    if (rr.rank != a.rows() || (a.rows() && rr.pivots.back() >= a.cols()))
        throw Error(ErrorKind::Internal, "matrix is singular");
    Matrix inv(a.rows(), a.rows(), a.modulus());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.rows(); ++j) inv.at(i, j) = rr.r.at(i, a.cols() + j);
    return inv;
}

} // namespace ttf
