#include "ttf/matrix.hpp"

#include <sstream>

namespace ttf {

namespace {
void require_same_shape(const Matrix& a, const Matrix& b) {
    if (a.modulus() != b.modulus())
        throw Error(ErrorKind::ModulusMismatch, "matrix moduli differ");
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorKind::ShapeMismatch, "matrix shapes differ");
}
} // namespace

Matrix Matrix::identity(size_t n, uint32_t p) {
    Matrix m(n, n, p);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1 % p;
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<uint32_t>>& rows, uint32_t p) {
    size_t r = rows.size();
    size_t c = r == 0 ? 0 : rows[0].size();
    Matrix m(r, c, p);
    for (size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw Error(ErrorKind::ShapeMismatch, "ragged rows");
        for (size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j] % p;
    }
    return m;
}

std::vector<uint32_t> Matrix::row(size_t i) const {
    return std::vector<uint32_t>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

void Matrix::set_row(size_t i, const std::vector<uint32_t>& v) {
    if (v.size() != cols_) throw Error(ErrorKind::ShapeMismatch, "row length mismatch");
    for (size_t j = 0; j < cols_; ++j) a_[i * cols_ + j] = v[j] % p_;
}

bool Matrix::operator<(const Matrix& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    return a_ < o.a_;
}

Matrix add(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    Matrix r = a;
    for (size_t i = 0; i < r.data().size(); ++i)
        r.data()[i] = fp::add(a.data()[i], b.data()[i], a.modulus());
    return r;
}

Matrix sub(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    Matrix r = a;
    for (size_t i = 0; i < r.data().size(); ++i)
        r.data()[i] = fp::sub(a.data()[i], b.data()[i], a.modulus());
    return r;
}

Matrix neg(const Matrix& a) {
    Matrix r = a;
    for (auto& x : r.data()) x = fp::neg(x, a.modulus());
    return r;
}

Matrix mul(const Matrix& a, const Matrix& b) {
    if (a.modulus() != b.modulus())
        throw Error(ErrorKind::ModulusMismatch, "matrix moduli differ");
    if (a.cols() != b.rows())
        throw Error(ErrorKind::ShapeMismatch, "inner dimensions differ");
    const uint32_t p = a.modulus();
    Matrix r(a.rows(), b.cols(), p);
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t k = 0; k < a.cols(); ++k) {
            uint64_t aik = a.at(i, k);
            if (aik == 0) continue;
            for (size_t j = 0; j < b.cols(); ++j) {
                uint64_t v = r.at(i, j) + aik * b.at(k, j) % p;
                r.at(i, j) = uint32_t(v >= p ? v - p : v);
            }
        }
    }
    return r;
}

Matrix mul(uint32_t c, const Matrix& a) {
    Matrix r = a;
    c %= a.modulus();
    for (auto& x : r.data()) x = fp::mul(c, x, a.modulus());
    return r;
}

Matrix transpose(const Matrix& a) {
    Matrix r(a.cols(), a.rows(), a.modulus());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r.at(j, i) = a.at(i, j);
    return r;
}

bool is_zero(const Matrix& a) {
    for (uint32_t x : a.data())
        if (x) return false;
    return true;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.modulus() != b.modulus()) throw Error(ErrorKind::ModulusMismatch, "matrix moduli differ");
    if (a.rows() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "hstack row mismatch");
    Matrix r(a.rows(), a.cols() + b.cols(), a.modulus());
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
        for (size_t j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
    }
    return r;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (a.modulus() != b.modulus()) throw Error(ErrorKind::ModulusMismatch, "matrix moduli differ");
    if (a.cols() != b.cols()) throw Error(ErrorKind::ShapeMismatch, "vstack col mismatch");
    Matrix r(a.rows() + b.rows(), a.cols(), a.modulus());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
    return r;
}

std::vector<uint32_t> mul(const std::vector<uint32_t>& v, const Matrix& m) {
    if (v.size() != m.rows()) throw Error(ErrorKind::ShapeMismatch, "vector/matrix mismatch");
    const uint32_t p = m.modulus();
    std::vector<uint32_t> r(m.cols(), 0);
    for (size_t i = 0; i < m.rows(); ++i) {
        uint64_t vi = v[i] % p;
        if (vi == 0) continue;
        for (size_t j = 0; j < m.cols(); ++j) {
            uint64_t x = r[j] + vi * m.at(i, j) % p;
            r[j] = uint32_t(x >= p ? x - p : x);
        }
    }
    return r;
}

std::vector<uint32_t> vec_add(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b, uint32_t p) {
    if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "vector length mismatch");
    std::vector<uint32_t> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = fp::add(a[i], b[i], p);
    return r;
}

std::vector<uint32_t> vec_sub(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b, uint32_t p) {
    if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "vector length mismatch");
    std::vector<uint32_t> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = fp::sub(a[i], b[i], p);
    return r;
}

std::vector<uint32_t> vec_scale(uint32_t c, const std::vector<uint32_t>& a, uint32_t p) {
    std::vector<uint32_t> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = fp::mul(c, a[i], p);
    return r;
}

bool vec_is_zero(const std::vector<uint32_t>& a) {
    for (uint32_t x : a)
        if (x) return false;
    return true;
}

std::string to_string(const Matrix& a) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < a.rows(); ++i) {
        os << (i ? " [" : "[");
        for (size_t j = 0; j < a.cols(); ++j) os << (j ? " " : "") << a.at(i, j);
        os << "]";
        if (i + 1 < a.rows()) os << "\n";
    }
    os << "]";
    return os.str();
}

} // namespace ttf
