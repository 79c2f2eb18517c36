#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "ttf/fp.hpp"

namespace ttf {

// Dense row-major matrix over F_p.  All entries reduced mod p; all binary
// operations demand matching moduli and shapes.
class Matrix {
  public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols, uint32_t p)
        : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {}

    static Matrix identity(size_t n, uint32_t p);
    static Matrix from_rows(const std::vector<std::vector<uint32_t>>& rows, uint32_t p);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    uint32_t modulus() const { return p_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    uint32_t& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    uint32_t at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<uint32_t>& data() const { return a_; }
    std::vector<uint32_t>& data() { return a_; }

    std::vector<uint32_t> row(size_t i) const;
    void set_row(size_t i, const std::vector<uint32_t>& v);

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && a_ == o.a_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    // Lexicographic order on (rows, cols, entries); used for canonical sorting.
    bool operator<(const Matrix& o) const;

  private:
    size_t rows_ = 0, cols_ = 0;
    uint32_t p_ = 2;
    std::vector<uint32_t> a_;
};

Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix neg(const Matrix& a);
Matrix mul(const Matrix& a, const Matrix& b);
Matrix mul(uint32_t c, const Matrix& a);
Matrix transpose(const Matrix& a);
bool is_zero(const Matrix& a);

// [a | b] and [a ; b]
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

// v * m for a row vector v.
std::vector<uint32_t> mul(const std::vector<uint32_t>& v, const Matrix& m);

std::vector<uint32_t> vec_add(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b, uint32_t p);
std::vector<uint32_t> vec_sub(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b, uint32_t p);
std::vector<uint32_t> vec_scale(uint32_t c, const std::vector<uint32_t>& a, uint32_t p);
bool vec_is_zero(const std::vector<uint32_t>& a);

std::string to_string(const Matrix& a);

} // namespace ttf
