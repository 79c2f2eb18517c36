#include "ttf/subspace.hpp"

#include <cmath>

namespace ttf {

Subspace Subspace::span(const Matrix& gens) {
    Subspace s;
    s.ambient_ = gens.cols();
    RrefResult rr = rref(gens);
    Matrix b(rr.rank, gens.cols(), gens.modulus());
    for (size_t i = 0; i < rr.rank; ++i)
        for (size_t j = 0; j < gens.cols(); ++j) b.at(i, j) = rr.r.at(i, j);
    s.basis_ = b;
    s.pivots_ = rr.pivots;
    return s;
}

Subspace Subspace::full(size_t ambient, uint32_t p) {
    return span(Matrix::identity(ambient, p));
}

bool Subspace::operator<(const Subspace& o) const {
    if (ambient_ != o.ambient_) return ambient_ < o.ambient_;
    if (dim() != o.dim()) return dim() < o.dim();
    return basis_.data() < o.basis_.data();
}

std::vector<uint32_t> Subspace::reduce(const std::vector<uint32_t>& v) const {
    if (v.size() != ambient_) throw Error(ErrorKind::AmbientMismatch, "vector has wrong ambient dimension");
    const uint32_t p = modulus();
    std::vector<uint32_t> r = v;
    for (auto& x : r) x %= p;
    for (size_t i = 0; i < dim(); ++i) {
        uint32_t c = r[pivots_[i]];
        if (c == 0) continue;
        for (size_t j = 0; j < ambient_; ++j)
            r[j] = fp::sub(r[j], fp::mul(c, basis_.at(i, j), p), p);
    }
    return r;
}

bool Subspace::contains(const std::vector<uint32_t>& v) const {
    return vec_is_zero(reduce(v));
}

bool Subspace::contains(const Subspace& other) const {
    if (ambient_ != other.ambient_) throw Error(ErrorKind::AmbientMismatch, "ambient dimensions differ");
    for (size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

std::vector<uint32_t> Subspace::coordinates(const std::vector<uint32_t>& v) const {
    if (v.size() != ambient_) throw Error(ErrorKind::AmbientMismatch, "vector has wrong ambient dimension");
    const uint32_t p = modulus();
    std::vector<uint32_t> r = v;
    for (auto& x : r) x %= p;
    std::vector<uint32_t> coords(dim(), 0);
    for (size_t i = 0; i < dim(); ++i) {
        uint32_t c = r[pivots_[i]];
        coords[i] = c;
        if (c == 0) continue;
        for (size_t j = 0; j < ambient_; ++j)
            r[j] = fp::sub(r[j], fp::mul(c, basis_.at(i, j), p), p);
    }
    if (!vec_is_zero(r)) throw Error(ErrorKind::NotInvariant, "vector is not in the subspace");
    return coords;
}

Subspace sum(const Subspace& u, const Subspace& v) {
    if (u.ambient() != v.ambient() || u.modulus() != v.modulus())
        throw Error(ErrorKind::AmbientMismatch, "subspace sum: ambients differ");
    return Subspace::span(vstack(u.basis(), v.basis()));
}

Subspace intersection(const Subspace& u, const Subspace& v) {
    if (u.ambient() != v.ambient() || u.modulus() != v.modulus())
        throw Error(ErrorKind::AmbientMismatch, "subspace intersection: ambients differ");
    const uint32_t p = u.modulus();
    if (u.dim() == 0 || v.dim() == 0) return Subspace(u.ambient(), p);
    // rows (a | b) with a*U + b*V = 0; then a*U spans the intersection
    Matrix stacked = vstack(u.basis(), v.basis());
    Matrix ker = left_nullspace(stacked); // k x (dim u + dim v)
    Matrix gens(ker.rows(), u.ambient(), p);
    for (size_t i = 0; i < ker.rows(); ++i) {
        std::vector<uint32_t> r = ker.row(i);
        std::vector<uint32_t> a(r.begin(), r.begin() + u.dim());
        gens.set_row(i, mul(a, u.basis()));
    }
    return Subspace::span(gens);
}

std::vector<size_t> complement_coordinates(const Subspace& u) {
    std::vector<bool> is_pivot(u.ambient(), false);
    for (size_t c : u.pivots()) is_pivot[c] = true;
    std::vector<size_t> rest;
    for (size_t c = 0; c < u.ambient(); ++c)
        if (!is_pivot[c]) rest.push_back(c);
    return rest;
}

uint64_t count_subspaces(uint32_t p, size_t n, uint64_t cap) {
    // sum over k of the Gaussian binomial [n choose k]_p, saturating at cap
    long double total = 0;
    for (size_t k = 0; k <= n; ++k) {
        long double c = 1;
        for (size_t i = 0; i < k; ++i) {
            long double num = powl((long double)p, (long double)(n - i)) - 1;
            long double den = powl((long double)p, (long double)(i + 1)) - 1;
            c *= num / den;
            if (c > (long double)cap * 4) return cap + 1;
        }
        total += c;
        if (total > (long double)cap) return cap + 1;
    }
    return (uint64_t)(total + 0.5L);
}

namespace {
// free entry positions of an RREF with the given pivot columns
size_t free_positions(const std::vector<size_t>& piv, size_t n, std::vector<std::pair<size_t, size_t>>& pos) {
    pos.clear();
    std::vector<bool> is_pivot(n, false);
    for (size_t c : piv) is_pivot[c] = true;
    for (size_t i = 0; i < piv.size(); ++i)
        for (size_t c = piv[i] + 1; c < n; ++c)
            if (!is_pivot[c]) pos.emplace_back(i, c);
    return pos.size();
}
} // namespace

void for_each_subspace(uint32_t p, size_t n, uint64_t cap,
                       const std::function<bool(const Subspace&)>& visit) {
    if (count_subspaces(p, n, cap) > cap)
        throw Error(ErrorKind::LatticeTooLarge,
                    "subspace lattice of F_" + std::to_string(p) + "^" + std::to_string(n) + " exceeds cap");
    std::vector<std::pair<size_t, size_t>> pos;
    for (size_t k = 0; k <= n; ++k) {
        // combinations of k pivot columns in lexicographic order
        std::vector<size_t> piv(k);
        for (size_t i = 0; i < k; ++i) piv[i] = i;
        while (true) {
            free_positions(piv, n, pos);
            uint64_t total = 1;
            for (size_t i = 0; i < pos.size(); ++i) total *= p;
            for (uint64_t idx = 0; idx < total; ++idx) {
                Matrix b(k, n, p);
                for (size_t i = 0; i < k; ++i) b.at(i, piv[i]) = 1 % p;
                uint64_t t = idx;
                for (auto& pc : pos) {
                    b.at(pc.first, pc.second) = uint32_t(t % p);
                    t /= p;
                }
                Subspace s = Subspace::span(b);
                if (!visit(s)) return;
            }
            // next combination
            if (k == 0) break;
            bool advanced = false;
            for (size_t i = k; i-- > 0;) {
                if (piv[i] + (k - i) < n) {
                    ++piv[i];
                    for (size_t j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
    }
}

} // namespace ttf
