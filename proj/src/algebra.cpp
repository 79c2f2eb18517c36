#include "ttf/algebra.hpp"

#include <algorithm>
#include <set>

#include "ttf/fp.hpp"
#include "ttf/linalg.hpp"

namespace ttf {

namespace {

// odometer over F_p^n in little-endian order; returns false after the last tuple
bool next_tuple(std::vector<uint32_t>& v, uint32_t p) {
    for (auto& x : v) {
        if (++x < p) return true;
        x = 0;
    }
    return false;
}

uint64_t checked_pow(uint32_t p, size_t n, uint64_t cap) {
    uint64_t r = 1;
    for (size_t i = 0; i < n; ++i) {
        if (r > cap / p) return cap + 1;
        r *= p;
    }
    return r;
}

} // namespace

Algebra::Algebra(uint32_t p, size_t dim, std::vector<uint32_t> table, std::vector<uint32_t> unit,
                 std::vector<std::string> labels, std::string name,
                 std::vector<std::vector<uint32_t>> distinguished)
    : p_(p), n_(dim), table_(std::move(table)), one_(std::move(unit)), labels_(std::move(labels)),
      name_(std::move(name)), distinguished_(std::move(distinguished)) {
    fp::require_prime(p_);
    if (table_.size() != n_ * n_ * n_)
        throw Error(ErrorKind::ShapeMismatch, "algebra table must have dim^3 entries");
    if (one_.size() != n_) throw Error(ErrorKind::ShapeMismatch, "unit vector has wrong length");
    for (auto& c : table_) c %= p_;
    for (auto& c : one_) c %= p_;
    if (labels_.empty())
        for (size_t i = 0; i < n_; ++i) labels_.push_back("b" + std::to_string(i));
    if (labels_.size() != n_) throw Error(ErrorKind::ShapeMismatch, "label count mismatch");

    // associativity on basis triples: (e_i e_j) e_k = e_i (e_j e_k)
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j)
            for (size_t k = 0; k < n_; ++k)
                for (size_t m = 0; m < n_; ++m) {
                    uint64_t lhs = 0, rhs = 0;
                    for (size_t l = 0; l < n_; ++l) {
                        lhs += uint64_t(structure(i, j, l)) * structure(l, k, m);
                        rhs += uint64_t(structure(j, k, l)) * structure(i, l, m);
                    }
                    if (lhs % p_ != rhs % p_)
                        throw Error(ErrorKind::AssociativityViolation,
                                    "associativity fails at basis triple (" + std::to_string(i) +
                                        "," + std::to_string(j) + "," + std::to_string(k) +
                                        ") component " + std::to_string(m));
                }

    // the declared unit must be a two-sided identity
    for (size_t i = 0; i < n_; ++i)
        for (size_t m = 0; m < n_; ++m) {
            uint64_t le = 0, re = 0;
            for (size_t j = 0; j < n_; ++j) {
                le += uint64_t(one_[j]) * structure(j, i, m);
                re += uint64_t(one_[j]) * structure(i, j, m);
            }
            uint32_t want = (i == m) ? 1 : 0;
            if (le % p_ != want || re % p_ != want)
                throw Error(ErrorKind::UnitViolation,
                            "unit is not a two-sided identity at basis " + std::to_string(i));
        }

    rmats_.reserve(n_);
    lmats_.reserve(n_);
    for (size_t x = 0; x < n_; ++x) {
        Matrix r(n_, n_, p_), l(n_, n_, p_);
        for (size_t i = 0; i < n_; ++i)
            for (size_t k = 0; k < n_; ++k) {
                r.at(i, k) = structure(i, x, k); // v -> v*e_x
                l.at(i, k) = structure(x, i, k); // v -> e_x*v
            }
        rmats_.push_back(std::move(r));
        lmats_.push_back(std::move(l));
    }

    for (auto& e : distinguished_) {
        if (e.size() != n_) throw Error(ErrorKind::ShapeMismatch, "distinguished idempotent length");
        for (auto& c : e) c %= p_;
    }
    for (size_t i = 0; i < distinguished_.size(); ++i) {
        if (!is_idempotent(distinguished_[i]))
            throw Error(ErrorKind::Internal, "distinguished element is not idempotent");
        for (size_t j = 0; j < distinguished_.size(); ++j)
            if (i != j && !vec_is_zero(mul(distinguished_[i], distinguished_[j])))
                throw Error(ErrorKind::Internal, "distinguished idempotents are not orthogonal");
    }
}

std::vector<uint32_t> Algebra::basis_vec(size_t i) const {
    std::vector<uint32_t> v(n_, 0);
    v.at(i) = 1;
    return v;
}

std::vector<uint32_t> Algebra::mul(const std::vector<uint32_t>& x,
                                   const std::vector<uint32_t>& y) const {
    if (x.size() != n_ || y.size() != n_)
        throw Error(ErrorKind::ShapeMismatch, "element length mismatch in product");
    std::vector<uint32_t> r(n_, 0);
    for (size_t i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < n_; ++j) {
            if (y[j] == 0) continue;
            uint32_t c = fp::mul(x[i], y[j], p_);
            for (size_t k = 0; k < n_; ++k)
                r[k] = (r[k] + uint64_t(c) * structure(i, j, k)) % p_;
        }
    }
    return r;
}

std::vector<uint32_t> Algebra::power(const std::vector<uint32_t>& x, uint64_t k) const {
    std::vector<uint32_t> acc = one_, base = x;
    while (k > 0) {
        if (k & 1) acc = mul(acc, base);
        base = mul(base, base);
        k >>= 1;
    }
    return acc;
}

Matrix Algebra::rmat(const std::vector<uint32_t>& x) const {
    Matrix m(n_, n_, p_);
    for (size_t j = 0; j < n_; ++j)
        if (x[j] != 0) m = add(m, ttf::mul(x[j], rmats_[j]));
    return m;
}

Matrix Algebra::lmat(const std::vector<uint32_t>& x) const {
    Matrix m(n_, n_, p_);
    for (size_t j = 0; j < n_; ++j)
        if (x[j] != 0) m = add(m, ttf::mul(x[j], lmats_[j]));
    return m;
}

bool Algebra::is_idempotent(const std::vector<uint32_t>& x) const { return mul(x, x) == x; }

bool Algebra::is_central(const std::vector<uint32_t>& x) const {
    for (size_t i = 0; i < n_; ++i)
        if (mul(x, basis_vec(i)) != mul(basis_vec(i), x)) return false;
    return true;
}

Element operator*(const Element& x, const Element& y) {
    if (x.parent != y.parent) throw Error(ErrorKind::ShapeMismatch, "elements of different algebras");
    return {x.parent, x.parent->mul(x.coeffs, y.coeffs)};
}
Element operator+(const Element& x, const Element& y) {
    if (x.parent != y.parent) throw Error(ErrorKind::ShapeMismatch, "elements of different algebras");
    return {x.parent, vec_add(x.coeffs, y.coeffs, x.parent->modulus())};
}
Element operator-(const Element& x, const Element& y) {
    if (x.parent != y.parent) throw Error(ErrorKind::ShapeMismatch, "elements of different algebras");
    return {x.parent, vec_sub(x.coeffs, y.coeffs, x.parent->modulus())};
}
bool operator==(const Element& x, const Element& y) {
    return x.parent == y.parent && x.coeffs == y.coeffs;
}

AlgebraPtr algebra_from_table(uint32_t p, size_t dim, const std::vector<uint32_t>& table,
                              const std::vector<uint32_t>& unit, std::vector<std::string> labels,
                              std::string name) {
    return std::make_shared<Algebra>(p, dim, table, unit, std::move(labels), std::move(name));
}

AlgebraPtr opposite_algebra(const AlgebraPtr& a) {
    size_t n = a->dim();
    std::vector<uint32_t> t(n * n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) t[(i * n + j) * n + k] = a->structure(j, i, k);
    return std::make_shared<Algebra>(a->modulus(), n, std::move(t), a->one(), a->labels(),
                                     a->name() + "^op", a->distinguished_idempotents());
}

CornerAlgebra corner_algebra(const AlgebraPtr& a, const std::vector<uint32_t>& e) {
    if (!a->is_idempotent(e)) throw Error(ErrorKind::NotIdempotent, "corner element e has e^2 != e");
    size_t n = a->dim();
    uint32_t p = a->modulus();
    Matrix gens(n, n, p);
    for (size_t i = 0; i < n; ++i) gens.set_row(i, a->mul(a->mul(e, a->basis_vec(i)), e));
    Subspace s = Subspace::span(gens);
    size_t k = s.dim();

    std::vector<uint32_t> table(k * k * k);
    for (size_t r = 0; r < k; ++r)
        for (size_t c = 0; c < k; ++c) {
            auto prod = s.coordinates(a->mul(s.basis().row(r), s.basis().row(c)));
            for (size_t m = 0; m < k; ++m) table[(r * k + c) * k + m] = prod[m];
        }

    // keep the distinguished idempotents that live inside the corner
    std::vector<std::vector<uint32_t>> dist;
    bool all_commute = true;
    for (const auto& d : a->distinguished_idempotents()) {
        if (a->mul(e, d) != a->mul(d, e)) {
            all_commute = false;
            break;
        }
    }
    if (all_commute)
        for (const auto& d : a->distinguished_idempotents()) {
            auto f = a->mul(a->mul(e, d), e);
            if (!vec_is_zero(f)) dist.push_back(s.coordinates(f));
        }

    CornerAlgebra out;
    out.parent = a;
    out.algebra = std::make_shared<Algebra>(p, k, std::move(table), s.coordinates(e),
                                            std::vector<std::string>{}, a->name() + "|corner",
                                            std::move(dist));
    out.e = e;
    out.inclusion = s.basis();
    return out;
}

std::vector<uint32_t> corner_coords(const CornerAlgebra& c, const std::vector<uint32_t>& x) {
    Subspace s = Subspace::span(c.inclusion);
    return s.coordinates(c.parent->mul(c.parent->mul(c.e, x), c.e));
}

Subspace restrict_ideal_to_corner(const CornerAlgebra& c, const Subspace& ideal) {
    Subspace s = Subspace::span(c.inclusion);
    Matrix m(ideal.dim(), s.dim(), ideal.modulus());
    for (size_t r = 0; r < ideal.dim(); ++r) m.set_row(r, corner_coords(c, ideal.basis().row(r)));
    return Subspace::span(m);
}

QuotientAlgebra quotient_algebra(const AlgebraPtr& a, const Subspace& ideal) {
    if (ideal.ambient() != a->dim() || ideal.modulus() != a->modulus())
        throw Error(ErrorKind::AmbientMismatch, "ideal does not live in the algebra");
    if (!is_left_ideal(*a, ideal) || !is_right_ideal(*a, ideal))
        throw Error(ErrorKind::NotTwoSided, "quotient requires a two-sided ideal");
    size_t n = a->dim();
    uint32_t p = a->modulus();
    auto cc = complement_coordinates(ideal);
    size_t m = cc.size();

    auto project = [&](const std::vector<uint32_t>& v) {
        auto r = ideal.reduce(v);
        std::vector<uint32_t> out(m);
        for (size_t i = 0; i < m; ++i) out[i] = r[cc[i]];
        return out;
    };

    std::vector<uint32_t> table(m * m * m);
    for (size_t r = 0; r < m; ++r)
        for (size_t c = 0; c < m; ++c) {
            auto prod = project(a->mul(a->basis_vec(cc[r]), a->basis_vec(cc[c])));
            for (size_t k = 0; k < m; ++k) table[(r * m + c) * m + k] = prod[k];
        }

    std::vector<std::string> labels;
    for (size_t i = 0; i < m; ++i) labels.push_back(a->labels()[cc[i]]);

    std::vector<std::vector<uint32_t>> dist;
    for (const auto& d : a->distinguished_idempotents()) {
        auto f = project(d);
        if (!vec_is_zero(f)) dist.push_back(f);
    }

    QuotientAlgebra out;
    out.algebra = std::make_shared<Algebra>(p, m, std::move(table), project(a->one()),
                                            std::move(labels), a->name() + "/I", std::move(dist));
    out.ideal = ideal;
    out.projection = Matrix(n, m, p);
    for (size_t i = 0; i < n; ++i) out.projection.set_row(i, project(a->basis_vec(i)));
    out.section = Matrix(m, n, p);
    for (size_t r = 0; r < m; ++r) {
        std::vector<uint32_t> rep(n, 0);
        rep[cc[r]] = 1;
        out.section.set_row(r, rep);
    }
    return out;
}

void validate_bimodule(const Bimodule& m) {
    if (!m.left_algebra || !m.right_algebra)
        throw Error(ErrorKind::ShapeMismatch, "bimodule missing an algebra");
    const Algebra& b = *m.left_algebra;
    const Algebra& c = *m.right_algebra;
    if (b.modulus() != c.modulus())
        throw Error(ErrorKind::ModulusMismatch, "bimodule algebras over different primes");
    uint32_t p = b.modulus();
    if (m.left_rho.size() != b.dim() || m.right_rho.size() != c.dim())
        throw Error(ErrorKind::ShapeMismatch, "bimodule action count mismatch");
    for (const auto& mat : m.left_rho)
        if (mat.rows() != m.dim || mat.cols() != m.dim || mat.modulus() != p)
            throw Error(ErrorKind::ShapeMismatch, "left action matrix shape");
    for (const auto& mat : m.right_rho)
        if (mat.rows() != m.dim || mat.cols() != m.dim || mat.modulus() != p)
            throw Error(ErrorKind::ShapeMismatch, "right action matrix shape");

    auto comb = [&](const std::vector<Matrix>& rho, const std::vector<uint32_t>& x) {
        Matrix r(m.dim, m.dim, p);
        for (size_t i = 0; i < rho.size(); ++i)
            if (x[i] != 0) r = add(r, mul(x[i], rho[i]));
        return r;
    };

    if (comb(m.right_rho, c.one()) != Matrix::identity(m.dim, p))
        throw Error(ErrorKind::ActionIncompatible, "right action of 1 is not the identity");
    if (comb(m.left_rho, b.one()) != Matrix::identity(m.dim, p))
        throw Error(ErrorKind::ActionIncompatible, "left action of 1 is not the identity");

    for (size_t i = 0; i < c.dim(); ++i)
        for (size_t j = 0; j < c.dim(); ++j) {
            auto prod = c.mul(c.basis_vec(i), c.basis_vec(j));
            if (mul(m.right_rho[i], m.right_rho[j]) != comb(m.right_rho, prod))
                throw Error(ErrorKind::ActionIncompatible,
                            "right action is not multiplicative at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
        }
    for (size_t i = 0; i < b.dim(); ++i)
        for (size_t j = 0; j < b.dim(); ++j) {
            auto prod = b.mul(b.basis_vec(i), b.basis_vec(j));
            // (xy)m = x(ym): row convention makes the left action an anti-map
            if (mul(m.left_rho[j], m.left_rho[i]) != comb(m.left_rho, prod))
                throw Error(ErrorKind::ActionIncompatible,
                            "left action is not anti-multiplicative at (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
        }
    for (size_t i = 0; i < b.dim(); ++i)
        for (size_t j = 0; j < c.dim(); ++j)
            if (mul(m.left_rho[i], m.right_rho[j]) != mul(m.right_rho[j], m.left_rho[i]))
                throw Error(ErrorKind::ActionIncompatible,
                            "left and right actions do not commute at (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
}

AlgebraPtr triangular_algebra(const AlgebraPtr& c, const AlgebraPtr& b, const Bimodule& m) {
    validate_bimodule(m);
    if (m.left_algebra.get() != b.get() || m.right_algebra.get() != c.get())
        throw Error(ErrorKind::ActionIncompatible,
                    "bimodule must carry a left action of B and a right action of C");
    size_t nc = c->dim(), nm = m.dim, nb = b->dim();
    size_t n = nc + nm + nb;
    uint32_t p = c->modulus();
    if (b->modulus() != p) throw Error(ErrorKind::ModulusMismatch, "blocks over different primes");

    std::vector<uint32_t> t(n * n * n, 0);
    auto at = [&](size_t i, size_t j, size_t k) -> uint32_t& { return t[(i * n + j) * n + k]; };
    for (size_t i = 0; i < nc; ++i)
        for (size_t j = 0; j < nc; ++j)
            for (size_t k = 0; k < nc; ++k) at(i, j, k) = c->structure(i, j, k);
    for (size_t i = 0; i < nb; ++i)
        for (size_t j = 0; j < nb; ++j)
            for (size_t k = 0; k < nb; ++k)
                at(nc + nm + i, nc + nm + j, nc + nm + k) = b->structure(i, j, k);
    // m * c' lands in the M block
    for (size_t r = 0; r < nm; ++r)
        for (size_t j = 0; j < nc; ++j)
            for (size_t s = 0; s < nm; ++s) at(nc + r, j, nc + s) = m.right_rho[j].at(r, s);
    // b * m' lands in the M block
    for (size_t i = 0; i < nb; ++i)
        for (size_t r = 0; r < nm; ++r)
            for (size_t s = 0; s < nm; ++s) at(nc + nm + i, nc + r, nc + s) = m.left_rho[i].at(r, s);

    std::vector<uint32_t> unit(n, 0);
    for (size_t i = 0; i < nc; ++i) unit[i] = c->one()[i];
    for (size_t i = 0; i < nb; ++i) unit[nc + nm + i] = b->one()[i];

    std::vector<std::string> labels;
    for (size_t i = 0; i < nc; ++i) labels.push_back("C." + c->labels()[i]);
    for (size_t r = 0; r < nm; ++r) labels.push_back("M." + std::to_string(r));
    for (size_t i = 0; i < nb; ++i) labels.push_back("B." + b->labels()[i]);

    auto lift = [&](const std::vector<uint32_t>& v, size_t offset) {
        std::vector<uint32_t> w(n, 0);
        for (size_t i = 0; i < v.size(); ++i) w[offset + i] = v[i];
        return w;
    };
    std::vector<std::vector<uint32_t>> dist;
    auto cfam = c->distinguished_idempotents();
    if (cfam.empty()) cfam.push_back(c->one());
    auto bfam = b->distinguished_idempotents();
    if (bfam.empty()) bfam.push_back(b->one());
    for (const auto& d : cfam)
        if (!vec_is_zero(d)) dist.push_back(lift(d, 0));
    for (const auto& d : bfam)
        if (!vec_is_zero(d)) dist.push_back(lift(d, nc + nm));

    return std::make_shared<Algebra>(p, n, std::move(t), std::move(unit), std::move(labels),
                                     "tri(" + c->name() + "," + b->name() + ")", std::move(dist));
}

bool is_left_ideal(const Algebra& a, const Subspace& s) {
    if (s.ambient() != a.dim() || s.modulus() != a.modulus())
        throw Error(ErrorKind::AmbientMismatch, "subspace does not live in the algebra");
    for (size_t r = 0; r < s.dim(); ++r)
        for (size_t i = 0; i < a.dim(); ++i)
            if (!s.contains(mul(s.basis().row(r), a.basis_lmat(i)))) return false;
    return true;
}

bool is_right_ideal(const Algebra& a, const Subspace& s) {
    if (s.ambient() != a.dim() || s.modulus() != a.modulus())
        throw Error(ErrorKind::AmbientMismatch, "subspace does not live in the algebra");
    for (size_t r = 0; r < s.dim(); ++r)
        for (size_t i = 0; i < a.dim(); ++i)
            if (!s.contains(mul(s.basis().row(r), a.basis_rmat(i)))) return false;
    return true;
}

Subspace subspace_product(const Algebra& a, const Subspace& s, const Subspace& t) {
    if (s.dim() == 0 || t.dim() == 0) return Subspace(a.dim(), a.modulus());
    Matrix rows(s.dim() * t.dim(), a.dim(), a.modulus());
    for (size_t i = 0; i < s.dim(); ++i)
        for (size_t j = 0; j < t.dim(); ++j)
            rows.set_row(i * t.dim() + j, a.mul(s.basis().row(i), t.basis().row(j)));
    return Subspace::span(rows);
}

Ideal make_ideal(const AlgebraPtr& a, const Subspace& span) {
    Ideal i;
    i.parent = a;
    i.span = span;
    i.left = is_left_ideal(*a, span);
    i.right = is_right_ideal(*a, span);
    i.idempotent = subspace_product(*a, span, span) == span;
    return i;
}

Ideal ideal_generated(const AlgebraPtr& a, const std::vector<std::vector<uint32_t>>& gens,
                      Sidedness side) {
    size_t n = a->dim();
    uint32_t p = a->modulus();
    Matrix g(gens.size(), n, p);
    for (size_t i = 0; i < gens.size(); ++i) g.set_row(i, gens[i]);
    Subspace s = Subspace::span(g);
    bool grow = true;
    while (grow) {
        grow = false;
        std::vector<std::vector<uint32_t>> fresh;
        for (size_t r = 0; r < s.dim(); ++r)
            for (size_t i = 0; i < n; ++i) {
                if (side != Sidedness::Right) {
                    auto w = mul(s.basis().row(r), a->basis_lmat(i));
                    if (!s.contains(w)) fresh.push_back(std::move(w));
                }
                if (side != Sidedness::Left) {
                    auto w = mul(s.basis().row(r), a->basis_rmat(i));
                    if (!s.contains(w)) fresh.push_back(std::move(w));
                }
            }
        if (!fresh.empty()) {
            Matrix stack(s.dim() + fresh.size(), n, p);
            for (size_t r = 0; r < s.dim(); ++r) stack.set_row(r, s.basis().row(r));
            for (size_t r = 0; r < fresh.size(); ++r) stack.set_row(s.dim() + r, fresh[r]);
            s = Subspace::span(stack);
            grow = true;
        }
    }
    return make_ideal(a, s);
}

IdempotentEnumeration enumerate_idempotents(const AlgebraPtr& a, uint64_t bound) {
    IdempotentEnumeration out;
    size_t n = a->dim();
    uint32_t p = a->modulus();
    if (checked_pow(p, n, bound) <= bound) {
        std::vector<uint32_t> v(n, 0);
        do {
            if (a->is_idempotent(v)) out.idempotents.push_back(v);
        } while (next_tuple(v, p));
        out.exhaustive = true;
        return out;
    }
    const auto& fam = a->distinguished_idempotents();
    if (fam.empty())
        throw Error(ErrorKind::BoundExceeded,
                    "p^dim exceeds the enumeration bound and no distinguished family is recorded");
    std::set<std::vector<uint32_t>> seen;
    size_t subsets = size_t(1) << fam.size();
    for (size_t mask = 0; mask < subsets; ++mask) {
        std::vector<uint32_t> e(n, 0);
        for (size_t i = 0; i < fam.size(); ++i)
            if (mask & (size_t(1) << i)) e = vec_add(e, fam[i], p);
        if (!a->is_idempotent(e)) throw Error(ErrorKind::Internal, "family subset sum not idempotent");
        seen.insert(std::move(e));
    }
    out.idempotents.assign(seen.begin(), seen.end());
    out.exhaustive = false;
    return out;
}

Subspace center(const Algebra& a) {
    size_t n = a.dim();
    if (n == 0) return Subspace(0, a.modulus());
    Matrix stacked(n, 0, a.modulus());
    for (size_t i = 0; i < n; ++i)
        stacked = hstack(stacked, sub(a.basis_rmat(i), a.basis_lmat(i)));
    return Subspace::span(left_nullspace(stacked));
}

std::vector<std::vector<uint32_t>> central_idempotents(const AlgebraPtr& a, uint64_t bound) {
    Subspace z = center(*a);
    size_t k = z.dim();
    uint32_t p = a->modulus();
    if (checked_pow(p, k, bound) > bound)
        throw Error(ErrorKind::BoundExceeded, "centre too large for idempotent scan");
    std::vector<std::vector<uint32_t>> out;
    std::vector<uint32_t> coords(k, 0);
    do {
        std::vector<uint32_t> x(a->dim(), 0);
        for (size_t i = 0; i < k; ++i)
            if (coords[i] != 0) x = vec_add(x, vec_scale(coords[i], z.basis().row(i), p), p);
        if (a->is_idempotent(x)) out.push_back(std::move(x));
    } while (next_tuple(coords, p));
    return out;
}

IdempotentIdealEnumeration enumerate_idempotent_ideals(const AlgebraPtr& a,
                                                       const IdealEnumOptions& opts) {
    IdempotentIdealEnumeration out;
    auto en = enumerate_idempotents(a, opts.idempotent_bound);
    out.idempotents_exhaustive = en.exhaustive;

    std::set<Subspace> spans;
    for (const auto& e : en.idempotents) spans.insert(ideal_generated(a, {e}, Sidedness::TwoSided).span);
    for (const auto& s : spans) {
        Ideal i = make_ideal(a, s);
        if (!i.idempotent)
            throw Error(ErrorKind::Internal, "trace ideal AeA failed the idempotency check");
        out.ideals.push_back(std::move(i));
    }
    std::sort(out.ideals.begin(), out.ideals.end(), [](const Ideal& x, const Ideal& y) {
        if (x.dim() != y.dim()) return x.dim() < y.dim();
        return x.span < y.span;
    });

    if (opts.crosscheck &&
        count_subspaces(a->modulus(), a->dim(), opts.lattice_cap) <= opts.lattice_cap) {
        std::set<Subspace> lattice;
        for_each_subspace(a->modulus(), a->dim(), opts.lattice_cap, [&](const Subspace& s) {
            if (is_left_ideal(*a, s) && is_right_ideal(*a, s) && subspace_product(*a, s, s) == s)
                lattice.insert(s);
            return true;
        });
        if (lattice != spans)
            throw Error(ErrorKind::Internal,
                        "idempotent-ideal enumeration disagrees with the lattice scan");
        out.lattice_crosschecked = true;
    }
    return out;
}

Subspace left_annihilator(const Algebra& a, const Subspace& s) {
    if (s.dim() == 0) return Subspace::full(a.dim(), a.modulus());
    Matrix stacked(a.dim(), 0, a.modulus());
    for (size_t r = 0; r < s.dim(); ++r) stacked = hstack(stacked, a.rmat(s.basis().row(r)));
    return Subspace::span(left_nullspace(stacked));
}

Subspace right_annihilator(const Algebra& a, const Subspace& s) {
    if (s.dim() == 0) return Subspace::full(a.dim(), a.modulus());
    Matrix stacked(a.dim(), 0, a.modulus());
    for (size_t r = 0; r < s.dim(); ++r) stacked = hstack(stacked, a.lmat(s.basis().row(r)));
    return Subspace::span(left_nullspace(stacked));
}

std::pair<Ideal, Ideal> annihilators(const AlgebraPtr& a, const Ideal& i) {
    return {make_ideal(a, left_annihilator(*a, i.span)), make_ideal(a, right_annihilator(*a, i.span))};
}

Action regular_action(const Algebra& a) {
    Action m{a.modulus(), a.dim(), {}};
    for (size_t i = 0; i < a.dim(); ++i) m.rho.push_back(a.basis_rmat(i));
    return m;
}

Action left_regular_action(const Algebra& a) {
    Action m{a.modulus(), a.dim(), {}};
    for (size_t i = 0; i < a.dim(); ++i) m.rho.push_back(a.basis_lmat(i));
    return m;
}

Matrix action_of(const Action& m, const std::vector<uint32_t>& x) {
    Matrix r(m.dim, m.dim, m.p);
    for (size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) r = add(r, mul(x[i], m.rho[i]));
    return r;
}

void validate_action(const Algebra& a, const Action& m) {
    if (m.p != a.modulus()) throw Error(ErrorKind::ModulusMismatch, "action modulus mismatch");
    if (m.rho.size() != a.dim())
        throw Error(ErrorKind::ShapeMismatch, "one action matrix per algebra basis element");
    for (const auto& mat : m.rho)
        if (mat.rows() != m.dim || mat.cols() != m.dim)
            throw Error(ErrorKind::ShapeMismatch, "action matrix shape");
    if (action_of(m, a.one()) != Matrix::identity(m.dim, m.p))
        throw Error(ErrorKind::ActionIncompatible, "unit does not act as the identity");
    for (size_t i = 0; i < a.dim(); ++i)
        for (size_t j = 0; j < a.dim(); ++j)
            if (mul(m.rho[i], m.rho[j]) != action_of(m, a.mul(a.basis_vec(i), a.basis_vec(j))))
                throw Error(ErrorKind::ActionIncompatible,
                            "action is not multiplicative at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
}

Action subaction(const Algebra& a, const Action& m, const Subspace& s) {
    if (s.ambient() != m.dim) throw Error(ErrorKind::AmbientMismatch, "submodule ambient mismatch");
    Action out{m.p, s.dim(), {}};
    for (size_t i = 0; i < a.dim(); ++i) {
        Matrix r(s.dim(), s.dim(), m.p);
        for (size_t v = 0; v < s.dim(); ++v) {
            auto w = mul(s.basis().row(v), m.rho[i]);
            if (!s.contains(w)) throw Error(ErrorKind::NotInvariant, "subspace is not a submodule");
            r.set_row(v, s.coordinates(w));
        }
        out.rho.push_back(std::move(r));
    }
    return out;
}

Action quotient_action(const Algebra& a, const Action& m, const Subspace& s) {
    if (s.ambient() != m.dim) throw Error(ErrorKind::AmbientMismatch, "submodule ambient mismatch");
    auto cc = complement_coordinates(s);
    size_t d = cc.size();
    auto project = [&](const std::vector<uint32_t>& v) {
        auto r = s.reduce(v);
        std::vector<uint32_t> out(d);
        for (size_t i = 0; i < d; ++i) out[i] = r[cc[i]];
        return out;
    };
    Action out{m.p, d, {}};
    for (size_t i = 0; i < a.dim(); ++i) {
        Matrix r(d, d, m.p);
        for (size_t v = 0; v < d; ++v) {
            std::vector<uint32_t> rep(m.dim, 0);
            rep[cc[v]] = 1;
            r.set_row(v, project(mul(rep, m.rho[i])));
        }
        out.rho.push_back(std::move(r));
    }
    return out;
}

namespace {

Subspace cyclic_closure(const Action& m, const std::vector<uint32_t>& v) {
    Matrix seed(1, m.dim, m.p);
    seed.set_row(0, v);
    Subspace s = Subspace::span(seed);
    bool grow = true;
    while (grow) {
        grow = false;
        std::vector<std::vector<uint32_t>> fresh;
        for (size_t r = 0; r < s.dim(); ++r)
            for (const auto& rho : m.rho) {
                auto w = mul(s.basis().row(r), rho);
                if (!s.contains(w)) fresh.push_back(std::move(w));
            }
        if (!fresh.empty()) {
            Matrix stack(s.dim() + fresh.size(), m.dim, m.p);
            for (size_t r = 0; r < s.dim(); ++r) stack.set_row(r, s.basis().row(r));
            for (size_t r = 0; r < fresh.size(); ++r) stack.set_row(s.dim() + r, fresh[r]);
            s = Subspace::span(stack);
            grow = true;
        }
    }
    return s;
}

void chop(const Algebra& a, const Action& m, uint64_t scan_bound, std::vector<Action>& out) {
    if (m.dim == 0) return;
    if (checked_pow(m.p, m.dim, scan_bound) > scan_bound)
        throw Error(ErrorKind::BoundExceeded, "composition factor scan bound exceeded");
    std::vector<uint32_t> v(m.dim, 0);
    while (next_tuple(v, m.p)) {
        Subspace s = cyclic_closure(m, v);
        if (s.dim() < m.dim) {
            chop(a, subaction(a, m, s), scan_bound, out);
            chop(a, quotient_action(a, m, s), scan_bound, out);
            return;
        }
    }
    out.push_back(m); // every nonzero vector generates: simple
}

} // namespace

std::vector<Action> action_composition_factors(const Algebra& a, const Action& m,
                                               uint64_t scan_bound) {
    std::vector<Action> out;
    chop(a, m, scan_bound, out);
    return out;
}

Subspace action_annihilator(const Algebra& a, const Action& m) {
    size_t n = a.dim();
    if (m.dim == 0) return Subspace::full(n, a.modulus());
    Matrix flat(n, m.dim * m.dim, a.modulus());
    for (size_t i = 0; i < n; ++i) flat.set_row(i, m.rho[i].data());
    return Subspace::span(left_nullspace(flat));
}

Subspace radical(const AlgebraPtr& a) {
    {
        std::lock_guard<std::mutex> lock(a->cache_mu_);
        if (a->rad_cache_) return *a->rad_cache_;
    }
    auto factors = action_composition_factors(*a, regular_action(*a));
    Subspace rad = Subspace::full(a->dim(), a->modulus());
    for (const auto& f : factors) rad = intersection(rad, action_annihilator(*a, f));

    // belt and braces: nilpotent, two-sided, semisimple quotient
    if (!is_left_ideal(*a, rad) || !is_right_ideal(*a, rad))
        throw Error(ErrorKind::Internal, "computed radical is not a two-sided ideal");
    Subspace power = rad;
    for (size_t step = 0; step <= a->dim() && power.dim() > 0; ++step)
        power = subspace_product(*a, power, rad);
    if (power.dim() != 0) throw Error(ErrorKind::Internal, "computed radical is not nilpotent");
    if (rad.dim() > 0) {
        auto q = quotient_algebra(a, rad);
        auto qfactors = action_composition_factors(*q.algebra, regular_action(*q.algebra));
        Subspace qrad = Subspace::full(q.algebra->dim(), q.algebra->modulus());
        for (const auto& f : qfactors) qrad = intersection(qrad, action_annihilator(*q.algebra, f));
        if (qrad.dim() != 0)
            throw Error(ErrorKind::Internal, "quotient by the computed radical is not semisimple");
    }

    std::lock_guard<std::mutex> lock(a->cache_mu_);
    if (!a->rad_cache_) a->rad_cache_ = rad;
    return *a->rad_cache_;
}

bool is_semisimple(const AlgebraPtr& a) { return radical(a).dim() == 0; }

} // namespace ttf
