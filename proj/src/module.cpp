#include "ttf/module.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <set>

#include "ttf/error.hpp"
#include "ttf/fp.hpp"
#include "ttf/linalg.hpp"

namespace ttf {

namespace {

// little-endian odometer over F_p^n; returns false after the last tuple
bool next_tuple(std::vector<uint32_t>& v, uint32_t p) {
    for (auto& c : v) {
        if (++c < p) return true;
        c = 0;
    }
    return false;
}

uint64_t checked_pow(uint64_t base, size_t exp, uint64_t cap) {
    uint64_t r = 1;
    for (size_t i = 0; i < exp; ++i) {
        if (r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

std::vector<uint32_t> flatten(const Matrix& m) {
    std::vector<uint32_t> v;
    v.reserve(m.rows() * m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
    return v;
}

Matrix unflatten(const std::vector<uint32_t>& v, size_t rows, size_t cols, uint32_t p) {
    Matrix m(rows, cols, p);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) m.at(i, j) = v[i * cols + j];
    return m;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->modulus() != b->modulus() || a->dim() != b->dim()) return false;
    size_t n = a->dim();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                if (a->structure(i, j, k) != b->structure(i, j, k)) return false;
    return a->one() == b->one();
}

void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b, const char* where) {
    if (!same_algebra(a, b))
        throw Error(ErrorKind::AmbientMismatch, std::string(where) + ": modules over different algebras");
}

Action as_action(const RightModule& m) {
    return Action{m.parent->modulus(), m.dim, m.action};
}

} // namespace

RightModule make_module(const AlgebraPtr& a, std::vector<Matrix> action) {
    if (!a) throw Error(ErrorKind::AmbientMismatch, "make_module: null algebra");
    if (action.size() != a->dim())
        throw Error(ErrorKind::ShapeMismatch, "make_module: one action matrix per basis element");
    size_t d = action.empty() ? 0 : action.front().rows();
    for (const Matrix& m : action) {
        if (m.rows() != d || m.cols() != d)
            throw Error(ErrorKind::ShapeMismatch, "make_module: action matrices must be square of equal size");
        if (m.modulus() != a->modulus())
            throw Error(ErrorKind::ModulusMismatch, "make_module: action modulus differs from algebra");
    }
    RightModule out{a, d, std::move(action)};
    validate_module(out);
    return out;
}

RightModule zero_module(const AlgebraPtr& a) {
    std::vector<Matrix> act(a->dim(), Matrix(0, 0, a->modulus()));
    return RightModule{a, 0, std::move(act)};
}

RightModule regular_module(const AlgebraPtr& a) {
    std::vector<Matrix> act;
    act.reserve(a->dim());
    for (size_t i = 0; i < a->dim(); ++i) act.push_back(a->basis_rmat(i));
    return RightModule{a, a->dim(), std::move(act)};
}

void validate_module(const RightModule& m) {
    if (!m.parent) throw Error(ErrorKind::AmbientMismatch, "module without parent algebra");
    Action act = as_action(m);
    validate_action(*m.parent, act);
}

Matrix action_of(const RightModule& m, const std::vector<uint32_t>& x) {
    if (x.size() != m.parent->dim())
        throw Error(ErrorKind::ShapeMismatch, "action_of: coefficient vector has wrong length");
    Matrix out(m.dim, m.dim, m.parent->modulus());
    for (size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) out = add(out, mul(x[i], m.action[i]));
    return out;
}

void validate_map(const ModuleMap& f) {
    require_same_algebra(f.source.parent, f.target.parent, "validate_map");
    if (f.m.rows() != f.source.dim || f.m.cols() != f.target.dim)
        throw Error(ErrorKind::ShapeMismatch, "validate_map: matrix shape does not match modules");
    for (size_t i = 0; i < f.source.parent->dim(); ++i)
        if (mul(f.source.action[i], f.m) != mul(f.m, f.target.action[i]))
            throw Error(ErrorKind::ActionIncompatible,
                        "validate_map: matrix does not intertwine the actions");
}

ModuleMap compose(const ModuleMap& f, const ModuleMap& g) {
    require_same_algebra(f.target.parent, g.source.parent, "compose");
    if (f.target.dim != g.source.dim)
        throw Error(ErrorKind::ShapeMismatch, "compose: inner dimensions differ");
    return ModuleMap{f.source, g.target, mul(f.m, g.m)};
}

Subspace invariant_closure(const RightModule& m, const std::vector<std::vector<uint32_t>>& gens) {
    uint32_t p = m.parent->modulus();
    Matrix rows(0, m.dim, p);
    for (const auto& g : gens) {
        if (g.size() != m.dim) throw Error(ErrorKind::ShapeMismatch, "invariant_closure: bad generator");
        rows = vstack(rows, Matrix::from_rows({g}, p));
    }
    Subspace s = Subspace::span(rows);
    for (;;) {
        Matrix next = s.basis();
        for (size_t i = 0; i < m.parent->dim(); ++i) next = vstack(next, mul(s.basis(), m.action[i]));
        Subspace t = Subspace::span(next);
        if (t.dim() == s.dim()) return t;
        s = t;
    }
}

namespace {

bool is_invariant(const RightModule& m, const Subspace& s) {
    for (size_t r = 0; r < s.dim(); ++r) {
        std::vector<uint32_t> row = s.basis().row(r);
        for (size_t i = 0; i < m.parent->dim(); ++i)
            if (!s.contains(mul(row, m.action[i]))) return false;
    }
    return true;
}

} // namespace

SubmoduleResult submodule_from_subspace(const RightModule& m, const Subspace& s) {
    if (s.ambient() != m.dim || s.modulus() != m.parent->modulus())
        throw Error(ErrorKind::AmbientMismatch, "submodule_from_subspace: subspace not in the module");
    if (!is_invariant(m, s))
        throw Error(ErrorKind::NotInvariant, "submodule_from_subspace: subspace is not invariant");
    size_t k = s.dim();
    uint32_t p = m.parent->modulus();
    std::vector<Matrix> act;
    act.reserve(m.parent->dim());
    for (size_t i = 0; i < m.parent->dim(); ++i) {
        Matrix a(k, k, p);
        for (size_t r = 0; r < k; ++r) {
            std::vector<uint32_t> row = s.basis().row(r);
            a.set_row(r, s.coordinates(mul(row, m.action[i])));
        }
        act.push_back(std::move(a));
    }
    RightModule sub{m.parent, k, std::move(act)};
    ModuleMap incl{sub, m, s.basis()};
    return SubmoduleResult{std::move(sub), std::move(incl)};
}

SubmoduleResult submodule_generated(const RightModule& m,
                                    const std::vector<std::vector<uint32_t>>& gens) {
    return submodule_from_subspace(m, invariant_closure(m, gens));
}

QuotientResult quotient_module(const RightModule& m, const Subspace& s) {
    if (s.ambient() != m.dim || s.modulus() != m.parent->modulus())
        throw Error(ErrorKind::AmbientMismatch, "quotient_module: subspace not in the module");
    if (!is_invariant(m, s))
        throw Error(ErrorKind::NotInvariant, "quotient_module: subspace is not invariant");
    uint32_t p = m.parent->modulus();
    std::vector<size_t> comp = complement_coordinates(s);
    size_t k = comp.size();

    auto project = [&](const std::vector<uint32_t>& v) {
        std::vector<uint32_t> red = s.reduce(v);
        std::vector<uint32_t> out(k);
        for (size_t i = 0; i < k; ++i) out[i] = red[comp[i]];
        return out;
    };

    std::vector<Matrix> act;
    act.reserve(m.parent->dim());
    for (size_t i = 0; i < m.parent->dim(); ++i) {
        Matrix a(k, k, p);
        for (size_t r = 0; r < k; ++r) {
            std::vector<uint32_t> unit(m.dim, 0);
            unit[comp[r]] = 1;
            a.set_row(r, project(mul(unit, m.action[i])));
        }
        act.push_back(std::move(a));
    }
    RightModule q{m.parent, k, std::move(act)};

    Matrix pr(m.dim, k, p);
    for (size_t r = 0; r < m.dim; ++r) {
        std::vector<uint32_t> unit(m.dim, 0);
        unit[r] = 1;
        pr.set_row(r, project(unit));
    }
    ModuleMap proj{m, q, std::move(pr)};
    return QuotientResult{std::move(q), std::move(proj)};
}

DirectSumResult direct_sum(const std::vector<RightModule>& parts) {
    if (parts.empty()) throw Error(ErrorKind::ShapeMismatch, "direct_sum: needs at least one summand");
    const AlgebraPtr& a = parts.front().parent;
    uint32_t p = a->modulus();
    size_t total = 0;
    for (const auto& part : parts) {
        require_same_algebra(a, part.parent, "direct_sum");
        total += part.dim;
    }
    std::vector<Matrix> act;
    act.reserve(a->dim());
    for (size_t i = 0; i < a->dim(); ++i) {
        Matrix blockdiag(total, total, p);
        size_t off = 0;
        for (const auto& part : parts) {
            for (size_t r = 0; r < part.dim; ++r)
                for (size_t c = 0; c < part.dim; ++c)
                    blockdiag.at(off + r, off + c) = part.action[i].at(r, c);
            off += part.dim;
        }
        act.push_back(std::move(blockdiag));
    }
    RightModule sum{a, total, std::move(act)};

    DirectSumResult out;
    size_t off = 0;
    for (const auto& part : parts) {
        Matrix inj(part.dim, total, p), prj(total, part.dim, p);
        for (size_t r = 0; r < part.dim; ++r) {
            inj.at(r, off + r) = 1;
            prj.at(off + r, r) = 1;
        }
        out.injections.push_back(ModuleMap{part, sum, std::move(inj)});
        out.projections.push_back(ModuleMap{sum, part, std::move(prj)});
        off += part.dim;
    }
    out.module = std::move(sum);
    for (auto& inj : out.injections) inj.target = out.module;
    for (auto& prj : out.projections) prj.source = out.module;
    return out;
}

std::vector<Matrix> hom_space(const RightModule& m, const RightModule& n) {
    require_same_algebra(m.parent, n.parent, "hom_space");
    size_t dm = m.dim, dn = n.dim, na = m.parent->dim();
    uint32_t p = m.parent->modulus();
    if (dm == 0 || dn == 0) return {};

    // unknowns X[t][u] flattened t*dn + u; one equation per (i, r, s):
    // sum_t rhoM_i[r][t] X[t][s] - sum_u X[r][u] rhoN_i[u][s] = 0
    Matrix sys(dm * dn, na * dm * dn, p);
    for (size_t i = 0; i < na; ++i)
        for (size_t r = 0; r < dm; ++r)
            for (size_t s = 0; s < dn; ++s) {
                size_t col = (i * dm + r) * dn + s;
                for (size_t t = 0; t < dm; ++t) {
                    uint32_t c = m.action[i].at(r, t);
                    if (c != 0) {
                        uint32_t& cell = sys.at(t * dn + s, col);
                        cell = fp::add(cell, c, p);
                    }
                }
                for (size_t u = 0; u < dn; ++u) {
                    uint32_t c = n.action[i].at(u, s);
                    if (c != 0) {
                        uint32_t& cell = sys.at(r * dn + u, col);
                        cell = fp::sub(cell, c, p);
                    }
                }
            }
    Matrix null = left_nullspace(sys);
    std::vector<Matrix> out;
    out.reserve(null.rows());
    for (size_t r = 0; r < null.rows(); ++r) out.push_back(unflatten(null.row(r), dm, dn, p));
    return out;
}

namespace {

Matrix combine_basis(const std::vector<Matrix>& h, const std::vector<uint32_t>& c, size_t rows,
                     size_t cols, uint32_t p) {
    Matrix x(rows, cols, p);
    for (size_t r = 0; r < h.size(); ++r)
        if (c[r] != 0) x = add(x, mul(c[r], h[r]));
    return x;
}

// f^e for some e >= m.dim, where ker and im stabilise (Fitting)
Matrix stable_power(const Matrix& f, size_t dim) {
    Matrix g = f;
    for (size_t e = 1; e < dim; e <<= 1) g = mul(g, g);
    return g;
}

// dimensions of m >= mJ >= mJ^2 >= ... plus the socle dimension; equal for
// isomorphic modules, cheap to compare
std::vector<size_t> filtration_dims(const RightModule& m) {
    Subspace j = radical(m.parent);
    std::vector<size_t> out;
    if (j.dim() == 0 || m.dim == 0) return out;
    uint32_t p = m.parent->modulus();
    std::vector<Matrix> rho;
    rho.reserve(j.dim());
    for (size_t r = 0; r < j.dim(); ++r) {
        std::vector<uint32_t> jb = j.basis().row(r);
        Matrix x(m.dim, m.dim, p);
        for (size_t i = 0; i < jb.size(); ++i)
            if (jb[i] != 0) x = add(x, mul(jb[i], m.action[i]));
        rho.push_back(std::move(x));
    }
    Subspace layer = Subspace::full(m.dim, p);
    while (layer.dim() > 0) {
        Matrix next(0, m.dim, p);
        for (size_t r = 0; r < layer.dim(); ++r)
            for (const Matrix& x : rho)
                next = vstack(next, Matrix::from_rows({mul(layer.basis().row(r), x)}, p));
        Subspace nl = Subspace::span(next);
        if (nl.dim() == layer.dim()) break;
        layer = std::move(nl);
        out.push_back(layer.dim());
    }
    Matrix stacked(m.dim, 0, p);
    for (const Matrix& x : rho) stacked = hstack(stacked, x);
    out.push_back(Subspace::span(left_nullspace(stacked)).dim()); // socle
    return out;
}

enum class FittingOutcome { split, indecomposable, unknown };

struct FittingResult {
    FittingOutcome kind = FittingOutcome::unknown;
    Subspace ker, im;
};

// Search End(m) for an endomorphism with a nontrivial Fitting decomposition.
// Small endomorphism rings are scanned exhaustively, so the `indecomposable`
// answer is certified; larger ones fall back to a seeded sample and may
// return `unknown`.
FittingResult fitting_split(const RightModule& m, uint64_t scan_bound) {
    FittingResult out;
    out.ker = Subspace(m.dim, m.parent->modulus());
    out.im = out.ker;
    if (m.dim == 0) {
        out.kind = FittingOutcome::indecomposable;
        return out;
    }
    uint32_t p = m.parent->modulus();
    std::vector<Matrix> endo = hom_space(m, m);
    auto try_split = [&](const Matrix& f) {
        Matrix g = stable_power(f, m.dim);
        size_t r = rank(g);
        if (r == 0 || r == m.dim) return false;
        out.kind = FittingOutcome::split;
        out.ker = Subspace::span(left_nullspace(g));
        out.im = Subspace::span(g);
        return true;
    };
    if (checked_pow(p, endo.size(), scan_bound) <= scan_bound) {
        std::vector<uint32_t> c(endo.size(), 0);
        while (next_tuple(c, p))
            if (try_split(combine_basis(endo, c, m.dim, m.dim, p))) return out;
        out.kind = FittingOutcome::indecomposable;
        return out;
    }
    for (const Matrix& f : endo)
        if (try_split(f)) return out;
    std::mt19937_64 rng(0xf177u);
    std::vector<uint32_t> c(endo.size(), 0);
    for (int it = 0; it < 128; ++it) {
        for (auto& d : c) d = static_cast<uint32_t>(rng() % p);
        if (try_split(combine_basis(endo, c, m.dim, m.dim, p))) return out;
    }
    return out; // unknown
}

struct Indecomposable {
    RightModule module;
    bool certified = false;
};

void indecomposable_parts(const RightModule& m, uint64_t scan_bound,
                          std::vector<Indecomposable>& out) {
    FittingResult f = fitting_split(m, scan_bound);
    if (f.kind == FittingOutcome::split) {
        indecomposable_parts(submodule_from_subspace(m, f.ker).module, scan_bound, out);
        indecomposable_parts(submodule_from_subspace(m, f.im).module, scan_bound, out);
        return;
    }
    out.push_back({m, f.kind == FittingOutcome::indecomposable});
}

} // namespace

bool is_isomorphic(const RightModule& m, const RightModule& n, uint64_t bound) {
    require_same_algebra(m.parent, n.parent, "is_isomorphic");
    if (m.dim != n.dim) return false;
    if (m.dim == 0) return true;
    uint32_t p = m.parent->modulus();

    if (filtration_dims(m) != filtration_dims(n)) return false;
    std::vector<Matrix> h = hom_space(m, n);
    if (h.empty()) return false;
    if (hom_space(n, m).size() != h.size()) return false;
    if (hom_space(m, m).size() != hom_space(n, n).size()) return false;

    // small hom spaces: decide by exhaustive scan
    const uint64_t quick = std::min<uint64_t>(bound, uint64_t(1) << 12);
    if (checked_pow(p, h.size(), quick) <= quick) {
        std::vector<uint32_t> c(h.size(), 0);
        while (next_tuple(c, p))
            if (is_invertible(combine_basis(h, c, m.dim, n.dim, p))) return true;
        return false;
    }

    // isomorphic pairs have plenty of invertible homs; a seeded sample
    // certifies most of them without touching the full scan
    {
        std::mt19937_64 rng(0x15f0c0deu);
        std::vector<uint32_t> c(h.size(), 0);
        for (int it = 0; it < 256; ++it) {
            for (auto& d : c) d = static_cast<uint32_t>(rng() % p);
            if (is_invertible(combine_basis(h, c, m.dim, n.dim, p))) return true;
        }
    }

    // Krull-Schmidt: split both sides into indecomposable summands and match
    // them pairwise; with certified decompositions a failed match is exact
    std::vector<Indecomposable> pm, pn;
    indecomposable_parts(m, quick, pm);
    indecomposable_parts(n, quick, pn);
    bool certified = true;
    for (const Indecomposable& q : pm) certified = certified && q.certified;
    for (const Indecomposable& q : pn) certified = certified && q.certified;
    if (pm.size() > 1 || pn.size() > 1) {
        if (pm.size() != pn.size()) {
            if (certified) return false;
            throw Error(ErrorKind::BoundExceeded,
                        "is_isomorphic: summand counts differ but a decomposition is uncertified");
        }
        std::vector<bool> used(pn.size(), false);
        bool matched_all = true;
        for (const Indecomposable& q : pm) {
            bool matched = false;
            for (size_t j = 0; j < pn.size() && !matched; ++j) {
                if (used[j] || pn[j].module.dim != q.module.dim) continue;
                if (is_isomorphic(q.module, pn[j].module, bound)) {
                    used[j] = true;
                    matched = true;
                }
            }
            if (!matched) {
                matched_all = false;
                break;
            }
        }
        if (matched_all) return true;
        if (certified) return false;
        throw Error(ErrorKind::BoundExceeded,
                    "is_isomorphic: summand matching failed on an uncertified decomposition");
    }

    if (checked_pow(p, h.size(), bound) <= bound) {
        std::vector<uint32_t> c(h.size(), 0);
        while (next_tuple(c, p))
            if (is_invertible(combine_basis(h, c, m.dim, n.dim, p))) return true;
        return false;
    }
    throw Error(ErrorKind::BoundExceeded, "is_isomorphic: hom space too large to scan");
}

// ---- per-algebra cache: primitive idempotents, simples, their presentations --

namespace {

struct ModCache {
    std::vector<std::vector<uint32_t>> prims; // complete orthogonal primitive family
    std::vector<SubmoduleResult> pieces;      // e_j A inside the regular module
    std::vector<RightModule> simples;
    std::vector<size_t> prim_to_simple; // top(e_j A) as index into simples
    std::vector<size_t> simple_to_prim; // chosen representative primitive
    std::vector<CoverResult> simple_cover;
    std::vector<SubmoduleResult> simple_kernel; // kernel inside simple_cover[i].cover
};

std::mutex mod_cache_mu;
std::map<std::weak_ptr<const Algebra>, std::shared_ptr<ModCache>,
         std::owner_less<std::weak_ptr<const Algebra>>>
    mod_caches;

// first idempotent in odometer order that is neither 0 nor the unit
std::optional<std::vector<uint32_t>> find_nontrivial_idempotent(const AlgebraPtr& c,
                                                                uint64_t bound) {
    uint32_t p = c->modulus();
    size_t n = c->dim();
    if (checked_pow(p, n, bound) <= bound) {
        std::vector<uint32_t> v(n, 0);
        while (next_tuple(v, p)) {
            if (v == c->one()) continue;
            if (c->is_idempotent(v)) return v;
        }
        return std::nullopt;
    }
    for (const auto& d : c->distinguished_idempotents()) {
        if (!vec_is_zero(d) && d != c->one()) return d;
    }
    throw Error(ErrorKind::BoundExceeded,
                "primitive idempotent search: corner too large for an exhaustive scan");
}

// split r into a complete orthogonal family of primitive idempotents of a
void decompose_idempotent(const AlgebraPtr& a, const std::vector<uint32_t>& r,
                          std::vector<std::vector<uint32_t>>& out) {
    if (vec_is_zero(r)) return;
    CornerAlgebra corner = corner_algebra(a, r);
    auto split = find_nontrivial_idempotent(corner.algebra, uint64_t(1) << 20);
    if (!split) {
        out.push_back(r);
        return;
    }
    // embed back into a
    std::vector<uint32_t> f(a->dim(), 0);
    uint32_t p = a->modulus();
    for (size_t i = 0; i < corner.algebra->dim(); ++i)
        if ((*split)[i] != 0)
            f = vec_add(f, vec_scale((*split)[i], corner.inclusion.row(i), p), p);
    std::vector<uint32_t> g = vec_sub(r, f, p);
    decompose_idempotent(a, f, out);
    decompose_idempotent(a, g, out);
}

} // namespace

std::vector<std::vector<uint32_t>> primitive_orthogonal_idempotents(const AlgebraPtr& a) {
    {
        std::lock_guard<std::mutex> lk(a->cache_mu_);
        if (a->prim_cache_) return *a->prim_cache_;
    }
    uint32_t p = a->modulus();
    size_t n = a->dim();
    std::vector<std::vector<uint32_t>> prims;
    if (n > 0) {
        Subspace rad = radical(a);
        QuotientAlgebra q = quotient_algebra(a, rad);

        std::vector<std::vector<uint32_t>> qfam;
        decompose_idempotent(q.algebra, q.algebra->one(), qfam);

        // lift sequentially, staying inside the corner orthogonal to earlier lifts
        std::vector<uint32_t> fsum(n, 0);
        for (const auto& ubar : qfam) {
            std::vector<uint32_t> x = mul(ubar, q.section);
            std::vector<uint32_t> co = vec_sub(a->one(), fsum, p);
            x = a->mul(a->mul(co, x), co);
            for (size_t it = 0; it <= 2 * n + 4; ++it) {
                if (a->is_idempotent(x)) break;
                std::vector<uint32_t> x2 = a->mul(x, x);
                std::vector<uint32_t> x3 = a->mul(x2, x);
                x = vec_sub(vec_scale(3 % p, x2, p), vec_scale(2 % p, x3, p), p);
            }
            if (!a->is_idempotent(x))
                throw Error(ErrorKind::Internal, "idempotent lifting did not converge");
            prims.push_back(x);
            fsum = vec_add(fsum, x, p);
        }
        if (fsum != a->one())
            throw Error(ErrorKind::Internal, "lifted idempotent family does not sum to 1");
        for (size_t i = 0; i < prims.size(); ++i)
            for (size_t j = 0; j < prims.size(); ++j) {
                if (i == j) continue;
                if (!vec_is_zero(a->mul(prims[i], prims[j])))
                    throw Error(ErrorKind::Internal, "lifted idempotent family is not orthogonal");
            }
    }
    std::lock_guard<std::mutex> lk(a->cache_mu_);
    if (!a->prim_cache_) a->prim_cache_ = prims;
    return *a->prim_cache_;
}

namespace {

std::shared_ptr<ModCache> get_mod_cache(const AlgebraPtr& a) {
    {
        std::lock_guard<std::mutex> lk(mod_cache_mu);
        auto it = mod_caches.find(std::weak_ptr<const Algebra>(a));
        if (it != mod_caches.end()) return it->second;
    }
    auto cache = std::make_shared<ModCache>();
    uint32_t p = a->modulus();

    cache->prims = primitive_orthogonal_idempotents(a);
    RightModule reg = regular_module(a);
    for (const auto& e : cache->prims) cache->pieces.push_back(submodule_generated(reg, {e}));

    if (a->dim() > 0) {
        Subspace rad = radical(a);
        QuotientAlgebra q = quotient_algebra(a, rad);
        const AlgebraPtr& qa = q.algebra;

        // atoms of the boolean algebra of central idempotents = block supports
        std::vector<std::vector<uint32_t>> cents = central_idempotents(qa);
        std::vector<std::vector<uint32_t>> atoms;
        for (const auto& c : cents) {
            if (vec_is_zero(c)) continue;
            bool atom = true;
            for (const auto& d : cents) {
                if (vec_is_zero(d) || d == c) continue;
                if (qa->mul(d, c) == d) {
                    atom = false;
                    break;
                }
            }
            if (atom) atoms.push_back(c);
        }
        {
            std::vector<uint32_t> s(qa->dim(), 0);
            for (const auto& c : atoms) s = vec_add(s, c, p);
            if (s != qa->one())
                throw Error(ErrorKind::Internal, "central atoms do not sum to the identity");
        }

        // one simple per block: ebar * Qbar for a primitive ebar in the block
        auto project = [&](const std::vector<uint32_t>& x) { return mul(x, q.projection); };
        RightModule qreg = regular_module(qa);
        for (const auto& atom : atoms) {
            size_t rep = cache->prims.size();
            for (size_t j = 0; j < cache->prims.size(); ++j) {
                if (!vec_is_zero(qa->mul(project(cache->prims[j]), atom))) {
                    rep = j;
                    break;
                }
            }
            if (rep == cache->prims.size())
                throw Error(ErrorKind::Internal, "central block without a primitive idempotent");
            SubmoduleResult sq = submodule_generated(qreg, {project(cache->prims[rep])});
            std::vector<Matrix> act;
            act.reserve(a->dim());
            for (size_t i = 0; i < a->dim(); ++i)
                act.push_back(action_of(sq.module, project(a->basis_vec(i))));
            cache->simples.push_back(RightModule{a, sq.module.dim, std::move(act)});
        }

        // exhaustive simplicity scan at corpus scale
        for (const auto& s : cache->simples) {
            validate_module(s);
            if (checked_pow(p, s.dim, uint64_t(1) << 16) <= (uint64_t(1) << 16)) {
                std::vector<uint32_t> v(s.dim, 0);
                while (next_tuple(v, p))
                    if (invariant_closure(s, {v}).dim() != s.dim)
                        throw Error(ErrorKind::Internal, "claimed simple has a proper submodule");
            }
        }

        // match tops: top(e_j A) = S_i iff S_i * e_j != 0
        cache->prim_to_simple.assign(cache->prims.size(), cache->simples.size());
        for (size_t j = 0; j < cache->prims.size(); ++j) {
            for (size_t i = 0; i < cache->simples.size(); ++i) {
                if (!is_zero(action_of(cache->simples[i], cache->prims[j]))) {
                    if (cache->prim_to_simple[j] != cache->simples.size())
                        throw Error(ErrorKind::Internal, "primitive idempotent hits two simples");
                    cache->prim_to_simple[j] = i;
                }
            }
            if (cache->prim_to_simple[j] == cache->simples.size())
                throw Error(ErrorKind::Internal, "primitive idempotent with no top");
        }
        cache->simple_to_prim.assign(cache->simples.size(), cache->prims.size());
        for (size_t j = 0; j < cache->prims.size(); ++j) {
            size_t i = cache->prim_to_simple[j];
            if (cache->simple_to_prim[i] == cache->prims.size()) cache->simple_to_prim[i] = j;
        }
        for (size_t i = 0; i < cache->simples.size(); ++i)
            if (cache->simple_to_prim[i] == cache->prims.size())
                throw Error(ErrorKind::Internal, "simple module not covered by any projective");

        // minimal presentation of each simple: e A ->> S with kernel
        for (size_t i = 0; i < cache->simples.size(); ++i) {
            size_t j = cache->simple_to_prim[i];
            const RightModule& s = cache->simples[i];
            const SubmoduleResult& piece = cache->pieces[j];
            Matrix ea = action_of(s, cache->prims[j]);
            size_t wrow = s.dim;
            for (size_t r = 0; r < s.dim; ++r)
                if (!vec_is_zero(ea.row(r))) {
                    wrow = r;
                    break;
                }
            if (wrow == s.dim) throw Error(ErrorKind::Internal, "top mismatch in simple cover");
            std::vector<uint32_t> w = ea.row(wrow);
            Matrix cov(piece.module.dim, s.dim, p);
            for (size_t r = 0; r < piece.module.dim; ++r)
                cov.set_row(r, mul(w, action_of(s, piece.inclusion.m.row(r))));
            if (rank(cov) != s.dim)
                throw Error(ErrorKind::Internal, "simple cover is not surjective");
            Subspace ker = Subspace::span(left_nullspace(cov));
            cache->simple_cover.push_back(
                CoverResult{piece.module, ModuleMap{piece.module, s, cov}});
            cache->simple_kernel.push_back(submodule_from_subspace(piece.module, ker));
        }
    }

    std::lock_guard<std::mutex> lk(mod_cache_mu);
    auto [it, inserted] = mod_caches.emplace(std::weak_ptr<const Algebra>(a), cache);
    if (!inserted) return it->second;
    // prune expired entries opportunistically
    for (auto jt = mod_caches.begin(); jt != mod_caches.end();) {
        if (jt->first.expired())
            jt = mod_caches.erase(jt);
        else
            ++jt;
    }
    return cache;
}

} // namespace

std::vector<RightModule> simple_modules(const AlgebraPtr& a) { return get_mod_cache(a)->simples; }

CoverResult projective_cover(const RightModule& m) {
    validate_module(m);
    const AlgebraPtr& a = m.parent;
    uint32_t p = a->modulus();
    if (m.dim == 0) {
        RightModule z = zero_module(a);
        return CoverResult{z, ModuleMap{z, m, Matrix(0, 0, p)}};
    }
    auto cache = get_mod_cache(a);

    // M * rad(A)
    Subspace rad = radical(a);
    Matrix mr(0, m.dim, p);
    for (size_t r = 0; r < rad.dim(); ++r)
        mr = vstack(mr, action_of(m, rad.basis().row(r)));
    Subspace u = Subspace::span(mr);
    size_t top_dim = m.dim - u.dim();

    std::vector<std::pair<size_t, std::vector<uint32_t>>> chosen; // (primitive index, v)
    for (size_t i = 0; i < cache->simples.size(); ++i) {
        size_t j = cache->simple_to_prim[i];
        Matrix me = action_of(m, cache->prims[j]);
        for (;;) {
            size_t pick = me.rows();
            for (size_t r = 0; r < me.rows(); ++r)
                if (!u.contains(me.row(r))) {
                    pick = r;
                    break;
                }
            if (pick == me.rows()) break;
            std::vector<uint32_t> v = me.row(pick);
            chosen.push_back({j, v});
            u = sum(u, invariant_closure(m, {v}));
        }
    }
    if (u.dim() != m.dim)
        throw Error(ErrorKind::Internal, "projective cover construction is not surjective");

    std::vector<RightModule> parts;
    parts.reserve(chosen.size());
    for (const auto& [j, v] : chosen) parts.push_back(cache->pieces[j].module);
    if (parts.empty()) throw Error(ErrorKind::Internal, "nonzero module with empty cover");
    DirectSumResult ds = direct_sum(parts);

    Matrix cov(ds.module.dim, m.dim, p);
    size_t off = 0;
    for (const auto& [j, v] : chosen) {
        const SubmoduleResult& piece = cache->pieces[j];
        for (size_t r = 0; r < piece.module.dim; ++r)
            cov.set_row(off + r, mul(v, action_of(m, piece.inclusion.m.row(r))));
        off += piece.module.dim;
    }
    if (rank(cov) != m.dim) throw Error(ErrorKind::Internal, "projective cover not surjective");

    // minimality: top(P) must match top(M)
    Matrix pr(0, ds.module.dim, p);
    for (size_t r = 0; r < rad.dim(); ++r)
        pr = vstack(pr, action_of(ds.module, rad.basis().row(r)));
    if (ds.module.dim - Subspace::span(pr).dim() != top_dim)
        throw Error(ErrorKind::Internal, "projective cover is not minimal");

    return CoverResult{ds.module, ModuleMap{ds.module, m, std::move(cov)}};
}

namespace {

// Ext^1(M, N) from a projective presentation: P covers M with kernel K "incl" P.
Ext1Result ext1_from_presentation(const RightModule& p0, const SubmoduleResult& k,
                                  const RightModule& n) {
    Ext1Result out;
    if (k.module.dim == 0 || n.dim == 0) return out;
    uint32_t p = p0.parent->modulus();
    std::vector<Matrix> v1 = hom_space(k.module, n);
    if (v1.empty()) return out;
    size_t t1 = v1.size();
    Matrix v1rows(0, k.module.dim * n.dim, p);
    for (const Matrix& h : v1) v1rows = vstack(v1rows, Matrix::from_rows({flatten(h)}, p));
    Subspace v1span = Subspace::span(v1rows);

    std::vector<Matrix> v0 = hom_space(p0, n);
    Matrix wrows(0, t1, p);
    for (const Matrix& h : v0) {
        std::vector<uint32_t> coords = v1span.coordinates(flatten(mul(k.inclusion.m, h)));
        wrows = vstack(wrows, Matrix::from_rows({coords}, p));
    }
    Subspace w = Subspace::span(wrows);
    out.dim = t1 - w.dim();
    for (size_t c : complement_coordinates(w)) out.cocycles.push_back(v1[c]);
    return out;
}

} // namespace

Ext1Result ext1(const RightModule& m, const RightModule& n) {
    require_same_algebra(m.parent, n.parent, "ext1");
    if (m.dim == 0 || n.dim == 0) return Ext1Result{};
    CoverResult cov = projective_cover(m);
    Subspace ker = Subspace::span(left_nullspace(cov.onto.m));
    if (ker.dim() == 0) return Ext1Result{};
    SubmoduleResult k = submodule_from_subspace(cov.cover, ker);
    return ext1_from_presentation(cov.cover, k, n);
}

bool is_projective(const RightModule& m) {
    if (m.dim == 0) return true;
    CoverResult cov = projective_cover(m);
    if (cov.cover.dim == m.dim) return true; // cover is an isomorphism
    // look for a retraction: x in Hom(M, P) with x * cov = id
    std::vector<Matrix> h = hom_space(m, cov.cover);
    if (h.empty()) return false;
    uint32_t p = m.parent->modulus();
    Matrix sys(h.size(), m.dim * m.dim, p);
    for (size_t r = 0; r < h.size(); ++r) sys.set_row(r, flatten(mul(h[r], cov.onto.m)));
    return solve_left(sys, Matrix::from_rows({flatten(Matrix::identity(m.dim, p))}, p)).has_value();
}

bool is_injective(const RightModule& m) {
    validate_module(m);
    auto cache = get_mod_cache(m.parent);
    for (size_t i = 0; i < cache->simples.size(); ++i) {
        Ext1Result e =
            ext1_from_presentation(cache->simple_cover[i].cover, cache->simple_kernel[i], m);
        if (e.dim != 0) return false;
    }
    return true;
}

std::vector<Subspace> all_submodules(const RightModule& m, uint64_t cap) {
    uint32_t p = m.parent->modulus();
    if (checked_pow(p, m.dim, cap) > cap)
        throw Error(ErrorKind::SubmoduleLatticeTooLarge,
                    "all_submodules: vector scan exceeds the cap");
    std::set<Subspace> cyclics;
    std::vector<uint32_t> v(m.dim, 0);
    while (next_tuple(v, p)) cyclics.insert(invariant_closure(m, {v}));

    // join closure; every submodule is a join of cyclic ones, so joining each
    // discovered member with each cyclic exactly once suffices
    std::set<Subspace> all;
    std::vector<Subspace> work;
    work.emplace_back(m.dim, p);
    all.insert(work.back());
    while (!work.empty()) {
        Subspace s = std::move(work.back());
        work.pop_back();
        for (const Subspace& c : cyclics) {
            Subspace u = sum(s, c);
            if (all.insert(u).second) {
                if (all.size() > cap)
                    throw Error(ErrorKind::SubmoduleLatticeTooLarge,
                                "all_submodules: lattice exceeds the cap");
                work.push_back(std::move(u));
            }
        }
    }
    return {all.begin(), all.end()};
}

bool is_hereditary_injective(const RightModule& m, uint64_t cap) {
    for (const Subspace& k : all_submodules(m, cap))
        if (!is_injective(quotient_module(m, k).module)) return false;
    return true;
}

bool sigma_crosscheck(const RightModule& m, size_t n_max, uint64_t cap) {
    if (n_max < 1) throw Error(ErrorKind::BoundExceeded, "sigma_crosscheck: n_max must be >= 1");
    for (size_t n = 1; n <= n_max; ++n) {
        std::vector<RightModule> copies(n, m);
        RightModule mn = n == 1 ? m : direct_sum(copies).module;
        for (const Subspace& k : all_submodules(mn, cap))
            if (!is_injective(quotient_module(mn, k).module)) return false;
    }
    return true;
}

RightModule dual(const RightModule& m) {
    AlgebraPtr op = opposite_algebra(m.parent);
    std::vector<Matrix> act;
    act.reserve(m.action.size());
    for (const Matrix& a : m.action) act.push_back(transpose(a));
    RightModule out{op, m.dim, std::move(act)};
    validate_module(out);
    return out;
}

RightModule transpose(const RightModule& m) {
    validate_module(m);
    const AlgebraPtr& a = m.parent;
    AlgebraPtr op = opposite_algebra(a);
    uint32_t p = a->modulus();
    size_t n = a->dim();

    CoverResult cov0 = projective_cover(m);
    Subspace ker = Subspace::span(left_nullspace(cov0.onto.m));
    if (ker.dim() == 0) return zero_module(op); // projective modules have Tr = 0
    SubmoduleResult k = submodule_from_subspace(cov0.cover, ker);
    CoverResult cov1 = projective_cover(k.module);
    Matrix d = mul(cov1.onto.m, k.inclusion.m); // P1 -> P0

    RightModule reg = regular_module(a);
    std::vector<Matrix> v0 = hom_space(cov0.cover, reg);
    std::vector<Matrix> v1 = hom_space(cov1.cover, reg);
    if (v1.empty()) return zero_module(op);
    size_t t1 = v1.size();

    Matrix v1rows(0, cov1.cover.dim * n, p);
    for (const Matrix& h : v1) v1rows = vstack(v1rows, Matrix::from_rows({flatten(h)}, p));
    Subspace v1span = Subspace::span(v1rows);

    Matrix wrows(0, t1, p);
    for (const Matrix& h : v0)
        wrows = vstack(wrows, Matrix::from_rows({v1span.coordinates(flatten(mul(d, h)))}, p));
    Subspace w = Subspace::span(wrows);

    std::vector<size_t> comp = complement_coordinates(w);
    size_t dim = comp.size();
    // left action (a.f)(x) = a f(x) becomes H -> H * lmat(a), a right A^op-action
    std::vector<Matrix> act;
    act.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        Matrix rho(dim, dim, p);
        for (size_t r = 0; r < dim; ++r) {
            std::vector<uint32_t> coords =
                v1span.coordinates(flatten(mul(v1[comp[r]], a->basis_lmat(i))));
            std::vector<uint32_t> red = w.reduce(coords);
            std::vector<uint32_t> row(dim);
            for (size_t c = 0; c < dim; ++c) row[c] = red[comp[c]];
            rho.set_row(r, std::move(row));
        }
        act.push_back(std::move(rho));
    }
    RightModule out{op, dim, std::move(act)};
    validate_module(out);
    return out;
}

RightModule ar_translate(const RightModule& m) {
    RightModule tr = transpose(m); // over A^op
    std::vector<Matrix> act;
    act.reserve(tr.action.size());
    for (const Matrix& x : tr.action) act.push_back(transpose(x));
    RightModule out{m.parent, tr.dim, std::move(act)}; // (A^op)^op = A entrywise
    validate_module(out);
    return out;
}

RightModule ar_translate_inverse(const RightModule& m) {
    RightModule tr = transpose(dual(m)); // over (A^op)^op
    RightModule out{m.parent, tr.dim, std::move(tr.action)};
    validate_module(out);
    return out;
}

RightModule restrict_to_corner(const RightModule& n, const CornerAlgebra& c) {
    require_same_algebra(n.parent, c.parent, "restrict_to_corner");
    uint32_t p = n.parent->modulus();
    Subspace ne = Subspace::span(action_of(n, c.e));
    size_t k = ne.dim();
    std::vector<Matrix> act;
    act.reserve(c.algebra->dim());
    for (size_t i = 0; i < c.algebra->dim(); ++i) {
        std::vector<uint32_t> xi = c.inclusion.row(i); // corner basis element inside A
        Matrix rho(k, k, p);
        for (size_t r = 0; r < k; ++r)
            rho.set_row(r, ne.coordinates(mul(ne.basis().row(r), action_of(n, xi))));
        act.push_back(std::move(rho));
    }
    RightModule out{c.algebra, k, std::move(act)};
    validate_module(out);
    return out;
}

bool is_hereditary(const AlgebraPtr& a) {
    RightModule reg = regular_module(a);
    Subspace rad = radical(a);
    if (rad.dim() == 0) return true;
    return is_projective(submodule_from_subspace(reg, rad).module);
}

} // namespace ttf
