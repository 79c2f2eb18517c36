#include "ttf/enumerate.hpp"

#include <random>

#include "ttf/error.hpp"
#include "ttf/linalg.hpp"
#include "ttf/subspace.hpp"

namespace ttf {

namespace {

// adapted basis element: a vector of A lying in the Peirce piece (i, j)
struct PeirceElement {
    std::vector<uint32_t> vec;
    size_t i = 0;
    size_t j = 0;
    bool is_family = false; // one of the orthogonal idempotents f_i
};

std::vector<PeirceElement> peirce_basis(const AlgebraPtr& a,
                                        const std::vector<std::vector<uint32_t>>& fam) {
    const uint32_t p = a->modulus();
    const size_t n = a->dim();
    std::vector<PeirceElement> out;
    Matrix kept(0, n, p);
    auto try_add = [&](std::vector<uint32_t> v, size_t i, size_t j, bool is_fam) {
        if (vec_is_zero(v)) return;
        if (kept.rows() > 0 && Subspace::span(kept).contains(v)) return;
        kept = vstack(kept, Matrix::from_rows({v}, p));
        out.push_back({std::move(v), i, j, is_fam});
    };
    for (size_t i = 0; i < fam.size(); ++i)
        for (size_t j = 0; j < fam.size(); ++j) {
            if (i == j) try_add(fam[i], i, i, true);
            for (size_t b = 0; b < n; ++b)
                try_add(a->mul(a->mul(fam[i], a->basis_vec(b)), fam[j]), i, j, false);
        }
    if (out.size() != n)
        throw Error(ErrorKind::Internal, "Peirce decomposition does not fill the algebra");
    return out;
}

bool next_tuple_digits(std::vector<uint32_t>& t, uint32_t p) {
    for (auto& x : t) {
        if (++x < p) return true;
        x = 0;
    }
    return false;
}

// compositions into k nonnegative parts, odometer order starting at (m,0,..,0)
bool next_composition(std::vector<size_t>& d) {
    size_t k = d.size();
    if (k < 2) return false;
    size_t carry = d.back();
    for (size_t i = k - 1; i-- > 0;) {
        if (d[i] > 0) {
            --d[i];
            d[i + 1] = carry + 1;
            for (size_t j = i + 2; j < k; ++j) d[j] = 0;
            return true;
        }
        carry += d[i];
    }
    return false;
}

} // namespace

ModuleEnumeration enumerate_modules(const AlgebraPtr& a, size_t dmax, const EnumOptions& opt) {
    if (!a) throw Error(ErrorKind::ShapeMismatch, "enumerate_modules: null algebra");
    const uint32_t p = a->modulus();
    const size_t n = a->dim();
    ModuleEnumeration result;
    if (n == 0 || dmax == 0) return result;

    auto fam = primitive_orthogonal_idempotents(a);
    const size_t k = fam.size();
    auto adapted = peirce_basis(a, fam);

    // change of basis: original coordinates -> adapted coordinates
    std::vector<std::vector<uint32_t>> rows;
    rows.reserve(n);
    for (const auto& el : adapted) rows.push_back(el.vec);
    Matrix to_adapted = inverse(Matrix::from_rows(rows, p));

    // hom dimensions against the simples separate most non-isomorphic pairs
    // without touching the big hom spaces
    std::vector<RightModule> simples = opt.dedup ? simple_modules(a) : std::vector<RightModule>{};
    auto fingerprint = [&](const RightModule& mod) {
        std::vector<size_t> fp;
        fp.reserve(2 * simples.size());
        for (const RightModule& s : simples) {
            fp.push_back(hom_space(s, mod).size());
            fp.push_back(hom_space(mod, s).size());
        }
        return fp;
    };

    for (size_t m = 1; m <= dmax; ++m) {
        std::vector<RightModule> kept_this_dim; // for dedup within total dim m
        std::vector<std::vector<size_t>> kept_fp;
        std::vector<size_t> d(k, 0);
        d[0] = m;
        bool more = true;
        size_t comp_index = 0;
        while (more) {
            ++comp_index;
            // block offsets for this dimension vector
            std::vector<size_t> off(k + 1, 0);
            for (size_t i = 0; i < k; ++i) off[i + 1] = off[i] + d[i];

            // free slots: one d_i x d_j block per non-family adapted element
            std::vector<size_t> free_index; // into `adapted`
            size_t params = 0;
            for (size_t s = 0; s < n; ++s)
                if (!adapted[s].is_family) {
                    free_index.push_back(s);
                    params += d[adapted[s].i] * d[adapted[s].j];
                }

            // p^params assignments, or a sampled subset when that overflows
            uint64_t total = 1;
            bool capped = false;
            for (size_t t = 0; t < params; ++t) {
                if (total > opt.assignment_cap / p) {
                    capped = true;
                    break;
                }
                total *= p;
            }
            if (capped) result.exhaustive = false;

            std::vector<uint32_t> digits(params, 0);
            std::mt19937_64 rng(opt.seed * 0x9e3779b97f4a7c15ULL + m * 131 + comp_index * 7919);
            uint64_t draws = capped ? opt.sample_count : total;

            for (uint64_t it = 0; it < draws; ++it) {
                if (capped)
                    for (auto& dg : digits) dg = static_cast<uint32_t>(rng() % p);
                ++result.inspected;

                // matrices for the adapted basis
                std::vector<Matrix> arho(n, Matrix(m, m, p));
                size_t pos = 0;
                for (size_t s = 0; s < n; ++s) {
                    const auto& el = adapted[s];
                    if (el.is_family) {
                        for (size_t r = off[el.i]; r < off[el.i + 1]; ++r) arho[s].at(r, r) = 1;
                    } else {
                        for (size_t r = 0; r < d[el.i]; ++r)
                            for (size_t c = 0; c < d[el.j]; ++c)
                                arho[s].at(off[el.i] + r, off[el.j] + c) = digits[pos++];
                    }
                }

                // law on adapted pairs: rho(y_s) rho(y_t) = rho(y_s y_t)
                bool ok = true;
                for (size_t s = 0; s < n && ok; ++s)
                    for (size_t t = 0; t < n && ok; ++t) {
                        std::vector<uint32_t> prod =
                            mul(a->mul(adapted[s].vec, adapted[t].vec), to_adapted);
                        Matrix want(m, m, p);
                        for (size_t q = 0; q < n; ++q)
                            if (prod[q]) want = add(want, mul(prod[q], arho[q]));
                        if (!(mul(arho[s], arho[t]) == want)) ok = false;
                    }
                if (!ok) {
                    if (!capped && !next_tuple_digits(digits, p)) break;
                    continue;
                }

                // translate to the original basis
                std::vector<Matrix> rho(n, Matrix(m, m, p));
                for (size_t b = 0; b < n; ++b) {
                    std::vector<uint32_t> co = mul(a->basis_vec(b), to_adapted);
                    for (size_t s = 0; s < n; ++s)
                        if (co[s]) rho[b] = add(rho[b], mul(co[s], arho[s]));
                }
                RightModule cand = make_module(a, std::move(rho));
                bool fresh = true;
                if (opt.dedup) {
                    std::vector<size_t> fp = fingerprint(cand);
                    for (size_t s = 0; s < kept_this_dim.size(); ++s) {
                        if (kept_fp[s] != fp) continue;
                        try {
                            if (is_isomorphic(kept_this_dim[s], cand)) {
                                fresh = false;
                                break;
                            }
                        } catch (const Error& e) {
                            // inconclusive scan: keep the candidate rather
                            // than risk dropping a new class
                            if (e.kind() != ErrorKind::BoundExceeded) throw;
                        }
                    }
                    if (fresh) {
                        kept_this_dim.push_back(cand);
                        kept_fp.push_back(std::move(fp));
                    }
                }
                if (fresh) result.modules.push_back(std::move(cand));

                if (!capped && !next_tuple_digits(digits, p)) break;
            }
            more = next_composition(d);
        }
    }
    return result;
}

} // namespace ttf
