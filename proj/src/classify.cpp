#include "ttf/classify.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "ttf/error.hpp"
#include "ttf/linalg.hpp"

namespace ttf {

namespace {

std::string coeff_string(const AlgebraPtr& a, const std::vector<uint32_t>& v) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (!first) os << " + ";
        if (v[i] != 1) os << v[i] << "*";
        if (i < a->labels().size() && !a->labels()[i].empty())
            os << a->labels()[i];
        else
            os << "b" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::vector<uint32_t> one_minus(const Algebra& a, const std::vector<uint32_t>& e) {
    return vec_sub(a.one(), e, a.modulus());
}

// eA as a subspace: the image of left multiplication by e
Subspace left_image(const Algebra& a, const std::vector<uint32_t>& e) {
    return Subspace::span(a.lmat(e));
}

// Ae as a subspace: the image of right multiplication by e
Subspace right_image(const Algebra& a, const std::vector<uint32_t>& e) {
    return Subspace::span(a.rmat(e));
}

// e A f as a subspace
Subspace sandwich(const Algebra& a, const std::vector<uint32_t>& e,
                  const std::vector<uint32_t>& f) {
    return Subspace::span(mul(a.lmat(e), a.rmat(f)));
}

// right module structure on an invariant subspace s of A, with the corner
// algebra c acting through A on the right
RightModule module_on_span_right(const AlgebraPtr& a, const Subspace& s, const CornerAlgebra& c) {
    uint32_t p = a->modulus();
    std::vector<Matrix> act;
    act.reserve(c.algebra->dim());
    for (size_t j = 0; j < c.algebra->dim(); ++j) {
        Matrix big = a->rmat(c.inclusion.row(j));
        Matrix small(s.dim(), s.dim(), p);
        for (size_t r = 0; r < s.dim(); ++r)
            small.set_row(r, s.coordinates(mul(s.basis().row(r), big)));
        act.push_back(std::move(small));
    }
    return make_module(c.algebra, std::move(act));
}

// left module structure on s (action x -> b*x), packaged as a right module
// over base^op; `reps` rows give base's basis in A coordinates
RightModule module_on_span_left(const AlgebraPtr& a, const Subspace& s, const AlgebraPtr& base,
                                const Matrix& reps) {
    uint32_t p = a->modulus();
    std::vector<Matrix> act;
    act.reserve(base->dim());
    for (size_t j = 0; j < base->dim(); ++j) {
        Matrix big = a->lmat(reps.row(j));
        Matrix small(s.dim(), s.dim(), p);
        for (size_t r = 0; r < s.dim(); ++r)
            small.set_row(r, s.coordinates(mul(s.basis().row(r), big)));
        act.push_back(std::move(small));
    }
    return make_module(opposite_algebra(base), std::move(act));
}

// {b in base : b*m = 0 for all m in s}, in base coordinates
Subspace left_ann_on_span(const AlgebraPtr& a, const Subspace& s, const AlgebraPtr& base,
                          const Matrix& reps) {
    uint32_t p = a->modulus();
    if (s.dim() == 0) return Subspace::full(base->dim(), p);
    Matrix rows(base->dim(), s.dim() * a->dim(), p);
    for (size_t j = 0; j < base->dim(); ++j) {
        Matrix big = a->lmat(reps.row(j));
        std::vector<uint32_t> flat;
        flat.reserve(s.dim() * a->dim());
        for (size_t r = 0; r < s.dim(); ++r) {
            std::vector<uint32_t> prod = mul(s.basis().row(r), big);
            flat.insert(flat.end(), prod.begin(), prod.end());
        }
        rows.set_row(j, flat);
    }
    return Subspace::span(left_nullspace(rows));
}

bool degenerate_ideal(const TTFTriple& tr) {
    return tr.ideal.dim() == 0 || tr.ideal.dim() == tr.algebra->dim();
}

} // namespace

CentralSplitVerdict classify_centrally_split(const TTFTriple& tr) {
    CentralSplitVerdict out;
    const AlgebraPtr& a = tr.algebra;
    std::vector<std::vector<uint32_t>> cands = central_idempotents(a);
    for (const auto& e : cands) {
        if (left_image(*a, e) != tr.ideal.span) continue;
        out.value = true;
        out.witness = e;
        out.trace.push_back("I = eA for the central idempotent e = " + coeff_string(a, e));
        return out;
    }
    out.trace.push_back("no central idempotent generates I (" + std::to_string(cands.size()) +
                        " candidates scanned)");
    return out;
}

LeftSplitVerdict classify_left_split(const TTFTriple& tr, const LeftSplitOptions& opt) {
    LeftSplitVerdict out;
    const AlgebraPtr& a = tr.algebra;
    IdempotentEnumeration en = enumerate_idempotents(a, opt.idempotent_bound);
    for (const auto& e : en.idempotents) {
        if (left_image(*a, e) != tr.ideal.span) continue;
        out.witness = e;
        out.trace.push_back("I = eA for e = " + coeff_string(a, e));
        std::vector<uint32_t> f = one_minus(*a, e);
        Subspace m = sandwich(*a, e, f);
        if (m.dim() == 0) {
            out.value = true;
            out.trace.push_back("eA(1-e) = 0, nothing to test");
            return out;
        }
        CornerAlgebra c = corner_algebra(a, f);
        RightModule mm = module_on_span_right(a, m, c);
        out.corner_tested = true;
        out.value = is_hereditary_injective(mm, opt.lattice_cap);
        out.trace.push_back("eA(1-e) has dimension " + std::to_string(m.dim()) +
                            " over the corner (1-e)A(1-e) of dimension " +
                            std::to_string(c.algebra->dim()));
        out.trace.push_back(std::string("eA(1-e) is hereditary injective over the corner: ") +
                            (out.value ? "yes" : "no"));
        return out;
    }
    out.trace.push_back("no idempotent e with eA = I (" + std::to_string(en.idempotents.size()) +
                        std::string(en.exhaustive ? " candidates, exhaustive scan)"
                                                  : " candidates, structural scan)"));
    return out;
}

EpsilonReduction epsilon_reduction(const TTFTriple& tr) {
    EpsilonReduction out;
    const AlgebraPtr& a = tr.algebra;
    uint32_t p = a->modulus();
    RightModule reg = regular_module(a);
    out.trace.push_back("t(A) = lann(I) has dimension " + std::to_string(tr.lann.dim()));
    SubmoduleResult sub = submodule_from_subspace(reg, tr.lann);
    std::optional<Matrix> r = summand_retraction(reg, sub);
    if (!r) {
        out.trace.push_back("t(A) is not a direct summand of the regular module, so no "
                            "idempotent eps has (1-eps)A = t(A); the triple is not right split");
        return out;
    }
    Matrix pi = mul(*r, sub.inclusion.m);
    std::vector<uint32_t> f = mul(a->one(), pi); // 1 - eps
    std::vector<uint32_t> eps = vec_sub(a->one(), f, p);
    if (!a->is_idempotent(eps) || left_image(*a, f) != tr.lann)
        throw Error(ErrorKind::Internal, "epsilon_reduction: projection gave no idempotent");
    out.ok = true;
    out.epsilon = eps;
    out.trace.push_back("eps = " + coeff_string(a, eps) + " with (1-eps)A = t(A)");
    CornerAlgebra c = corner_algebra(a, eps);
    Subspace icorner = restrict_ideal_to_corner(c, tr.ideal.span);
    out.corner_triple = ttf_from_ideal(c.algebra, icorner);
    if (out.corner_triple->lann.dim() != 0)
        throw Error(ErrorKind::Internal, "epsilon_reduction: corner annihilator did not vanish");
    out.corner = std::move(c);
    out.trace.push_back("corner eps A eps has dimension " +
                        std::to_string(out.corner->algebra->dim()) +
                        ", corner ideal dimension " + std::to_string(icorner.dim()) +
                        ", annihilator zero");
    return out;
}

RightSplitVerdict classify_right_split(const TTFTriple& tr, const RightSplitOptions& opt) {
    RightSplitVerdict out;
    const AlgebraPtr& a = tr.algebra;
    if (degenerate_ideal(tr)) {
        out.value = out.criterion = out.splitting_levels = true;
        out.levels_exhaustive = true;
        out.paths_agree = true;
        out.epsilon = a->one();
        out.trace.push_back(tr.ideal.dim() == 0 ? "I = 0: every module is torsion"
                                                : "I = A: no nonzero module is torsion");
        return out;
    }

    EpsilonReduction red = epsilon_reduction(tr);
    out.trace.insert(out.trace.end(), red.trace.begin(), red.trace.end());
    if (!red.ok) {
        out.paths_agree = true;
        return out;
    }
    out.epsilon = red.epsilon;
    const AlgebraPtr& ap = red.corner->algebra;
    const TTFTriple& ct = *red.corner_triple;
    uint32_t p = ap->modulus();

    // an idempotent generator I = Ae in the corner
    IdempotentEnumeration en = enumerate_idempotents(ap, opt.idempotent_bound);
    std::optional<std::vector<uint32_t>> gen;
    for (const auto& e : en.idempotents)
        if (right_image(*ap, e) == ct.ideal.span) {
            gen = e;
            break;
        }

    if (!gen) {
        out.criterion = false;
        out.trace.push_back("no idempotent generates the corner ideal as a left ideal (" +
                            std::to_string(en.idempotents.size()) +
                            std::string(en.exhaustive ? " candidates, exhaustive scan)"
                                                      : " candidates, structural scan)"));
    } else {
        out.generator = gen;
        out.trace.push_back("corner ideal is Ae for e = " + coeff_string(ap, *gen));
        std::vector<uint32_t> f = one_minus(*ap, *gen);
        if (vec_is_zero(f)) {
            out.criterion = true;
            out.trace.push_back("1-e = 0: the ideal fills the corner, nothing left to test");
        } else {
            CornerAlgebra bc = corner_algebra(ap, f);
            Subspace mspan = sandwich(*ap, f, *gen); // (1-e) A' e
            Subspace ann = left_ann_on_span(ap, mspan, bc.algebra, bc.inclusion);

            // idempotent-dual criterion: ann_B(M) = e'B, B/ann hereditary,
            // M injective as a left module over B/ann
            IdempotentEnumeration ben = enumerate_idempotents(bc.algebra, opt.idempotent_bound);
            std::optional<std::vector<uint32_t>> eprime;
            for (const auto& c : ben.idempotents)
                if (left_image(*bc.algebra, c) == ann) {
                    eprime = c;
                    break;
                }
            if (!eprime) {
                out.criterion = false;
                out.trace.push_back("ann_B(M) of dimension " + std::to_string(ann.dim()) +
                                    " is not generated by an idempotent as a right ideal");
            } else {
                out.trace.push_back("ann_B(M) = e'B for e' = " +
                                    coeff_string(bc.algebra, *eprime));
                QuotientAlgebra bbar = quotient_algebra(bc.algebra, ann);
                bool hered = is_hereditary(bbar.algebra);
                bool minj = true;
                if (mspan.dim() > 0 && bbar.algebra->dim() > 0) {
                    Matrix reps(bbar.algebra->dim(), ap->dim(), p);
                    for (size_t j = 0; j < bbar.algebra->dim(); ++j)
                        reps.set_row(j, mul(bbar.section.row(j), bc.inclusion));
                    minj = is_injective(module_on_span_left(ap, mspan, bbar.algebra, reps));
                }
                out.criterion = hered && minj;
                out.trace.push_back(std::string("B/ann is hereditary: ") + (hered ? "yes" : "no"));
                out.trace.push_back(std::string("M is injective as a left module over B/ann: ") +
                                    (minj ? "yes" : "no"));
            }
        }
    }

    // bounded-depth crosscheck: splitting-ideal levels plus a hereditary
    // quotient, both in the corner
    RightSplittingVerdict rs = is_right_splitting_ideal(ap, ct.ideal, opt.n_max, opt.saturated);
    bool qhered = is_hereditary(quotient_algebra(ap, ct.ideal.span).algebra);
    out.splitting_levels = rs.value && qhered;
    out.levels_exhaustive = rs.exhaustive;
    out.trace.push_back("depth check to n = " + std::to_string(opt.n_max) + ": " +
                        (rs.value ? "no level refuted" : "refuted") +
                        (rs.exhaustive ? " (exhaustive)" : " (sampled)") +
                        std::string(qhered ? ", A/I hereditary" : ", A/I not hereditary"));

    out.paths_agree = !(out.criterion && !out.splitting_levels);
    if (!out.paths_agree)
        throw Error(ErrorKind::Internal,
                    "classify_right_split: criterion true but a bounded level was refuted");
    out.value = out.criterion;
    if (!out.criterion && out.splitting_levels)
        out.trace.push_back("bounded depth found no refutation; the exact criterion decides");
    return out;
}

RightSplitDecomposition right_split_decomposition(const TTFTriple& tr,
                                                  const RightSplitOptions& opt) {
    RightSplitVerdict v = classify_right_split(tr, opt);
    if (!v.value)
        throw Error(ErrorKind::NotRightSplit,
                    "right_split_decomposition: the triple is not right split");
    const AlgebraPtr& a = tr.algebra;
    uint32_t p = a->modulus();
    AlgebraPtr zero = algebra_from_table(p, 0, {}, {});

    // Block idempotents over the full algebra: e generates I = Ae inside the
    // corner, g_H fills the rest of the corner, g_B = 1 - eps spans t(A).
    RightSplitDecomposition out;
    std::vector<uint32_t> e, gh, gb;
    if (degenerate_ideal(tr)) {
        out.reduction = corner_algebra(a, a->one());
        bool unit_ideal = tr.ideal.dim() == a->dim();
        e = unit_ideal ? a->one() : a->zero_vec();
        gh = a->zero_vec();
        gb = unit_ideal ? a->zero_vec() : a->one();
    } else {
        EpsilonReduction red = epsilon_reduction(tr);
        out.reduction = *red.corner;
        e = mul(*v.generator, red.corner->inclusion);
        gh = vec_sub(v.epsilon, e, p);
        gb = vec_sub(a->one(), v.epsilon, p);
    }
    if (!a->is_idempotent(e) || !a->is_idempotent(gh) || !a->is_idempotent(gb))
        throw Error(ErrorKind::Internal,
                    "right_split_decomposition: block idempotents failed the square check");

    Subspace cspan = sandwich(*a, e, e);
    Subspace mspan = sandwich(*a, gh, e);
    Subspace hspan = sandwich(*a, gh, gh);
    Subspace nspan = sandwich(*a, gb, gh);
    Subspace bpspan = sandwich(*a, gb, gb);

    // the four forbidden Peirce pieces vanish: Ae is two-sided, t(A) = (1-eps)A
    // is two-sided, and e lies in I
    if (sandwich(*a, e, gh).dim() != 0 || sandwich(*a, e, gb).dim() != 0 ||
        sandwich(*a, gh, gb).dim() != 0 || sandwich(*a, gb, e).dim() != 0)
        throw Error(ErrorKind::Internal, "right_split_decomposition: an upper block is nonzero");
    if (cspan.dim() + mspan.dim() + hspan.dim() + nspan.dim() + bpspan.dim() != a->dim())
        throw Error(ErrorKind::Internal,
                    "right_split_decomposition: blocks do not fill the algebra");
    if (sum(cspan, mspan) != tr.ideal.span || sum(nspan, bpspan) != tr.lann)
        throw Error(ErrorKind::Internal,
                    "right_split_decomposition: blocks do not match I and t(A)");

    out.dim_c = cspan.dim();
    out.dim_m = mspan.dim();
    out.dim_h = hspan.dim();
    out.dim_n = nspan.dim();
    out.dim_bp = bpspan.dim();
    Matrix adapted(0, a->dim(), p);
    for (const Subspace* s : {&cspan, &mspan, &hspan, &nspan, &bpspan})
        if (s->dim() > 0) adapted = vstack(adapted, s->basis());
    out.adapted = std::move(adapted);

    out.c_algebra = cspan.dim() ? corner_algebra(a, e).algebra : zero;
    out.h_algebra = hspan.dim() ? corner_algebra(a, gh).algebra : zero;
    out.bp_algebra = bpspan.dim() ? corner_algebra(a, gb).algebra : zero;

    auto block_bimodule = [&](const Subspace& s, const AlgebraPtr& lalg,
                              const std::vector<uint32_t>& le, const AlgebraPtr& ralg,
                              const std::vector<uint32_t>& re) {
        Bimodule b;
        b.left_algebra = lalg;
        b.right_algebra = ralg;
        b.dim = s.dim();
        if (lalg->dim() > 0) {
            CornerAlgebra lc = corner_algebra(a, le);
            for (size_t j = 0; j < lalg->dim(); ++j) {
                Matrix big = a->lmat(lc.inclusion.row(j));
                Matrix small(s.dim(), s.dim(), p);
                for (size_t r = 0; r < s.dim(); ++r)
                    small.set_row(r, s.coordinates(mul(s.basis().row(r), big)));
                b.left_rho.push_back(std::move(small));
            }
        }
        if (ralg->dim() > 0) {
            CornerAlgebra rc = corner_algebra(a, re);
            for (size_t j = 0; j < ralg->dim(); ++j) {
                Matrix big = a->rmat(rc.inclusion.row(j));
                Matrix small(s.dim(), s.dim(), p);
                for (size_t r = 0; r < s.dim(); ++r)
                    small.set_row(r, s.coordinates(mul(s.basis().row(r), big)));
                b.right_rho.push_back(std::move(small));
            }
        }
        validate_bimodule(b);
        return b;
    };
    out.m_bimodule = block_bimodule(mspan, out.h_algebra, gh, out.c_algebra, e);
    out.n_bimodule = block_bimodule(nspan, out.bp_algebra, gb, out.h_algebra, gh);

    if (out.dim_h > 0) {
        CornerAlgebra hc = corner_algebra(a, gh);
        out.m_faithful = left_ann_on_span(a, mspan, hc.algebra, hc.inclusion).dim() == 0;
        out.m_injective =
            mspan.dim() == 0 ||
            is_injective(module_on_span_left(a, mspan, hc.algebra, hc.inclusion));
    } else {
        out.m_faithful = true;
        out.m_injective = true;
    }
    if (!out.m_faithful)
        throw Error(ErrorKind::Internal, "right_split_decomposition: M is not faithful over H");
    return out;
}

RightModule injective_envelope(const RightModule& m) {
    return dual(projective_cover(dual(m)).cover);
}

std::optional<RightModule> nonsplit_extension(const RightModule& top, const RightModule& bottom) {
    if (top.dim == 0 || bottom.dim == 0) return std::nullopt;
    Ext1Result ex = ext1(top, bottom);
    if (ex.dim == 0) return std::nullopt;
    uint32_t p = top.parent->modulus();

    CoverResult cov = projective_cover(top);
    Subspace ker = Subspace::span(left_nullspace(cov.onto.m));
    SubmoduleResult k = submodule_from_subspace(cov.cover, ker);
    DirectSumResult ds = direct_sum({cov.cover, bottom});

    for (const Matrix& f : ex.cocycles) {
        // quotient P + bottom by the antidiagonal graph {(w, -f(w))} of the cocycle
        Matrix g(k.module.dim, ds.module.dim, p);
        for (size_t r = 0; r < k.module.dim; ++r) {
            std::vector<uint32_t> wp = k.inclusion.m.row(r);
            std::vector<uint32_t> row = mul(wp, ds.injections[0].m);
            std::vector<uint32_t> neg = mul(f.row(r), ds.injections[1].m);
            g.set_row(r, vec_sub(row, neg, p));
        }
        QuotientResult q = quotient_module(ds.module, Subspace::span(g));
        if (q.module.dim != top.dim + bottom.dim) continue;
        Subspace bspan = Subspace::span(mul(ds.injections[1].m, q.projection.m));
        if (bspan.dim() != bottom.dim) continue;
        if (!summand_retraction(q.module, submodule_from_subspace(q.module, bspan)))
            return q.module;
    }
    return std::nullopt;
}

OracleSurvey oracle_split_survey(const TTFTriple& tr, size_t d_max, const OracleOptions& opt,
                                 const ModuleEnumeration* pre) {
    OracleSurvey out;
    out.d_max = d_max;
    const AlgebraPtr& a = tr.algebra;

    ModuleEnumeration local;
    const ModuleEnumeration* en = pre;
    if (!en) {
        EnumOptions eo = opt.enumeration;
        eo.dedup = true;
        local = enumerate_modules(a, d_max, eo);
        en = &local;
    }
    out.exhaustive = en->exhaustive;

    auto check = [&](const RightModule& n, const char* origin) {
        if (n.dim == 0 || n.dim > d_max) return;
        ++out.tested;
        ClassMembership cm = class_membership(tr, n);
        if (cm.in_c && !cm.in_f) out.c_subset_f = false;
        if (!out.left && !split_check_on_module(tr, n, SplitSide::left).split)
            out.left = OracleCounterexample{n, origin};
        if (!out.right && !split_check_on_module(tr, n, SplitSide::right).split)
            out.right = OracleCounterexample{n, origin};
    };

    for (const RightModule& n : en->modules) check(n, "enumerated");
    if (!opt.guided || (out.left && out.right)) return out;

    // submodules and quotients of the regular module
    RightModule reg = regular_module(a);
    std::vector<Subspace> subs;
    try {
        subs = all_submodules(reg, opt.lattice_cap);
    } catch (const Error&) {
        // lattice too large; skip this family of candidates
    }
    for (const Subspace& s : subs) {
        if (out.left && out.right) break;
        if (s.dim() > 0)
            check(submodule_from_subspace(reg, s).module, "submodule of the regular module");
        if (reg.dim - s.dim() > 0)
            check(quotient_module(reg, s).module, "quotient of the regular module");
    }

    // Extension-guided search.  A nonsplit extension of a torsion-free module
    // by a torsion one defeats the t-side, and by induction on composition
    // series the torsion partner may be taken simple; dually a nonsplit
    // extension of a torsion module by a closed one defeats the c-side, with
    // the torsion top again reducible to a simple.
    std::vector<RightModule> simples = simple_modules(a);
    std::vector<RightModule> t_simples;
    for (const RightModule& s : simples)
        if (class_membership(tr, s).in_t) t_simples.push_back(s);
    if (t_simples.empty()) return out;

    auto sorted_submodules = [&](const RightModule& host) {
        std::vector<Subspace> v;
        try {
            v = all_submodules(host, opt.lattice_cap);
        } catch (const Error&) {
        }
        std::sort(v.begin(), v.end(), [](const Subspace& x, const Subspace& y) {
            if (x.dim() != y.dim()) return x.dim() < y.dim();
            return x < y;
        });
        return v;
    };

    if (!out.right) {
        // torsion-free candidates live inside the injective envelopes of the
        // torsion-free simples
        std::vector<RightModule> parts;
        for (const RightModule& s : simples)
            if (class_membership(tr, s).in_f)
                parts.push_back(make_module(a, injective_envelope(s).action));
        if (!parts.empty()) {
            RightModule host = direct_sum(parts).module;
            for (const Subspace& s : sorted_submodules(host)) {
                if (out.right) break;
                if (s.dim() == 0 || s.dim() + 1 > d_max) continue;
                RightModule v = submodule_from_subspace(host, s).module;
                if (t_radical(v, tr).dim() != 0) continue; // torsion-free tops only
                for (const RightModule& ts : t_simples) {
                    if (v.dim + ts.dim > d_max) continue;
                    auto e = nonsplit_extension(v, ts);
                    if (!e) continue;
                    check(*e, "extension of a torsion-free module by a torsion simple");
                    if (out.right) break;
                }
            }
        }
    }

    if (!out.left) {
        // closed candidates are quotients of I and of I + I
        SubmoduleResult im = submodule_from_subspace(reg, tr.ideal.span);
        std::vector<RightModule> hosts;
        if (im.module.dim > 0) {
            hosts.push_back(im.module);
            hosts.push_back(direct_sum({im.module, im.module}).module);
        }
        for (const RightModule& host : hosts) {
            if (out.left) break;
            for (const Subspace& s : sorted_submodules(host)) {
                if (out.left) break;
                size_t cdim = host.dim - s.dim();
                if (cdim == 0 || cdim + 1 > d_max) continue;
                RightModule c = quotient_module(host, s).module;
                for (const RightModule& ts : t_simples) {
                    if (c.dim + ts.dim > d_max) continue;
                    auto e = nonsplit_extension(ts, c);
                    if (!e) continue;
                    check(*e, "extension of a torsion simple by a closed module");
                    if (out.left) break;
                }
            }
        }
    }
    return out;
}

ClassificationReport full_report(const AlgebraPtr& a, const ReportOptions& opt) {
    ClassificationReport rep;
    rep.algebra_name = a->name();
    rep.p = a->modulus();
    rep.dim = a->dim();
    rep.d_max = opt.d_max;
    rep.n_max = opt.n_max;

    IdempotentIdealEnumeration en = enumerate_idempotent_ideals(a);
    rep.ideals_exhaustive = en.idempotents_exhaustive;

    EnumOptions eo = opt.oracle.enumeration;
    eo.dedup = true;
    ModuleEnumeration shared = enumerate_modules(a, opt.d_max, eo);

    size_t count = en.ideals.size();
    std::vector<IdealVerdicts> results(count);
    std::vector<std::vector<bool>> sigs(count);
    std::vector<char> classified_flag(count, 0);

    auto classify_one = [&](size_t k) {
        const Ideal& i = en.ideals[k];
        IdealVerdicts iv;
        iv.ideal = i;
        try {
            TTFTriple tr = ttf_from_ideal(a, i);
            iv.triple_ok = true;
            iv.central = classify_centrally_split(tr);
            iv.left = classify_left_split(tr, opt.left);
            RightSplitOptions ro = opt.right;
            ro.n_max = opt.n_max;
            iv.right = classify_right_split(tr, ro);
            iv.oracle = oracle_split_survey(tr, opt.d_max, opt.oracle, &shared);
            iv.agreement = (iv.central.value == (iv.left.value && iv.right.value)) &&
                           !(iv.left.value && iv.oracle.left.has_value()) &&
                           !(iv.right.value && iv.oracle.right.has_value());
            std::vector<bool> sig;
            sig.reserve(shared.modules.size());
            for (const RightModule& n : shared.modules)
                sig.push_back(class_membership(tr, n).in_t);
            sigs[k] = std::move(sig);
            classified_flag[k] = 1;
        } catch (const Error& e) {
            iv.error = std::string(error_kind_name(e.kind())) + ": " + e.what();
        }
        results[k] = std::move(iv);
    };

    size_t jobs = std::min(std::max<size_t>(opt.jobs, 1), std::max<size_t>(count, 1));
    if (jobs <= 1) {
        for (size_t k = 0; k < count; ++k) classify_one(k);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (;;) {
                size_t k = next.fetch_add(1);
                if (k >= count) return;
                classify_one(k);
            }
        };
        std::vector<std::thread> pool;
        for (size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    std::set<std::vector<bool>> signatures;
    size_t classified = 0;
    for (size_t k = 0; k < count; ++k) {
        if (classified_flag[k]) {
            signatures.insert(std::move(sigs[k]));
            ++classified;
        }
        rep.ideals.push_back(std::move(results[k]));
    }
    rep.jans_distinct = signatures.size() == classified;
    return rep;
}

} // namespace ttf
