// Torsion triples from idempotent ideals: radicals, class membership, purity,
// the saturated-submodule condition and per-module split checks.  Expected
// counts are hand derivations noted inline; the big triangular example is
// verified against an independent reconstruction of its witness.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "ttf/algebra.hpp"
#include "ttf/enumerate.hpp"
#include "ttf/error.hpp"
#include "ttf/linalg.hpp"
#include "ttf/module.hpp"
#include "ttf/quiver.hpp"
#include "ttf/torsion.hpp"

using namespace ttf;

namespace {

AlgebraPtr make_f2() { return algebra_from_table(2, 1, {1}, {1}, {"1"}, "F2"); }

// lower-triangular 2x2 over F_2, basis e11, e22, e21
AlgebraPtr make_lt2() {
    std::vector<uint32_t> t(27, 0);
    auto at = [&](size_t i, size_t j, size_t k) -> uint32_t& { return t[(i * 3 + j) * 3 + k]; };
    at(0, 0, 0) = 1;
    at(1, 1, 1) = 1;
    at(1, 2, 2) = 1;
    at(2, 0, 2) = 1;
    return algebra_from_table(2, 3, t, {1, 1, 0}, {"e11", "e22", "e21"}, "LT2");
}

AlgebraPtr make_kron() {
    Quiver q;
    q.vertices = 2;
    q.arrows = {{0, 1, "a"}, {0, 1, "b"}};
    return path_algebra(q, 2);
}

// bottom row span{e22, e21} = e22*A
Subspace bottom_row(const AlgebraPtr& a) {
    Matrix g = Matrix::from_rows({a->basis_vec(1), a->basis_vec(2)}, 2);
    return Subspace::span(g);
}

// first column span{e11, e21} = A*e11
Subspace first_column(const AlgebraPtr& a) {
    Matrix g = Matrix::from_rows({a->basis_vec(0), a->basis_vec(2)}, 2);
    return Subspace::span(g);
}

// [[k,0],[M,H]] for the Kronecker algebra H and a left H-module given by an
// anti-map of H (action matrices indexed by H's basis), with k acting as
// scalars on the right.
AlgebraPtr one_point_extension(const AlgebraPtr& h, const std::vector<Matrix>& left,
                               size_t mdim) {
    AlgebraPtr c = make_f2();
    Bimodule m;
    m.left_algebra = h;
    m.right_algebra = c;
    m.dim = mdim;
    m.left_rho = left;
    m.right_rho = {Matrix::identity(mdim, 2)};
    validate_bimodule(m);
    return triangular_algebra(c, h, m);
}

// image of a subspace of the source under a module map, as a subspace of the target
Subspace push_forward(const Subspace& s, const Matrix& f) {
    if (s.dim() == 0) return Subspace(f.cols(), f.modulus());
    return Subspace::span(mul(s.basis(), f));
}

// {x in N : x * (every ideal basis element) lies in K}, assembled one
// generator at a time through quotient projections; used to double-check the
// saturation of a reported witness without the library's stacked solve
Subspace saturator(const RightModule& n, const Subspace& k, const Subspace& ideal) {
    Matrix proj = quotient_module(n, k).projection.m;
    Subspace out = Subspace::full(n.dim, n.action.empty() ? proj.modulus() : 2);
    for (size_t r = 0; r < ideal.dim(); ++r) {
        Matrix act = action_of(n, ideal.basis().row(r));
        Subspace ker = Subspace::span(left_nullspace(mul(act, proj)));
        out = intersection(out, ker);
    }
    return out;
}

// A-module killed by the ideal, rewritten over A/ideal
RightModule over_quotient(const QuotientAlgebra& q, const RightModule& m) {
    std::vector<Matrix> act;
    for (size_t j = 0; j < q.algebra->dim(); ++j) act.push_back(action_of(m, q.section.row(j)));
    return make_module(q.algebra, act);
}

} // namespace

TEST_CASE("triple construction and degenerate ideals") {
    auto a = make_lt2();
    RightModule reg = regular_module(a);

    // zero ideal: everything is torsion, only 0 is torsion-free or closed
    TTFTriple zero = ttf_from_ideal(a, Subspace(3, 2));
    CHECK(zero.lann == Subspace::full(3, 2));
    ClassMembership cm = class_membership(zero, reg);
    CHECK(cm.in_t);
    CHECK_FALSE(cm.in_c);
    CHECK_FALSE(cm.in_f);

    // unit ideal: nothing nonzero is torsion
    TTFTriple unit = ttf_from_ideal(a, ideal_generated(a, {a->one()}, Sidedness::TwoSided));
    CHECK(unit.ideal.dim() == 3);
    CHECK(unit.lann.dim() == 0);
    cm = class_membership(unit, reg);
    CHECK(cm.in_c);
    CHECK(cm.in_f);
    CHECK_FALSE(cm.in_t);

    // the zero module belongs to all three classes of any triple
    cm = class_membership(unit, zero_module(a));
    CHECK(cm.in_c);
    CHECK(cm.in_t);
    CHECK(cm.in_f);

    // span{e11} is a right but not a left ideal: e21*e11 = e21 escapes
    Subspace e11 = Subspace::span(Matrix::from_rows({a->basis_vec(0)}, 2));
    CHECK(is_right_ideal(*a, e11));
    CHECK_FALSE(is_left_ideal(*a, e11));
    CHECK_THROWS_AS(ttf_from_ideal(a, e11), Error);

    // the radical span{e21} is two-sided but squares to zero
    Subspace rad = Subspace::span(Matrix::from_rows({a->basis_vec(2)}, 2));
    CHECK(is_left_ideal(*a, rad));
    CHECK(is_right_ideal(*a, rad));
    try {
        ttf_from_ideal(a, rad);
        FAIL("expected NotIdempotentIdeal");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotIdempotentIdeal);
    }
}

TEST_CASE("radicals over the triangular 2x2 algebra") {
    auto a = make_lt2();
    RightModule reg = regular_module(a);
    TTFTriple trb = ttf_from_ideal(a, bottom_row(a));
    TTFTriple trc = ttf_from_ideal(a, first_column(a));

    // c(A) = I and t(A) = lann(I); for the bottom row the annihilator is the
    // first column (x*e22 = x*e21 = 0 kills exactly the e22 coefficient)
    CHECK(c_radical(reg, trb) == bottom_row(a));
    CHECK(t_radical(reg, trb) == first_column(a));
    CHECK(trb.lann == first_column(a));
    CHECK(trc.lann.dim() == 0);

    // radical laws: c is idempotent, N/t(N) has no torsion left
    SubmoduleResult cb = submodule_from_subspace(reg, c_radical(reg, trb));
    CHECK(c_radical(cb.module, trb) == Subspace::full(2, 2));
    QuotientResult qt = quotient_module(reg, t_radical(reg, trb));
    CHECK(t_radical(qt.module, trb).dim() == 0);

    // A/I is torsion, I itself is closed
    CHECK(class_membership(trb, quotient_module(reg, bottom_row(a)).module).in_t);
    CHECK(class_membership(trc, submodule_from_subspace(reg, first_column(a)).module).in_c);

    // membership in T for the bottom-row triple is exactly "e22 acts as zero"
    // (e21 = e22*e21 dies with it); checked across all small modules
    for (const RightModule& n : enumerate_modules(a, 2, {.dedup = true}).modules) {
        ClassMembership m = class_membership(trb, n);
        CHECK(m.in_t == is_zero(action_of(n, a->basis_vec(1))));
        // membership mirrors the radicals being everything / nothing
        CHECK(m.in_c == (c_radical(n, trb).dim() == n.dim));
        CHECK(m.in_t == (t_radical(n, trb).dim() == n.dim));
        CHECK(m.in_f == (t_radical(n, trb).dim() == 0));
    }

    // torsion cannot map to torsion-free: A/I is torsion, A is torsion-free
    // for the first-column triple
    RightModule t_mod = quotient_module(reg, first_column(a)).module;
    CHECK(class_membership(trc, t_mod).in_t);
    CHECK(class_membership(trc, reg).in_f);
    CHECK(hom_space(t_mod, reg).empty());
}

TEST_CASE("purity of the ideal as a left ideal") {
    auto a = make_lt2();

    // A*e11 is generated by an idempotent, so A = Ae + A(1-e) splits it off
    CHECK(is_left_pure(a, make_ideal(a, first_column(a))));

    // the bottom row is not pure: a left-linear retraction is x -> x*b0, and
    // e22*b0 = e22 forces b0 = e22, but then e21*b0 = e21*e22 = 0
    CHECK_FALSE(is_left_pure(a, make_ideal(a, bottom_row(a))));

    // degenerate ideals are always pure
    CHECK(is_left_pure(a, make_ideal(a, Subspace(3, 2))));
    CHECK(is_left_pure(a, make_ideal(a, Subspace::full(3, 2))));

    // hereditary torsion pair <=> purity
    CHECK(is_hereditary_torsion(ttf_from_ideal(a, first_column(a))));
    CHECK_FALSE(is_hereditary_torsion(ttf_from_ideal(a, bottom_row(a))));
    CHECK(is_hereditary_torsion(ttf_from_ideal(a, Subspace(3, 2))));
    CHECK(is_hereditary_torsion(ttf_from_ideal(a, Subspace::full(3, 2))));
}

TEST_CASE("hereditary means c restricts to submodules") {
    auto a = make_lt2();
    TTFTriple trb = ttf_from_ideal(a, bottom_row(a));
    TTFTriple trc = ttf_from_ideal(a, first_column(a));

    // pure side: c(N') = N' cap c(N) for every submodule of every small module
    size_t pairs = 0;
    for (const RightModule& n : enumerate_modules(a, 2, {.dedup = true}).modules) {
        Subspace cn = c_radical(n, trc);
        for (const Subspace& s : all_submodules(n)) {
            SubmoduleResult sub = submodule_from_subspace(n, s);
            CHECK(push_forward(c_radical(sub.module, trc), sub.inclusion.m) ==
                  intersection(s, cn));
            ++pairs;
        }
    }
    CHECK(pairs > 10);

    // impure side: the socle of e22*A violates left exactness, since
    // c(e22A) = e22A but the socle's own product with the ideal is zero
    RightModule p2 = submodule_from_subspace(regular_module(a), bottom_row(a)).module;
    CHECK(c_radical(p2, trb) == Subspace::full(2, 2));
    Subspace socle = Subspace::span(Matrix::from_rows({{0, 1}}, 2)); // e21 inside e22A
    SubmoduleResult soc = submodule_from_subspace(p2, socle);
    CHECK(c_radical(soc.module, trb).dim() == 0);
    CHECK(intersection(socle, c_radical(p2, trb)).dim() == 1);
}

TEST_CASE("saturated condition: small exhaustive counts") {
    auto a = make_lt2();
    Ideal col = make_ideal(a, first_column(a));
    Ideal row = make_ideal(a, bottom_row(a));

    // For A = [[k,0],[M,H]] with I = k + M, the saturated submodules of A^n
    // are V + {h : hM inside V} for arbitrary subspaces V of (k+M)^n, so the
    // count is the number of subspaces of F_2^(2n).  LT2 fits the pattern with
    // M = span{e21}, H = span{e22}, I the first column.
    SaturatedVerdict v1 = saturated_condition(a, col, 1);
    CHECK(v1.holds);
    CHECK(v1.exhaustive);
    CHECK(v1.tested == count_subspaces(2, 2, 100)); // 5
    CHECK(v1.tested == 5);
    CHECK_FALSE(v1.witness.has_value());

    SaturatedVerdict v2 = saturated_condition(a, col, 2);
    CHECK(v2.holds);
    CHECK(v2.exhaustive);
    CHECK(v2.tested == count_subspaces(2, 4, 100)); // 67
    CHECK(v2.tested == 67);

    // Bottom row: only the first column and A itself are saturated at n = 1
    // (anything with a zero e22 coefficient annihilates the row, so every
    // saturated K must contain the whole first column).
    SaturatedVerdict vb = saturated_condition(a, row, 1);
    CHECK(vb.holds);
    CHECK(vb.exhaustive);
    CHECK(vb.tested == 2);

    // unit ideal: every submodule is saturated and every quotient dies
    SaturatedVerdict vu = saturated_condition(a, make_ideal(a, Subspace::full(3, 2)), 1);
    CHECK(vu.holds);
    CHECK(vu.tested == 7); // the regular module has exactly 7 submodules

    // a tiny cap forces the sampled path; a true condition stays unrefuted
    SaturatedOptions tiny;
    tiny.vector_cap = 1;
    SaturatedVerdict vg = saturated_condition(a, col, 1, tiny);
    CHECK(vg.holds);
    CHECK_FALSE(vg.exhaustive);
    CHECK_FALSE(vg.witness.has_value());
}

TEST_CASE("right splitting ideal verdicts over the small algebras") {
    auto a = make_lt2();

    RightSplittingVerdict col = is_right_splitting_ideal(a, make_ideal(a, first_column(a)), 2);
    CHECK(col.value);
    CHECK(col.lann_zero);
    CHECK(col.pure);
    CHECK(col.exhaustive);
    CHECK(col.levels.size() == 2);

    // the bottom row fails on both preconditions (its annihilator is the
    // first column, and it is not pure), whatever the levels say
    RightSplittingVerdict row = is_right_splitting_ideal(a, make_ideal(a, bottom_row(a)), 2);
    CHECK_FALSE(row.value);
    CHECK_FALSE(row.lann_zero);
    CHECK_FALSE(row.pure);

    // ground field: the unit ideal splits, the zero ideal has full annihilator
    auto f2 = make_f2();
    RightSplittingVerdict unit = is_right_splitting_ideal(f2, make_ideal(f2, Subspace::full(1, 2)), 2);
    CHECK(unit.value);
    RightSplittingVerdict zero = is_right_splitting_ideal(f2, make_ideal(f2, Subspace(1, 2)), 2);
    CHECK_FALSE(zero.value);
    CHECK_FALSE(zero.lann_zero);
    CHECK(zero.pure);
}

TEST_CASE("split checks module by module") {
    auto a = make_lt2();
    RightModule reg = regular_module(a);
    TTFTriple trb = ttf_from_ideal(a, bottom_row(a));
    TTFTriple trc = ttf_from_ideal(a, first_column(a));

    // t(A) = first column for the bottom-row triple, and it cannot split off:
    // every 1-dimensional submodule of A already lies inside the column
    SplitWitness w = split_check_on_module(trb, reg, SplitSide::right);
    CHECK_FALSE(w.split);
    CHECK(w.radical.module.dim == 2);
    CHECK_FALSE(w.retraction.has_value());

    // same failure for c on the first-column triple: c(A) is that same column
    SplitWitness wc = split_check_on_module(trc, reg, SplitSide::left);
    CHECK_FALSE(wc.split);

    // the bottom-row triple splits on the c side everywhere (I = e22*A with
    // hereditary-injective complement data), and the first-column triple
    // splits on the t side everywhere; verify across all small modules with
    // honest retraction identities
    for (const RightModule& n : enumerate_modules(a, 3, {.dedup = true}).modules) {
        SplitWitness left = split_check_on_module(trb, n, SplitSide::left);
        CHECK(left.split);
        if (left.radical.module.dim > 0) {
            REQUIRE(left.retraction.has_value());
            CHECK(mul(left.radical.inclusion.m, *left.retraction) ==
                  Matrix::identity(left.radical.module.dim, 2));
        }
        SplitWitness right = split_check_on_module(trc, n, SplitSide::right);
        CHECK(right.split);
        if (right.radical.module.dim > 0) {
            REQUIRE(right.retraction.has_value());
            CHECK(mul(right.radical.inclusion.m, *right.retraction) ==
                  Matrix::identity(right.radical.module.dim, 2));
        }
    }

    // torsion modules split trivially: t(N) = N
    RightModule t_mod = quotient_module(reg, bottom_row(a)).module;
    SplitWitness wt = split_check_on_module(trb, t_mod, SplitSide::right);
    CHECK(wt.split);
    CHECK(wt.radical.module.dim == t_mod.dim);

    // the failed split above is an honest extension problem: A/t(A) is the
    // simple at e22 and t(A) is two copies of the simple at e11, with
    // ext^1(S2, S1) = 1 per copy
    RightModule quot = quotient_module(reg, t_radical(reg, trb)).module;
    RightModule sub = submodule_from_subspace(reg, t_radical(reg, trb)).module;
    CHECK(ext1(quot, sub).dim == 2);

    // vanishing ext forces a split, checked as an implication on small modules
    for (const RightModule& n : enumerate_modules(a, 2, {.dedup = true}).modules) {
        Subspace t = t_radical(n, trb);
        if (t.dim() == 0 || t.dim() == n.dim) continue;
        RightModule q = quotient_module(n, t).module;
        RightModule s = submodule_from_subspace(n, t).module;
        if (ext1(q, s).dim == 0)
            CHECK(split_check_on_module(trb, n, SplitSide::right).split);
    }
}

TEST_CASE("summand retractions") {
    auto a = make_lt2();
    RightModule reg = regular_module(a);

    // span{e11} complements the bottom row inside A
    SubmoduleResult e11 = submodule_generated(reg, {a->basis_vec(0)});
    REQUIRE(e11.module.dim == 1);
    auto r = summand_retraction(reg, e11);
    REQUIRE(r.has_value());
    CHECK(mul(e11.inclusion.m, *r) == Matrix::identity(1, 2));

    // the first column is no summand of A
    CHECK_FALSE(summand_retraction(reg, submodule_from_subspace(reg, first_column(a))).has_value());

    // trivial cases: zero submodule and the module itself
    auto rz = summand_retraction(reg, submodule_from_subspace(reg, Subspace(3, 2)));
    REQUIRE(rz.has_value());
    CHECK(rz->rows() == 3);
    CHECK(rz->cols() == 0);
    auto rf = summand_retraction(reg, submodule_from_subspace(reg, Subspace::full(3, 2)));
    REQUIRE(rf.has_value());
    CHECK(mul(submodule_from_subspace(reg, Subspace::full(3, 2)).inclusion.m, *rf) ==
          Matrix::identity(3, 2));
}

TEST_CASE("distinct idempotent ideals induce distinct torsion classes") {
    auto a = make_lt2();
    auto en = enumerate_idempotent_ideals(a);
    REQUIRE(en.ideals.size() == 4);
    std::vector<size_t> dims;
    for (const Ideal& i : en.ideals) dims.push_back(i.dim());
    CHECK(dims == std::vector<size_t>{0, 2, 2, 3});

    auto mods = enumerate_modules(a, 2, {.dedup = true});
    REQUIRE(mods.exhaustive);
    std::set<std::vector<bool>> signatures;
    for (const Ideal& i : en.ideals) {
        TTFTriple tr = ttf_from_ideal(a, i);
        std::vector<bool> sig;
        for (const RightModule& n : mods.modules) sig.push_back(class_membership(tr, n).in_t);
        signatures.insert(sig);
    }
    CHECK(signatures.size() == 4); // the T-class alone separates the ideals
}

TEST_CASE("one-point extension of the Kronecker algebra: level one versus level two") {
    AlgebraPtr h = make_kron();
    AlgebraPtr hop = opposite_algebra(h);

    // simple left H-module at the sink vertex, then its translate: dimension
    // vector (3,2), total 5
    Matrix z(1, 1, 2), o(1, 1, 2);
    o.at(0, 0) = 1;
    RightModule s = make_module(hop, {z, o, z, z});
    RightModule taus = ar_translate(s);
    REQUIRE(taus.dim == 5);
    CHECK_FALSE(is_injective(taus));

    AlgebraPtr a = one_point_extension(h, taus.action, taus.dim);
    REQUIRE(a->dim() == 10);

    // trace ideals of the three primitive idempotents and their sums:
    // 0, Ae0A = 5, AeCA = 6, Ae1A = 8, the three pairwise sums 9, and A
    auto en = enumerate_idempotent_ideals(a);
    REQUIRE(en.ideals.size() == 8);
    std::vector<size_t> dims;
    for (const Ideal& i : en.ideals) dims.push_back(i.dim());
    CHECK(dims == std::vector<size_t>{0, 5, 6, 8, 9, 9, 9, 10});

    Ideal i = ideal_generated(a, {a->basis_vec(0)}, Sidedness::TwoSided);
    REQUIRE(i.dim() == 6); // k + M
    TTFTriple tr = ttf_from_ideal(a, i);
    CHECK(tr.lann.dim() == 0);
    CHECK(is_left_pure(a, i)); // I = A*eC, an idempotent-generated left ideal

    // level 1 holds exhaustively; the saturated submodules are parametrized
    // by the subspaces of k + M (dimension 6 over F_2)
    SaturatedVerdict v1 = saturated_condition(a, i, 1);
    CHECK(v1.holds);
    CHECK(v1.exhaustive);
    CHECK(v1.tested == count_subspaces(2, 6, uint64_t(1) << 20));
    CHECK(v1.tested == 2825);

    // level 2 fails: the guided search finds a saturated K with a
    // non-projective quotient
    SaturatedVerdict v2 = saturated_condition(a, i, 2);
    CHECK_FALSE(v2.holds);
    CHECK_FALSE(v2.exhaustive);
    REQUIRE(v2.witness.has_value());
    CHECK(v2.witness->dim() == 4);

    // independent replay of the witness: invariant, saturated, and the
    // quotient by K + I^2 is a non-projective module over A/I
    RightModule reg = regular_module(a);
    DirectSumResult two = direct_sum({reg, reg});
    const Subspace& k = *v2.witness;
    CHECK_NOTHROW(submodule_from_subspace(two.module, k));
    CHECK(k.contains(saturator(two.module, k, i.span)));
    Matrix lift0 = mul(i.span.basis(), two.injections[0].m);
    Matrix lift1 = mul(i.span.basis(), two.injections[1].m);
    Subspace isq = Subspace::span(vstack(lift0, lift1));
    QuotientAlgebra q = quotient_algebra(a, i.span);
    RightModule bad = over_quotient(q, quotient_module(two.module, sum(k, isq)).module);
    CHECK(bad.dim > 0);
    CHECK_FALSE(is_projective(bad));

    // deterministic: the same options find the same witness
    SaturatedVerdict again = saturated_condition(a, i, 2);
    REQUIRE(again.witness.has_value());
    CHECK(*again.witness == k);

    // and the headline verdicts: splitting at depth 1, refuted at depth 2
    CHECK(is_right_splitting_ideal(a, i, 1).value);
    RightSplittingVerdict full = is_right_splitting_ideal(a, i, 2);
    CHECK_FALSE(full.value);
    CHECK(full.lann_zero);
    CHECK(full.pure);
}

TEST_CASE("one-point extension by the dual regular module splits") {
    AlgebraPtr h = make_kron();

    // D(H) is an injective faithful left H-module, and then no level can fail
    RightModule dh = dual(regular_module(h));
    REQUIRE(dh.dim == 4);
    CHECK(is_injective(dh));

    AlgebraPtr a = one_point_extension(h, dh.action, dh.dim);
    REQUIRE(a->dim() == 9);
    Ideal i = ideal_generated(a, {a->basis_vec(0)}, Sidedness::TwoSided);
    REQUIRE(i.dim() == 5);

    RightSplittingVerdict v = is_right_splitting_ideal(a, i, 2);
    CHECK(v.value);
    CHECK(v.lann_zero);
    CHECK(v.pure);
    REQUIRE(v.levels.size() == 2);
    CHECK(v.levels[0].holds);
    CHECK(v.levels[0].exhaustive);
    CHECK(v.levels[0].tested == count_subspaces(2, 5, 1000)); // 374 subspaces of k + M
    CHECK(v.levels[1].holds);
    CHECK_FALSE(v.levels[1].exhaustive); // 2^18 vectors is past the scan bound
    CHECK_FALSE(v.exhaustive);
}
