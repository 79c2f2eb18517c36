#pragma once
// Split classification of TTF-triples.  Three classifiers implement the exact
// criteria (central generator, hereditary-injective corner, idempotent-dual
// pipeline after corner reduction); a brute-force survey re-checks verdicts
// module by module and hunts for counterexamples, so every report carries an
// independently checkable justification.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ttf/algebra.hpp"
#include "ttf/enumerate.hpp"
#include "ttf/module.hpp"
#include "ttf/torsion.hpp"

namespace ttf {

struct CentralSplitVerdict {
    bool value = false;
    std::optional<std::vector<uint32_t>> witness; // central idempotent e with I = eA
    std::vector<std::string> trace;
};
// true iff I = eA for a central idempotent e
CentralSplitVerdict classify_centrally_split(const TTFTriple& tr);

struct LeftSplitOptions {
    uint64_t idempotent_bound = uint64_t(1) << 20;
    uint64_t lattice_cap = uint64_t(1) << 20;
};

struct LeftSplitVerdict {
    bool value = false;
    std::optional<std::vector<uint32_t>> witness; // idempotent e with I = eA
    bool corner_tested = false; // the hereditary-injectivity test actually ran
    std::vector<std::string> trace;
};
// true iff I = eA for an idempotent e and eA(1-e) is hereditary injective as
// a right module over the corner (1-e)A(1-e)
LeftSplitVerdict classify_left_split(const TTFTriple& tr, const LeftSplitOptions& opt = {});

// Corner reduction: an idempotent eps with t(A_A) = (1-eps)A, from a module
// retraction of the annihilator.  When t(A_A) is not a direct summand of A_A
// the triple cannot be right split and `ok` stays false.
struct EpsilonReduction {
    bool ok = false;
    std::vector<uint32_t> epsilon;
    std::optional<CornerAlgebra> corner;    // eps A eps
    std::optional<TTFTriple> corner_triple; // triple of eps I eps, annihilator zero
    std::vector<std::string> trace;
};
EpsilonReduction epsilon_reduction(const TTFTriple& tr);

struct RightSplitOptions {
    size_t n_max = 2;
    SaturatedOptions saturated;
    uint64_t idempotent_bound = uint64_t(1) << 20;
};

struct RightSplitVerdict {
    bool value = false; // the exact criterion decides
    std::vector<uint32_t> epsilon;
    std::optional<std::vector<uint32_t>> generator; // e with I = Ae in the corner
    bool criterion = false;        // idempotent-dual test: ann generator, hereditary
                                   // quotient, injective bimodule block
    bool splitting_levels = false; // bounded-depth splitting-ideal crosscheck
    bool levels_exhaustive = false;
    bool paths_agree = false;      // no contradiction between the two paths
    std::vector<std::string> trace;
};
RightSplitVerdict classify_right_split(const TTFTriple& tr, const RightSplitOptions& opt = {});

// Blocks of the lower-triangular 3x3 form [[C,0,0],[M,H,0],[0,N,B']] of a
// right-split triple over the full algebra: I = C + M is the first column,
// t(A) = N + B' is the bottom strip, and the corner eps A eps spans the C, M
// and H blocks.  `adapted` rows are a basis of A ordered block by block.
struct RightSplitDecomposition {
    CornerAlgebra reduction; // eps A eps inside A
    Matrix adapted;
    size_t dim_c = 0, dim_m = 0, dim_h = 0, dim_n = 0, dim_bp = 0;
    AlgebraPtr c_algebra, h_algebra, bp_algebra;
    Bimodule m_bimodule;      // (H, C)
    Bimodule n_bimodule;      // (B', H)
    bool m_faithful = false;  // ann_H(M) = 0
    bool m_injective = false; // M injective as a left H-module
};
// throws NotRightSplit when classify_right_split is false
RightSplitDecomposition right_split_decomposition(const TTFTriple& tr,
                                                  const RightSplitOptions& opt = {});

struct OracleOptions {
    EnumOptions enumeration; // dedup is forced on
    bool guided = true;      // extension-guided counterexample search
    uint64_t lattice_cap = 60000;
};

struct OracleCounterexample {
    RightModule module;
    std::string origin;
};

struct OracleSurvey {
    size_t d_max = 0;
    uint64_t tested = 0;     // modules run through the split checks
    bool exhaustive = false; // the enumeration covered every class up to d_max
    std::optional<OracleCounterexample> left;  // c(N) not a direct summand
    std::optional<OracleCounterexample> right; // t(N) not a direct summand
    bool c_subset_f = true;  // every tested module in C was also in F
};
// Runs split_check_on_module over all modules of dimension <= d_max (plus
// guided candidates: submodules and quotients of the regular module, and
// nonsplit extensions pairing the torsion simples against torsion-free or
// closed partners).  Counterexamples are recorded with their origin; `pre`
// may supply an already-computed enumeration for the same algebra and d_max.
OracleSurvey oracle_split_survey(const TTFTriple& tr, size_t d_max, const OracleOptions& opt = {},
                                 const ModuleEnumeration* pre = nullptr);

struct IdealVerdicts {
    Ideal ideal;
    bool triple_ok = false;
    std::string error; // set when classification threw; the rest is defaulted
    CentralSplitVerdict central;
    LeftSplitVerdict left;
    RightSplitVerdict right;
    OracleSurvey oracle;
    bool agreement = false; // central = left and right, no counterexample against
                            // a true verdict
};

struct ReportOptions {
    size_t d_max = 3;
    size_t n_max = 2;
    LeftSplitOptions left;
    RightSplitOptions right; // n_max here is overridden by the field above
    OracleOptions oracle;
    size_t jobs = 1; // per-ideal tasks run on this many threads; results are
                     // assembled in enumeration order either way
};

struct ClassificationReport {
    std::string algebra_name;
    uint32_t p = 2;
    size_t dim = 0;
    size_t d_max = 3, n_max = 2;
    bool ideals_exhaustive = false;
    bool jans_distinct = false; // distinct ideals induce distinct T-membership
                                // signatures on the surveyed modules
    std::vector<IdealVerdicts> ideals;
};
// One verdict block per idempotent ideal, in enumeration order; failures are
// isolated per ideal and recorded in `error`.
ClassificationReport full_report(const AlgebraPtr& a, const ReportOptions& opt = {});

// injective envelope via duality: D of the projective cover of D(m).  The
// result lives over an algebra structurally equal to m's parent.
RightModule injective_envelope(const RightModule& m);

// A module E fitting in a nonsplit extension 0 -> bottom -> E -> top -> 0,
// built as a pushout along a cocycle that does not extend to the cover;
// nullopt when ext1(top, bottom) = 0.
std::optional<RightModule> nonsplit_extension(const RightModule& top, const RightModule& bottom);

} // namespace ttf
