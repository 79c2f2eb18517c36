#pragma once

#include <cstdint>
#include <vector>

#include "ttf/algebra.hpp"
#include "ttf/matrix.hpp"
#include "ttf/subspace.hpp"

namespace ttf {

// Right A-module as an explicit representation: one d x d matrix per algebra
// basis element, acting on row vectors from the right.
struct RightModule {
    AlgebraPtr parent;
    size_t dim = 0;
    std::vector<Matrix> action;
};

// validates the module law rho(x)rho(y) = rho(xy), rho(1) = id
RightModule make_module(const AlgebraPtr& a, std::vector<Matrix> action);
RightModule zero_module(const AlgebraPtr& a);
RightModule regular_module(const AlgebraPtr& a);
void validate_module(const RightModule& m);
Matrix action_of(const RightModule& m, const std::vector<uint32_t>& x);

// map of right modules: v |-> v*m on row vectors, intertwining the actions
struct ModuleMap {
    RightModule source;
    RightModule target;
    Matrix m;
};
void validate_map(const ModuleMap& f);
ModuleMap compose(const ModuleMap& f, const ModuleMap& g); // apply f, then g

// smallest invariant subspace containing the generators
Subspace invariant_closure(const RightModule& m, const std::vector<std::vector<uint32_t>>& gens);

struct SubmoduleResult {
    RightModule module;
    ModuleMap inclusion;
};
// s must be invariant under all of m.action (NotInvariant otherwise)
SubmoduleResult submodule_from_subspace(const RightModule& m, const Subspace& s);
SubmoduleResult submodule_generated(const RightModule& m,
                                    const std::vector<std::vector<uint32_t>>& gens);

struct QuotientResult {
    RightModule module;
    ModuleMap projection;
};
QuotientResult quotient_module(const RightModule& m, const Subspace& s);

struct DirectSumResult {
    RightModule module;
    std::vector<ModuleMap> injections;
    std::vector<ModuleMap> projections;
};
DirectSumResult direct_sum(const std::vector<RightModule>& parts);

// basis of the intertwiner space Hom_A(M, N)
std::vector<Matrix> hom_space(const RightModule& m, const RightModule& n);

// searches Hom(M, N) for an invertible element; scans p^dim(Hom) combinations,
// BoundExceeded past `bound`
bool is_isomorphic(const RightModule& m, const RightModule& n, uint64_t bound = uint64_t(1) << 20);

// simple right modules up to isomorphism, from the central decomposition of
// A/rad(A); each one is verified simple by an exhaustive cyclic-generation scan
std::vector<RightModule> simple_modules(const AlgebraPtr& a);

struct CoverResult {
    RightModule cover;
    ModuleMap onto;
};
// projective cover P -> M: P is a sum of e*A for primitive idempotents e,
// matching top(M); the kernel lies inside P*rad(A)
CoverResult projective_cover(const RightModule& m);

struct Ext1Result {
    size_t dim = 0;
    std::vector<Matrix> cocycles; // representatives in Hom(ker cover, N)
};
// Ext^1_A(M, N) via a projective presentation: coker(Hom(P0,N) -> Hom(K,N))
Ext1Result ext1(const RightModule& m, const RightModule& n);

bool is_projective(const RightModule& m); // the cover surjection splits
// Ext^1(S, M) = 0 for every simple S; equivalent to injectivity over an
// artinian algebra (Baer plus induction on composition length)
bool is_injective(const RightModule& m);

// every submodule, via joins of cyclic submodules; SubmoduleLatticeTooLarge
// when the vector scan or the lattice itself exceeds `cap`
std::vector<Subspace> all_submodules(const RightModule& m, uint64_t cap = uint64_t(1) << 20);

// every quotient M/K is injective (single-copy test; the reduction from
// arbitrary direct sums of copies is exercised by sigma_crosscheck)
bool is_hereditary_injective(const RightModule& m, uint64_t cap = uint64_t(1) << 20);
// checks quotients of M^n for all n <= n_max; must agree with the single-copy test
bool sigma_crosscheck(const RightModule& m, size_t n_max, uint64_t cap = uint64_t(1) << 20);

// D = Hom_k(-, k): right A-module -> right A^op-module, action transposed
RightModule dual(const RightModule& m);
// Tr from a minimal projective presentation, as a right A^op-module
RightModule transpose(const RightModule& m);
// tau = D(Tr M), brought back over A itself; tau(projective) = 0
RightModule ar_translate(const RightModule& m);
// tau^{-1} = Tr(D M), over A itself
RightModule ar_translate_inverse(const RightModule& m);

// N |-> N*e as a module over the corner eAe
RightModule restrict_to_corner(const RightModule& n, const CornerAlgebra& c);

} // namespace ttf
