#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ttf/error.hpp"
#include "ttf/matrix.hpp"
#include "ttf/subspace.hpp"

namespace ttf {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// Finite-dimensional associative unital F_p-algebra given by structure constants.
// Elements are row vectors of coefficients over the fixed basis; the table entry
// c(i,j,k) is the e_k coefficient of e_i * e_j.  Immutable after construction.
class Algebra {
  public:
    // Validates everything: p prime, table shape, associativity, two-sided unit.
    // `distinguished` is an optional orthogonal idempotent family recorded by the
    // structured constructors (quiver vertices, triangular blocks).
    Algebra(uint32_t p, size_t dim, std::vector<uint32_t> table, std::vector<uint32_t> unit,
            std::vector<std::string> labels = {}, std::string name = "",
            std::vector<std::vector<uint32_t>> distinguished = {});

    uint32_t modulus() const { return p_; }
    size_t dim() const { return n_; }
    const std::string& name() const { return name_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<uint32_t>& one() const { return one_; }
    uint32_t structure(size_t i, size_t j, size_t k) const { return table_[(i * n_ + j) * n_ + k]; }

    std::vector<uint32_t> zero_vec() const { return std::vector<uint32_t>(n_, 0); }
    std::vector<uint32_t> basis_vec(size_t i) const;

    // x*y in coefficients
    std::vector<uint32_t> mul(const std::vector<uint32_t>& x, const std::vector<uint32_t>& y) const;
    std::vector<uint32_t> power(const std::vector<uint32_t>& x, uint64_t k) const;

    // matrix of v -> v*x on row vectors (right multiplication); homomorphic in x
    Matrix rmat(const std::vector<uint32_t>& x) const;
    // matrix of v -> x*v on row vectors (left multiplication); anti-homomorphic in x
    Matrix lmat(const std::vector<uint32_t>& x) const;
    const Matrix& basis_rmat(size_t i) const { return rmats_[i]; }
    const Matrix& basis_lmat(size_t i) const { return lmats_[i]; }

    bool is_idempotent(const std::vector<uint32_t>& x) const;
    bool is_central(const std::vector<uint32_t>& x) const;

    // Orthogonal idempotent family recorded at construction time (may be empty).
    const std::vector<std::vector<uint32_t>>& distinguished_idempotents() const { return distinguished_; }

  private:
    uint32_t p_;
    size_t n_;
    std::vector<uint32_t> table_; // n^3, index (i*n + j)*n + k
    std::vector<uint32_t> one_;
    std::vector<std::string> labels_;
    std::string name_;
    std::vector<std::vector<uint32_t>> distinguished_;
    std::vector<Matrix> rmats_, lmats_;

    mutable std::mutex cache_mu_;
    mutable std::optional<Subspace> rad_cache_;
    mutable std::optional<std::vector<std::vector<uint32_t>>> prim_cache_;

    friend Subspace radical(const AlgebraPtr&);
    friend std::vector<std::vector<uint32_t>> primitive_orthogonal_idempotents(const AlgebraPtr&);
};

// Element of an algebra: parent + coefficient vector.
struct Element {
    AlgebraPtr parent;
    std::vector<uint32_t> coeffs;
};

Element operator*(const Element& x, const Element& y);
Element operator+(const Element& x, const Element& y);
Element operator-(const Element& x, const Element& y);
bool operator==(const Element& x, const Element& y);

enum class Sidedness { Left, Right, TwoSided };

// Subspace of the algebra together with the multiplicative closure flags.
struct Ideal {
    AlgebraPtr parent;
    Subspace span;
    bool left = false;
    bool right = false;
    bool idempotent = false;
    bool two_sided() const { return left && right; }
    size_t dim() const { return span.dim(); }
};

AlgebraPtr algebra_from_table(uint32_t p, size_t dim, const std::vector<uint32_t>& table,
                              const std::vector<uint32_t>& unit,
                              std::vector<std::string> labels = {}, std::string name = "");

AlgebraPtr opposite_algebra(const AlgebraPtr& a);

struct CornerAlgebra {
    AlgebraPtr parent;             // A
    AlgebraPtr algebra;            // eAe with unit e
    std::vector<uint32_t> e;       // the idempotent, in A coordinates
    Matrix inclusion;              // corner dim x dim A; rows are the corner basis inside A
};
CornerAlgebra corner_algebra(const AlgebraPtr& a, const std::vector<uint32_t>& e);
// coordinates of e*x*e in the corner basis
std::vector<uint32_t> corner_coords(const CornerAlgebra& c, const std::vector<uint32_t>& x);
// image of a two-sided ideal under x -> exe, as a subspace of the corner
Subspace restrict_ideal_to_corner(const CornerAlgebra& c, const Subspace& ideal);

struct QuotientAlgebra {
    AlgebraPtr algebra;            // A/I
    Subspace ideal;                // the I that was factored out
    Matrix projection;             // dim A x dim Q, a |-> a+I
    Matrix section;                // dim Q x dim A, coset representatives
};
QuotientAlgebra quotient_algebra(const AlgebraPtr& a, const Subspace& ideal);

// (B,C)-bimodule: left action of B, right action of C, on row vectors.
// Right action matrices extend to an algebra map of C, left ones to an
// anti-map of B (function composition order under the row convention).
struct Bimodule {
    AlgebraPtr left_algebra;          // B
    AlgebraPtr right_algebra;         // C
    size_t dim = 0;
    std::vector<Matrix> left_rho;     // one per basis element of B: m -> b*m
    std::vector<Matrix> right_rho;    // one per basis element of C: m -> m*c
};
void validate_bimodule(const Bimodule& m); // throws ActionIncompatible

// Lower-triangular matrix algebra [[C, 0], [M, B]] for a (B,C)-bimodule M.
// Basis order: C block, M block, B block.  Records e_C and e_B.
AlgebraPtr triangular_algebra(const AlgebraPtr& c, const AlgebraPtr& b, const Bimodule& m);

Ideal make_ideal(const AlgebraPtr& a, const Subspace& span);
bool is_left_ideal(const Algebra& a, const Subspace& s);
bool is_right_ideal(const Algebra& a, const Subspace& s);
// span of all products u*v, u in s, v in t
Subspace subspace_product(const Algebra& a, const Subspace& s, const Subspace& t);

Ideal ideal_generated(const AlgebraPtr& a, const std::vector<std::vector<uint32_t>>& gens,
                      Sidedness side);

struct IdempotentEnumeration {
    std::vector<std::vector<uint32_t>> idempotents;
    bool exhaustive = true;
};
// Exhaustive scan when p^dim <= bound; otherwise falls back to subset sums of the
// distinguished family (enough to reach every trace ideal AeA; see enumerate_idempotent_ideals).
IdempotentEnumeration enumerate_idempotents(const AlgebraPtr& a, uint64_t bound = uint64_t(1) << 20);

// All idempotents lying in the centre (found inside the centre subspace, so exact
// regardless of dim A as long as the centre itself is small).
std::vector<std::vector<uint32_t>> central_idempotents(const AlgebraPtr& a,
                                                       uint64_t bound = uint64_t(1) << 20);

Subspace center(const Algebra& a);

struct IdealEnumOptions {
    uint64_t idempotent_bound = uint64_t(1) << 20;
    uint64_t lattice_cap = 1000000; // skip the exhaustive cross-check beyond this many subspaces
    bool crosscheck = true;
};
struct IdempotentIdealEnumeration {
    std::vector<Ideal> ideals;         // sorted by (dim, basis)
    bool idempotents_exhaustive = true;
    bool lattice_crosschecked = false;
};
IdempotentIdealEnumeration enumerate_idempotent_ideals(const AlgebraPtr& a,
                                                       const IdealEnumOptions& opts = {});

Subspace left_annihilator(const Algebra& a, const Subspace& s);
Subspace right_annihilator(const Algebra& a, const Subspace& s);
// (lann_A(I), rann_A(I)) with sidedness flags recomputed
std::pair<Ideal, Ideal> annihilators(const AlgebraPtr& a, const Ideal& i);

// Action of A on F_p^d: one matrix per algebra basis element (right action on
// row vectors).  The low-level representation shared by radical() and modrep.
struct Action {
    uint32_t p = 2;
    size_t dim = 0;
    std::vector<Matrix> rho;
};
Action regular_action(const Algebra& a);      // rho[i] = basis_rmat(i), A as right A-module
Action left_regular_action(const Algebra& a); // rho[i] = basis_lmat(i), A as right A^op-module
// matrix of the action of x (coefficients over A's basis)
Matrix action_of(const Action& m, const std::vector<uint32_t>& x);
void validate_action(const Algebra& a, const Action& m); // multiplicativity + unit
// composition factors by repeated splitting along cyclic submodules
std::vector<Action> action_composition_factors(const Algebra& a, const Action& m,
                                               uint64_t scan_bound = uint64_t(1) << 20);
// {x in A : m.rho(x) = 0}
Subspace action_annihilator(const Algebra& a, const Action& m);
Action subaction(const Algebra& a, const Action& m, const Subspace& s);
Action quotient_action(const Algebra& a, const Action& m, const Subspace& s);

// Jacobson radical: annihilator of the composition factors of the regular module,
// verified nilpotent with semisimple quotient.  Cached per algebra.
Subspace radical(const AlgebraPtr& a);
bool is_semisimple(const AlgebraPtr& a);

// true iff rad(A) is projective as a right A-module; defined in module.cpp
bool is_hereditary(const AlgebraPtr& a);
// complete orthogonal family lifted from A/rad; defined in module.cpp, cached
std::vector<std::vector<uint32_t>> primitive_orthogonal_idempotents(const AlgebraPtr& a);

} // namespace ttf
