#pragma once

#include <functional>

#include "ttf/linalg.hpp"

namespace ttf {

// Subspace of F_p^n, held as a canonical RREF basis (rows span, no zero rows).
// Structural equality of canonical bases decides subspace equality.
class Subspace {
  public:
    Subspace() = default;
    explicit Subspace(size_t ambient, uint32_t p) : ambient_(ambient), basis_(0, ambient, p) {}

    // Rows of `gens` span the space; basis is canonicalized on construction.
    static Subspace span(const Matrix& gens);
    static Subspace full(size_t ambient, uint32_t p);

    size_t ambient() const { return ambient_; }
    uint32_t modulus() const { return basis_.modulus(); }
    size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<size_t>& pivots() const { return pivots_; }

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    bool operator<(const Subspace& o) const; // canonical order for dedup/sorting

    // Residue of v after reduction against the basis; zero iff v is a member.
    std::vector<uint32_t> reduce(const std::vector<uint32_t>& v) const;
    bool contains(const std::vector<uint32_t>& v) const;
    bool contains(const Subspace& other) const;

    // Coordinates of a member vector in the basis rows; throws if not a member.
    std::vector<uint32_t> coordinates(const std::vector<uint32_t>& v) const;

  private:
    size_t ambient_ = 0;
    Matrix basis_;
    std::vector<size_t> pivots_;
};

Subspace sum(const Subspace& u, const Subspace& v);
Subspace intersection(const Subspace& u, const Subspace& v);

// Ambient coordinates not used as pivots: a complement of the subspace as
// coordinate positions (used to build quotient bases).
std::vector<size_t> complement_coordinates(const Subspace& u);

// Number of subspaces of F_p^n (sum of Gaussian binomial coefficients);
// saturates at `cap` to keep the preflight cheap.
uint64_t count_subspaces(uint32_t p, size_t n, uint64_t cap);

// Visit every subspace of F_p^n in a deterministic order.  Stops early if the
// visitor returns false.  Throws LatticeTooLarge if the count exceeds `cap`.
void for_each_subspace(uint32_t p, size_t n, uint64_t cap,
                       const std::function<bool(const Subspace&)>& visit);

} // namespace ttf
