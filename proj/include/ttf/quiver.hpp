#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ttf/algebra.hpp"

namespace ttf {

struct Arrow {
    size_t source = 0;
    size_t target = 0;
    std::string label;
};

// one summand of a relation: coeff * (composition of arrows, left to right)
struct PathTerm {
    uint32_t coeff = 1;
    std::vector<std::string> path; // arrow labels
};
using Relation = std::vector<PathTerm>;

struct Quiver {
    size_t vertices = 0;
    std::vector<Arrow> arrows;
    std::vector<Relation> relations;
};

// Path algebra kQ modulo the relation ideal.  Paths compose left to right
// (p*q means p first), so right modules are representations with one map
// M_source -> M_target per arrow.  Relations must be homogeneous in length;
// the length grading then makes saturation exact: once a graded component
// dies, everything longer is gone.  Basis elements are residue classes of
// paths; vertex classes come first and are recorded as the distinguished
// idempotent family.
AlgebraPtr path_algebra(const Quiver& q, uint32_t p, size_t length_bound = 64,
                        uint64_t path_cap = uint64_t(1) << 20);

} // namespace ttf
