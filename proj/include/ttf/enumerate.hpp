#pragma once
// Enumeration of right modules of bounded dimension, used as the oracle
// substrate for the split-classification survey.
//
// A complete orthogonal family of primitive idempotents f_1..f_k splits any
// module as M = M.f_1 + ... + M.f_k, so up to isomorphism we may assume each
// rho(f_i) is a fixed diagonal 0/1 block.  The remaining generators live in
// the Peirce pieces f_i A f_j and act by a single free block each; we run an
// odometer over those blocks and keep the assignments satisfying the
// multiplication law.  Exhaustive within each dimension vector unless the
// assignment count exceeds the cap, in which case that vector is sampled
// from a seeded generator and the result is flagged.

#include <cstdint>
#include <vector>

#include "ttf/algebra.hpp"
#include "ttf/module.hpp"

namespace ttf {

struct EnumOptions {
    bool dedup = false;               // keep one representative per iso class
    uint64_t assignment_cap = uint64_t(1) << 22; // per dimension vector
    uint64_t sample_count = 512;      // draws per capped dimension vector
    uint64_t seed = 1;                // generator seed for the fallback
};

struct ModuleEnumeration {
    std::vector<RightModule> modules; // deterministic order
    bool exhaustive = true;           // false once any dimension vector was sampled
    uint64_t inspected = 0;           // raw assignments examined
};

// All right A-modules of dimension 1..dmax.  When `exhaustive` is true the
// list covers every isomorphism class in that range (possibly with repeats
// unless opt.dedup is set).
ModuleEnumeration enumerate_modules(const AlgebraPtr& a, size_t dmax,
                                    const EnumOptions& opt = {});

} // namespace ttf
