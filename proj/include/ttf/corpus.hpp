#pragma once
// The built-in example algebras.  Every test and demo draws its fixtures from
// here (or from the committed JSON mirrors under data/corpus) instead of
// constructing them ad hoc.  Entries carry the oracle depth that resolves
// their verdicts; KRONEXT needs d_max = 7 for the expected witness.

#include <cstdint>
#include <string>
#include <vector>

#include "ttf/algebra.hpp"

namespace ttf {

struct CorpusEntry {
    std::string name;
    AlgebraPtr algebra;
    size_t d_max = 3;
    size_t n_max = 2;
    // oracle enumeration caps; KRONEXT turns them down so the dim <= 7 sweep
    // stays at survey scale (the guided search still lands on the witness)
    uint64_t assignment_cap = uint64_t(1) << 22;
    uint64_t sample_count = 512;
};

// F2, SS2 (= F2 x F2), M2F2 (2x2 matrices), DUAL (= F2[x]/(x^2)), LT2, KRON,
// KRONEXT and two seeded triangular algebras TRI2, TRI3; constructed in code
std::vector<CorpusEntry> builtin_corpus();

// $TTFLAB_CORPUS_DIR when set, else the committed data/corpus directory
std::string corpus_dir();

// the same entries read back from the JSON files in corpus_dir()
std::vector<CorpusEntry> load_corpus();

const CorpusEntry* find_entry(const std::vector<CorpusEntry>& corpus, const std::string& name);

// same structure constants under a fresh display name
AlgebraPtr rename_algebra(const AlgebraPtr& a, const std::string& name);

// Deterministic small algebra from a seed: the path algebra of a random
// acyclic quiver on 2 or 3 vertices, sometimes with homogeneous relations
// between (or killing) length-2 composites.  Retries derived draws until the
// dimension lands in [2, dim_cap].
AlgebraPtr seeded_triangular(uint64_t seed, uint32_t p, size_t dim_cap = 6);

// [[k, 0], [M, H]]: scalars extended by a left H-module, M given by its
// action matrices over H (row convention, one per basis element of H)
AlgebraPtr one_point_extension(const AlgebraPtr& h, const std::vector<Matrix>& left_action,
                               size_t mdim);

} // namespace ttf
