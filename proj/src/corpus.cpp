#include "ttf/corpus.hpp"

#include <cstdlib>
#include <random>

#include "ttf/error.hpp"
#include "ttf/io.hpp"
#include "ttf/module.hpp"
#include "ttf/quiver.hpp"

#ifndef TTFLAB_DATA_DIR
#define TTFLAB_DATA_DIR "data/corpus"
#endif

namespace ttf {

namespace {

struct EntrySpec {
    const char* name;
    const char* file;
    size_t d_max;
    size_t n_max;
    uint64_t assignment_cap;
    uint64_t sample_count;
};

// KRONEXT's right-side witness lives at dim 7; everything else resolves at the
// default depth
constexpr uint64_t kCap = uint64_t(1) << 22;
constexpr EntrySpec kEntries[] = {
    {"F2", "f2.json", 3, 2, kCap, 512},
    {"SS2", "ss2.json", 3, 2, kCap, 512},
    {"M2F2", "m2f2.json", 3, 2, kCap, 512},
    {"DUAL", "dual.json", 3, 2, kCap, 512},
    {"LT2", "lt2.json", 3, 2, kCap, 512},
    {"KRON", "kron.json", 3, 2, kCap, 512},
    {"KRONEXT", "kronext.json", 7, 2, uint64_t(1) << 10, 16},
    {"TRI2", "tri2.json", 3, 2, kCap, 512},
    {"TRI3", "tri3.json", 3, 2, kCap, 512},
};

// pinned draws for the two random entries: seed 2 gives a 5-dimensional
// algebra over F_2 with 8 idempotent ideals, seed 1 over F_3 a 7-dimensional
// one whose lattice includes triples that split on neither side
constexpr uint64_t kTri2Seed = 2;
constexpr uint64_t kTri3Seed = 1;

AlgebraPtr make_f2() {
    return algebra_from_table(2, 1, {1}, {1}, {"1"}, "F2");
}

AlgebraPtr make_ss2() {
    std::vector<uint32_t> t(8, 0);
    t[0] = 1; // u*u = u
    t[7] = 1; // v*v = v
    return algebra_from_table(2, 2, t, {1, 1}, {"u", "v"}, "SS2");
}

AlgebraPtr make_m2f2() {
    // basis E11, E12, E21, E22 with E_ab * E_cd = delta_bc E_ad
    std::vector<uint32_t> t(64, 0);
    auto at = [&](size_t i, size_t j, size_t k) -> uint32_t& { return t[(i * 4 + j) * 4 + k]; };
    at(0, 0, 0) = 1; at(0, 1, 1) = 1;
    at(1, 2, 0) = 1; at(1, 3, 1) = 1;
    at(2, 0, 2) = 1; at(2, 1, 3) = 1;
    at(3, 2, 2) = 1; at(3, 3, 3) = 1;
    return algebra_from_table(2, 4, t, {1, 0, 0, 1}, {"E11", "E12", "E21", "E22"}, "M2F2");
}

AlgebraPtr make_dual() {
    // F2[x]/(x^2), basis 1, x
    std::vector<uint32_t> t(8, 0);
    auto at = [&](size_t i, size_t j, size_t k) -> uint32_t& { return t[(i * 2 + j) * 2 + k]; };
    at(0, 0, 0) = 1; at(0, 1, 1) = 1; at(1, 0, 1) = 1;
    return algebra_from_table(2, 2, t, {1, 0}, {"1", "x"}, "DUAL");
}

AlgebraPtr make_lt2() {
    // lower triangular 2x2 matrices, basis e11, e22, e21
    std::vector<uint32_t> t(27, 0);
    auto at = [&](size_t i, size_t j, size_t k) -> uint32_t& { return t[(i * 3 + j) * 3 + k]; };
    at(0, 0, 0) = 1; at(1, 1, 1) = 1; at(1, 2, 2) = 1; at(2, 0, 2) = 1;
    return algebra_from_table(2, 3, t, {1, 1, 0}, {"e11", "e22", "e21"}, "LT2");
}

AlgebraPtr make_kron() {
    Quiver q;
    q.vertices = 2;
    q.arrows = {{0, 1, "a"}, {0, 1, "b"}};
    return rename_algebra(path_algebra(q, 2), "KRON");
}

AlgebraPtr make_kronext() {
    AlgebraPtr h = make_kron();
    Matrix z(1, 1, 2), o(1, 1, 2);
    o.at(0, 0) = 1;
    // the sink simple as a left H-module, i.e. over H^op
    RightModule s = make_module(opposite_algebra(h), {z, o, z, z});
    RightModule taus = ar_translate(s);
    return rename_algebra(one_point_extension(h, taus.action, taus.dim), "KRONEXT");
}

} // namespace

AlgebraPtr rename_algebra(const AlgebraPtr& a, const std::string& name) {
    size_t n = a->dim();
    std::vector<uint32_t> t(n * n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) t[(i * n + j) * n + k] = a->structure(i, j, k);
    return std::make_shared<Algebra>(a->modulus(), n, std::move(t), a->one(), a->labels(), name,
                                     a->distinguished_idempotents());
}

AlgebraPtr one_point_extension(const AlgebraPtr& h, const std::vector<Matrix>& left_action,
                               size_t mdim) {
    AlgebraPtr c = algebra_from_table(h->modulus(), 1, {1}, {1}, {"1"}, "k");
    Bimodule m;
    m.left_algebra = h;
    m.right_algebra = c;
    m.dim = mdim;
    m.left_rho = left_action;
    m.right_rho = {Matrix::identity(mdim, h->modulus())};
    validate_bimodule(m);
    return triangular_algebra(c, h, m);
}

AlgebraPtr seeded_triangular(uint64_t seed, uint32_t p, size_t dim_cap) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + p);
    for (int attempt = 0; attempt < 256; ++attempt) {
        Quiver q;
        q.vertices = 2 + size_t(rng() % 2);
        size_t arrow_id = 0;
        for (size_t i = 0; i < q.vertices; ++i)
            for (size_t j = i + 1; j < q.vertices; ++j) {
                size_t count = rng() % 3;
                for (size_t k = 0; k < count; ++k) {
                    Arrow ar;
                    ar.source = i;
                    ar.target = j;
                    ar.label = "a" + std::to_string(arrow_id++);
                    q.arrows.push_back(std::move(ar));
                }
            }
        if (q.arrows.empty()) continue;

        // length-2 composites; only 0 -> 1 -> 2 exists on three vertices
        std::vector<std::vector<std::string>> composites;
        for (const Arrow& x : q.arrows)
            for (const Arrow& y : q.arrows)
                if (x.target == y.source) composites.push_back({x.label, y.label});
        for (size_t i = 0; i < composites.size(); ++i)
            for (size_t j = i + 1; j < composites.size(); ++j)
                if (rng() % 2 == 0)
                    q.relations.push_back({{1, composites[i]}, {p - 1, composites[j]}});
        for (const std::vector<std::string>& c : composites)
            if (rng() % 4 == 0) q.relations.push_back({{1, c}});

        AlgebraPtr a;
        try {
            a = path_algebra(q, p);
        } catch (const Error&) {
            continue; // a relation made the presentation degenerate; redraw
        }
        if (a->dim() >= 2 && a->dim() <= dim_cap) return a;
    }
    throw Error(ErrorKind::Internal, "seeded_triangular: no draw fit the dimension cap");
}

std::vector<CorpusEntry> builtin_corpus() {
    std::vector<CorpusEntry> out;
    for (const EntrySpec& spec : kEntries) {
        CorpusEntry e;
        e.name = spec.name;
        e.d_max = spec.d_max;
        e.n_max = spec.n_max;
        e.assignment_cap = spec.assignment_cap;
        e.sample_count = spec.sample_count;
        std::string n = spec.name;
        if (n == "F2") e.algebra = make_f2();
        else if (n == "SS2") e.algebra = make_ss2();
        else if (n == "M2F2") e.algebra = make_m2f2();
        else if (n == "DUAL") e.algebra = make_dual();
        else if (n == "LT2") e.algebra = make_lt2();
        else if (n == "KRON") e.algebra = make_kron();
        else if (n == "KRONEXT") e.algebra = make_kronext();
        else if (n == "TRI2") e.algebra = rename_algebra(seeded_triangular(kTri2Seed, 2, 8), "TRI2");
        else if (n == "TRI3") e.algebra = rename_algebra(seeded_triangular(kTri3Seed, 3, 8), "TRI3");
        out.push_back(std::move(e));
    }
    return out;
}

std::string corpus_dir() {
    if (const char* env = std::getenv("TTFLAB_CORPUS_DIR"); env && *env) return env;
    return TTFLAB_DATA_DIR;
}

std::vector<CorpusEntry> load_corpus() {
    std::vector<CorpusEntry> out;
    std::string dir = corpus_dir();
    for (const EntrySpec& spec : kEntries) {
        CorpusEntry e;
        e.name = spec.name;
        e.d_max = spec.d_max;
        e.n_max = spec.n_max;
        e.assignment_cap = spec.assignment_cap;
        e.sample_count = spec.sample_count;
        e.algebra = load_algebra_file(dir + "/" + spec.file);
        out.push_back(std::move(e));
    }
    return out;
}

const CorpusEntry* find_entry(const std::vector<CorpusEntry>& corpus, const std::string& name) {
    for (const CorpusEntry& e : corpus)
        if (e.name == name) return &e;
    return nullptr;
}

} // namespace ttf
