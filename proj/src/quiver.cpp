#include "ttf/quiver.hpp"

#include <map>
#include <sstream>

#include "ttf/error.hpp"
#include "ttf/fp.hpp"
#include "ttf/subspace.hpp"

namespace ttf {

namespace {

// arrow-index sequence plus cached endpoints
struct Path {
    std::vector<size_t> arrows;
    size_t source = 0;
    size_t target = 0;
};

// all composable paths of one length, with the relation-ideal component
struct Layer {
    std::vector<Path> paths;
    std::map<std::vector<size_t>, size_t> index;
    Subspace ideal;
    std::vector<size_t> reps; // surviving positions, in coordinate order
};

struct ParsedRelation {
    size_t length = 0;
    // coefficient per path, as arrow index sequences
    std::vector<std::pair<std::vector<size_t>, uint32_t>> terms;
};

[[noreturn]] void bad_quiver(const std::string& what) {
    throw Error(ErrorKind::ParseError, "path_algebra: " + what);
}

} // namespace

AlgebraPtr path_algebra(const Quiver& q, uint32_t p, size_t length_bound, uint64_t path_cap) {
    fp::require_prime(p);
    for (const Arrow& a : q.arrows) {
        if (a.source >= q.vertices || a.target >= q.vertices)
            bad_quiver("arrow '" + a.label + "' references a missing vertex");
        if (a.label.empty()) bad_quiver("arrows need nonempty labels");
    }
    std::map<std::string, size_t> by_label;
    for (size_t i = 0; i < q.arrows.size(); ++i)
        if (!by_label.emplace(q.arrows[i].label, i).second)
            bad_quiver("duplicate arrow label '" + q.arrows[i].label + "'");

    // Parse relations into arrow-index form.  Each combination must be
    // composable, share endpoints, and be homogeneous in length, which keeps
    // the relation ideal graded and the saturation test exact.
    std::map<size_t, std::vector<ParsedRelation>> relations_by_length;
    for (const Relation& rel : q.relations) {
        ParsedRelation parsed;
        bool have_shape = false;
        size_t rel_source = 0, rel_target = 0;
        for (const PathTerm& term : rel) {
            if (term.path.empty()) bad_quiver("relation terms must have length >= 1");
            std::vector<size_t> seq;
            seq.reserve(term.path.size());
            for (const std::string& lbl : term.path) {
                auto it = by_label.find(lbl);
                if (it == by_label.end()) bad_quiver("unknown arrow label '" + lbl + "'");
                seq.push_back(it->second);
            }
            for (size_t i = 0; i + 1 < seq.size(); ++i)
                if (q.arrows[seq[i]].target != q.arrows[seq[i + 1]].source)
                    bad_quiver("relation path is not composable at '" + term.path[i] + "'");
            size_t src = q.arrows[seq.front()].source;
            size_t tgt = q.arrows[seq.back()].target;
            if (!have_shape) {
                have_shape = true;
                parsed.length = seq.size();
                rel_source = src;
                rel_target = tgt;
            } else {
                if (seq.size() != parsed.length)
                    bad_quiver("relation mixes path lengths (must be homogeneous)");
                if (src != rel_source || tgt != rel_target)
                    bad_quiver("relation mixes source/target vertices");
            }
            uint32_t c = term.coeff % p;
            if (c != 0) parsed.terms.push_back({std::move(seq), c});
        }
        if (!parsed.terms.empty()) relations_by_length[parsed.length].push_back(std::move(parsed));
    }

    // Grow layers until a graded component dies (finite) or the bound trips.
    std::vector<Layer> layers; // layers[L-1] holds length L
    bool saturated = q.arrows.empty();
    for (size_t len = 1; !saturated; ++len) {
        if (len > length_bound)
            throw Error(ErrorKind::InfiniteDimensional,
                        "path_algebra: no saturation up to length " + std::to_string(length_bound));
        Layer layer;
        if (len == 1) {
            for (size_t i = 0; i < q.arrows.size(); ++i)
                layer.paths.push_back({{i}, q.arrows[i].source, q.arrows[i].target});
        } else {
            const Layer& prev = layers[len - 2];
            for (const Path& pp : prev.paths)
                for (size_t i = 0; i < q.arrows.size(); ++i) {
                    if (q.arrows[i].source != pp.target) continue;
                    Path ext = pp;
                    ext.arrows.push_back(i);
                    ext.target = q.arrows[i].target;
                    layer.paths.push_back(std::move(ext));
                }
        }
        if (layer.paths.empty()) break;
        if (layer.paths.size() > path_cap)
            throw Error(ErrorKind::BoundExceeded, "path_algebra: path count exceeds cap at length " +
                                                      std::to_string(len));
        for (size_t i = 0; i < layer.paths.size(); ++i) layer.index.emplace(layer.paths[i].arrows, i);

        Matrix gens(0, layer.paths.size(), p);
        auto it = relations_by_length.find(len);
        if (it != relations_by_length.end())
            for (const ParsedRelation& rel : it->second) {
                std::vector<uint32_t> row(layer.paths.size(), 0);
                for (const auto& [seq, c] : rel.terms)
                    row[layer.index.at(seq)] = fp::add(row[layer.index.at(seq)], c, p);
                gens = vstack(gens, Matrix::from_rows({row}, p));
            }
        if (len >= 2) {
            // extend the previous ideal component on both sides by one arrow
            const Layer& prev = layers[len - 2];
            const Matrix& prev_basis = prev.ideal.basis();
            for (size_t r = 0; r < prev_basis.rows(); ++r)
                for (size_t i = 0; i < q.arrows.size(); ++i) {
                    std::vector<uint32_t> left(layer.paths.size(), 0), right(layer.paths.size(), 0);
                    bool any_left = false, any_right = false;
                    for (size_t j = 0; j < prev_basis.cols(); ++j) {
                        uint32_t c = prev_basis.at(r, j);
                        if (c == 0) continue;
                        const Path& pj = prev.paths[j];
                        if (q.arrows[i].target == pj.source) {
                            std::vector<size_t> seq;
                            seq.push_back(i);
                            seq.insert(seq.end(), pj.arrows.begin(), pj.arrows.end());
                            size_t pos = layer.index.at(seq);
                            left[pos] = fp::add(left[pos], c, p);
                            any_left = true;
                        }
                        if (q.arrows[i].source == pj.target) {
                            std::vector<size_t> seq = pj.arrows;
                            seq.push_back(i);
                            size_t pos = layer.index.at(seq);
                            right[pos] = fp::add(right[pos], c, p);
                            any_right = true;
                        }
                    }
                    if (any_left) gens = vstack(gens, Matrix::from_rows({left}, p));
                    if (any_right) gens = vstack(gens, Matrix::from_rows({right}, p));
                }
        }
        layer.ideal = Subspace::span(gens);
        layer.reps = complement_coordinates(layer.ideal);
        if (layer.reps.empty()) break;
        layers.push_back(std::move(layer));
    }

    // Global class index: vertices first, then surviving paths by length.
    size_t dim = q.vertices;
    std::vector<size_t> offset(layers.size(), 0);
    for (size_t l = 0; l < layers.size(); ++l) {
        offset[l] = dim;
        dim += layers[l].reps.size();
    }

    std::vector<std::string> labels(dim);
    for (size_t v = 0; v < q.vertices; ++v) labels[v] = "e" + std::to_string(v);
    for (size_t l = 0; l < layers.size(); ++l)
        for (size_t r = 0; r < layers[l].reps.size(); ++r) {
            std::string s;
            for (size_t ai : layers[l].paths[layers[l].reps[r]].arrows) s += q.arrows[ai].label;
            labels[offset[l] + r] = s;
        }

    // class endpoints, shared by vertices and surviving paths
    std::vector<size_t> csrc(dim), ctgt(dim), clen(dim, 0);
    for (size_t v = 0; v < q.vertices; ++v) csrc[v] = ctgt[v] = v;
    for (size_t l = 0; l < layers.size(); ++l)
        for (size_t r = 0; r < layers[l].reps.size(); ++r) {
            const Path& pp = layers[l].paths[layers[l].reps[r]];
            csrc[offset[l] + r] = pp.source;
            ctgt[offset[l] + r] = pp.target;
            clen[offset[l] + r] = l + 1;
        }
    auto path_of = [&](size_t cls) -> const std::vector<size_t>& {
        static const std::vector<size_t> empty;
        if (cls < q.vertices) return empty;
        size_t l = clen[cls] - 1;
        return layers[l].paths[layers[l].reps[cls - offset[l]]].arrows;
    };

    // multiply two residue classes: concatenate, then reduce in the graded
    // component (zero once past the last surviving layer)
    std::vector<uint32_t> table(dim * dim * dim, 0);
    auto tab = [&](size_t i, size_t j, size_t k) -> uint32_t& {
        return table[(i * dim + j) * dim + k];
    };
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j) {
            if (ctgt[i] != csrc[j]) continue;
            size_t len = clen[i] + clen[j];
            if (len == 0) { // e_v * e_v
                tab(i, j, i) = 1;
                continue;
            }
            if (len > layers.size()) continue;
            std::vector<size_t> seq = path_of(i);
            const std::vector<size_t>& tail = path_of(j);
            seq.insert(seq.end(), tail.begin(), tail.end());
            const Layer& layer = layers[len - 1];
            std::vector<uint32_t> v(layer.paths.size(), 0);
            v[layer.index.at(seq)] = 1;
            std::vector<uint32_t> red = layer.ideal.reduce(v);
            for (size_t r = 0; r < layer.reps.size(); ++r)
                tab(i, j, offset[len - 1] + r) = red[layer.reps[r]];
        }

    std::vector<uint32_t> unit(dim, 0);
    for (size_t v = 0; v < q.vertices; ++v) unit[v] = 1;

    std::ostringstream name;
    name << "kQ(v=" << q.vertices << ",a=" << q.arrows.size();
    if (!q.relations.empty()) name << ",rel=" << q.relations.size();
    name << ")";

    std::vector<std::vector<uint32_t>> dist;
    for (size_t v = 0; v < q.vertices; ++v) {
        std::vector<uint32_t> ev(dim, 0);
        ev[v] = 1;
        dist.push_back(std::move(ev));
    }
    return std::make_shared<Algebra>(p, dim, std::move(table), std::move(unit), std::move(labels),
                                     name.str(), std::move(dist));
}

} // namespace ttf
