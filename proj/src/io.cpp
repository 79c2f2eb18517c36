#include "ttf/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ttf/error.hpp"
#include "ttf/quiver.hpp"

namespace ttf {

using json = nlohmann::ordered_json;

namespace {

uint64_t require_uint(const json& j, const char* what) {
    if (!j.is_number_unsigned())
        throw Error(ErrorKind::ParseError, std::string(what) + ": expected a nonnegative integer");
    return j.get<uint64_t>();
}

// scalars may be written unreduced; bring them into [0, p)
uint32_t reduced(const json& j, uint32_t p, const char* what) {
    if (!j.is_number_integer())
        throw Error(ErrorKind::ParseError, std::string(what) + ": expected an integer");
    int64_t v = j.get<int64_t>() % int64_t(p);
    if (v < 0) v += p;
    return uint32_t(v);
}

std::vector<uint32_t> reduced_vector(const json& j, size_t len, uint32_t p, const char* what) {
    if (!j.is_array() || j.size() != len)
        throw Error(ErrorKind::ParseError,
                    std::string(what) + ": expected an array of " + std::to_string(len) + " integers");
    std::vector<uint32_t> out(len);
    for (size_t i = 0; i < len; ++i) out[i] = reduced(j[i], p, what);
    return out;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (size_t j = 0; j < m.cols(); ++j) r.push_back(m.at(i, j));
        rows.push_back(std::move(r));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, size_t rows, size_t cols, uint32_t p, const char* what) {
    if (!j.is_array() || j.size() != rows)
        throw Error(ErrorKind::ParseError,
                    std::string(what) + ": expected " + std::to_string(rows) + " rows");
    Matrix m(rows, cols, p);
    for (size_t i = 0; i < rows; ++i) {
        std::vector<uint32_t> r = reduced_vector(j[i], cols, p, what);
        for (size_t k = 0; k < cols; ++k) m.at(i, k) = r[k];
    }
    return m;
}

AlgebraPtr algebra_from_quiver_json(const json& root, uint32_t p) {
    const json& qj = root.at("quiver");
    Quiver q;
    q.vertices = require_uint(qj.at("vertices"), "quiver.vertices");
    if (qj.contains("arrows")) {
        for (const json& aj : qj.at("arrows")) {
            if (!aj.is_array() || aj.size() != 3 || !aj[2].is_string())
                throw Error(ErrorKind::ParseError, "quiver.arrows: expected [source, target, label]");
            Arrow ar;
            ar.source = require_uint(aj[0], "arrow source");
            ar.target = require_uint(aj[1], "arrow target");
            ar.label = aj[2].get<std::string>();
            if (ar.source >= q.vertices || ar.target >= q.vertices)
                throw Error(ErrorKind::ParseError, "quiver.arrows: vertex out of range");
            q.arrows.push_back(std::move(ar));
        }
    }
    if (qj.contains("relations")) {
        for (const json& rj : qj.at("relations")) {
            Relation rel;
            if (!rj.is_array())
                throw Error(ErrorKind::ParseError, "quiver.relations: expected arrays of terms");
            for (const json& tj : rj) {
                PathTerm term;
                term.coeff = reduced(tj.at("coeff"), p, "relation coeff");
                for (const json& lab : tj.at("path")) {
                    if (!lab.is_string())
                        throw Error(ErrorKind::ParseError, "relation path: expected arrow labels");
                    term.path.push_back(lab.get<std::string>());
                }
                rel.push_back(std::move(term));
            }
            q.relations.push_back(std::move(rel));
        }
    }
    return path_algebra(q, p);
}

json parse(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw Error(ErrorKind::ParseError, std::string(what) + ": malformed JSON");
    return j;
}

} // namespace

std::string algebra_to_json(const Algebra& a, int indent) {
    json j;
    if (!a.name().empty()) j["name"] = a.name();
    j["field"] = a.modulus();
    j["dim"] = a.dim();
    json basis = json::array();
    for (size_t i = 0; i < a.dim(); ++i)
        basis.push_back(a.labels().empty() ? "e" + std::to_string(i) : a.labels()[i]);
    j["basis"] = std::move(basis);
    j["unit"] = a.one();
    json table = json::array();
    for (size_t i = 0; i < a.dim(); ++i) {
        json row = json::array();
        for (size_t k = 0; k < a.dim(); ++k) {
            json cell = json::array();
            for (size_t l = 0; l < a.dim(); ++l) cell.push_back(a.structure(i, k, l));
            row.push_back(std::move(cell));
        }
        table.push_back(std::move(row));
    }
    j["table"] = std::move(table);
    return j.dump(indent) + "\n";
}

AlgebraPtr algebra_from_json(const std::string& text) {
    json j = parse(text, "algebra");
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "algebra: expected a JSON object");
    if (!j.contains("field")) throw Error(ErrorKind::ParseError, "algebra: missing \"field\"");
    uint64_t p64 = require_uint(j.at("field"), "field");
    if (p64 < 2 || p64 > 0x7fffffffu)
        throw Error(ErrorKind::ParseError, "field: modulus out of range");
    uint32_t p = uint32_t(p64);

    if (j.contains("quiver")) return algebra_from_quiver_json(j, p);

    if (!j.contains("dim") || !j.contains("table") || !j.contains("unit"))
        throw Error(ErrorKind::ParseError, "algebra: need \"dim\", \"unit\" and \"table\"");
    size_t n = require_uint(j.at("dim"), "dim");
    std::vector<std::string> labels;
    if (j.contains("basis")) {
        const json& bj = j.at("basis");
        if (!bj.is_array() || bj.size() != n)
            throw Error(ErrorKind::ParseError, "basis: expected one label per basis element");
        for (const json& lab : bj) {
            if (!lab.is_string()) throw Error(ErrorKind::ParseError, "basis: labels must be strings");
            labels.push_back(lab.get<std::string>());
        }
    }
    std::vector<uint32_t> unit = reduced_vector(j.at("unit"), n, p, "unit");
    const json& tj = j.at("table");
    if (!tj.is_array() || tj.size() != n)
        throw Error(ErrorKind::ParseError, "table: expected dim x dim x dim constants");
    std::vector<uint32_t> table(n * n * n, 0);
    for (size_t i = 0; i < n; ++i) {
        if (!tj[i].is_array() || tj[i].size() != n)
            throw Error(ErrorKind::ParseError, "table: expected dim x dim x dim constants");
        for (size_t k = 0; k < n; ++k) {
            std::vector<uint32_t> cell = reduced_vector(tj[i][k], n, p, "table entry");
            for (size_t l = 0; l < n; ++l) table[(i * n + k) * n + l] = cell[l];
        }
    }
    std::string name = j.contains("name") ? j.at("name").get<std::string>() : "";
    return algebra_from_table(p, n, table, unit, labels, name);
}

AlgebraPtr load_algebra_file(const std::string& path) {
    return algebra_from_json(read_text_file(path));
}

void save_algebra_file(const Algebra& a, const std::string& path) {
    write_text_file(path, algebra_to_json(a));
}

std::string module_to_json(const RightModule& m, int indent) {
    json j;
    j["algebra"] = json::parse(algebra_to_json(*m.parent, -1));
    j["dim"] = m.dim;
    json act = json::array();
    for (const Matrix& rho : m.action) act.push_back(matrix_to_json(rho));
    j["action"] = std::move(act);
    return j.dump(indent) + "\n";
}

RightModule module_from_json(const std::string& text, const AlgebraPtr& fallback) {
    json j = parse(text, "module");
    if (!j.is_object() || !j.contains("algebra") || !j.contains("dim") || !j.contains("action"))
        throw Error(ErrorKind::ParseError, "module: need \"algebra\", \"dim\" and \"action\"");
    AlgebraPtr a;
    const json& aj = j.at("algebra");
    if (aj.is_string()) {
        if (!fallback || fallback->name() != aj.get<std::string>())
            throw Error(ErrorKind::ParseError,
                        "module: algebra \"" + aj.get<std::string>() + "\" not supplied");
        a = fallback;
    } else {
        a = algebra_from_json(aj.dump());
    }
    size_t d = require_uint(j.at("dim"), "module dim");
    const json& act = j.at("action");
    if (!act.is_array() || act.size() != a->dim())
        throw Error(ErrorKind::ParseError, "module: one action matrix per algebra basis element");
    std::vector<Matrix> rho;
    for (const json& mj : act) rho.push_back(matrix_from_json(mj, d, d, a->modulus(), "action"));
    return make_module(a, std::move(rho));
}

namespace {

json counterexample_to_json(const OracleCounterexample& c, const char* side) {
    json j;
    j["side"] = side;
    j["origin"] = c.origin;
    j["dim"] = c.module.dim;
    json act = json::array();
    for (const Matrix& rho : c.module.action) act.push_back(matrix_to_json(rho));
    j["action"] = std::move(act);
    return j;
}

json ideal_to_json(const IdealVerdicts& iv) {
    json j;
    j["ideal_basis"] = matrix_to_json(iv.ideal.span.basis());
    j["dim"] = iv.ideal.dim();
    j["error"] = iv.error;
    json verdicts;
    verdicts["central"] = iv.central.value;
    verdicts["left"] = iv.left.value;
    verdicts["right"] = iv.right.value;
    j["verdicts"] = std::move(verdicts);
    json trace;
    trace["central"] = iv.central.trace;
    trace["left"] = iv.left.trace;
    trace["right"] = iv.right.trace;
    j["criterion_trace"] = std::move(trace);
    json oracle;
    oracle["d_max"] = iv.oracle.d_max;
    oracle["tested"] = iv.oracle.tested;
    oracle["exhaustive"] = iv.oracle.exhaustive;
    oracle["c_subset_f"] = iv.oracle.c_subset_f;
    if (iv.oracle.left)
        oracle["counterexample"] = counterexample_to_json(*iv.oracle.left, "left");
    else if (iv.oracle.right)
        oracle["counterexample"] = counterexample_to_json(*iv.oracle.right, "right");
    j["oracle"] = std::move(oracle);
    j["agreement"] = iv.agreement;
    return j;
}

} // namespace

std::string report_to_json(const ClassificationReport& r, int indent) {
    json j;
    json alg;
    alg["name"] = r.algebra_name;
    alg["field"] = r.p;
    alg["dim"] = r.dim;
    j["algebra"] = std::move(alg);
    j["d_max"] = r.d_max;
    j["n_max"] = r.n_max;
    j["ideals_exhaustive"] = r.ideals_exhaustive;
    j["jans_distinct"] = r.jans_distinct;
    bool all = true;
    for (const IdealVerdicts& iv : r.ideals) all = all && iv.agreement;
    j["agreement"] = all;
    json ideals = json::array();
    for (const IdealVerdicts& iv : r.ideals) ideals.push_back(ideal_to_json(iv));
    j["ideals"] = std::move(ideals);
    return j.dump(indent) + "\n";
}

namespace {

std::string basis_row_string(const std::vector<uint32_t>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

const char* yn(bool b) { return b ? "yes" : "no"; }

} // namespace

std::string report_to_text(const ClassificationReport& r) {
    std::ostringstream out;
    out << "algebra " << (r.algebra_name.empty() ? "(unnamed)" : r.algebra_name) << " over F_"
        << r.p << ", dim " << r.dim << "\n";
    out << "idempotent ideals: " << r.ideals.size()
        << (r.ideals_exhaustive ? " (exhaustive)" : " (not certified exhaustive)")
        << ", distinct T-signatures: " << yn(r.jans_distinct) << "\n";
    out << "oracle: all right modules of dim <= " << r.d_max << " plus guided candidates, n_max = "
        << r.n_max << "\n\n";
    for (size_t i = 0; i < r.ideals.size(); ++i) {
        const IdealVerdicts& iv = r.ideals[i];
        out << "ideal " << i << ": dim " << iv.ideal.dim();
        if (iv.ideal.dim() > 0) {
            out << ", basis";
            for (size_t k = 0; k < iv.ideal.span.dim(); ++k)
                out << " " << basis_row_string(iv.ideal.span.basis().row(k));
        }
        out << "\n";
        if (!iv.error.empty()) {
            out << "  error: " << iv.error << "\n";
            continue;
        }
        out << "  centrally split: " << yn(iv.central.value) << "   left split: "
            << yn(iv.left.value) << "   right split: " << yn(iv.right.value) << "\n";
        out << "  oracle: tested " << iv.oracle.tested << " modules"
            << (iv.oracle.exhaustive ? " (exhaustive to d_max)" : " (sampled)");
        if (iv.oracle.left)
            out << ", c(N) not a summand at dim " << iv.oracle.left->module.dim << " ["
                << iv.oracle.left->origin << "]";
        if (iv.oracle.right)
            out << ", t(N) not a summand at dim " << iv.oracle.right->module.dim << " ["
                << iv.oracle.right->origin << "]";
        out << "\n";
        out << "  agreement: " << yn(iv.agreement) << "\n";
        for (const std::string& line : iv.central.trace) out << "    [central] " << line << "\n";
        for (const std::string& line : iv.left.trace) out << "    [left] " << line << "\n";
        for (const std::string& line : iv.right.trace) out << "    [right] " << line << "\n";
    }
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
    out << text;
    if (!out.good()) throw Error(ErrorKind::ParseError, "write failed: " + path);
}

} // namespace ttf
