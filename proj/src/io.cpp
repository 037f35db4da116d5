#include "relcalc/io.hpp"

#include <fstream>
#include <sstream>

#include "relcalc/errors.hpp"

namespace relcalc::io {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
    throw ParseError(field + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& field) {
    if (!j.is_object()) bad(field, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) bad(field, std::string("missing \"") + key + "\"");
    return *it;
}

std::size_t count_from_json(const Json& j, const std::string& field) {
    if (!j.is_number_unsigned()) bad(field, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

}  // namespace

Json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j, const std::string& field) {
    if (!j.is_string()) bad(field, "expected a rational string such as \"-3/4\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
        bad(field, e.what());
    }
}

Json vector_to_json(const Vector& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(rational_to_json(x));
    return out;
}

Vector vector_from_json(const Json& j, const std::string& field, std::size_t expected_size) {
    if (!j.is_array()) bad(field, "expected an array");
    if (j.size() != expected_size) {
        bad(field, "expected " + std::to_string(expected_size) + " entries, got " + std::to_string(j.size()));
    }
    Vector v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational_from_json(j[i], field + "[" + std::to_string(i) + "]"));
    return v;
}

Json matrix_to_json(const RatMatrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i)));
    return out;
}

RatMatrix matrix_from_json(const Json& j, const std::string& field) {
    if (!j.is_array()) bad(field, "expected an array of rows");
    if (j.empty()) return {};
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    RatMatrix m(j.size(), cols);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const Vector row = vector_from_json(j[i], field + "[" + std::to_string(i) + "]", cols);
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = row[k];
    }
    return m;
}

Json space_to_json(const InnerProductSpace& h) {
    Json out;
    out["dim"] = h.dim();
    if (!h.has_identity_gram()) out["gram"] = matrix_to_json(h.gram());
    return out;
}

InnerProductSpace space_from_json(const Json& j, const std::string& field) {
    const std::size_t n = count_from_json(member(j, "dim", field), field + ".dim");
    const auto it = j.find("gram");
    if (it == j.end()) return InnerProductSpace(n);
    RatMatrix g = matrix_from_json(*it, field + ".gram");
    if (g.rows() != n || g.cols() != n) bad(field + ".gram", "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    try {
        return InnerProductSpace(std::move(g));
    } catch (const PreconditionError& e) {
        bad(field + ".gram", e.what());
    }
}

Json subspace_to_json(const Subspace& w) {
    Json basis = Json::array();
    for (const auto& v : w.vectors()) basis.push_back(vector_to_json(v));
    Json out;
    out["dim"] = w.dim();
    out["basis"] = std::move(basis);
    return out;
}

Json relation_to_json(const LinearRelation& t) {
    Json basis = Json::array();
    for (const auto& v : t.graph().vectors()) basis.push_back(vector_to_json(v));
    Json out;
    out["from"] = space_to_json(t.from());
    out["to"] = space_to_json(t.to());
    out["graph_basis"] = std::move(basis);
    return out;
}

LinearRelation relation_from_json(const Json& j) {
    const InnerProductSpace from = space_from_json(member(j, "from", "relation"), "from");
    const InnerProductSpace to = space_from_json(member(j, "to", "relation"), "to");
    const Json& basis = member(j, "graph_basis", "relation");
    if (!basis.is_array()) bad("graph_basis", "expected an array of vectors");
    const std::size_t n = from.dim() + to.dim();
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < basis.size(); ++i)
        cols.push_back(vector_from_json(basis[i], "graph_basis[" + std::to_string(i) + "]", n));
    return LinearRelation(from, to, RatMatrix::from_columns(n, cols));
}

Json repmap_to_json(const RepresentingMap& q) {
    Json basis = Json::array();
    for (const auto& v : q.domain.vectors()) basis.push_back(vector_to_json(v));
    Json out;
    out["c"] = rational_to_json(q.c);
    out["space"] = space_to_json(q.domain.ambient());
    out["domain_basis"] = std::move(basis);
    out["matrix"] = matrix_to_json(q.matrix);
    out["codomain_gram"] = matrix_to_json(q.codomain.gram());
    return out;
}

RepresentingMap repmap_from_json(const Json& j) {
    RepresentingMap q;
    q.c = rational_from_json(member(j, "c", "repmap"), "c");
    const InnerProductSpace h = space_from_json(member(j, "space", "repmap"), "space");
    const Json& basis = member(j, "domain_basis", "repmap");
    if (!basis.is_array()) bad("domain_basis", "expected an array of vectors");
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < basis.size(); ++i)
        cols.push_back(vector_from_json(basis[i], "domain_basis[" + std::to_string(i) + "]", h.dim()));
    q.domain = Subspace(h, RatMatrix::from_columns(h.dim(), cols));
    if (q.domain.dim() != cols.size()) bad("domain_basis", "vectors are linearly dependent");
    if (!(q.domain.basis() == RatMatrix::from_columns(h.dim(), cols))) bad("domain_basis", "basis is not canonical");
    RatMatrix g = matrix_from_json(member(j, "codomain_gram", "repmap"), "codomain_gram");
    try {
        q.codomain = g.rows() == 0 ? InnerProductSpace(0) : InnerProductSpace(std::move(g));
    } catch (const PreconditionError& e) {
        bad("codomain_gram", e.what());
    }
    q.matrix = matrix_from_json(member(j, "matrix", "repmap"), "matrix");
    if (q.matrix.rows() == 0) q.matrix = RatMatrix(q.codomain.dim(), q.domain.dim());
    if (q.matrix.rows() != q.codomain.dim() || q.matrix.cols() != q.domain.dim()) {
        bad("matrix", "expected " + std::to_string(q.codomain.dim()) + "x" + std::to_string(q.domain.dim()));
    }
    return q;
}

Json witness_to_json(const Witness& w) {
    Json vectors = Json::array();
    for (const auto& [label, v] : w.vectors) vectors.push_back(Json{{"label", label}, {"vector", vector_to_json(v)}});
    Json relations = Json::array();
    for (const auto& [label, r] : w.relations)
        relations.push_back(Json{{"label", label}, {"relation", relation_to_json(r)}});
    Json out;
    out["detail"] = w.detail;
    out["vectors"] = std::move(vectors);
    out["relations"] = std::move(relations);
    return out;
}

Json check_to_json(const CheckResult& r) {
    Json out;
    out["name"] = r.name;
    out["passed"] = r.passed;
    if (r.witness) out["witness"] = witness_to_json(*r.witness);
    return out;
}

Json instance_to_json(const InstanceReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(check_to_json(c));
    Json out;
    out["instance"] = r.index;
    out["seed"] = r.spec.seed;
    out["dim"] = r.spec.dim;
    out["c"] = rational_to_json(r.c);
    out["relation"] = relation_to_json(r.s);
    out["checks"] = std::move(checks);
    return out;
}

Json suite_to_json(const SuiteReport& r) {
    Json out = Json::array();
    for (const auto& i : r.instances) out.push_back(instance_to_json(i));
    return out;
}

Json parse(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source + ": " + e.what());
    }
}

Json read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(path + ": cannot write file");
    out << dump(j);
}

}  // namespace relcalc::io
