#pragma once

// JSON documents of schema "abelcp/1": field presentations, crossed-product
// fixtures, composites and self-contained witness files.

#include <cstddef>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "abelcp/crossed_product.hpp"
#include "abelcp/error.hpp"
#include "abelcp/field.hpp"
#include "abelcp/scalar.hpp"

namespace abelcp::io {

using json = nlohmann::json;

inline constexpr const char* kSchema = "abelcp/1";

inline json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Io, "'" + path + "' is not valid JSON: " + e.what());
    }
}

inline void write_json(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::Io, "cannot write '" + path + "'");
    out << doc.dump(2) << '\n';
}

inline const json& field_of(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(ErrorKind::MalformedInput, std::string("missing key '") + key + "'");
    return j.at(key);
}

inline void check_schema(const json& doc, const std::string& kind) {
    if (!doc.is_object() || doc.value("schema", "") != kSchema)
        fail(ErrorKind::MalformedInput, std::string("expected schema '") + kSchema + "'");
    if (doc.value("kind", "") != kind) fail(ErrorKind::MalformedInput, "expected document kind '" + kind + "'");
}

inline Scalar scalar_from(const json& j) {
    if (j.is_string()) return parse_scalar(j.get<std::string>());
    if (j.is_number_integer()) return Scalar(j.get<long>());
    fail(ErrorKind::MalformedInput, "scalar must be a \"p/q\" string or an integer");
}

inline json scalar_to(const Scalar& q) { return to_string(q); }

inline Vector vector_from(const json& j) {
    if (!j.is_array()) fail(ErrorKind::MalformedInput, "expected an array of scalars");
    Vector v;
    v.reserve(j.size());
    for (const auto& x : j) v.push_back(scalar_from(x));
    return v;
}

inline json vector_to(const Vector& v) {
    json out = json::array();
    for (const auto& q : v) out.push_back(scalar_to(q));
    return out;
}

/// Rows of scalars; `Matrix(row, col)`.
inline Matrix matrix_from(const json& j) {
    if (!j.is_array() || j.empty()) fail(ErrorKind::MalformedInput, "expected a nonempty matrix");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Vector row = vector_from(j[i]);
        if (row.size() != cols) fail(ErrorKind::MalformedInput, "ragged matrix");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = row[k];
    }
    return m;
}

inline json matrix_to(const Matrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(scalar_to(m(i, k)));
        out.push_back(std::move(row));
    }
    return out;
}

inline std::vector<Scalar> structure_from(const json& j, std::size_t n) {
    std::vector<Scalar> out;
    out.reserve(n * n * n);
    if (!j.is_array() || j.size() != n) fail(ErrorKind::MalformedInput, "structure constants must be n x n x n");
    for (const auto& a : j) {
        if (!a.is_array() || a.size() != n) fail(ErrorKind::MalformedInput, "structure constants must be n x n x n");
        for (const auto& b : a) {
            const Vector v = vector_from(b);
            if (v.size() != n) fail(ErrorKind::MalformedInput, "structure constants must be n x n x n");
            out.insert(out.end(), v.begin(), v.end());
        }
    }
    return out;
}

inline json structure_to(const std::vector<Scalar>& s, std::size_t n) {
    json out = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        json a = json::array();
        for (std::size_t j = 0; j < n; ++j) {
            json b = json::array();
            for (std::size_t k = 0; k < n; ++k) b.push_back(scalar_to(s[(i * n + j) * n + k]));
            a.push_back(std::move(b));
        }
        out.push_back(std::move(a));
    }
    return out;
}

inline std::shared_ptr<const GaloisExtension> field_from(const json& j) {
    try {
        std::vector<int> orders = field_of(j, "orders").get<std::vector<int>>();
        const auto base_degree = j.value("base_degree", std::size_t{1});
        std::vector<std::string> labels = j.value("basis", std::vector<std::string>{});
        Vector unit = vector_from(field_of(j, "unit"));
        auto structure = structure_from(field_of(j, "structure_constants"), unit.size());
        std::vector<Matrix> sigma;
        for (const auto& m : field_of(j, "sigma")) sigma.push_back(matrix_from(m));
        return std::make_shared<const GaloisExtension>(std::move(orders), base_degree, std::move(labels),
                                                       std::move(structure), std::move(unit), std::move(sigma));
    } catch (const json::exception& e) {
        fail(ErrorKind::MalformedInput, std::string("field presentation: ") + e.what());
    }
}

inline json field_to(const GaloisExtension& K) {
    json sigma = json::array();
    for (const auto& m : K.generators()) sigma.push_back(matrix_to(m));
    return json{{"orders", K.group().orders()},       {"base_degree", K.base_degree()},
                {"basis", K.labels()},                 {"structure_constants", structure_to(K.structure_constants(), K.dim())},
                {"unit", vector_to(K.one().coords)},   {"sigma", std::move(sigma)}};
}

inline FieldElement element_from(const GaloisExtension& K, const json& j) { return K.element(vector_from(j)); }
inline json element_to(const FieldElement& x) { return vector_to(x.coords); }

inline GroupExponent exponent_from(const json& j) {
    if (!j.is_array()) fail(ErrorKind::MalformedInput, "exponent must be an array of integers");
    try {
        return GroupExponent(j.get<std::vector<int>>());
    } catch (const json::exception& e) {
        fail(ErrorKind::MalformedInput, std::string("exponent: ") + e.what());
    }
}

inline CocycleData cocycle_from(const GaloisExtension& K, const json& j) {
    CocycleData d;
    for (const auto& row : field_of(j, "u")) {
        std::vector<FieldElement> r;
        for (const auto& e : row) r.push_back(element_from(K, e));
        d.u.push_back(std::move(r));
    }
    for (const auto& e : field_of(j, "b")) d.b.push_back(element_from(K, e));
    return d;
}

inline json cocycle_to(const CocycleData& d) {
    json u = json::array();
    for (const auto& row : d.u) {
        json r = json::array();
        for (const auto& e : row) r.push_back(element_to(e));
        u.push_back(std::move(r));
    }
    json b = json::array();
    for (const auto& e : d.b) b.push_back(element_to(e));
    return json{{"u", std::move(u)}, {"b", std::move(b)}};
}

inline StrongDegeneracyWitness witness_from(const GaloisExtension& K, const json& j) {
    StrongDegeneracyWitness W;
    W.m = exponent_from(field_of(j, "m"));
    W.l = element_from(K, field_of(j, "l"));
    for (const auto& x : field_of(j, "x")) W.x.push_back(element_from(K, x));
    return W;
}

inline json witness_to(const StrongDegeneracyWitness& W) {
    json x = json::array();
    for (const auto& e : W.x) x.push_back(element_to(e));
    return json{{"m", W.m.m}, {"l", element_to(W.l)}, {"x", std::move(x)}};
}

/// Homogeneous element data (alpha_0, m, w) as stored in fixtures.
struct HomogeneousData {
    FieldElement alpha;
    GroupExponent m;
    std::vector<long> w;
};

struct GradedPair {
    HomogeneousData h1, h2;
};

/// A crossed-product fixture, with its field, cocycle, stored witnesses and graded pairs.
struct Fixture {
    std::string name;
    std::shared_ptr<const GaloisExtension> field;
    CocycleData cocycle;
    std::vector<StrongDegeneracyWitness> witnesses;
    std::vector<GradedPair> pairs;
    json doc;
};

inline HomogeneousData homogeneous_from(const GaloisExtension& K, const json& j) {
    HomogeneousData h;
    h.alpha = element_from(K, field_of(j, "a"));
    h.m = exponent_from(field_of(j, "m"));
    h.w = j.value("w", std::vector<long>(K.group().rank(), 0));
    return h;
}

inline Fixture fixture_from(const json& doc) {
    check_schema(doc, "crossed_product");
    Fixture f;
    f.doc = doc;
    f.name = doc.value("name", "");
    f.field = field_from(field_of(doc, "field"));
    f.cocycle = cocycle_from(*f.field, field_of(doc, "cocycle"));
    try {
        if (doc.contains("witnesses"))
            for (const auto& w : doc.at("witnesses")) f.witnesses.push_back(witness_from(*f.field, w));
        if (doc.contains("graded") && doc.at("graded").contains("pairs"))
            for (const auto& p : doc.at("graded").at("pairs"))
                f.pairs.push_back({homogeneous_from(*f.field, field_of(p, "h1")), homogeneous_from(*f.field, field_of(p, "h2"))});
    } catch (const json::exception& e) {
        fail(ErrorKind::MalformedInput, std::string("fixture: ") + e.what());
    }
    return f;
}

inline Fixture load_fixture(const std::string& path) { return fixture_from(read_json(path)); }

/// Raw composite data; verification lives with the composite type.
struct CompositeData {
    std::string name;
    std::string base;
    std::vector<Scalar> e_structure;
    Vector e_unit;
    std::vector<std::string> e_labels;
    std::shared_ptr<const GaloisExtension> KE;
    Matrix embed_K;
    Matrix embed_E;
    std::vector<Matrix> rel_gal;
    json doc;
};

inline CompositeData composite_from(const json& doc) {
    check_schema(doc, "composite");
    CompositeData c;
    c.doc = doc;
    c.name = doc.value("name", "");
    c.base = doc.value("base", "");
    const auto& E = field_of(doc, "E");
    c.e_unit = vector_from(field_of(E, "unit"));
    c.e_structure = structure_from(field_of(E, "structure_constants"), c.e_unit.size());
    c.e_labels = E.value("basis", std::vector<std::string>{});
    c.KE = field_from(field_of(doc, "KE"));
    c.embed_K = matrix_from(field_of(doc, "embed_K"));
    c.embed_E = matrix_from(field_of(doc, "embed_E"));
    if (doc.contains("rel_gal"))
        for (const auto& m : doc.at("rel_gal")) c.rel_gal.push_back(matrix_from(m));
    return c;
}

inline CompositeData load_composite(const std::string& path) { return composite_from(read_json(path)); }

/// A self-contained witness file: the fixture, optionally the composite, and the witness.
struct WitnessFile {
    std::string over;
    Fixture fixture;
    std::optional<CompositeData> composite;
    json witness;
};

inline WitnessFile witness_file_from(const json& doc) {
    check_schema(doc, "strong_witness");
    WitnessFile w;
    w.over = doc.value("over", "base");
    if (w.over != "base" && w.over != "composite") fail(ErrorKind::MalformedInput, "'over' must be base or composite");
    w.fixture = fixture_from(field_of(doc, "fixture"));
    if (doc.contains("composite")) w.composite = composite_from(doc.at("composite"));
    if (w.over == "composite" && !w.composite) fail(ErrorKind::MalformedInput, "composite witness without composite");
    w.witness = field_of(doc, "witness");
    return w;
}

inline WitnessFile load_witness_file(const std::string& path) { return witness_file_from(read_json(path)); }

}  // namespace abelcp::io
