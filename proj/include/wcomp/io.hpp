/**
 * @file io.hpp
 * @brief JSON encoding of numbers, matrices, compressions and verdicts.
 *
 * Complex numbers are two-element arrays [re, im]; bare reals are accepted on
 * input. Matrices are row-major nested arrays. Parse failures raise
 * SchemaError carrying the JSON pointer of the offending value.
 */

#pragma once

#include "wcomp/operator.hpp"
#include "wcomp/verdicts.hpp"

#include <json.hpp>

#include <string>

namespace wcomp::io {

using Json = nlohmann::json;

[[noreturn]] inline void schema_error(const std::string& path, const std::string& what)
{
    throw Error(ErrorKind::SchemaError, (path.empty() ? std::string("/") : path) + ": " + what, path.empty() ? "/" : path);
}

inline std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
inline std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json to_json(const CVec& v)
{
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
    return out;
}

inline Json to_json(const CMat& m)
{
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

inline double parse_real(const Json& j, const std::string& path)
{
    if (!j.is_number()) schema_error(path, "expected a number");
    return j.get<double>();
}

inline Complex parse_complex(const Json& j, const std::string& path)
{
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) schema_error(path, "expected a number or [re, im]");
    return {parse_real(j[0], child(path, 0)), parse_real(j[1], child(path, 1))};
}

inline int parse_int(const Json& j, const std::string& path)
{
    if (!j.is_number_integer()) schema_error(path, "expected an integer");
    return j.get<int>();
}

inline CVec parse_vector(const Json& j, const std::string& path, Eigen::Index expected = -1)
{
    if (!j.is_array() || j.empty()) schema_error(path, "expected a non-empty array of complex numbers");
    if (expected >= 0 && static_cast<Eigen::Index>(j.size()) != expected)
        schema_error(path, "expected " + std::to_string(expected) + " entries");
    CVec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_complex(j[i], child(path, i));
    return v;
}

inline CMat parse_matrix(const Json& j, const std::string& path, Eigen::Index expected = -1)
{
    if (!j.is_array() || j.empty()) schema_error(path, "expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (expected >= 0 && rows != expected) schema_error(path, "expected " + std::to_string(expected) + " rows");
    CMat m;
    for (std::size_t r = 0; r < j.size(); ++r) {
        const CVec row = parse_vector(j[r], child(path, r), r == 0 ? expected : m.cols());
        if (r == 0) m.resize(rows, row.size());
        m.row(static_cast<Eigen::Index>(r)) = row.transpose();
    }
    return m;
}

inline const Json& require_field(const Json& obj, const char* key, const std::string& path)
{
    const auto it = obj.find(key);
    if (it == obj.end()) schema_error(child(path, key), "missing required field");
    return *it;
}

inline void require_object(const Json& j, const std::string& path)
{
    if (!j.is_object()) schema_error(path, "expected an object");
}

/// Rejects keys outside `allowed`.
inline void allow_only(const Json& obj, std::initializer_list<const char*> allowed, const std::string& path)
{
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) schema_error(child(path, key), "unknown field");
    }
}

inline Json to_json(const Condition& c)
{
    return {{"name", c.name},           {"lhs_norm", c.lhs_norm}, {"rhs_norm", c.rhs_norm},
            {"residual", c.residual},   {"tolerance", c.tolerance}, {"slack", c.slack()},
            {"ok", c.ok()}};
}

inline Json to_json(const Verdict& v)
{
    Json conditions = Json::array();
    for (const auto& c : v.conditions) conditions.push_back(to_json(c));
    Json diagnostics = Json::object();
    for (const auto& [k, x] : v.diagnostics) diagnostics[k] = x;
    const auto* w = v.witness();
    return {{"theorem", v.theorem},
            {"holds", v.holds},
            {"witness", w ? Json(w->name) : Json(nullptr)},
            {"conditions", std::move(conditions)},
            {"diagnostics", std::move(diagnostics)}};
}

/// {space, N, D, ordering, basis, entries}; `entries` is the flat row-major
/// list of [re, im] pairs, written with round-trip precision.
inline Json export_matrix(const OperatorCompression& t)
{
    Json basis = Json::array();
    for (std::size_t r = 0; r < t.basis->size(); ++r) basis.push_back(t.basis->at(r).exps);
    Json entries = Json::array();
    for (Eigen::Index r = 0; r < t.matrix.rows(); ++r)
        for (Eigen::Index c = 0; c < t.matrix.cols(); ++c) entries.push_back(to_json(t.matrix(r, c)));
    return {{"space", to_string(t.space.kind)},
            {"N", t.space.dim},
            {"D", t.degree},
            {"ordering", "grlex"},
            {"rows", t.matrix.rows()},
            {"basis", std::move(basis)},
            {"entries", std::move(entries)}};
}

struct ImportedMatrix {
    SpaceKind space;
    int degree;
    CMat matrix;
};

inline ImportedMatrix import_matrix(const Json& j)
{
    require_object(j, "");
    const std::string kind = require_field(j, "space", "").get<std::string>();
    if (kind != "dirichlet" && kind != "hardy") schema_error("/space", "unknown space");
    const int n = parse_int(require_field(j, "N", ""), "/N");
    const int d = parse_int(require_field(j, "D", ""), "/D");
    if (require_field(j, "ordering", "") != "grlex") schema_error("/ordering", "only grlex is supported");
    const SpaceKind space(kind == "dirichlet" ? SpaceType::Dirichlet : SpaceType::Hardy, n);
    const auto size = static_cast<Eigen::Index>(monomial_basis(n, d)->size());
    const Json& entries = require_field(j, "entries", "");
    if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != size * size)
        schema_error("/entries", "expected " + std::to_string(size * size) + " entries");
    CMat m(size, size);
    for (std::size_t i = 0; i < entries.size(); ++i)
        m(static_cast<Eigen::Index>(i) / size, static_cast<Eigen::Index>(i) % size) =
            parse_complex(entries[i], child("/entries", i));
    return {space, d, std::move(m)};
}

}  // namespace wcomp::io
