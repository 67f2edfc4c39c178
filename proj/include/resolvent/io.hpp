#pragma once

// JSON encodings shared by the CLI. Needs nlohmann's json.hpp on the include path.

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "errors.hpp"
#include "forms.hpp"
#include "monodromy.hpp"
#include "perm.hpp"
#include "polynomial.hpp"
#include "roots.hpp"
#include "scalar.hpp"

namespace resolvent::io {

using json = nlohmann::json;

// Rational or complex polynomial as read from JSON.
using AnyPoly = std::variant<RationalPoly, ComplexPoly>;

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }
inline json to_json(const Rational& r) { return format_rational(r); }

template <class T>
json to_json(const std::vector<T>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}

// Complex entries: [re, im], a plain number, or a literal such as "1-2i".
inline Complex complex_from(const json& j) {
    if (j.is_array()) {
        if (j.size() != 2 || !j[0].is_number() || !j[1].is_number())
            throw ParseError("complex value must be [re, im]");
        return {j[0].get<double>(), j[1].get<double>()};
    }
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_string()) return parse_complex(j.get<std::string>());
    throw ParseError("malformed complex value " + j.dump());
}

inline Rational rational_from(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw ParseError("rational value must be a \"p/q\" string");
}

inline std::vector<Complex> complex_list(const json& j) {
    if (!j.is_array()) throw ParseError("expected an array of complex values");
    std::vector<Complex> out;
    for (const auto& v : j) out.push_back(complex_from(v));
    return out;
}

inline json to_json(const RationalPoly& p) {
    json c = json::array();
    for (const auto& a : p.coeffs()) c.push_back(format_rational(a));
    return {{"kind", "rational"}, {"coeffs", c}};
}

inline json to_json(const ComplexPoly& p) {
    json c = json::array();
    for (auto a : p.coeffs()) c.push_back(to_json(a));
    return {{"kind", "complex"}, {"coeffs", c}};
}

inline json to_json(const AnyPoly& p) {
    return std::visit([](const auto& q) { return to_json(q); }, p);
}

inline AnyPoly poly_from(const json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
        throw ParseError("polynomial needs a \"coeffs\" array");
    std::string kind = j.value("kind", "rational");
    if (kind == "rational") {
        std::vector<Rational> c;
        for (const auto& v : j["coeffs"]) c.push_back(rational_from(v));
        return RationalPoly(std::move(c));
    }
    if (kind == "complex") return ComplexPoly(complex_list(j["coeffs"]));
    throw ParseError("unknown polynomial kind \"" + kind + "\"");
}

inline ComplexPoly complex_poly(const AnyPoly& p) {
    if (const auto* r = std::get_if<RationalPoly>(&p)) return to_complex(*r);
    return std::get<ComplexPoly>(p);
}

inline json to_json(const RootSet& r) {
    return {{"roots", to_json(r.roots)}, {"multiplicities", r.multiplicities}, {"residual", r.residual}};
}

// A bare array of roots, {"roots": [...]}, or a RootSet with multiplicities.
inline std::vector<Complex> roots_from(const json& j) {
    if (j.is_array()) return complex_list(j);
    if (!j.is_object() || !j.contains("roots")) throw ParseError("roots JSON needs a \"roots\" array");
    RootSet r;
    r.roots = complex_list(j["roots"]);
    if (!j.contains("multiplicities")) return r.roots;
    r.multiplicities = j["multiplicities"].get<std::vector<int>>();
    if (r.multiplicities.size() != r.roots.size()) throw ParseError("one multiplicity per root expected");
    return r.expanded();
}

inline json to_json(const ParamFamily& f) {
    json rows = json::array();
    for (const auto& row : f.coeffs) rows.push_back(to_json(row));
    return {{"n", f.n}, {"m", f.m}, {"coeffs", rows}};
}

inline ParamFamily family_from(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("m") || !j.contains("coeffs"))
        throw ParseError("family JSON needs \"n\", \"m\" and \"coeffs\"");
    std::vector<std::vector<Complex>> rows;
    for (const auto& row : j["coeffs"]) rows.push_back(complex_list(row));
    return ParamFamily(j["n"].get<int>(), j["m"].get<int>(), std::move(rows));
}

// A bare array or {"point": [...]}.
inline Point point_from(const json& j) {
    if (j.is_object() && j.contains("point")) return complex_list(j["point"]);
    return complex_list(j);
}

inline json to_json(const Loop& l) {
    json w = json::array();
    for (const auto& p : l.waypoints) w.push_back(to_json(p));
    return {{"basepoint", to_json(l.basepoint)}, {"waypoints", w}};
}

inline Loop loop_from(const json& j) {
    if (!j.is_object() || !j.contains("basepoint") || !j.contains("waypoints"))
        throw ParseError("loop JSON needs \"basepoint\" and \"waypoints\"");
    Loop l;
    l.basepoint = complex_list(j["basepoint"]);
    for (const auto& p : j["waypoints"]) l.waypoints.push_back(complex_list(p));
    return l;
}

inline json to_json(const Permutation& p) { return p.to_string(); }

inline json to_json(const std::vector<Permutation>& v) {
    json out = json::array();
    for (const auto& p : v) out.push_back(p.to_string());
    return out;
}

// {"n": 3, "generators": ["(1 2)", "(1 2 3)"]}
inline json group_json(int n, const std::vector<Permutation>& generators) {
    return {{"n", n}, {"generators", to_json(generators)}};
}

inline PermGroup group_from(const json& j, std::size_t max_order) {
    if (!j.is_object() || !j.contains("n") || !j.contains("generators"))
        throw ParseError("group JSON needs \"n\" and \"generators\"");
    const int n = j["n"].get<int>();
    std::vector<Permutation> gens;
    for (const auto& g : j["generators"]) {
        if (!g.is_string()) throw ParseError("generators must be cycle strings");
        gens.push_back(Permutation::parse(g.get<std::string>(), n));
    }
    return closure(gens, n, max_order);
}

template <class T>
json sparse_json(const SparsePoly<T>& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) {
        std::vector<int> exps(e.begin(), e.end());
        if constexpr (std::is_same_v<T, Integer>)
            terms.push_back({{"exponents", exps}, {"coeff", format_rational(Rational(c))}});
        else
            terms.push_back({{"exponents", exps}, {"coeff", to_json(c)}});
    }
    return {{"nvars", p.nvars()}, {"terms", terms}};
}

inline json to_json(const Stratum& s) {
    return {{"partition", s.partition.to_string()},
            {"sample_point", to_json(s.sample_point)},
            {"complex_codim", s.complex_codim}};
}

} // namespace resolvent::io
