#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "padic/cauchy.hpp"
#include "padic/fnspace.hpp"
#include "padic/linalg.hpp"
#include "padic/series.hpp"

namespace padic::io {

using nlohmann::json;

// "a/b", "a", "inf", "-inf"
inline ExtRational ext_rational_from_string(const std::string& s) {
    if (s == "inf" || s == "+inf") return ExtRational::pos_inf();
    if (s == "-inf") return ExtRational::neg_inf();
    auto slash = s.find('/');
    if (slash == std::string::npos) return ExtRational(std::stoll(s));
    return ExtRational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

inline std::string ext_rational_to_string(const ExtRational& r) { return r.to_string(); }

inline json scalar_to_json(const PAdicScalar& s) {
    if (s.is_exact_zero()) return json{{"zero", true}};
    if (s.is_zero_ball()) return json{{"zero", true}, {"prec", s.abs_precision()}};
    // base-p digits, little-endian, comma separated
    bigint u = s.unit();
    long long p = s.prime();
    std::string digits;
    while (u > 0) {
        if (!digits.empty()) digits += ',';
        digits += bigint(u % p).str();
        u /= p;
    }
    return json{{"val", s.valuation_int()}, {"unit", digits}, {"prec", s.abs_precision()}};
}

inline PAdicScalar scalar_from_json(const json& j, long long p) {
    if (j.is_string()) {
        ExtRational r = ext_rational_from_string(j.get<std::string>());
        return PAdicScalar::from_rational(r.num(), r.den(), p);
    }
    if (j.is_number_integer()) return PAdicScalar::from_integer(j.get<long long>(), p);
    if (j.contains("zero")) {
        if (j.contains("prec")) return PAdicScalar::zero_ball(p, j["prec"].get<long long>());
        return PAdicScalar::zero(p);
    }
    long long val = j.at("val").get<long long>();
    long long prec = j.at("prec").get<long long>();
    std::string digits = j.at("unit").get<std::string>();
    bigint u = 0, pw = 1;
    size_t pos = 0;
    while (pos < digits.size()) {
        size_t comma = digits.find(',', pos);
        std::string d = digits.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        u += pw * bigint(d);
        pw *= p;
        pos = comma == std::string::npos ? digits.size() : comma + 1;
    }
    return PAdicScalar::from_parts(p, val, u, prec - val);
}

inline json vector_to_json(const PVector& v) {
    json arr = json::array();
    for (const auto& e : v.entries) arr.push_back(scalar_to_json(e));
    return arr;
}

inline PVector vector_from_json(const json& j, long long p) {
    PVector v;
    v.prime = p;
    for (const auto& e : j) v.entries.push_back(scalar_from_json(e, p));
    return v;
}

inline json matrix_to_json(const PMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.dim; ++i) {
        json row = json::array();
        for (int j = 0; j < m.dim; ++j) row.push_back(scalar_to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline PMatrix matrix_from_json(const json& j, long long p) {
    int d = static_cast<int>(j.size());
    PMatrix m = PMatrix::zero(d, p);
    for (int i = 0; i < d; ++i) {
        if (static_cast<int>(j[i].size()) != d) throw InvalidProblem("matrix must be square");
        for (int k = 0; k < d; ++k) m.at(i, k) = scalar_from_json(j[i][k], p);
    }
    return m;
}

inline json tail_to_json(const std::optional<TailBound>& t) {
    if (!t) return nullptr;
    return json{{"gamma", t->gamma.to_string()}, {"slope", t->slope.to_string()}};
}

inline std::optional<TailBound> tail_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    return TailBound{ext_rational_from_string(j.at("gamma").get<std::string>()),
                     ext_rational_from_string(j.at("slope").get<std::string>()), false};
}

inline json series_to_json(const BSeries<PVector>& s) {
    json coeffs = json::array();
    for (const auto& c : s.coeffs) coeffs.push_back(vector_to_json(c));
    return json{{"truncation", s.truncation()},
                {"coeffs", coeffs},
                {"tail", tail_to_json(s.tail)},
                {"polynomial", s.polynomial}};
}

inline BSeries<PVector> series_from_json(const json& j, long long p) {
    BSeries<PVector> s;
    s.prime = p;
    for (const auto& c : j.at("coeffs")) s.coeffs.push_back(vector_from_json(c, p));
    s.tail = tail_from_json(j.value("tail", json(nullptr)));
    s.polynomial = j.value("polynomial", false);
    return s;
}

inline json multiseries_to_json(const MultiSeries& f) {
    json coeffs = json::array();
    for (const auto& [a, c] : f.coeffs)
        coeffs.push_back(json{{"alpha", a}, {"value", scalar_to_json(c)}});
    return json{{"nvars", f.nvars},
                {"rho_exp", f.rho_exp.to_string()},
                {"degree", f.degree_bound},
                {"valid_degree", f.valid_degree},
                {"exact", f.exact},
                {"coeffs", coeffs}};
}

inline MultiSeries multiseries_from_json(const json& j, long long p) {
    MultiSeries f = MultiSeries::zero(
        p, j.at("nvars").get<int>(),
        ext_rational_from_string(j.at("rho_exp").get<std::string>()),
        j.value("degree", 0));
    f.exact = j.value("exact", true);
    f.valid_degree = j.value("valid_degree", f.degree_bound);
    for (const auto& e : j.at("coeffs")) {
        MultiIndex a = e.at("alpha").get<std::vector<int>>();
        f.set(a, scalar_from_json(e.at("value"), p));
    }
    return f;
}

inline json diffop_to_json(const DiffOp& op) {
    json arr = json::array();
    for (const auto& [beta, a] : op.terms)
        arr.push_back(json{{"beta", beta}, {"coeff", multiseries_to_json(a)}});
    return arr;
}

inline DiffOp diffop_from_json(const json& j, long long p) {
    DiffOp op;
    for (const auto& t : j)
        op.add_term(t.at("beta").get<std::vector<int>>(),
                    multiseries_from_json(t.at("coeff"), p));
    return op;
}

inline json residual_report_to_json(const ResidualReport& r) {
    json checks = json::array();
    for (const auto& e : r.coefficient_checks)
        checks.push_back(json{{"n", e.n},
                              {"k", e.k},
                              {"pass", e.pass},
                              {"defect_exponent", e.defect_exponent.to_string()}});
    return json{{"pass", r.pass},
                {"coefficient_checks", checks},
                {"derivative_identity", r.derivative_identity},
                {"initial_data", r.initial_data}};
}

}  // namespace padic::io
