#pragma once

// Problem files and JSON serialization of exact objects.
//
// Problem file keys: "field" ("Q" or "Qi", default "Q"), "size", "coeffs"
// (coeffs[k] is the n×n matrix of the λ^k coefficient), and optionally
// "center", "pencil" (a constant matrix T standing for λI − T), "nonlinearity"
// and "seed". Rationals are strings "a" or "a/b"; Gaussian rationals are
// objects {"re": ..., "im": ...} or strings such as "1/2-3i".

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "algmult/bifurcation.hpp"

namespace algmult {

using Json = nlohmann::ordered_json;

/// Raised for malformed problem files; the message carries the JSON location.
class ParseError : public InvalidInput {
public:
    ParseError(const std::string& where, const std::string& what) : InvalidInput(where + ": " + what) {}
};

struct ProblemFile {
    std::string field = "Q";
    std::size_t size = 0;
    Json coeffs;                  ///< raw, parsed per field on demand
    std::optional<Json> center;
    std::optional<Json> pencil;
    std::optional<Json> nonlinearity;
    std::optional<std::uint64_t> seed;
    std::string label;

    bool has_coeffs() const { return !coeffs.is_null(); }
};

namespace detail {

inline std::string describe(const Json& j) {
    std::string s = j.dump();
    return s.size() > 40 ? s.substr(0, 37) + "..." : s;
}

inline Rational rational_from_json(const Json& j, const std::string& where) {
    try {
        if (j.is_string()) return Rational::parse(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long>());
    } catch (const InvalidInput& e) {
        throw ParseError(where, e.what());
    }
    throw ParseError(where, "expected a rational scalar, got " + describe(j));
}

}  // namespace detail

template <ExactField F>
F scalar_from_json(const Json& j, const std::string& where) {
    if constexpr (F::is_real_field) {
        if (j.is_object()) throw ParseError(where, "complex scalar in a problem over Q");
        return detail::rational_from_json(j, where);
    } else {
        if (j.is_object()) {
            for (auto it = j.begin(); it != j.end(); ++it)
                if (it.key() != "re" && it.key() != "im") throw ParseError(where, "unknown key '" + it.key() + "'");
            Rational re = j.contains("re") ? detail::rational_from_json(j["re"], where + ".re") : Rational();
            Rational im = j.contains("im") ? detail::rational_from_json(j["im"], where + ".im") : Rational();
            return F(re, im);
        }
        try {
            if (j.is_string()) return F::parse(j.get<std::string>());
            if (j.is_number_integer()) return F(Rational(j.get<long>()));
        } catch (const InvalidInput& e) {
            throw ParseError(where, e.what());
        }
        throw ParseError(where, "expected a scalar, got " + detail::describe(j));
    }
}

inline Json to_json(const Rational& v) { return v.to_string(); }
inline Json to_json(const GaussianRational& v) {
    return Json{{"re", v.real().to_string()}, {"im", v.imag().to_string()}};
}
inline Json to_json(const ExtendedNat& v) {
    if (v.is_infinite()) return "inf";
    return v.value();
}

template <ExactField F>
Json to_json(const ConstMat<F>& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <ExactField F>
Json to_json(const MatPoly<F>& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

template <ExactField F>
Json to_json(const RatMat<F>& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const Eigen::VectorXd& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

inline ProblemFile parse_problem(const Json& j) {
    if (!j.is_object()) throw ParseError("$", "problem file must be a JSON object");
    static const char* known[] = {"field", "size", "coeffs", "center", "pencil", "nonlinearity", "seed", "label", "planted"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (auto k : known) ok = ok || it.key() == k;
        if (!ok) throw ParseError("$." + it.key(), "unknown key");
    }
    ProblemFile p;
    if (j.contains("field")) {
        if (!j["field"].is_string()) throw ParseError("$.field", "must be a string");
        p.field = j["field"].get<std::string>();
        if (p.field != "Q" && p.field != "Qi") throw ParseError("$.field", "must be \"Q\" or \"Qi\", got \"" + p.field + "\"");
    }
    if (!j.contains("size")) throw ParseError("$", "missing key \"size\"");
    if (!j["size"].is_number_integer() || j["size"].get<long>() < 1)
        throw ParseError("$.size", "must be a positive integer");
    p.size = static_cast<std::size_t>(j["size"].get<long>());
    auto check_matrix = [&](const Json& m, const std::string& where) {
        if (!m.is_array() || m.size() != p.size) throw ParseError(where, "expected " + std::to_string(p.size) + " rows");
        for (std::size_t i = 0; i < p.size; ++i)
            if (!m[i].is_array() || m[i].size() != p.size)
                throw ParseError(where + "[" + std::to_string(i) + "]", "expected " + std::to_string(p.size) + " entries");
    };
    if (j.contains("coeffs")) {
        const Json& c = j["coeffs"];
        if (!c.is_array() || c.empty()) throw ParseError("$.coeffs", "must be a nonempty array of matrices");
        for (std::size_t k = 0; k < c.size(); ++k) check_matrix(c[k], "$.coeffs[" + std::to_string(k) + "]");
        p.coeffs = c;
    }
    if (j.contains("pencil")) {
        check_matrix(j["pencil"], "$.pencil");
        p.pencil = j["pencil"];
    }
    if (!p.has_coeffs() && !p.pencil) throw ParseError("$", "need \"coeffs\" or \"pencil\"");
    if (j.contains("center")) p.center = j["center"];
    if (j.contains("nonlinearity")) {
        if (!j["nonlinearity"].is_array()) throw ParseError("$.nonlinearity", "must be an array of terms");
        p.nonlinearity = j["nonlinearity"];
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ParseError("$.seed", "must be a nonnegative integer");
        p.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("label")) {
        if (!j["label"].is_string()) throw ParseError("$.label", "must be a string");
        p.label = j["label"].get<std::string>();
    }
    return p;
}

inline ProblemFile read_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open input file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    Json j;
    try {
        j = Json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path, std::string("invalid JSON: ") + e.what());
    }
    return parse_problem(j);
}

template <ExactField F>
ConstMat<F> constmat_from_json(const Json& m, std::size_t n, const std::string& where) {
    ConstMat<F> r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r(i, j) = scalar_from_json<F>(m[i][j], where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    return r;
}

/// The path: Σ coeffs[k] λ^k, or λI − T in pencil mode.
template <ExactField F>
Path<F> path_from_problem(const ProblemFile& p) {
    if (!p.has_coeffs()) return Path<F>(pencil(constmat_from_json<F>(*p.pencil, p.size, "$.pencil")), p.label);
    MatPoly<F> m(p.size, p.size);
    Poly<F> power(F(1));
    for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
        const ConstMat<F> c = constmat_from_json<F>(p.coeffs[k], p.size, "$.coeffs[" + std::to_string(k) + "]");
        for (std::size_t i = 0; i < p.size; ++i)
            for (std::size_t j = 0; j < p.size; ++j)
                if (!c(i, j).is_zero()) m(i, j) += power * c(i, j);
        power *= Poly<F>::x();
    }
    return Path<F>(m, p.label);
}

template <ExactField F>
ConstMat<F> pencil_from_problem(const ProblemFile& p) {
    if (!p.pencil) throw ParseError("$", "this command needs a \"pencil\" matrix");
    return constmat_from_json<F>(*p.pencil, p.size, "$.pencil");
}

/// λ₀ from the command line, else from the file, else 0.
template <ExactField F>
F center_from(const ProblemFile& p, const std::optional<std::string>& flag) {
    if (flag) return scalar_from_json<F>(Json(*flag), "--lambda0");
    if (p.center) return scalar_from_json<F>(*p.center, "$.center");
    return F(0);
}

inline std::vector<MonomialTerm> nonlinearity_from_problem(const ProblemFile& p) {
    if (!p.nonlinearity) throw ParseError("$", "missing \"nonlinearity\"");
    std::vector<MonomialTerm> terms;
    for (std::size_t t = 0; t < p.nonlinearity->size(); ++t) {
        const Json& j = (*p.nonlinearity)[t];
        const std::string where = "$.nonlinearity[" + std::to_string(t) + "]";
        if (!j.is_object()) throw ParseError(where, "term must be an object");
        for (auto it = j.begin(); it != j.end(); ++it)
            if (it.key() != "coeff" && it.key() != "lambda_power" && it.key() != "u_powers" && it.key() != "row")
                throw ParseError(where + "." + it.key(), "unknown key");
        MonomialTerm m;
        if (!j.contains("coeff")) throw ParseError(where, "missing \"coeff\"");
        m.coeff = detail::rational_from_json(j["coeff"], where + ".coeff");
        if (j.contains("lambda_power")) {
            if (!j["lambda_power"].is_number_unsigned()) throw ParseError(where + ".lambda_power", "must be a nonnegative integer");
            m.lambda_power = j["lambda_power"].get<unsigned>();
        }
        if (!j.contains("u_powers") || !j["u_powers"].is_array() || j["u_powers"].size() != p.size)
            throw ParseError(where + ".u_powers", "must be an array of " + std::to_string(p.size) + " exponents");
        for (std::size_t i = 0; i < p.size; ++i) {
            if (!j["u_powers"][i].is_number_unsigned())
                throw ParseError(where + ".u_powers[" + std::to_string(i) + "]", "must be a nonnegative integer");
            m.u_powers.push_back(j["u_powers"][i].get<unsigned>());
        }
        if (j.contains("row")) {
            if (!j["row"].is_number_unsigned() || j["row"].get<std::size_t>() >= p.size)
                throw ParseError(where + ".row", "must be a component index below " + std::to_string(p.size));
            m.row = j["row"].get<std::size_t>();
        }
        if (m.u_degree() < 2) throw ParseError(where + ".u_powers", "total u-degree must be at least 2");
        terms.push_back(std::move(m));
    }
    return terms;
}

/// Problem file JSON for a path (used for reproducers).
template <ExactField F>
Json problem_to_json(const MatPoly<F>& m, const F& center, const std::string& label = {}) {
    const std::size_t n = m.rows();
    const int deg = std::max(max_degree(m), 0);
    Json coeffs = Json::array();
    for (int k = 0; k <= deg; ++k) {
        ConstMat<F> c(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) c(i, j) = m(i, j).coeff(k);
        coeffs.push_back(to_json(c));
    }
    Json j;
    j["field"] = F::tag;
    j["size"] = n;
    j["coeffs"] = std::move(coeffs);
    j["center"] = to_json(center);
    if (!label.empty()) j["label"] = label;
    return j;
}

}  // namespace algmult
