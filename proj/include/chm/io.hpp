#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chm/equivalence.hpp"
#include "chm/error.hpp"
#include "chm/matrix.hpp"
#include "chm/search.hpp"
#include "chm/unit_scalar.hpp"

namespace chm {

using Json = nlohmann::ordered_json;

// "p/q" or "p" as a fraction of a turn.
inline Rational parse_turns(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational::reduced(std::stoll(s), 1).mod1();
        return Rational::reduced(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)))
            .mod1();
    } catch (const std::exception&) {
        throw structural_error("bad rational turns: '" + s + "'");
    }
}

inline std::string turns_string(const Rational& r) {
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

// Angle in turns, accepted as a rational string or a float literal. Rational
// input yields an exactly-tagged scalar.
inline UnitScalar parse_angle_turns(const std::string& s) {
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find('E') == std::string::npos)
        return UnitScalar::from_turns(parse_turns(s));
    try {
        return UnitScalar::from_phase(two_pi * std::stod(s));
    } catch (const std::exception&) {
        throw structural_error("bad angle: '" + s + "'");
    }
}

inline Json unit_to_json(const UnitScalar& u) {
    Json j;
    j["re"] = u.re();
    j["im"] = u.im();
    if (u.exact_turns()) j["phase_turns"] = turns_string(*u.exact_turns());
    return j;
}

// phase_turns is authoritative when present: re/im are regenerated from it.
inline UnitScalar unit_from_json(const Json& j, const ToleranceConfig& tol = {}) {
    if (!j.is_object()) throw structural_error("matrix entry must be an object");
    if (j.contains("phase_turns"))
        return UnitScalar::from_turns(parse_turns(j.at("phase_turns").get<std::string>()));
    if (!j.contains("re") || !j.contains("im"))
        throw structural_error("matrix entry needs re and im");
    return UnitScalar::from_complex({j.at("re").get<double>(), j.at("im").get<double>()},
                                    tol.eps_unit);
}

inline Json matrix_to_json(const CMatrix& m) {
    Json j;
    j["n"] = kOrder;
    Json rows = Json::array();
    for (int r = 0; r < kOrder; ++r) {
        Json row = Json::array();
        for (int c = 0; c < kOrder; ++c) row.push_back(unit_to_json(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

inline CMatrix matrix_from_json(const Json& j, const ToleranceConfig& tol = {}) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        throw structural_error("matrix document needs fields n and entries");
    if (j.at("n").get<int>() != kOrder)
        throw structural_error("only order-6 matrices are supported");
    const Json& rows = j.at("entries");
    if (!rows.is_array() || rows.size() != kOrder)
        throw structural_error("entries must be a 6x6 array");
    CMatrix m;
    for (int r = 0; r < kOrder; ++r) {
        const Json& row = rows.at(static_cast<size_t>(r));
        if (!row.is_array() || row.size() != kOrder)
            throw structural_error("entries must be a 6x6 array");
        for (int c = 0; c < kOrder; ++c)
            m.at(r, c) = unit_from_json(row.at(static_cast<size_t>(c)), tol);
    }
    return m;
}

inline Json monomial_to_json(const MonomialUnitary& u) {
    Json perm = Json::array(), phases = Json::array();
    for (int i = 0; i < kOrder; ++i) {
        perm.push_back(u.perm[static_cast<size_t>(i)] + 1); // 1-based on the wire
        phases.push_back(unit_to_json(u.phases[static_cast<size_t>(i)]));
    }
    Json j;
    j["perm"] = std::move(perm);
    j["phases"] = std::move(phases);
    return j;
}

inline MonomialUnitary monomial_from_json(const Json& j, const ToleranceConfig& tol = {}) {
    MonomialUnitary u;
    const Json& perm = j.at("perm");
    const Json& phases = j.at("phases");
    if (!perm.is_array() || perm.size() != kOrder || !phases.is_array() || phases.size() != kOrder)
        throw structural_error("monomial document needs 6-element perm and phases");
    std::array<bool, kOrder> seen{};
    for (int i = 0; i < kOrder; ++i) {
        const int p = perm.at(static_cast<size_t>(i)).get<int>() - 1;
        if (p < 0 || p >= kOrder || seen[static_cast<size_t>(p)])
            throw structural_error("monomial perm is not a permutation of 1..6");
        seen[static_cast<size_t>(p)] = true;
        u.perm[static_cast<size_t>(i)] = p;
        u.phases[static_cast<size_t>(i)] = unit_from_json(phases.at(static_cast<size_t>(i)), tol);
    }
    return u;
}

inline Json witness_to_json(const EquivalenceWitness& w) {
    const Json left = monomial_to_json(w.left);
    const Json right = monomial_to_json(w.right);
    Json j;
    j["perm_left"] = left.at("perm");
    j["phases_left"] = left.at("phases");
    j["perm_right"] = right.at("perm");
    j["phases_right"] = right.at("phases");
    return j;
}

inline EquivalenceWitness witness_from_json(const Json& j, const ToleranceConfig& tol = {}) {
    Json left, right;
    left["perm"] = j.at("perm_left");
    left["phases"] = j.at("phases_left");
    right["perm"] = j.at("perm_right");
    right["phases"] = j.at("phases_right");
    return EquivalenceWitness{monomial_from_json(left, tol), monomial_from_json(right, tol)};
}

inline Json report_to_json(const SearchReport& rep) {
    Json j;
    j["parameter"] = rep.parameter;
    j["note"] = rep.note;
    j["samples_scanned"] = rep.samples_scanned;
    j["counterexample"] = rep.counterexample;
    Json cls = Json::array();
    for (const auto c : rep.classifications) cls.push_back(to_string(c));
    j["classifications"] = std::move(cls);
    Json found = Json::array();
    for (const auto& m : rep.matrices_found) found.push_back(matrix_to_json(m));
    j["matrices_found"] = std::move(found);
    return j;
}

inline Json reports_to_json(const std::string& kind, const std::vector<SearchReport>& reps,
                            std::optional<std::uint64_t> seed = std::nullopt) {
    Json j;
    j["kind"] = kind;
    if (seed) j["seed"] = *seed;
    bool any = false;
    Json arr = Json::array();
    for (const auto& r : reps) {
        any = any || r.counterexample;
        arr.push_back(report_to_json(r));
    }
    j["counterexample"] = any;
    j["reports"] = std::move(arr);
    return j;
}

// Human-readable rendering of a reports document (the `report` subcommand).
inline std::string render_report_text(const Json& j) {
    std::string out;
    out += "kind: " + j.value("kind", std::string("unknown")) + "\n";
    if (j.contains("seed")) out += "seed: " + j.at("seed").dump() + "\n";
    out += std::string("counterexample: ") + (j.value("counterexample", false) ? "YES" : "no") + "\n";
    const Json reports = j.contains("reports") ? j.at("reports") : Json::array({j});
    out += "reports: " + std::to_string(reports.size()) + "\n";
    for (const auto& r : reports) {
        out += "  - " + r.value("parameter", std::string("?"));
        const auto found = r.contains("matrices_found") ? r.at("matrices_found").size() : 0;
        out += ": found " + std::to_string(found);
        if (r.contains("samples_scanned") && r.at("samples_scanned").get<long long>() > 1)
            out += " (samples " + r.at("samples_scanned").dump() + ")";
        if (r.contains("classifications") && !r.at("classifications").empty()) {
            out += " [";
            bool first = true;
            for (const auto& c : r.at("classifications")) {
                if (!first) out += ", ";
                out += c.get<std::string>();
                first = false;
            }
            out += "]";
        }
        if (r.value("counterexample", false)) out += "  ** counterexample **";
        out += "\n";
        if (!r.value("note", std::string()).empty() && &r == &reports[0])
            out += "    note: " + r.at("note").get<std::string>() + "\n";
    }
    return out;
}

} // namespace chm
