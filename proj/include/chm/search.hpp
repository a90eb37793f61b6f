#pragma once

#include <algorithm>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chm/catalog.hpp"
#include "chm/equivalence.hpp"
#include "chm/error.hpp"
#include "chm/matrix.hpp"
#include "chm/random.hpp"
#include "chm/substructure.hpp"

namespace chm {

// Entry alphabet for the dephased clique searches: contains 1, pairwise
// distinct unimodular values, sorted by phase on construction.
struct Alphabet {
    std::vector<UnitScalar> elements;

    static Alphabet of(std::vector<UnitScalar> elems, const ToleranceConfig& tol = {}) {
        if (elems.size() < 2 || elems.size() > 6)
            throw domain_error("Alphabet: needs 2 to 6 elements");
        bool has_one = false;
        for (const auto& u : elems) {
            if (std::abs(std::abs(u.value()) - 1.0) > tol.eps_unit)
                throw domain_error("Alphabet: element is not unimodular");
            has_one = has_one || approx_eq(u, UnitScalar::one(), tol.eps_eq);
        }
        if (!has_one) throw domain_error("Alphabet: must contain 1");
        for (size_t i = 0; i < elems.size(); ++i)
            for (size_t j = i + 1; j < elems.size(); ++j)
                if (approx_eq(elems[i], elems[j], tol.eps_eq))
                    throw domain_error("Alphabet: elements must be pairwise distinct");
        std::sort(elems.begin(), elems.end(), phase_less);
        return Alphabet{std::move(elems)};
    }
};

enum class Classification { EquivM2, EquivTao, HFamilyMember, Unclassified };

inline const char* to_string(Classification c) {
    switch (c) {
        case Classification::EquivM2: return "EquivM2";
        case Classification::EquivTao: return "EquivTao";
        case Classification::HFamilyMember: return "HFamilyMember";
        case Classification::Unclassified: return "Unclassified";
    }
    return "Unclassified";
}

// Outcome of one scanned point. counterexample holds exactly when some entry
// of classifications is Unclassified.
struct SearchReport {
    std::string parameter;
    std::vector<CMatrix> matrices_found;
    std::vector<Classification> classifications;
    long long samples_scanned{0};
    std::string note;
    bool counterexample{false};

    void finalize() {
        counterexample = false;
        for (const auto c : classifications)
            counterexample = counterexample || (c == Classification::Unclassified);
    }
};

namespace detail {

// Rows (1, g1..g5) with entries in the alphabet and zero sum, in alphabet-index
// lexicographic order (= phase-lexicographic, since alphabets sort by phase).
inline std::vector<std::array<UnitScalar, kOrder>> candidate_rows(const Alphabet& a,
                                                                  const ToleranceConfig& tol) {
    const size_t n = a.elements.size();
    std::vector<std::array<UnitScalar, kOrder>> rows;
    std::array<size_t, 5> idx{};
    while (true) {
        std::array<UnitScalar, kOrder> row;
        row[0] = UnitScalar::one();
        std::complex<double> sum{1.0, 0.0};
        for (int k = 0; k < 5; ++k) {
            row[static_cast<size_t>(k + 1)] = a.elements[idx[static_cast<size_t>(k)]];
            sum += row[static_cast<size_t>(k + 1)].value();
        }
        if (std::abs(sum) < tol.eps_orth) rows.push_back(row);
        int pos = 4;
        while (pos >= 0 && idx[static_cast<size_t>(pos)] + 1 == n) {
            idx[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++idx[static_cast<size_t>(pos)];
    }
    return rows;
}

inline bool rows_orthogonal(const std::array<UnitScalar, kOrder>& a,
                            const std::array<UnitScalar, kOrder>& b, double eps) {
    std::complex<double> ip{0.0, 0.0};
    for (int k = 0; k < kOrder; ++k)
        ip += a[static_cast<size_t>(k)].value() * std::conj(b[static_cast<size_t>(k)].value());
    return std::abs(ip) < eps;
}

inline bool row_lex_less(const std::array<UnitScalar, kOrder>& a,
                         const std::array<UnitScalar, kOrder>& b, double eps) {
    for (int k = 0; k < kOrder; ++k) {
        const int c = tri_compare(a[static_cast<size_t>(k)], b[static_cast<size_t>(k)], eps);
        if (c != 0) return c < 0;
    }
    return false;
}

} // namespace detail

// All dephased CHMs with all-ones first row and every entry in the alphabet:
// enumerate zero-sum candidate rows, build the pairwise-orthogonality graph,
// and emit one matrix per 5-clique, rows sorted lexicographically.
inline std::vector<CMatrix> find_chm_cliques(const Alphabet& a, const ToleranceConfig& tol = {}) {
    const auto rows = detail::candidate_rows(a, tol);
    const int n = static_cast<int>(rows.size());
    if (n < 5) return {};
    std::vector<std::vector<char>> adj(static_cast<size_t>(n),
                                       std::vector<char>(static_cast<size_t>(n), 0));
    std::vector<int> degree(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (detail::rows_orthogonal(rows[static_cast<size_t>(i)], rows[static_cast<size_t>(j)],
                                        tol.eps_orth)) {
                adj[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
                adj[static_cast<size_t>(j)][static_cast<size_t>(i)] = 1;
                ++degree[static_cast<size_t>(i)];
                ++degree[static_cast<size_t>(j)];
            }
    // Depth-first 5-clique extension, vertices visited in degree-descending order.
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (degree[static_cast<size_t>(x)] != degree[static_cast<size_t>(y)])
            return degree[static_cast<size_t>(x)] > degree[static_cast<size_t>(y)];
        return x < y;
    });
    std::vector<CMatrix> result;
    std::vector<int> chosen;
    auto emit = [&]() {
        std::vector<std::array<UnitScalar, kOrder>> mat_rows;
        for (int v : chosen) mat_rows.push_back(rows[static_cast<size_t>(v)]);
        std::sort(mat_rows.begin(), mat_rows.end(), [&](const auto& x, const auto& y) {
            return detail::row_lex_less(x, y, tol.eps_eq);
        });
        CMatrix m;
        for (int c = 0; c < kOrder; ++c) m.at(0, c) = UnitScalar::one();
        for (int r = 0; r < 5; ++r)
            for (int c = 0; c < kOrder; ++c)
                m.at(r + 1, c) = mat_rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
        if (!is_chm(m, tol))
            throw inconsistency_error("find_chm_cliques: clique produced a non-CHM matrix");
        result.push_back(m);
    };
    std::function<void(const std::vector<int>&)> dfs = [&](const std::vector<int>& allowed) {
        if (chosen.size() == 5) {
            emit();
            return;
        }
        for (size_t k = 0; k < allowed.size(); ++k) {
            if (chosen.size() + (allowed.size() - k) < 5) break;
            const int v = allowed[k];
            std::vector<int> next;
            next.reserve(allowed.size() - k);
            for (size_t l = k + 1; l < allowed.size(); ++l)
                if (adj[static_cast<size_t>(v)][static_cast<size_t>(allowed[l])])
                    next.push_back(allowed[l]);
            chosen.push_back(v);
            dfs(next);
            chosen.pop_back();
        }
    };
    dfs(order);
    return result;
}

namespace detail {

inline bool matrix_uses(const CMatrix& m, const UnitScalar& u, double eps) {
    for (int r = 0; r < kOrder; ++r)
        for (int c = 0; c < kOrder; ++c)
            if (approx_eq(m.at(r, c), u, eps)) return true;
    return false;
}

inline std::string phase_desc(const UnitScalar& u) {
    if (u.exact_turns())
        return std::to_string(u.exact_turns()->num) + "/" + std::to_string(u.exact_turns()->den) +
               " turns";
    return std::to_string(u.phase() / two_pi) + " turns";
}

} // namespace detail

// Two-element nonexistence probe: for each sample s, search dephased CHMs with
// entries in {1, s}. Expected empty everywhere; any find is reported verbatim.
inline std::vector<SearchReport> scan_two_element(const std::vector<UnitScalar>& samples,
                                                  const ToleranceConfig& tol = {}) {
    std::vector<SearchReport> reports;
    reports.reserve(samples.size());
    for (const auto& s : samples) {
        if (std::abs(std::abs(s.value()) - 1.0) > tol.eps_unit)
            throw domain_error("scan_two_element: sample is not unimodular");
        if (approx_eq(s, UnitScalar::one(), tol.eps_eq))
            throw domain_error("scan_two_element: sample must differ from 1");
        SearchReport rep;
        rep.parameter = "s = " + detail::phase_desc(s);
        rep.note = "dephased-alphabet scan: entries restricted to {1, s} after dephasing; "
                   "s sampled densely rather than treated symbolically";
        rep.samples_scanned = 1;
        rep.matrices_found = find_chm_cliques(Alphabet::of({UnitScalar::one(), s}, tol), tol);
        rep.classifications.assign(rep.matrices_found.size(), Classification::Unclassified);
        rep.finalize();
        reports.push_back(std::move(rep));
    }
    return reports;
}

// Three-element classification probe: for each sample x, search dephased CHMs
// over the conjugation-closed alphabet {1, -1, x, x*} (the element set a
// dephased representative of a {1,-1,x}-entried CHM can use), keep matrices
// that use 1, -1 and x or x*, and classify them against the m2 class.
inline std::vector<SearchReport> scan_three_element(const std::vector<UnitScalar>& samples,
                                                    const ToleranceConfig& tol = {}) {
    const CMatrix m2_ref = m2();
    const CMatrix tao_ref = tao();
    std::vector<SearchReport> reports;
    reports.reserve(samples.size());
    for (const auto& x : samples) {
        if (std::abs(std::abs(x.value()) - 1.0) > tol.eps_unit)
            throw domain_error("scan_three_element: sample is not unimodular");
        if (approx_eq(x, UnitScalar::one(), tol.eps_eq) ||
            approx_eq(x, UnitScalar::minus_one(), tol.eps_eq))
            throw domain_error("scan_three_element: sample must lie outside {1, -1}");
        std::vector<UnitScalar> elems = {UnitScalar::one(), UnitScalar::minus_one(), x};
        if (!approx_eq(x.conj(), x, tol.eps_eq)) elems.push_back(x.conj());
        SearchReport rep;
        rep.parameter = "x = " + detail::phase_desc(x);
        rep.note = "dephased-alphabet scan over {1, -1, x, x*}; hits kept when they use 1, -1 "
                   "and x or x*";
        rep.samples_scanned = 1;
        const auto hits = find_chm_cliques(Alphabet::of(elems, tol), tol);
        for (const auto& h : hits) {
            if (!(detail::matrix_uses(h, UnitScalar::minus_one(), tol.eps_eq) &&
                  (detail::matrix_uses(h, x, tol.eps_eq) ||
                   detail::matrix_uses(h, x.conj(), tol.eps_eq))))
                continue;
            const bool h2 = is_h2_reducible(h, tol);
            bool all_odd = true;
            const ImaginaryArray imag = imaginary_array(h, tol);
            for (const int c : imag.counts) all_odd = all_odd && (c % 2 == 1);
            const auto w_m2 = are_equivalent(h, m2_ref, tol);
            Classification cls = Classification::Unclassified;
            if (h2 && w_m2) {
                cls = Classification::EquivM2;
            } else if (h2) {
                // Parity dichotomy: rows all odd, or equivalent to m2. A
                // reducible hit that satisfies neither is a counterexample.
                if (!all_odd) cls = Classification::Unclassified;
                else if (are_equivalent(h, tao_ref, tol)) cls = Classification::EquivTao;
            } else if (are_equivalent(h, tao_ref, tol)) {
                cls = Classification::EquivTao;
            }
            rep.matrices_found.push_back(h);
            rep.classifications.push_back(cls);
        }
        rep.finalize();
        reports.push_back(std::move(rep));
    }
    return reports;
}

// Grid scan over Karlsson's parametrization: every (theta, phi) grid point
// gets z_draws admissible z tuples (z1 random, the rest completed onto the
// unimodularity locus). Asserts the CHM property per sample; samples with
// exactly three distinct elements must be equivalent to m2. Assembly
// diagnostics from the constructor propagate.
inline SearchReport karlsson_grid_scan(const std::vector<double>& thetas,
                                       const std::vector<double>& phis, int z_draws,
                                       std::uint64_t seed, const ToleranceConfig& tol = {}) {
    for (const double a : thetas)
        if (!(a >= 0.0 && a < std::numbers::pi_v<double>))
            throw domain_error("karlsson_grid_scan: theta outside [0, pi)");
    for (const double a : phis)
        if (!(a >= 0.0 && a < std::numbers::pi_v<double>))
            throw domain_error("karlsson_grid_scan: phi outside [0, pi)");
    const CMatrix m2_ref = m2();
    Rng rng(seed);
    SearchReport rep;
    rep.parameter = "karlsson grid " + std::to_string(thetas.size()) + "x" +
                    std::to_string(phis.size()) + ", z_draws=" + std::to_string(z_draws) +
                    ", seed=" + std::to_string(seed);
    rep.note = "z tuples drawn on the admissible locus: z1 uniform, z2..z4 completed from the "
               "block unimodularity conditions";
    for (const double theta : thetas) {
        for (const double phi : phis) {
            for (int d = 0; d < z_draws; ++d) {
                const UnitScalar z1 = rng.unit();
                const bool f3 = rng.coin(), f4 = rng.coin(), f2 = rng.coin();
                const auto z = karlsson_complete_z(theta, phi, z1, f3, f4, f2, tol);
                if (!z)
                    throw inconsistency_error(
                        "karlsson_grid_scan: z completion failed at theta=" + std::to_string(theta) +
                        " phi=" + std::to_string(phi));
                const CMatrix m = karlsson(KarlssonParams{theta, phi, *z}, tol);
                ++rep.samples_scanned;
                if (!is_chm(m, tol)) {
                    rep.matrices_found.push_back(m);
                    rep.classifications.push_back(Classification::Unclassified);
                    continue;
                }
                if (distinct_elements(m, tol).size() == 3 && !are_equivalent(m, m2_ref, tol)) {
                    rep.matrices_found.push_back(m);
                    rep.classifications.push_back(Classification::Unclassified);
                }
            }
        }
    }
    rep.finalize();
    return rep;
}

enum class H3Class { NoH3Block, EquivTao, HFamilyMember };

struct H3Outcome {
    H3Class kind{H3Class::NoH3Block};
    std::optional<HFamilyParams> params;        // set for HFamilyMember
    std::optional<EquivalenceWitness> witness;  // onto h_family(params) or tao()
};

// A CHM with a 3x3 Hadamard submatrix classifies into the two-parameter family
// or the Tao class; anything else is a counterexample and is raised, never
// swallowed.
inline H3Outcome classify_h3(const CMatrix& m, const ToleranceConfig& tol = {}) {
    if (!is_chm(m, tol)) throw domain_error("classify_h3: input must be a CHM");
    if (find_h3_blocks(m, tol).empty()) return H3Outcome{H3Class::NoH3Block, {}, {}};
    if (const auto fam = match_h_family(m, tol))
        return H3Outcome{H3Class::HFamilyMember, fam->params, fam->witness};
    if (auto w = are_equivalent(m, tao(), tol))
        return H3Outcome{H3Class::EquivTao, {}, std::move(w)};
    throw counterexample_error(
        "classify_h3: matrix has a 3x3 Hadamard submatrix but matches neither the "
        "two-parameter family nor the Tao class");
}

} // namespace chm
