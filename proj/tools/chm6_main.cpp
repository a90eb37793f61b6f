// chm6: construct, verify, and classify 6x6 complex Hadamard matrices.
//
// Exit codes: 0 success/affirmative, 2 usage or malformed input, 3 negative
// result, 4 counterexample found, 5 internal inconsistency.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chm/catalog.hpp"
#include "chm/equivalence.hpp"
#include "chm/io.hpp"
#include "chm/search.hpp"
#include "chm/substructure.hpp"

namespace {

using namespace chm;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNegative = 3;
constexpr int kExitCounterexample = 4;
constexpr int kExitInconsistent = 5;

std::string read_source(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw structural_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const std::exception& e) {
        throw structural_error(std::string("malformed JSON: ") + e.what());
    }
}

CMatrix load_matrix(const std::string& path, const ToleranceConfig& tol) {
    return matrix_from_json(parse_json(read_source(path)), tol);
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// "name" or "name(arg1,arg2,...)"
std::pair<std::string, std::vector<std::string>> split_spec(const std::string& spec) {
    const auto open = spec.find('(');
    if (open == std::string::npos) return {spec, {}};
    if (spec.back() != ')') throw structural_error("expected closing ')' in '" + spec + "'");
    std::vector<std::string> args;
    std::string cur;
    for (size_t k = open + 1; k + 1 < spec.size(); ++k) {
        if (spec[k] == ',') {
            args.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(spec[k]))) {
            cur.push_back(spec[k]);
        }
    }
    args.push_back(cur);
    return {spec.substr(0, open), args};
}

CMatrix catalog_by_name(const std::string& spec, const ToleranceConfig& tol) {
    const auto [name, args] = split_spec(spec);
    if (name == "tao" && args.empty()) return tao();
    if (name == "m1" && args.empty()) return m1();
    if (name == "m2" && args.empty()) return m2();
    if (name == "h") {
        if (args.size() != 2) throw structural_error("usage: h(alpha,beta), angles in turns");
        return h_family({parse_angle_turns(args[0]), parse_angle_turns(args[1])}, tol);
    }
    if (name == "karlsson") {
        if (args.size() != 6)
            throw structural_error("usage: karlsson(theta,phi,z1,z2,z3,z4), angles in turns");
        KarlssonParams p;
        p.theta = parse_angle_turns(args[0]).phase(); // turns in [0, 1/2) -> radians in [0, pi)
        p.phi = parse_angle_turns(args[1]).phase();
        for (int k = 0; k < 4; ++k) p.z[static_cast<size_t>(k)] = parse_angle_turns(args[static_cast<size_t>(k) + 2]);
        return karlsson(p, tol);
    }
    throw structural_error("unknown catalog name '" + spec +
                           "' (expected tao, m1, m2, h(a,b), karlsson(t,p,z1..z4))");
}

Json location_to_json(const BlockLocation& loc) {
    Json j;
    j["rows"] = loc.rows;
    j["cols"] = loc.cols;
    return j;
}

std::vector<UnitScalar> circle_samples(int n, bool exclude_minus_one) {
    // n uniformly spaced points e^{2 pi i k/(n+1)}, k = 1..n; never 1, and for
    // odd n+1 never -1 either.
    std::vector<UnitScalar> out;
    out.reserve(static_cast<size_t>(n));
    for (int k = 1; k <= n; ++k) {
        UnitScalar s = UnitScalar::from_turns(k, n + 1);
        if (exclude_minus_one && approx_eq(s, UnitScalar::minus_one(), 1e-12)) continue;
        out.push_back(s);
    }
    return out;
}

std::uint64_t seed_or_env(std::optional<std::uint64_t> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("CHM_SEED")) return std::stoull(env);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chm6: a toolkit for 6x6 complex Hadamard matrices"};
    app.require_subcommand(1);

    ToleranceConfig tol;
    app.add_option("--eps-unit", tol.eps_unit, "unimodularity tolerance")->capture_default_str();
    app.add_option("--eps-orth", tol.eps_orth, "orthogonality (Gram) tolerance")->capture_default_str();
    app.add_option("--eps-eq", tol.eps_eq, "entry-equality tolerance")->capture_default_str();

    std::string arg_name, arg_kind, arg_a, arg_b, arg_elements, arg_grid = "32,32";
    int arg_samples_two = 360, arg_samples_three = 180, arg_zdraws = 4;
    std::optional<std::uint64_t> arg_seed;

    auto* c_catalog = app.add_subcommand("catalog", "emit a named matrix as JSON");
    c_catalog->add_option("name", arg_name, "tao|m1|m2|h(a,b)|karlsson(t,p,z1..z4)")->required();

    auto* c_verify = app.add_subcommand("verify", "Gram defect, element stats, H2-reducibility");
    c_verify->add_option("matrix", arg_a, "matrix JSON file or -")->required();

    auto* c_detect = app.add_subcommand("detect", "locate h2 / h3 / rank1 submatrices");
    c_detect->add_option("kind", arg_kind, "h2|h3|rank1")->required();
    c_detect->add_option("matrix", arg_a, "matrix JSON file or -")->required();

    auto* c_equiv = app.add_subcommand("equiv", "decide complex equivalence of two CHMs");
    c_equiv->add_option("a", arg_a)->required();
    c_equiv->add_option("b", arg_b)->required();

    auto* c_match = app.add_subcommand("match-family", "match into the two-parameter family");
    c_match->add_option("matrix", arg_a)->required();

    auto* c_alpha = app.add_subcommand("search-alphabet", "dephased clique search over an alphabet");
    c_alpha->add_option("--elements", arg_elements, "comma-separated phases in turns, e.g. 0,1/3,2/3")
        ->required();

    auto* c_two = app.add_subcommand("scan-two", "two-element scans (expected all empty)");
    c_two->add_option("--samples", arg_samples_two, "number of circle samples")
        ->capture_default_str();

    auto* c_three = app.add_subcommand("scan-three", "three-element scans plus {i, -i}");
    c_three->add_option("--samples", arg_samples_three, "number of circle samples")
        ->capture_default_str();

    auto* c_karl = app.add_subcommand("scan-karlsson", "grid scan of the H2-reducible family");
    c_karl->add_option("--grid", arg_grid, "theta,phi grid sizes")->capture_default_str();
    c_karl->add_option("--zdraws", arg_zdraws, "z draws per grid point")->capture_default_str();
    c_karl->add_option("--seed", arg_seed, "rng seed (CHM_SEED env as fallback)");

    auto* c_h3 = app.add_subcommand("classify-h3", "classify a CHM with a 3x3 Hadamard submatrix");
    c_h3->add_option("matrix", arg_a)->required();

    auto* c_report = app.add_subcommand("report", "render a SearchReport JSON as text");
    c_report->add_option("report", arg_a)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        tol.validate();

        if (*c_catalog) {
            emit(matrix_to_json(catalog_by_name(arg_name, tol)));
            return kExitOk;
        }
        if (*c_verify) {
            const CMatrix m = load_matrix(arg_a, tol);
            Json j;
            j["gram_defect"] = gram_defect(m);
            j["unimodular"] = entries_unimodular(m, tol.eps_unit);
            j["is_chm"] = is_chm(m, tol);
            Json distinct = Json::array();
            for (const auto& u : distinct_elements(m, tol)) distinct.push_back(unit_to_json(u));
            j["distinct_elements"] = std::move(distinct);
            j["imaginary_array"] = imaginary_array(m, tol).counts;
            j["is_h2_reducible"] = is_h2_reducible(m, tol);
            emit(j);
            return is_chm(m, tol) ? kExitOk : kExitNegative;
        }
        if (*c_detect) {
            const CMatrix m = load_matrix(arg_a, tol);
            std::vector<BlockLocation> locs;
            if (arg_kind == "h2") locs = find_h2_blocks(m, tol);
            else if (arg_kind == "h3") locs = find_h3_blocks(m, tol);
            else if (arg_kind == "rank1") locs = find_rank1_2x3(m, tol);
            else throw structural_error("detect kind must be h2, h3 or rank1");
            Json j;
            j["kind"] = arg_kind;
            j["count"] = locs.size();
            Json arr = Json::array();
            for (const auto& l : locs) arr.push_back(location_to_json(l));
            j["locations"] = std::move(arr);
            emit(j);
            return locs.empty() ? kExitNegative : kExitOk;
        }
        if (*c_equiv) {
            const CMatrix a = load_matrix(arg_a, tol);
            const CMatrix b = load_matrix(arg_b, tol);
            const auto w = are_equivalent(a, b, tol);
            if (!w) {
                Json j;
                j["equivalent"] = false;
                emit(j);
                return kExitNegative;
            }
            Json j = witness_to_json(*w);
            j["max_deviation"] = witness_deviation(a, b, *w);
            emit(j);
            return kExitOk;
        }
        if (*c_match) {
            const CMatrix m = load_matrix(arg_a, tol);
            const auto fam = match_h_family(m, tol);
            if (!fam) {
                Json j;
                j["member"] = false;
                emit(j);
                return kExitNegative;
            }
            Json j;
            j["alpha"] = unit_to_json(fam->params.alpha);
            j["beta"] = unit_to_json(fam->params.beta);
            j["witness"] = witness_to_json(fam->witness);
            emit(j);
            return kExitOk;
        }
        if (*c_alpha) {
            std::vector<UnitScalar> elems;
            std::string cur;
            std::istringstream ss(arg_elements);
            while (std::getline(ss, cur, ',')) elems.push_back(parse_angle_turns(cur));
            SearchReport rep;
            rep.parameter = "alphabet {" + arg_elements + "} (turns)";
            rep.samples_scanned = 1;
            rep.matrices_found = find_chm_cliques(Alphabet::of(elems, tol), tol);
            rep.finalize();
            emit(reports_to_json("search-alphabet", {rep}));
            return kExitOk;
        }
        if (*c_two) {
            const auto reports = scan_two_element(circle_samples(arg_samples_two, false), tol);
            const Json j = reports_to_json("scan-two", reports);
            emit(j);
            return j.at("counterexample").get<bool>() ? kExitCounterexample : kExitOk;
        }
        if (*c_three) {
            auto samples = circle_samples(arg_samples_three, true);
            samples.push_back(UnitScalar::i_unit());
            samples.push_back(-UnitScalar::i_unit());
            const auto reports = scan_three_element(samples, tol);
            const Json j = reports_to_json("scan-three", reports);
            emit(j);
            return j.at("counterexample").get<bool>() ? kExitCounterexample : kExitOk;
        }
        if (*c_karl) {
            const auto comma = arg_grid.find(',');
            if (comma == std::string::npos) throw structural_error("--grid expects T,P");
            const int nt = std::stoi(arg_grid.substr(0, comma));
            const int np = std::stoi(arg_grid.substr(comma + 1));
            if (nt <= 0 || np <= 0) throw structural_error("--grid sizes must be positive");
            std::vector<double> thetas, phis;
            for (int t = 0; t < nt; ++t)
                thetas.push_back(std::numbers::pi_v<double> * t / nt);
            for (int p = 0; p < np; ++p)
                phis.push_back(std::numbers::pi_v<double> * p / np);
            const std::uint64_t seed = seed_or_env(arg_seed);
            const SearchReport rep = karlsson_grid_scan(thetas, phis, arg_zdraws, seed, tol);
            emit(reports_to_json("scan-karlsson", {rep}, seed));
            return rep.counterexample ? kExitCounterexample : kExitOk;
        }
        if (*c_h3) {
            const CMatrix m = load_matrix(arg_a, tol);
            const H3Outcome out = classify_h3(m, tol);
            Json j;
            switch (out.kind) {
                case H3Class::NoH3Block: j["classification"] = "NoH3Block"; break;
                case H3Class::EquivTao: j["classification"] = "EquivTao"; break;
                case H3Class::HFamilyMember: j["classification"] = "HFamilyMember"; break;
            }
            if (out.params) {
                j["alpha"] = unit_to_json(out.params->alpha);
                j["beta"] = unit_to_json(out.params->beta);
            }
            if (out.witness) j["witness"] = witness_to_json(*out.witness);
            emit(j);
            return out.kind == H3Class::NoH3Block ? kExitNegative : kExitOk;
        }
        if (*c_report) {
            std::cout << render_report_text(parse_json(read_source(arg_a)));
            return kExitOk;
        }
    } catch (const counterexample_error& e) {
        Json j;
        j["counterexample"] = true;
        j["detail"] = e.what();
        emit(j);
        std::cerr << "counterexample: " << e.what() << "\n";
        return kExitCounterexample;
    } catch (const inconsistency_error& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return kExitInconsistent;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
