#include <doctest.h>

#include "chm/catalog.hpp"
#include "chm/io.hpp"
#include "chm/random.hpp"
#include "chm/search.hpp"

using namespace chm;

TEST_SUITE("io") {

TEST_CASE("turn parsing") {
    const Rational r = parse_turns("2/6");
    CHECK(r.num == 1);
    CHECK(r.den == 3);
    CHECK(parse_turns("-1/4").num == 3); // reduced into [0,1)
    CHECK(parse_turns("-1/4").den == 4);
    CHECK_THROWS_AS(parse_turns("x/y"), structural_error);
    CHECK(parse_angle_turns("1/3").exact_turns().has_value());
    CHECK_FALSE(parse_angle_turns("0.25").exact_turns().has_value());
    CHECK(std::abs(parse_angle_turns("0.25").value() - std::complex<double>{0.0, 1.0}) < 1e-12);
}

TEST_CASE("matrix round trip keeps values and exact tags") {
    const CMatrix t = tao();
    const Json j = matrix_to_json(t);
    const CMatrix back = matrix_from_json(j);
    CHECK(entrywise_close(back, t, 1e-15));
    CHECK(back.at(1, 2).exact_turns().has_value());
    CHECK(back.at(1, 2).exact_turns()->den == 3);
}

TEST_CASE("phase_turns is authoritative over re/im") {
    Json j = matrix_to_json(tao());
    // corrupt the floating fields of a tagged entry; the tag must win
    j["entries"][1][2]["re"] = 0.0;
    j["entries"][1][2]["im"] = 0.0;
    const CMatrix back = matrix_from_json(j);
    CHECK(approx_eq(back.at(1, 2), UnitScalar::omega(), 1e-15));
}

TEST_CASE("structural validation of matrix documents") {
    Json j = matrix_to_json(m2());
    Json bad_n = j;
    bad_n["n"] = 5;
    CHECK_THROWS_AS(matrix_from_json(bad_n), structural_error);
    Json bad_rows = j;
    bad_rows["entries"].erase(5);
    CHECK_THROWS_AS(matrix_from_json(bad_rows), structural_error);
    Json bad_entry = j;
    bad_entry["entries"][0][0] = Json::object();
    CHECK_THROWS_AS(matrix_from_json(bad_entry), structural_error);
    Json not_unimodular = j;
    not_unimodular["entries"][0][0] = {{"re", 2.0}, {"im", 0.0}};
    CHECK_THROWS_AS(matrix_from_json(not_unimodular), domain_error);
}

TEST_CASE("witness documents round trip") {
    Rng rng(901);
    const EquivalenceWitness w{rng.monomial(), rng.monomial()};
    const EquivalenceWitness back = witness_from_json(witness_to_json(w));
    for (int k = 0; k < kOrder; ++k) {
        CHECK(back.left.perm[static_cast<size_t>(k)] == w.left.perm[static_cast<size_t>(k)]);
        CHECK(back.right.perm[static_cast<size_t>(k)] == w.right.perm[static_cast<size_t>(k)]);
        CHECK(approx_eq(back.left.phases[static_cast<size_t>(k)],
                        w.left.phases[static_cast<size_t>(k)], 1e-12));
        CHECK(approx_eq(back.right.phases[static_cast<size_t>(k)],
                        w.right.phases[static_cast<size_t>(k)], 1e-12));
    }
    Json mangled = witness_to_json(w);
    mangled["perm_left"][0] = 9;
    CHECK_THROWS_AS(witness_from_json(mangled), structural_error);
}

TEST_CASE("report serialization and rendering") {
    const auto reports = scan_two_element({UnitScalar::i_unit(), UnitScalar::minus_one()});
    const Json j = reports_to_json("scan-two", reports);
    CHECK(j.at("kind") == "scan-two");
    CHECK(j.at("counterexample") == false);
    CHECK(j.at("reports").size() == 2);
    const std::string text = render_report_text(j);
    CHECK(text.find("kind: scan-two") != std::string::npos);
    CHECK(text.find("found 0") != std::string::npos);
    // classifications serialize by name
    SearchReport rep;
    rep.parameter = "demo";
    rep.matrices_found.push_back(m2());
    rep.classifications.push_back(Classification::EquivM2);
    rep.finalize();
    const Json jr = report_to_json(rep);
    CHECK(jr.at("classifications")[0] == "EquivM2");
    CHECK(jr.at("counterexample") == false);
}

} // TEST_SUITE
