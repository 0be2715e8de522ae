#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "steklov/report.hpp"

using namespace steklov;
using Catch::Approx;

TEST_CASE("report header")
{
    Json h = report_header("a b 1\n");
    CHECK(h["tool_version"] == kToolVersion);
    std::string hash = h["input_hash"];
    CHECK(hash.size() == 16);
    // stable across calls, sensitive to the input bytes
    CHECK(report_header("a b 1\n")["input_hash"] == hash);
    CHECK(report_header("a b 2\n")["input_hash"] != hash);
    // FNV-1a of the empty string is the offset basis
    CHECK(report_header("")["input_hash"] == "cbf29ce484222325");
}

TEST_CASE("spectrum report JSON")
{
    BoundaryProblem bp = fixtures::p6();
    DtnOperator op = assemble_dtn(bp);
    SpectrumReport rep = spectrum(op);
    Json j = spectrum_report_json(bp, op, rep, false);

    CHECK(j["boundary_order"] == Json::array({"v1", "v6"}));
    CHECK(j["eigenvalues"].size() == 2);
    CHECK(double(j["lambda1"]) == Approx(0.4).margin(1e-10));
    CHECK(j["multiplicity_zero"] == 1);
    CHECK(j["dim_E1"] == 0);
    CHECK(j["components"] == 1);
    CHECK_FALSE(j.contains("eigenvectors"));

    Json jv = spectrum_report_json(bp, op, rep, true);
    REQUIRE(jv.contains("eigenvectors"));
    CHECK(jv["eigenvectors"].size() == 2);
    CHECK(jv["eigenvectors"][0].size() == 2);
}

TEST_CASE("Cheeger result JSON")
{
    BoundaryProblem gn = hub_fan_problem(1);
    CheegerResult r = cheeger_exact(gn, CheegerKind::escobar);
    Json j = cheeger_result_json(gn, r);
    CHECK(j["kind"] == "escobar");
    CHECK(double(j["value"]) == 0.5);
    CHECK(j["exact"] == true);
    CHECK(j["witness"].is_array());
    CHECK_FALSE(j["witness"].empty());
}

TEST_CASE("bounds report JSON")
{
    BoundaryProblem bp = fixtures::p6();
    Json j = bounds_report_json(bp, verify_all(bp));
    CHECK(double(j["lambda1"]) == Approx(0.4).margin(1e-10));
    CHECK(double(j["h_E"]) == 1.0);
    CHECK(double(j["jammes_lower"]) == Approx(0.1).margin(1e-12));
    CHECK(j["passed"] == true);
    CHECK(j["constants_exact"] == true);
    CHECK(j["residuals"].contains("upper_2hE"));
    CHECK(j["residuals"]["upper_2hE"]["checked"] == true);

    Json jd = bounds_report_json(fixtures::two_paths(),
                                 verify_all(fixtures::two_paths()));
    CHECK(jd["zeta1"].is_null());
}

TEST_CASE("serialization is deterministic")
{
    BoundaryProblem bp = fixtures::p6();
    DtnOperator op = assemble_dtn(bp);
    std::string a = spectrum_report_json(bp, op, spectrum(op), true).dump(2);
    std::string b = spectrum_report_json(bp, op, spectrum(op), true).dump(2);
    CHECK(a == b);

    std::string c = bounds_report_json(bp, verify_all(bp)).dump(2);
    std::string d = bounds_report_json(bp, verify_all(bp)).dump(2);
    CHECK(c == d);
}
