#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include "weylheat/report.hpp"

using namespace weylheat;

namespace {

Report sample_report() {
    Report rep;
    rep.command = "scan --check neu-i24";
    rep.config = {{"n", "100"}, {"seed", "7"}};
    CheckRecord rec;
    rec.name = "neu-i24";
    rec.anchor = "neumann-sharp-bound";
    rec.status = "pass";
    rec.value("min_ratio", 1.0);
    rec.value("max_ratio", 7.3260129999999997);
    rec.value("odd", 0.1);
    rec.witnesses.emplace_back("argmax", Vec{0.5, 0.25, 1e-300});
    rec.refinement_history.push_back({100.0, 1.0, 7.3});
    rec.note = "quoted \"text\" and a\nnewline";
    rec.runtime_ms = 12.5;
    rep.records.push_back(rec);
    rep.records.push_back(CheckRecord{"empty", "plumbing", "measured", {}, {}, {}, "", 0.0});
    return rep;
}

}  // namespace

TEST_CASE("JSON report round-trips with value equality") {
    Report rep = sample_report();
    std::string s = to_json(rep);
    auto j = nlohmann::json::parse(s);
    CHECK(j["schema_version"] == "1");
    CHECK(j["command"] == "scan --check neu-i24");
    CHECK(j["config"]["n"] == "100");
    REQUIRE(j["records"].size() == 2);
    auto& r0 = j["records"][0];
    CHECK(r0["name"] == "neu-i24");
    CHECK(r0["paper_anchor"] == "neumann-sharp-bound");
    CHECK(r0["status"] == "pass");
    CHECK(r0["values"]["max_ratio"].get<double>() == 7.3260129999999997);
    CHECK(r0["values"]["odd"].get<double>() == 0.1);
    CHECK(r0["witnesses"][0]["point"][2].get<double>() == 1e-300);
    CHECK(r0["note"].get<std::string>() == "quoted \"text\" and a\nnewline");
    CHECK(r0["runtime_ms"].get<double>() == 12.5);
    // empty record is valid JSON with empty collections
    CHECK(j["records"][1]["values"].empty());
    CHECK(j["records"][1]["witnesses"].empty());
}

TEST_CASE("empty report is valid JSON with zero records") {
    Report rep;
    rep.command = "scan";
    auto j = nlohmann::json::parse(to_json(rep));
    CHECK(j["records"].empty());
    CHECK(j["schema_version"] == "1");
}

TEST_CASE("JSON emission is deterministic and runtime can be excluded") {
    Report rep = sample_report();
    CHECK(to_json(rep) == to_json(rep));
    std::string without = to_json(rep, false);
    CHECK(without.find("runtime_ms") == std::string::npos);

    Report rep2 = sample_report();
    rep2.records[0].runtime_ms = 99.0;  // different runtimes, same payload
    CHECK(to_json(rep, false) == to_json(rep2, false));
}

TEST_CASE("numbers carry 17 significant digits") {
    CHECK(report_detail::json_number(0.1) == "0.10000000000000001");
    CHECK(report_detail::json_number(1.0) == "1");
    CHECK(report_detail::json_number(std::numeric_limits<double>::infinity()) == "null");
    // round trip through parse restores the exact double
    double v = 7.3260129999999997;
    auto j = nlohmann::json::parse(report_detail::json_number(v));
    CHECK(j.get<double>() == v);
}

TEST_CASE("CSV export") {
    SampleTable t;
    t.columns = {"x", "ratio"};
    t.rows = {{0.5, 1.25}, {2.0, 0.1}};
    std::string csv = to_csv(t);
    CHECK(csv == "x,ratio\n0.5,1.25\n2,0.10000000000000001\n");

    SampleTable empty;
    empty.columns = {"a"};
    CHECK(to_csv(empty) == "a\n");
}

TEST_CASE("reports built from real checks serialize cleanly") {
    GridSpec grid;
    grid.n = 400;
    Report rep;
    rep.command = "verify --suite series";
    for (const auto& name : suite_checks("series")) rep.records.push_back(run_check(name, grid));
    auto j = nlohmann::json::parse(to_json(rep));
    CHECK(j["records"].size() == 1);
    CHECK(j["records"][0]["status"] == "pass");
}
