#include "idp/report.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

using namespace idp;

namespace {

ExperimentResult tiny_result() {
    ExperimentSpec spec;
    spec.delta_grid = {0.0, 0.25};
    spec.n1 = 6;
    spec.n2 = 5;
    spec.runs = 12;
    spec.mc_samples = 300;
    spec.seed = 5;
    return run_experiment(spec, 1);
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("number formatting round-trips") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1.0) == "1");
    CHECK(std::stod(format_number(0.1 + 0.2)) == 0.1 + 0.2);
    CHECK(std::stod(format_number(std::sqrt(2.0) - 1.0)) == std::sqrt(2.0) - 1.0);
}

TEST_CASE("csv tables") {
    const ExperimentResult r = tiny_result();
    const auto rows = lines(emit_tables(r, ReportFormat::Csv));
    REQUIRE(!rows.empty());
    CHECK(rows.front() == "delta,test,metric,value,runs,seed");
    // IDP carries 9 metrics, the other tests 6.
    CHECK(rows.size() == 1 + 2 * (9 + 3 * 6));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::count(rows[i].begin(), rows[i].end(), ',') == 5);
        CHECK(rows[i].ends_with(",12,5"));
    }
    CHECK(rows[1].starts_with("0,idp,accuracy,"));
}

TEST_CASE("single-cell experiments emit rows for that cell only") {
    ExperimentSpec spec;
    spec.delta_grid = {0.5};
    spec.n1 = spec.n2 = 5;
    spec.runs = 3;
    spec.mc_samples = 200;
    spec.tests = {TestKind::MWW};
    const auto rows = lines(emit_tables(run_experiment(spec, 1), ReportFormat::Csv));
    CHECK(rows.size() == 1 + 6);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].starts_with("0.5,mww,"));
}

TEST_CASE("json tables round-trip") {
    const ExperimentResult r = tiny_result();
    const std::string text = emit_tables(r, ReportFormat::Json);
    CHECK(parse_tables_json(text) == r);
    CHECK_THROWS_AS(parse_tables_json("{not json"), ArgumentError);
    CHECK_THROWS_AS(emit_tables(r, ReportFormat::Text), ArgumentError);
}

TEST_CASE("format names") {
    CHECK(parse_report_format("csv") == ReportFormat::Csv);
    CHECK(parse_report_format("json") == ReportFormat::Json);
    CHECK(parse_report_format("text") == ReportFormat::Text);
    CHECK_THROWS_AS(parse_report_format("xml"), ArgumentError);
}

TEST_CASE("posterior draws") {
    PosteriorDraws d{{0.25, 0.5}, {0.75, 1.0}};
    CHECK(format_posterior_draws(d, ReportFormat::Csv) == "g_low,g_up\n0.25,0.75\n0.5,1\n");
    CHECK(format_posterior_draws(d, ReportFormat::Json) == "{\"g_low\":[0.25,0.5],\"g_up\":[0.75,1.0]}\n");
    CHECK_THROWS_AS(format_posterior_draws(d, ReportFormat::Text), ArgumentError);
}
