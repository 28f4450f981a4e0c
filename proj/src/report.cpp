#include "idp/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>
#include <utility>
#include <vector>

namespace idp {

using nlohmann::json;

ReportFormat parse_report_format(const std::string& name) {
    if (name == "text") return ReportFormat::Text;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    throw ArgumentError("unknown format '" + name + "'");
}

std::string format_number(double value) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc()) throw ArgumentError("cannot format number");
    return std::string(buf.data(), end);
}

namespace {

struct MetricRow {
    std::string name;
    double value;
};

std::vector<MetricRow> cell_metrics(const CellResult& cell, const ExperimentSpec& spec) {
    const bool idp = cell.test == TestKind::IDP;
    std::vector<MetricRow> rows{
        {"accuracy", cell.accuracy()},
        {"error", cell.error()},
        {"power", cell.power()},
        {"mean_loss", cell.mean_loss(spec.k0, spec.k1)},
    };
    if (idp) {
        rows.push_back({"indeterminacy", cell.indeterminacy()});
        rows.push_back({"determinate_accuracy", cell.determinate_accuracy()});
    }
    rows.push_back({"greater", static_cast<double>(cell.greater)});
    rows.push_back({"not_greater", static_cast<double>(cell.not_greater)});
    if (idp) rows.push_back({"indeterminate", static_cast<double>(cell.indeterminate)});
    return rows;
}

json spec_to_json(const ExperimentSpec& spec) {
    json tests = json::array();
    for (TestKind t : spec.tests) tests.push_back(to_string(t));
    return json{
        {"delta_grid", spec.delta_grid},
        {"n1", spec.n1},
        {"n2", spec.n2},
        {"runs", spec.runs},
        {"gamma", spec.gamma},
        {"k0", spec.k0},
        {"k1", spec.k1},
        {"s", spec.s},
        {"mc_samples", spec.mc_samples},
        {"seed", spec.seed},
        {"generator",
         {{"name", to_string(spec.generator.kind)}, {"df", spec.generator.df}, {"sigma", spec.generator.sigma}}},
        {"tests", tests},
        {"ties", to_string(spec.ties)},
        {"approx", to_string(spec.approx)},
    };
}

ExperimentSpec spec_from_json(const json& j) {
    ExperimentSpec spec;
    spec.delta_grid = j.at("delta_grid").get<std::vector<double>>();
    spec.n1 = j.at("n1").get<std::size_t>();
    spec.n2 = j.at("n2").get<std::size_t>();
    spec.runs = j.at("runs").get<std::size_t>();
    spec.gamma = j.at("gamma").get<double>();
    spec.k0 = j.at("k0").get<double>();
    spec.k1 = j.at("k1").get<double>();
    spec.s = j.at("s").get<double>();
    spec.mc_samples = j.at("mc_samples").get<std::size_t>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    const json& g = j.at("generator");
    spec.generator.kind = parse_generator_kind(g.at("name").get<std::string>());
    spec.generator.df = g.at("df").get<double>();
    spec.generator.sigma = g.at("sigma").get<double>();
    spec.tests.clear();
    for (const auto& t : j.at("tests")) spec.tests.push_back(parse_test_kind(t.get<std::string>()));
    spec.ties = parse_tie_mode(j.at("ties").get<std::string>());
    spec.approx = parse_approximation(j.at("approx").get<std::string>());
    return spec;
}

}  // namespace

std::string emit_tables(const ExperimentResult& result, ReportFormat format) {
    if (result.cells.empty()) throw ArgumentError("experiment result has no cells");
    const ExperimentSpec& spec = result.spec;

    if (format == ReportFormat::Csv) {
        std::ostringstream out;
        out << "delta,test,metric,value,runs,seed\n";
        for (const CellResult& cell : result.cells) {
            for (const MetricRow& row : cell_metrics(cell, spec)) {
                out << format_number(cell.delta) << ',' << to_string(cell.test) << ',' << row.name << ','
                    << format_number(row.value) << ',' << cell.runs << ',' << spec.seed << '\n';
            }
        }
        return out.str();
    }
    if (format == ReportFormat::Json) {
        json rows = json::array();
        for (const CellResult& cell : result.cells) {
            for (const MetricRow& row : cell_metrics(cell, spec)) {
                rows.push_back({{"delta", cell.delta},
                                {"test", to_string(cell.test)},
                                {"metric", row.name},
                                {"value", row.value},
                                {"runs", cell.runs},
                                {"seed", spec.seed}});
            }
        }
        return json{{"meta", spec_to_json(spec)}, {"rows", rows}}.dump(2) + "\n";
    }
    throw ArgumentError("tables support csv and json formats only");
}

ExperimentResult parse_tables_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ArgumentError(std::string("malformed report: ") + e.what());
    }

    ExperimentResult result;
    result.spec = spec_from_json(doc.at("meta"));
    const ExperimentSpec& spec = result.spec;
    for (double delta : spec.delta_grid) {
        for (TestKind t : spec.tests) {
            CellResult cell;
            cell.delta = delta;
            cell.test = t;
            cell.truth = true_hypothesis(spec.generator, delta);
            cell.runs = spec.runs;
            result.cells.push_back(cell);
        }
    }

    for (const json& row : doc.at("rows")) {
        const double delta = row.at("delta").get<double>();
        const TestKind test = parse_test_kind(row.at("test").get<std::string>());
        const std::string metric = row.at("metric").get<std::string>();
        const auto d = std::find(spec.delta_grid.begin(), spec.delta_grid.end(), delta);
        const auto t = std::find(spec.tests.begin(), spec.tests.end(), test);
        if (d == spec.delta_grid.end() || t == spec.tests.end()) {
            throw ArgumentError("report row does not match the experiment grid");
        }
        CellResult& cell = result.cells[static_cast<std::size_t>(d - spec.delta_grid.begin()) * spec.tests.size() +
                                        static_cast<std::size_t>(t - spec.tests.begin())];
        const auto count = static_cast<std::size_t>(row.at("value").get<double>());
        if (metric == "greater") cell.greater = count;
        else if (metric == "not_greater") cell.not_greater = count;
        else if (metric == "indeterminate") cell.indeterminate = count;
    }
    return result;
}

namespace {

std::vector<std::pair<std::string, std::string>> report_fields(const TestReport& r) {
    const Decision& d = r.decision;
    const PosteriorBounds& b = d.bounds;
    const TestConfig& c = d.config;
    return {
        {"outcome", to_string(d.outcome)},
        {"n1", std::to_string(r.n1)},
        {"n2", std::to_string(r.n2)},
        {"u_statistic", format_number(r.u)},
        {"s", format_number(c.s)},
        {"gamma", format_number(c.gamma)},
        {"c", format_number(c.c)},
        {"mc_samples", std::to_string(c.mc_samples)},
        {"seed", std::to_string(c.seed)},
        {"ties", to_string(c.ties)},
        {"approx", to_string(c.approx)},
        {"lower_mean", format_number(b.lower_mean)},
        {"upper_mean", format_number(b.upper_mean)},
        {"lower_var", format_number(b.lower_var)},
        {"upper_var", format_number(b.upper_var)},
        {"lower_prob", format_number(b.lower_prob)},
        {"upper_prob", format_number(b.upper_prob)},
        {"lower_prob_se", format_number(b.lower_prob_se)},
        {"upper_prob_se", format_number(b.upper_prob_se)},
        {"mww_z", format_number(r.mww.z)},
        {"mww_p_value", format_number(r.mww.p_value)},
        {"mww_reject", r.mww.reject ? "true" : "false"},
        {"bb_prob", format_number(r.bb.prob)},
        {"bb_prob_se", format_number(r.bb.se)},
        {"bb_greater", r.bb.greater ? "true" : "false"},
    };
}

bool is_textual(const std::string& key) {
    return key == "outcome" || key == "ties" || key == "approx";
}

}  // namespace

std::string format_test_report(const TestReport& report, ReportFormat format) {
    const auto fields = report_fields(report);
    std::ostringstream out;
    switch (format) {
        case ReportFormat::Text:
            for (const auto& [key, value] : fields) out << key << ": " << value << '\n';
            break;
        case ReportFormat::Csv:
            out << "field,value\n";
            for (const auto& [key, value] : fields) out << key << ',' << value << '\n';
            break;
        case ReportFormat::Json: {
            // Raw numeric strings keep JSON byte-compatible with the other formats.
            out << "{\n";
            for (std::size_t i = 0; i < fields.size(); ++i) {
                const auto& [key, value] = fields[i];
                out << "  \"" << key << "\": ";
                if (is_textual(key)) out << '"' << value << '"';
                else out << value;
                out << (i + 1 < fields.size() ? ",\n" : "\n");
            }
            out << "}\n";
            break;
        }
    }
    return out.str();
}

std::string format_posterior_draws(const PosteriorDraws& draws, ReportFormat format) {
    std::ostringstream out;
    switch (format) {
        case ReportFormat::Csv:
            out << "g_low,g_up\n";
            for (std::size_t i = 0; i < draws.lower.size(); ++i) {
                out << format_number(draws.lower[i]) << ',' << format_number(draws.upper[i]) << '\n';
            }
            break;
        case ReportFormat::Json: {
            out << json{{"g_low", draws.lower}, {"g_up", draws.upper}}.dump() << '\n';
            break;
        }
        case ReportFormat::Text:
            throw ArgumentError("posterior draws support csv and json formats only");
    }
    return out.str();
}

}  // namespace idp
