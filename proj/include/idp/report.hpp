#pragma once

#include "idp/baselines.hpp"
#include "idp/core_stats.hpp"
#include "idp/idp.hpp"
#include "idp/simulation.hpp"

#include <string>

namespace idp {

enum class ReportFormat { Text, Csv, Json };

ReportFormat parse_report_format(const std::string& name);

/// Shortest decimal string that parses back to the same double.
std::string format_number(double value);

/// Experiment tables: CSV with header `delta,test,metric,value,runs,seed`,
/// one row per (delta, test, metric); JSON carries the same rows plus the
/// experiment spec under "meta". Text is not a valid table format.
std::string emit_tables(const ExperimentResult& result, ReportFormat format);

/// Inverse of emit_tables(result, ReportFormat::Json).
ExperimentResult parse_tables_json(const std::string& text);

/// Everything `idp test` reports for one dataset.
struct TestReport {
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    double u = 0.0;
    Decision decision;
    MwwResult mww;
    BbResult bb;
};

/// Text (`key: value`), CSV (`field,value`) or JSON; all three carry the same
/// numeric strings.
std::string format_test_report(const TestReport& report, ReportFormat format);

/// Posterior dump: CSV `g_low,g_up` or JSON {"g_low": [...], "g_up": [...]}.
std::string format_posterior_draws(const PosteriorDraws& draws, ReportFormat format);

}  // namespace idp
