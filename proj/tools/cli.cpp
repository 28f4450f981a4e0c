#include "cli.hpp"

#include "idp/baselines.hpp"
#include "idp/core_stats.hpp"
#include "idp/idp.hpp"
#include "idp/report.hpp"
#include "idp/simulation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace idp::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_real(std::string_view token) {
    double value = 0.0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || end != token.data() + token.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

}  // namespace

Sample parse_sample(const std::string& text, const std::string& origin) {
    std::vector<double> values;
    std::istringstream lines(text);
    std::string line;
    std::size_t line_no = 0;
    bool seen_content = false;
    while (std::getline(lines, line)) {
        ++line_no;
        const auto token = trim(line);
        if (token.empty() || token.front() == '#') continue;
        const auto value = parse_real(token);
        if (!value) {
            if (!seen_content) {
                seen_content = true;  // header
                continue;
            }
            throw InputError(origin + ":" + std::to_string(line_no) + ": not a finite real: '" +
                             std::string(token) + "'");
        }
        seen_content = true;
        values.push_back(*value);
    }
    if (values.empty()) throw InputError(origin + ": no observations");
    return Sample(std::move(values));
}

Sample read_sample_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sample(buf.str(), path);
}

namespace {

struct PriorOptions {
    std::optional<double> s;
    std::optional<double> rho;

    double resolve() const {
        if (rho) return choose_s(*rho);
        return s.value_or(kDefaultPriorStrength);
    }
};

void add_prior_options(CLI::App& cmd, PriorOptions& prior) {
    auto* s = cmd.add_option("--s", prior.s, "Prior strength s >= 0 (default sqrt(2) - 1)");
    auto* rho = cmd.add_option("--rho", prior.rho, "Imprecision after one observation pair, in (0, 1)");
    s->excludes(rho);
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InputError("cannot write '" + path + "'");
    file << content;
    if (!file) throw InputError("failed writing '" + path + "'");
}

int exit_code(Outcome outcome) {
    switch (outcome) {
        case Outcome::Greater: return kExitGreater;
        case Outcome::NotGreater: return kExitNotGreater;
        case Outcome::Indeterminate: return kExitIndeterminate;
    }
    return kExitUsageError;
}

std::vector<TestKind> parse_test_list(const std::string& list) {
    std::vector<TestKind> tests;
    std::stringstream ss(list);
    std::string name;
    while (std::getline(ss, name, ',')) {
        const auto token = std::string(trim(name));
        if (token.empty()) continue;
        const TestKind kind = parse_test_kind(token);
        if (std::find(tests.begin(), tests.end(), kind) == tests.end()) tests.push_back(kind);
    }
    if (tests.empty()) throw ArgumentError("--tests must name at least one test");
    return tests;
}

struct TestCommand {
    std::string x_path;
    std::string y_path;
    PriorOptions prior;
    double gamma = 0.05;
    double c = 0.5;
    std::size_t mc_samples = 20000;
    std::uint64_t seed = 0;
    std::string ties = "midrank";
    std::string approx = "mc";
    std::string format = "text";
    int threads = 0;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("test", "Run the IDP rank-sum test on two data files");
        cmd->add_option("--x", x_path, "File with the X sample")->required();
        cmd->add_option("--y", y_path, "File with the Y sample")->required();
        add_prior_options(*cmd, prior);
        cmd->add_option("--gamma", gamma, "Loss ratio K0/(K0+K1); decide 'greater' above 1 - gamma");
        cmd->add_option("--c", c, "Hypothesis threshold: P(X <= Y) > c");
        cmd->add_option("--mc-samples", mc_samples, "Monte-Carlo draws");
        cmd->add_option("--seed", seed, "Random seed");
        cmd->add_option("--ties", ties, "strict | midrank");
        cmd->add_option("--approx", approx, "mc | normal");
        cmd->add_option("--format", format, "text | json | csv");
        cmd->add_option("--threads", threads, "OpenMP threads (0 = default)");
    }

    int execute(std::ostream& out) const {
        TestConfig config;
        config.s = prior.resolve();
        config.gamma = gamma;
        config.c = c;
        config.mc_samples = mc_samples;
        config.seed = seed;
        config.ties = parse_tie_mode(ties);
        config.approx = parse_approximation(approx);
        config.threads = threads;
        config.validate();
        const ReportFormat fmt = parse_report_format(format);

        const Sample x = read_sample_file(x_path);
        const Sample y = read_sample_file(y_path);

        TestReport report;
        report.n1 = x.size();
        report.n2 = y.size();
        report.u = u_statistic(x, y, config.ties);
        report.decision = idp_decide(x, y, config);
        report.mww = mww_test(x, y, config.gamma);
        report.bb = bb_test(x, y, config.gamma, config.c, config.mc_samples, config.seed, config.ties,
                            config.threads);
        out << format_test_report(report, fmt);
        return exit_code(report.decision.outcome);
    }
};

struct SimulateCommand {
    double delta_min = -1.5;
    double delta_max = 1.5;
    std::size_t steps = 31;
    std::size_t n1 = 20;
    std::size_t n2 = 20;
    std::size_t runs = 2000;
    std::optional<double> gamma;
    std::optional<double> k0;
    std::optional<double> k1;
    std::string tests = "idp,mww,bbdp,fiftyfifty";
    std::string generator = "gaussian-shift";
    double df = 3.0;
    double sigma = 1.0;
    PriorOptions prior;
    std::size_t mc_samples = 20000;
    std::uint64_t seed = 0;
    std::string ties = "midrank";
    std::string approx = "mc";
    std::string format = "csv";
    std::string out_path;
    int shards = 0;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("simulate", "Run the location-shift Monte-Carlo experiment");
        cmd->add_option("--delta-min", delta_min, "Smallest shift");
        cmd->add_option("--delta-max", delta_max, "Largest shift");
        cmd->add_option("--steps", steps, "Number of grid points");
        cmd->add_option("--n1", n1, "X sample size");
        cmd->add_option("--n2", n2, "Y sample size");
        cmd->add_option("--runs", runs, "Monte-Carlo runs per shift");
        cmd->add_option("--gamma", gamma, "Loss ratio K0/(K0+K1)");
        cmd->add_option("--k0", k0, "Loss of missing a true 'greater'");
        cmd->add_option("--k1", k1, "Loss of a false 'greater'");
        cmd->add_option("--tests", tests, "Comma list of idp, mww, bbdp, fiftyfifty");
        cmd->add_option("--generator", generator, "gaussian-shift | student-t-shift | gaussian-scale");
        cmd->add_option("--df", df, "Degrees of freedom for student-t-shift");
        cmd->add_option("--sigma", sigma, "Y standard deviation for gaussian-scale");
        add_prior_options(*cmd, prior);
        cmd->add_option("--mc-samples", mc_samples, "Monte-Carlo draws per posterior");
        cmd->add_option("--seed", seed, "Master seed");
        cmd->add_option("--ties", ties, "strict | midrank");
        cmd->add_option("--approx", approx, "mc | normal");
        cmd->add_option("--format", format, "csv | json");
        cmd->add_option("--out", out_path, "Output file (default stdout)");
        cmd->add_option("--shards", shards, "Parallel shards (0 = OpenMP default)");
    }

    ExperimentSpec build_spec() const {
        ExperimentSpec spec;
        spec.delta_grid = delta_range(delta_min, delta_max, steps);
        spec.n1 = n1;
        spec.n2 = n2;
        spec.runs = runs;
        if (k0 || k1) {
            spec.k0 = k0.value_or(1.0);
            spec.k1 = k1.value_or(1.0);
            spec.gamma = gamma.value_or(spec.k0 / (spec.k0 + spec.k1));
        } else if (gamma) {
            spec.gamma = *gamma;
            spec.k0 = *gamma;
            spec.k1 = 1.0 - *gamma;
        }
        spec.s = prior.resolve();
        spec.mc_samples = mc_samples;
        spec.seed = seed;
        spec.generator.kind = parse_generator_kind(generator);
        spec.generator.df = df;
        spec.generator.sigma = sigma;
        spec.tests = parse_test_list(tests);
        spec.ties = parse_tie_mode(ties);
        spec.approx = parse_approximation(approx);
        spec.validate();
        return spec;
    }

    int execute(std::ostream& out) const {
        const ExperimentSpec spec = build_spec();
        const ReportFormat fmt = parse_report_format(format);
        if (fmt == ReportFormat::Text) throw ArgumentError("simulate supports csv and json formats");
        if (shards < 0) throw ArgumentError("--shards must be >= 0");
        write_output(out_path, emit_tables(run_experiment(spec, shards), fmt), out);
        return 0;
    }
};

struct PosteriorCommand {
    std::string x_path;
    std::string y_path;
    PriorOptions prior;
    std::size_t mc_samples = 20000;
    std::uint64_t seed = 0;
    std::string ties = "midrank";
    std::string format = "csv";
    std::string out_path;
    int threads = 0;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("posterior", "Dump paired lower/upper posterior draws of P(X <= Y)");
        cmd->add_option("--x", x_path, "File with the X sample")->required();
        cmd->add_option("--y", y_path, "File with the Y sample")->required();
        add_prior_options(*cmd, prior);
        cmd->add_option("--mc-samples", mc_samples, "Number of draws");
        cmd->add_option("--seed", seed, "Random seed");
        cmd->add_option("--ties", ties, "strict | midrank");
        cmd->add_option("--format", format, "csv | json");
        cmd->add_option("--out", out_path, "Output file")->required();
        cmd->add_option("--threads", threads, "OpenMP threads (0 = default)");
    }

    int execute(std::ostream& out) const {
        TestConfig config;
        config.s = prior.resolve();
        config.mc_samples = mc_samples;
        config.seed = seed;
        config.ties = parse_tie_mode(ties);
        config.threads = threads;
        config.validate();
        const ReportFormat fmt = parse_report_format(format);
        if (fmt == ReportFormat::Text) throw ArgumentError("posterior supports csv and json formats");

        const Sample x = read_sample_file(x_path);
        const Sample y = read_sample_file(y_path);
        write_output(out_path, format_posterior_draws(posterior_samples(x, y, config), fmt), out);
        return 0;
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Imprecise Dirichlet Process rank-sum test"};
    app.name("idp");
    app.require_subcommand(1);

    TestCommand test;
    SimulateCommand simulate;
    PosteriorCommand posterior;
    test.attach(app);
    simulate.attach(app);
    posterior.attach(app);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "idp: " << e.what() << '\n';
        if (app.get_subcommands().size() == 1) err << app.get_subcommands().front()->help();
        return kExitUsageError;
    }

    try {
        if (app.got_subcommand("test")) return test.execute(out);
        if (app.got_subcommand("simulate")) return simulate.execute(out);
        return posterior.execute(out);
    } catch (const InputError& e) {
        err << "idp: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        err << "idp: " << e.what() << '\n';
        return kExitUsageError;
    } catch (const std::length_error& e) {
        err << "idp: " << e.what() << '\n';
        return kExitUsageError;
    }
}

}  // namespace idp::cli
