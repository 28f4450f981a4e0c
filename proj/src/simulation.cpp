#include "idp/simulation.hpp"

#include "idp/baselines.hpp"
#include "idp/rng.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

namespace idp {

std::string to_string(TestKind kind) {
    switch (kind) {
        case TestKind::IDP: return "idp";
        case TestKind::MWW: return "mww";
        case TestKind::BBDP: return "bbdp";
        case TestKind::FiftyFifty: return "fiftyfifty";
    }
    return "unknown";
}

TestKind parse_test_kind(const std::string& name) {
    if (name == "idp") return TestKind::IDP;
    if (name == "mww") return TestKind::MWW;
    if (name == "bbdp") return TestKind::BBDP;
    if (name == "fiftyfifty") return TestKind::FiftyFifty;
    throw ArgumentError("unknown test '" + name + "'");
}

std::string to_string(Generator::Kind kind) {
    switch (kind) {
        case Generator::Kind::GaussianShift: return "gaussian-shift";
        case Generator::Kind::StudentTShift: return "student-t-shift";
        case Generator::Kind::GaussianScale: return "gaussian-scale";
    }
    return "unknown";
}

Generator::Kind parse_generator_kind(const std::string& name) {
    if (name == "gaussian-shift") return Generator::Kind::GaussianShift;
    if (name == "student-t-shift") return Generator::Kind::StudentTShift;
    if (name == "gaussian-scale") return Generator::Kind::GaussianScale;
    throw ArgumentError("unknown generator '" + name + "'");
}

void Generator::validate() const {
    if (kind == Kind::StudentTShift && !(df > 0.0 && std::isfinite(df))) {
        throw ArgumentError("student-t degrees of freedom must be positive");
    }
    if (kind == Kind::GaussianScale && !(sigma > 0.0 && std::isfinite(sigma))) {
        throw ArgumentError("gaussian-scale sigma must be positive");
    }
}

void ExperimentSpec::validate() const {
    if (delta_grid.empty()) throw ArgumentError("delta grid must not be empty");
    for (double d : delta_grid) {
        if (!std::isfinite(d)) throw ArgumentError("delta values must be finite");
    }
    if (n1 == 0 || n2 == 0) throw ArgumentError("sample sizes must be >= 1");
    if (runs == 0) throw ArgumentError("runs must be >= 1");
    if (!(k0 >= 0.0 && k1 >= 0.0) || !(k0 + k1 > 0.0)) throw ArgumentError("loss weights must be >= 0 with K0 + K1 > 0");
    if (!(gamma > 0.0 && gamma < 1.0)) throw ArgumentError("gamma must lie in (0, 1)");
    if (std::abs(gamma - k0 / (k0 + k1)) >= 1e-12) throw ArgumentError("gamma must equal K0 / (K0 + K1)");
    if (!(s >= 0.0) || !std::isfinite(s)) throw ArgumentError("s must be finite and >= 0");
    if (mc_samples < kMinMonteCarloSamples) throw ArgumentError("mc_samples must be >= 100");
    if (tests.empty()) throw ArgumentError("at least one test must be requested");
    generator.validate();
}

std::vector<double> delta_range(double min, double max, std::size_t steps) {
    if (steps == 0) throw ArgumentError("steps must be >= 1");
    if (!(min <= max)) throw ArgumentError("delta-min must not exceed delta-max");
    std::vector<double> grid(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        grid[i] = steps == 1 ? min : min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    return grid;
}

double CellResult::accuracy() const {
    return static_cast<double>(correct()) / static_cast<double>(runs);
}

double CellResult::power() const {
    return static_cast<double>(greater) / static_cast<double>(runs);
}

double CellResult::mean_loss(double k0, double k1) const {
    const double total = truth ? k0 * static_cast<double>(not_greater) : k1 * static_cast<double>(greater);
    return total / static_cast<double>(runs);
}

double CellResult::indeterminacy() const {
    return static_cast<double>(indeterminate) / static_cast<double>(runs);
}

double CellResult::determinate_accuracy() const {
    const std::size_t determinate = runs - indeterminate;
    return determinate == 0 ? 0.0 : static_cast<double>(correct()) / static_cast<double>(determinate);
}

const CellResult& ExperimentResult::cell(std::size_t delta_index, TestKind test) const {
    const auto& tests = spec.tests;
    const auto it = std::find(tests.begin(), tests.end(), test);
    if (it == tests.end()) throw ArgumentError("test not part of this experiment");
    return cells.at(delta_index * tests.size() + static_cast<std::size_t>(it - tests.begin()));
}

double loss_eval(bool true_hypothesis, bool action, double k0, double k1) {
    if (!(k0 >= 0.0 && k1 >= 0.0)) throw ArgumentError("loss weights must be >= 0");
    if (true_hypothesis && !action) return k0;
    if (!true_hypothesis && action) return k1;
    return 0.0;
}

bool true_hypothesis(const Generator& generator, double delta) {
    generator.validate();
    // Every supported model is a shift of a distribution symmetric about zero
    // for Y - X, so P(X <= Y) > 1/2 exactly when delta > 0.
    return delta > 0.0;
}

namespace {

enum class RunOutcome : std::uint8_t { NotGreater, Greater, Indeterminate };

RunOutcome from_action(bool greater) {
    return greater ? RunOutcome::Greater : RunOutcome::NotGreater;
}

std::pair<Sample, Sample> generate(const Generator& generator, double delta, std::size_t n1,
                                   std::size_t n2, Engine& rng) {
    std::vector<double> x(n1);
    std::vector<double> y(n2);
    switch (generator.kind) {
        case Generator::Kind::GaussianShift: {
            std::normal_distribution<double> normal(0.0, 1.0);
            for (double& v : x) v = normal(rng);
            for (double& v : y) v = delta + normal(rng);
            break;
        }
        case Generator::Kind::StudentTShift: {
            std::student_t_distribution<double> t(generator.df);
            for (double& v : x) v = t(rng);
            for (double& v : y) v = delta + t(rng);
            break;
        }
        case Generator::Kind::GaussianScale: {
            std::normal_distribution<double> normal(0.0, 1.0);
            for (double& v : x) v = normal(rng);
            for (double& v : y) v = delta + generator.sigma * normal(rng);
            break;
        }
    }
    return {Sample(std::move(x)), Sample(std::move(y))};
}

// Child streams of a run.
constexpr std::uint64_t kDataStream = 0;
constexpr std::uint64_t kPosteriorStream = 1;
constexpr std::uint64_t kCoinStream = 2;

// Outcomes of every requested test for one run, in spec.tests order.
void evaluate_run(const ExperimentSpec& spec, double delta, RngStream stream, RunOutcome* out) {
    Engine data_rng = stream.split(kDataStream).engine();
    const auto [x, y] = generate(spec.generator, delta, spec.n1, spec.n2, data_rng);
    // IDP and BB-DP share weight draws.
    const std::uint64_t posterior_seed = stream.split(kPosteriorStream).key();

    const bool needs_idp = std::any_of(spec.tests.begin(), spec.tests.end(), [](TestKind t) {
        return t == TestKind::IDP || t == TestKind::FiftyFifty;
    });
    Decision idp;
    if (needs_idp) {
        TestConfig config;
        config.s = spec.s;
        config.gamma = spec.gamma;
        config.mc_samples = spec.mc_samples;
        config.seed = posterior_seed;
        config.ties = spec.ties;
        config.approx = spec.approx;
        config.threads = 1;
        idp = idp_decide(x, y, config);
    }

    for (std::size_t t = 0; t < spec.tests.size(); ++t) {
        switch (spec.tests[t]) {
            case TestKind::IDP:
                out[t] = idp.outcome == Outcome::Greater      ? RunOutcome::Greater
                         : idp.outcome == Outcome::NotGreater ? RunOutcome::NotGreater
                                                              : RunOutcome::Indeterminate;
                break;
            case TestKind::MWW:
                out[t] = from_action(mww_test(x, y, spec.gamma).reject);
                break;
            case TestKind::BBDP:
                out[t] = from_action(
                    bb_test(x, y, spec.gamma, 0.5, spec.mc_samples, posterior_seed, spec.ties, 1).greater);
                break;
            case TestKind::FiftyFifty: {
                Engine coin = stream.split(kCoinStream).engine();
                out[t] = from_action(fifty_fifty(idp, coin));
                break;
            }
        }
    }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, int shards) {
    spec.validate();
    if (shards < 0) throw ArgumentError("shards must be >= 0");

    const std::size_t tests = spec.tests.size();
    const std::size_t items = spec.delta_grid.size() * spec.runs;
    std::vector<RunOutcome> outcomes(items * tests);
    const RngStream master(spec.seed);

    const int threads = shards > 0 ? shards : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(items); ++i) {
        const auto item = static_cast<std::size_t>(i);
        const std::size_t d = item / spec.runs;
        const std::size_t r = item % spec.runs;
        evaluate_run(spec, spec.delta_grid[d], master.split(d).split(r), &outcomes[item * tests]);
    }

    ExperimentResult result;
    result.spec = spec;
    for (std::size_t d = 0; d < spec.delta_grid.size(); ++d) {
        const bool truth = true_hypothesis(spec.generator, spec.delta_grid[d]);
        for (std::size_t t = 0; t < tests; ++t) {
            CellResult cell;
            cell.delta = spec.delta_grid[d];
            cell.test = spec.tests[t];
            cell.truth = truth;
            cell.runs = spec.runs;
            for (std::size_t r = 0; r < spec.runs; ++r) {
                switch (outcomes[(d * spec.runs + r) * tests + t]) {
                    case RunOutcome::Greater: ++cell.greater; break;
                    case RunOutcome::NotGreater: ++cell.not_greater; break;
                    case RunOutcome::Indeterminate: ++cell.indeterminate; break;
                }
            }
            result.cells.push_back(cell);
        }
    }
    return result;
}

}  // namespace idp
