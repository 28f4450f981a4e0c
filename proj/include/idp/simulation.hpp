#pragma once

#include "idp/idp.hpp"
#include "idp/sample.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace idp {

/// Tests that can be scored by the experiment runner.
enum class TestKind { IDP, MWW, BBDP, FiftyFifty };

std::string to_string(TestKind kind);
TestKind parse_test_kind(const std::string& name);

/// Data-generating model for one run: X from the reference population and
/// Y shifted by delta.
struct Generator {
    enum class Kind {
        GaussianShift,  ///< X ~ N(0, 1), Y ~ N(delta, 1)
        StudentTShift,  ///< X ~ t(df), Y ~ delta + t(df)
        GaussianScale,  ///< X ~ N(0, 1), Y ~ N(delta, sigma^2)
    };

    Kind kind = Kind::GaussianShift;
    double df = 3.0;     ///< StudentTShift only
    double sigma = 1.0;  ///< GaussianScale only: standard deviation of Y

    void validate() const;
    bool operator==(const Generator&) const = default;
};

std::string to_string(Generator::Kind kind);
Generator::Kind parse_generator_kind(const std::string& name);

struct ExperimentSpec {
    std::vector<double> delta_grid{0.0};
    std::size_t n1 = 20;
    std::size_t n2 = 20;
    std::size_t runs = 2000;
    double gamma = 0.05;
    double k0 = 1.0;
    double k1 = 19.0;
    double s = kDefaultPriorStrength;
    std::size_t mc_samples = 20000;
    std::uint64_t seed = 0;
    Generator generator;
    std::vector<TestKind> tests{TestKind::IDP, TestKind::MWW, TestKind::BBDP, TestKind::FiftyFifty};
    TieMode ties = TieMode::Midrank;
    Approximation approx = Approximation::MonteCarlo;

    /// Throws ArgumentError on inconsistent or out-of-range fields.
    void validate() const;
    bool operator==(const ExperimentSpec&) const = default;
};

/// Evenly spaced grid from `min` to `max` with `steps` points (steps == 1 gives {min}).
std::vector<double> delta_range(double min, double max, std::size_t steps);

/// Outcome tallies of one test at one delta.
struct CellResult {
    double delta = 0.0;
    TestKind test = TestKind::IDP;
    bool truth = false;  ///< P(X <= Y) > 1/2 under the generator
    std::size_t runs = 0;
    std::size_t greater = 0;
    std::size_t not_greater = 0;
    std::size_t indeterminate = 0;  ///< IDP only

    std::size_t correct() const noexcept { return truth ? greater : not_greater; }

    /// Correct decisions over all runs; indeterminate IDP runs count as not correct.
    double accuracy() const;
    double error() const { return 1.0 - accuracy(); }
    /// Fraction of runs deciding Greater.
    double power() const;
    /// Total loss over all runs divided by runs; indeterminate runs carry no loss.
    double mean_loss(double k0, double k1) const;
    double indeterminacy() const;
    /// Correct decisions among determinate runs.
    double determinate_accuracy() const;

    bool operator==(const CellResult&) const = default;
};

struct ExperimentResult {
    ExperimentSpec spec;
    std::vector<CellResult> cells;  ///< delta-major, tests in spec order

    const CellResult& cell(std::size_t delta_index, TestKind test) const;
    bool operator==(const ExperimentResult&) const = default;
};

/// K0 for a missed true hypothesis, K1 for a false "greater", 0 otherwise.
double loss_eval(bool true_hypothesis, bool action, double k0, double k1);

/// Whether P(X <= Y) > 1/2 under `generator` at shift `delta`.
bool true_hypothesis(const Generator& generator, double delta);

/// Runs every (delta, run) cell of the experiment. Run r at delta index d uses
/// the stream RngStream(seed).split(d).split(r), so results do not depend on
/// `shards` (the number of OpenMP threads; 0 = runtime default).
ExperimentResult run_experiment(const ExperimentSpec& spec, int shards = 0);

}  // namespace idp
