#pragma once

// Imprecise Dirichlet Process rank-sum test for P(X <= Y).
//
// The prior set is every Dirichlet process with strength s and an arbitrary
// base measure. Posterior inferences on P(X <= Y) are therefore intervals,
// attained at the two extreme base measures that put the prior atom above
// (lower) or below (upper) every observation of the other group.

#include "idp/core_stats.hpp"
#include "idp/rng.hpp"
#include "idp/sample.hpp"

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace idp {

/// Prior strength giving an interval width of 1/2 after one observation pair.
inline const double kDefaultPriorStrength = std::sqrt(2.0) - 1.0;

enum class Approximation { MonteCarlo, Normal };

std::string to_string(Approximation approx);
Approximation parse_approximation(const std::string& name);

struct TestConfig {
    double s = kDefaultPriorStrength;
    double gamma = 0.05;  ///< K0 / (K0 + K1); declare "greater" above 1 - gamma
    double c = 0.5;       ///< hypothesis is P(X <= Y) > c
    std::size_t mc_samples = 20000;
    std::uint64_t seed = 0;
    TieMode ties = TieMode::Midrank;
    Approximation approx = Approximation::MonteCarlo;
    int threads = 0;  ///< OpenMP threads for Monte Carlo; 0 = runtime default

    /// Throws ArgumentError when a field is out of range.
    void validate() const;
};

inline constexpr std::size_t kMinMonteCarloSamples = 100;

struct PosteriorBounds {
    double lower_mean = 0.0;
    double upper_mean = 0.0;
    double lower_var = 0.0;
    double upper_var = 0.0;
    double lower_prob = 0.0;  ///< lower posterior probability of P(X <= Y) > c
    double upper_prob = 0.0;
    double lower_prob_se = 0.0;  ///< Monte-Carlo standard errors; 0 for Normal
    double upper_prob_se = 0.0;
};

enum class Outcome {
    Greater,        ///< a = 1: both bounds exceed 1 - gamma
    NotGreater,     ///< a = 0: neither bound exceeds 1 - gamma
    Indeterminate,  ///< upper > 1 - gamma >= lower
};

std::string to_string(Outcome outcome);

struct Decision {
    Outcome outcome = Outcome::Indeterminate;
    PosteriorBounds bounds;
    TestConfig config;
};

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

struct ProbabilityEstimate {
    double estimate = 0.0;
    double se = 0.0;
};

/// Posterior lower/upper expectation of f given data, for a DP with strength s
/// and arbitrary base measure: (s * f_inf + sum f) / (s + n) and likewise with
/// f_sup. With no data this is the vacuous interval [f_inf, f_sup].
Interval predictive_bounds(std::span<const double> f_values, double s, double f_inf, double f_sup);

/// [U / ((s+n1)(s+n2)),  lower + s(s+n1+n2) / ((s+n1)(s+n2))].
Interval posterior_mean_bounds(const Sample& x, const Sample& y, double s,
                               TieMode ties = TieMode::Midrank);

/// Exact mean and variance of the lower posterior distribution of P(X <= Y).
Moments moments_lower(const Sample& x, const Sample& y, double s, TieMode ties = TieMode::Midrank);

/// Exact mean and variance of the upper posterior distribution of P(X <= Y).
Moments moments_upper(const Sample& x, const Sample& y, double s, TieMode ties = TieMode::Midrank);

/// Lower posterior probability that P(X <= Y) > config.c, by Monte Carlo.
ProbabilityEstimate lower_prob(const Sample& x, const Sample& y, const TestConfig& config);

/// Upper posterior probability that P(X <= Y) > config.c, by Monte Carlo.
ProbabilityEstimate upper_prob(const Sample& x, const Sample& y, const TestConfig& config);

/// Both Monte-Carlo probabilities from one set of shared weight draws.
std::pair<ProbabilityEstimate, ProbabilityEstimate> posterior_probs(const Sample& x, const Sample& y,
                                                                    const TestConfig& config);

/// Gaussian approximation 1 - Phi((c - mu) / sigma) of the lower and upper
/// probabilities. sigma == 0 degenerates to the indicator mu > c.
Interval normal_approx_prob(const Sample& x, const Sample& y, const TestConfig& config);

/// Prior strength s > 0 whose post-one-pair imprecision s(s+2)/(s+1)^2 equals rho.
double choose_s(double rho);

/// Imprecision s(s+2)/(s+1)^2 left after a single observation pair.
double imprecision_after_one_pair(double s);

/// Trichotomy from already computed probabilities.
Outcome classify(double lower_prob, double upper_prob, double gamma);

Decision idp_decide(const Sample& x, const Sample& y, const TestConfig& config);

struct PosteriorDraws {
    std::vector<double> lower;
    std::vector<double> upper;
};

/// config.mc_samples paired (g_low, g_up) draws sharing weights.
PosteriorDraws posterior_samples(const Sample& x, const Sample& y, const TestConfig& config);

}  // namespace idp
