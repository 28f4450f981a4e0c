#include "idp/idp.hpp"

#include "idp/kernels.hpp"

#include <algorithm>
#include <numeric>

namespace idp {

std::string to_string(Approximation approx) {
    return approx == Approximation::MonteCarlo ? "mc" : "normal";
}

Approximation parse_approximation(const std::string& name) {
    if (name == "mc") return Approximation::MonteCarlo;
    if (name == "normal") return Approximation::Normal;
    throw ArgumentError("unknown approximation '" + name + "'");
}

std::string to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::Greater: return "greater";
        case Outcome::NotGreater: return "not_greater";
        case Outcome::Indeterminate: return "indeterminate";
    }
    return "unknown";
}

void TestConfig::validate() const {
    if (!(s >= 0.0) || !std::isfinite(s)) throw ArgumentError("s must be finite and >= 0");
    if (!(gamma > 0.0 && gamma < 1.0)) throw ArgumentError("gamma must lie in (0, 1)");
    if (!(c >= 0.0 && c <= 1.0)) throw ArgumentError("c must lie in [0, 1]");
    if (mc_samples < kMinMonteCarloSamples) throw ArgumentError("mc_samples must be >= 100");
    if (threads < 0) throw ArgumentError("threads must be >= 0");
}

namespace {

void check_strength(double s) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw ArgumentError("s must be finite and >= 0");
}

// Sufficient statistics of the win matrix for the moment formulas:
// U = sum a_jk, squares = sum a_jk^2, row/column sums.
struct WinSummary {
    double u = 0.0;
    double squares = 0.0;
    std::vector<double> row_sums;  // per x_j
    std::vector<double> col_sums;  // per y_k
};

// Counts of values in `sorted` strictly below and equal to v.
std::pair<double, double> below_and_tied(const std::vector<double>& sorted, double v) {
    const auto lo = std::lower_bound(sorted.begin(), sorted.end(), v);
    const auto hi = std::upper_bound(lo, sorted.end(), v);
    return {static_cast<double>(lo - sorted.begin()), static_cast<double>(hi - lo)};
}

WinSummary summarize(const Sample& x, const Sample& y, TieMode ties) {
    const double h = ties == TieMode::Midrank ? 0.5 : 0.0;
    std::vector<double> xs(x.begin(), x.end());
    std::vector<double> ys(y.begin(), y.end());
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());

    WinSummary out;
    out.row_sums.reserve(x.size());
    out.col_sums.reserve(y.size());
    const double n2 = static_cast<double>(y.size());
    for (double xj : x) {
        const auto [below, tied] = below_and_tied(ys, xj);
        const double above = n2 - below - tied;
        out.row_sums.push_back(above + h * tied);
        out.squares += above + h * h * tied;
    }
    for (double yk : y) {
        const auto [below, tied] = below_and_tied(xs, yk);
        out.col_sums.push_back(below + h * tied);
    }
    out.u = std::accumulate(out.row_sums.begin(), out.row_sums.end(), 0.0);
    return out;
}

double sum_shifted_squares(const std::vector<double>& v, double shift) {
    double acc = 0.0;
    for (double e : v) acc += (shift + e) * (shift + e);
    return acc;
}

double clamp_variance(double v) {
    return (v < 0.0 && v > -1e-12) ? 0.0 : v;
}

// 1 / ((s+n)(s+n+1)): common factor of the Dirichlet second moments.
double second_moment_scale(double s, std::size_t n) {
    const double t = s + static_cast<double>(n);
    return 1.0 / (t * (t + 1.0));
}

}  // namespace

Interval predictive_bounds(std::span<const double> f_values, double s, double f_inf, double f_sup) {
    check_strength(s);
    if (!(f_inf <= f_sup)) throw ArgumentError("f_inf must not exceed f_sup");
    if (f_values.empty()) return Interval{f_inf, f_sup};
    for (double f : f_values) {
        if (!(f >= f_inf && f <= f_sup)) throw ArgumentError("f values must lie in [f_inf, f_sup]");
    }
    const double sum = std::accumulate(f_values.begin(), f_values.end(), 0.0);
    const double denom = s + static_cast<double>(f_values.size());
    return Interval{(s * f_inf + sum) / denom, (s * f_sup + sum) / denom};
}

Interval posterior_mean_bounds(const Sample& x, const Sample& y, double s, TieMode ties) {
    check_strength(s);
    const double a = s + static_cast<double>(x.size());
    const double b = s + static_cast<double>(y.size());
    const double lower = u_statistic(x, y, ties) / (a * b);
    const double width = s * (s + static_cast<double>(x.size() + y.size())) / (a * b);
    return Interval{lower, lower + width};
}

// mean = E[W]' A E[V], E[g^2] = trace(A' E[WW'] A E[VV']) with
// E[WW'] = alpha (I + 11'), so the trace reduces to
// alpha beta (sum a^2 + |row sums|^2 + |col sums|^2 + U^2).
Moments moments_lower(const Sample& x, const Sample& y, double s, TieMode ties) {
    check_strength(s);
    const WinSummary w = summarize(x, y, ties);
    const double a = s + static_cast<double>(x.size());
    const double b = s + static_cast<double>(y.size());
    const double scale = second_moment_scale(s, x.size()) * second_moment_scale(s, y.size());

    const double mean = w.u / (a * b);
    const double trace =
        w.squares + sum_shifted_squares(w.row_sums, 0.0) + sum_shifted_squares(w.col_sums, 0.0) + w.u * w.u;
    return Moments{mean, clamp_variance(scale * trace - mean * mean)};
}

// Augmented form: the prior atoms contribute a row and column of ones to A,
// and E[WW'] = alpha (D + u u') with D = diag(s, 1..1), u = (s, 1..1).
Moments moments_upper(const Sample& x, const Sample& y, double s, TieMode ties) {
    check_strength(s);
    const WinSummary w = summarize(x, y, ties);
    const double n1 = static_cast<double>(x.size());
    const double n2 = static_cast<double>(y.size());
    const double a = s + n1;
    const double b = s + n2;
    const double scale = second_moment_scale(s, x.size()) * second_moment_scale(s, y.size());

    const double weighted_u = w.u + s * (s + n1 + n2);
    const double mean = weighted_u / (a * b);
    const double data_terms = w.squares + sum_shifted_squares(w.row_sums, s) +
                              sum_shifted_squares(w.col_sums, s) + weighted_u * weighted_u;
    // Vanishes exactly at s = 0, leaving the lower-distribution trace.
    const double atom_terms = s * s + s * (n1 + n2) + s * b * b + s * a * a;
    return Moments{mean, clamp_variance(scale * (data_terms + atom_terms) - mean * mean)};
}

namespace {

ProbabilityEstimate estimate_from_count(std::uint64_t hits, std::uint64_t draws) {
    const double n = static_cast<double>(draws);
    const double p = static_cast<double>(hits) / n;
    return ProbabilityEstimate{p, std::sqrt(p * (1.0 - p) / n)};
}

}  // namespace

std::pair<ProbabilityEstimate, ProbabilityEstimate> posterior_probs(const Sample& x, const Sample& y,
                                                                    const TestConfig& config) {
    config.validate();
    const kernels::PairLayout layout(x, y, config.ties);
    const auto counts = kernels::count_exceedances(layout, config.s, config.c, config.mc_samples,
                                                   RngStream(config.seed), config.threads);
    return {estimate_from_count(counts.lower, counts.draws), estimate_from_count(counts.upper, counts.draws)};
}

ProbabilityEstimate lower_prob(const Sample& x, const Sample& y, const TestConfig& config) {
    return posterior_probs(x, y, config).first;
}

ProbabilityEstimate upper_prob(const Sample& x, const Sample& y, const TestConfig& config) {
    return posterior_probs(x, y, config).second;
}

namespace {

double gaussian_exceedance(const Moments& m, double c) {
    const double sigma = std::sqrt(m.variance);
    if (sigma == 0.0) return m.mean > c ? 1.0 : 0.0;
    return normal_cdf((m.mean - c) / sigma);
}

}  // namespace

Interval normal_approx_prob(const Sample& x, const Sample& y, const TestConfig& config) {
    config.validate();
    return Interval{gaussian_exceedance(moments_lower(x, y, config.s, config.ties), config.c),
                    gaussian_exceedance(moments_upper(x, y, config.s, config.ties), config.c)};
}

double imprecision_after_one_pair(double s) {
    return s * (s + 2.0) / ((s + 1.0) * (s + 1.0));
}

double choose_s(double rho) {
    if (!(rho > 0.0 && rho < 1.0)) throw ArgumentError("rho must lie in (0, 1)");
    // rho = 1 - 1/(s+1)^2
    return 1.0 / std::sqrt(1.0 - rho) - 1.0;
}

Outcome classify(double lower_prob, double upper_prob, double gamma) {
    const double threshold = 1.0 - gamma;
    const bool lower_passes = lower_prob > threshold;
    const bool upper_passes = upper_prob > threshold;
    if (lower_passes && upper_passes) return Outcome::Greater;
    if (!lower_passes && !upper_passes) return Outcome::NotGreater;
    return Outcome::Indeterminate;
}

Decision idp_decide(const Sample& x, const Sample& y, const TestConfig& config) {
    config.validate();
    Decision decision;
    decision.config = config;

    PosteriorBounds& b = decision.bounds;
    const Moments low = moments_lower(x, y, config.s, config.ties);
    const Moments up = moments_upper(x, y, config.s, config.ties);
    b.lower_mean = low.mean;
    b.upper_mean = up.mean;
    b.lower_var = low.variance;
    b.upper_var = up.variance;

    if (config.approx == Approximation::MonteCarlo) {
        const auto [lo, hi] = posterior_probs(x, y, config);
        b.lower_prob = lo.estimate;
        b.upper_prob = hi.estimate;
        b.lower_prob_se = lo.se;
        b.upper_prob_se = hi.se;
    } else {
        b.lower_prob = gaussian_exceedance(low, config.c);
        b.upper_prob = gaussian_exceedance(up, config.c);
    }
    decision.outcome = classify(b.lower_prob, b.upper_prob, config.gamma);
    return decision;
}

PosteriorDraws posterior_samples(const Sample& x, const Sample& y, const TestConfig& config) {
    config.validate();
    PosteriorDraws draws;
    draws.lower.resize(config.mc_samples);
    draws.upper.resize(config.mc_samples);
    const kernels::PairLayout layout(x, y, config.ties);
    kernels::draw_g(layout, config.s, RngStream(config.seed), draws.lower, draws.upper, config.threads);
    return draws;
}

}  // namespace idp
