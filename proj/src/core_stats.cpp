#include "idp/core_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace idp {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw ArgumentError("sample must contain at least one observation");
    for (double v : values_) {
        if (!std::isfinite(v)) throw ArgumentError("sample values must be finite");
    }
}

Sample::Sample(std::initializer_list<double> values) : Sample(std::vector<double>(values)) {}

std::string to_string(TieMode ties) {
    return ties == TieMode::Strict ? "strict" : "midrank";
}

TieMode parse_tie_mode(const std::string& name) {
    if (name == "strict") return TieMode::Strict;
    if (name == "midrank") return TieMode::Midrank;
    throw ArgumentError("unknown tie mode '" + name + "'");
}

WinMatrix::WinMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) throw ArgumentError("win matrix shape mismatch");
}

double WinMatrix::grand_sum() const {
    return std::accumulate(entries_.begin(), entries_.end(), 0.0);
}

double heaviside(double z) {
    if (z > 0.0) return 1.0;
    if (z == 0.0) return 0.5;
    return 0.0;
}

double u_statistic(const Sample& x, const Sample& y, TieMode ties) {
    std::vector<double> sorted_y(y.begin(), y.end());
    std::sort(sorted_y.begin(), sorted_y.end());
    const double n2 = static_cast<double>(sorted_y.size());

    // Integer counts, so the sum is exact in double precision.
    double wins = 0.0;
    double tied = 0.0;
    for (double xj : x) {
        const auto lo = std::lower_bound(sorted_y.begin(), sorted_y.end(), xj);
        const auto hi = std::upper_bound(lo, sorted_y.end(), xj);
        wins += n2 - static_cast<double>(hi - sorted_y.begin());
        tied += static_cast<double>(hi - lo);
    }
    return ties == TieMode::Midrank ? wins + 0.5 * tied : wins;
}

WinMatrix win_matrix(const Sample& x, const Sample& y, TieMode ties) {
    std::vector<double> entries;
    entries.reserve(x.size() * y.size());
    for (double xj : x) {
        for (double yk : y) entries.push_back(pair_win(xj, yk, ties));
    }
    return WinMatrix(x.size(), y.size(), std::move(entries));
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double mww_null_variance(std::size_t n1, std::size_t n2) {
    const double a = static_cast<double>(n1);
    const double b = static_cast<double>(n2);
    return (a + b) / (12.0 * a * b);
}

namespace {

// Twice the midranks of the pooled sample, so every rank is an integer.
std::vector<int> doubled_midranks(std::span<const double> pooled) {
    const std::size_t n = pooled.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });

    std::vector<int> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        // positions i..j (0-based) share rank ((i+1)+(j+1))/2
        const int doubled = static_cast<int>(i + j + 2);
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = doubled;
        i = j + 1;
    }
    return ranks;
}

// P(R_Y >= observed) where R_Y is the doubled rank sum of a uniformly random
// size-n2 subset of the pooled ranks.
double exact_upper_tail(const std::vector<int>& ranks, std::size_t n2, int observed) {
    const int max_sum = std::accumulate(ranks.begin(), ranks.end(), 0);
    // ways[k][t]: number of k-subsets with doubled rank sum t
    std::vector<std::vector<double>> ways(n2 + 1, std::vector<double>(max_sum + 1, 0.0));
    ways[0][0] = 1.0;
    for (int r : ranks) {
        for (std::size_t k = n2; k >= 1; --k) {
            for (int t = max_sum; t >= r; --t) ways[k][t] += ways[k - 1][t - r];
        }
    }
    double total = 0.0;
    double tail = 0.0;
    for (int t = 0; t <= max_sum; ++t) {
        total += ways[n2][t];
        if (t >= observed) tail += ways[n2][t];
    }
    return tail / total;
}

}  // namespace

MwwResult mww_test(const Sample& x, const Sample& y, double gamma, MwwMethod method) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw ArgumentError("gamma must lie in (0, 1)");
    const std::size_t n1 = x.size();
    const std::size_t n2 = y.size();

    MwwResult result;
    result.u = u_statistic(x, y, TieMode::Midrank);

    if (method == MwwMethod::NormalApprox) {
        const double nn = static_cast<double>(n1 * n2);
        result.z = (result.u / nn - 0.5) / std::sqrt(mww_null_variance(n1, n2));
        result.p_value = normal_cdf(-result.z);
    } else {
        if (n1 > kExactPermutationMaxSize || n2 > kExactPermutationMaxSize) {
            throw SizeError("exact permutation MWW supports at most 12 observations per group");
        }
        std::vector<double> pooled(x.begin(), x.end());
        pooled.insert(pooled.end(), y.begin(), y.end());
        const auto ranks = doubled_midranks(pooled);
        // U = R_Y - n2(n2+1)/2, so U >= u  <=>  2 R_Y >= 2u + n2(n2+1)
        const int observed =
            static_cast<int>(std::lround(2.0 * result.u)) + static_cast<int>(n2 * (n2 + 1));
        result.p_value = exact_upper_tail(ranks, n2, observed);
    }
    result.reject = result.p_value < gamma;
    return result;
}

}  // namespace idp
