#include "idp/kernels.hpp"

#include "idp/dirichlet.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>

namespace idp::kernels {

PairLayout::PairLayout(const Sample& x, const Sample& y, TieMode ties)
    : y_order_(y.size()), below_(x.size()), upto_(x.size()),
      tie_weight_(ties == TieMode::Midrank ? 0.5 : 0.0) {
    std::iota(y_order_.begin(), y_order_.end(), 0u);
    std::stable_sort(y_order_.begin(), y_order_.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return y[a] < y[b]; });
    std::vector<double> sorted_y(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) sorted_y[i] = y[y_order_[i]];

    for (std::size_t j = 0; j < x.size(); ++j) {
        const auto lo = std::lower_bound(sorted_y.begin(), sorted_y.end(), x[j]);
        const auto hi = std::upper_bound(lo, sorted_y.end(), x[j]);
        below_[j] = static_cast<std::uint32_t>(lo - sorted_y.begin());
        upto_[j] = static_cast<std::uint32_t>(hi - sorted_y.begin());
    }
}

double PairLayout::weighted_wins(std::span<const double> w1, std::span<const double> w2,
                                 std::span<double> scratch) const {
    // scratch[i] = total weight of the i smallest y values
    const std::size_t m = y_order_.size();
    scratch[0] = 0.0;
    for (std::size_t i = 0; i < m; ++i) scratch[i + 1] = scratch[i] + w2[y_order_[i]];
    const double total = scratch[m];

    double sum = 0.0;
    for (std::size_t j = 0; j < below_.size(); ++j) {
        const double above = total - scratch[upto_[j]];
        const double tied = scratch[upto_[j]] - scratch[below_[j]];
        sum += w1[j] * (above + tie_weight_ * tied);
    }
    return sum;
}

namespace {

GDraw combine(double wins, std::span<const double> w1, std::span<const double> w2) {
    const double w10 = w1[0];
    const double w20 = w2[0];
    const double mass1 = std::accumulate(w1.begin() + 1, w1.end(), 0.0);
    const double mass2 = std::accumulate(w2.begin() + 1, w2.end(), 0.0);
    // At s = 0 the extra term is exactly +0.0, so upper == lower bit for bit.
    const double extra = w10 * w20 + w10 * mass2 + w20 * mass1;
    return GDraw{wins, extra + wins};
}

// Runs draws [first, first + count) of block `block`, calling sink(i, g) per draw.
template <class Evaluate, class Sink>
void run_block(std::size_t n1, std::size_t n2, double s, RngStream stream, std::size_t block,
               std::size_t count, Evaluate&& evaluate, Sink&& sink) {
    Engine rng = stream.split(block).engine();
    DirichletSampler first(s, n1);
    DirichletSampler second(s, n2);
    std::vector<double> w1(n1 + 1);
    std::vector<double> w2(n2 + 1);
    for (std::size_t i = 0; i < count; ++i) {
        first.draw(rng, w1);
        second.draw(rng, w2);
        sink(i, evaluate(w1, w2));
    }
}

std::size_t block_count(std::size_t draws) {
    return (draws + kBlockDraws - 1) / kBlockDraws;
}

std::size_t block_size(std::size_t block, std::size_t draws) {
    return std::min(kBlockDraws, draws - block * kBlockDraws);
}

int resolve_threads(int threads) {
    return threads > 0 ? threads : omp_get_max_threads();
}

}  // namespace

GDraw evaluate_g(const PairLayout& layout, std::span<const double> w1, std::span<const double> w2,
                 std::span<double> scratch) {
    return combine(layout.weighted_wins(w1.subspan(1), w2.subspan(1), scratch), w1, w2);
}

GDraw evaluate_g_dense(const WinMatrix& wins, std::span<const double> w1, std::span<const double> w2) {
    double sum = 0.0;
    for (std::size_t j = 0; j < wins.rows(); ++j) {
        for (std::size_t k = 0; k < wins.cols(); ++k) sum += w1[j + 1] * w2[k + 1] * wins(j, k);
    }
    return combine(sum, w1, w2);
}

ExceedanceCounts count_exceedances(const PairLayout& layout, double s, double c, std::size_t draws,
                                   RngStream stream, int threads) {
    const auto blocks = static_cast<std::int64_t>(block_count(draws));
    std::uint64_t lower = 0;
    std::uint64_t upper = 0;

#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads)) reduction(+ : lower, upper)
    for (std::int64_t b = 0; b < blocks; ++b) {
        const auto block = static_cast<std::size_t>(b);
        std::vector<double> scratch(layout.n2() + 1);
        run_block(
            layout.n1(), layout.n2(), s, stream, block, block_size(block, draws),
            [&](const auto& w1, const auto& w2) { return evaluate_g(layout, w1, w2, scratch); },
            [&](std::size_t, const GDraw& g) {
                lower += g.lower > c;
                upper += g.upper > c;
            });
    }
    return ExceedanceCounts{draws, lower, upper};
}

ExceedanceCounts count_exceedances_reference(const WinMatrix& wins, double s, double c,
                                             std::size_t draws, RngStream stream) {
    ExceedanceCounts counts{draws, 0, 0};
    for (std::size_t block = 0; block < block_count(draws); ++block) {
        run_block(
            wins.rows(), wins.cols(), s, stream, block, block_size(block, draws),
            [&](const auto& w1, const auto& w2) { return evaluate_g_dense(wins, w1, w2); },
            [&](std::size_t, const GDraw& g) {
                counts.lower += g.lower > c;
                counts.upper += g.upper > c;
            });
    }
    return counts;
}

void draw_g(const PairLayout& layout, double s, RngStream stream, std::span<double> lower,
            std::span<double> upper, int threads) {
    if (lower.size() != upper.size()) throw ArgumentError("draw buffers must have equal length");
    const std::size_t draws = lower.size();
    const auto blocks = static_cast<std::int64_t>(block_count(draws));

#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
    for (std::int64_t b = 0; b < blocks; ++b) {
        const auto block = static_cast<std::size_t>(b);
        const std::size_t offset = block * kBlockDraws;
        std::vector<double> scratch(layout.n2() + 1);
        run_block(
            layout.n1(), layout.n2(), s, stream, block, block_size(block, draws),
            [&](const auto& w1, const auto& w2) { return evaluate_g(layout, w1, w2, scratch); },
            [&](std::size_t i, const GDraw& g) {
                lower[offset + i] = g.lower;
                upper[offset + i] = g.upper;
            });
    }
}

void draw_g_reference(const WinMatrix& wins, double s, RngStream stream, std::span<double> lower,
                      std::span<double> upper) {
    if (lower.size() != upper.size()) throw ArgumentError("draw buffers must have equal length");
    const std::size_t draws = lower.size();
    for (std::size_t block = 0; block < block_count(draws); ++block) {
        const std::size_t offset = block * kBlockDraws;
        run_block(
            wins.rows(), wins.cols(), s, stream, block, block_size(block, draws),
            [&](const auto& w1, const auto& w2) { return evaluate_g_dense(wins, w1, w2); },
            [&](std::size_t i, const GDraw& g) {
                lower[offset + i] = g.lower;
                upper[offset + i] = g.upper;
            });
    }
}

}  // namespace idp::kernels
