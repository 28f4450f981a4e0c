#pragma once

// Monte-Carlo kernels for the posterior of P(X <= Y) under the extreme
// Dirichlet-process priors.
//
// Every draw pairs two weight vectors (w10, w11..w1n1) ~ Dir(s, 1..1) and
// (w20, w21..w2n2) ~ Dir(s, 1..1) and evaluates
//
//   g_low = sum_jk w1j w2k a_jk
//   g_up  = g_low + w10 w20 + w10 sum_k w2k + w20 sum_j w1j
//
// from the same weights, so g_low <= g_up holds draw by draw.
//
// Draws are grouped in fixed blocks of kBlockDraws; block b consumes the
// stream `stream.split(b)`. The parallel kernels distribute whole blocks over
// OpenMP threads and merge integer counters, so results do not depend on the
// thread count. The *_reference kernels run the same blocks serially against
// the dense win matrix and exist to check the fast path.

#include "idp/core_stats.hpp"
#include "idp/rng.hpp"
#include "idp/sample.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace idp::kernels {

inline constexpr std::size_t kBlockDraws = 1024;

/// Sorted view of (x, y) that evaluates sum_jk w1j w2k a_jk in O(n1 + n2).
class PairLayout {
public:
    PairLayout(const Sample& x, const Sample& y, TieMode ties);

    std::size_t n1() const noexcept { return below_.size(); }
    std::size_t n2() const noexcept { return y_order_.size(); }

    /// `w1`, `w2`: observation weights only (no prior atom).
    /// `scratch` must hold n2 + 1 values.
    double weighted_wins(std::span<const double> w1, std::span<const double> w2,
                         std::span<double> scratch) const;

private:
    std::vector<std::uint32_t> y_order_;  // y indices in ascending value order
    std::vector<std::uint32_t> below_;    // per x_j: #{k : y_k < x_j}
    std::vector<std::uint32_t> upto_;     // per x_j: #{k : y_k <= x_j}
    double tie_weight_;
};

struct GDraw {
    double lower = 0.0;
    double upper = 0.0;
};

/// `w1` has n1 + 1 entries and `w2` has n2 + 1, prior atom first.
GDraw evaluate_g(const PairLayout& layout, std::span<const double> w1, std::span<const double> w2,
                 std::span<double> scratch);

/// O(n1 n2) evaluation straight from the win matrix.
GDraw evaluate_g_dense(const WinMatrix& wins, std::span<const double> w1, std::span<const double> w2);

struct ExceedanceCounts {
    std::uint64_t draws = 0;
    std::uint64_t lower = 0;  ///< draws with g_low > c
    std::uint64_t upper = 0;  ///< draws with g_up > c

    ExceedanceCounts& operator+=(const ExceedanceCounts& other) noexcept {
        draws += other.draws;
        lower += other.lower;
        upper += other.upper;
        return *this;
    }
    bool operator==(const ExceedanceCounts&) const = default;
};

/// Counts draws whose g exceeds c (strictly). threads == 0 uses the OpenMP default.
ExceedanceCounts count_exceedances(const PairLayout& layout, double s, double c, std::size_t draws,
                                   RngStream stream, int threads = 0);

ExceedanceCounts count_exceedances_reference(const WinMatrix& wins, double s, double c,
                                             std::size_t draws, RngStream stream);

/// Fills `lower` and `upper` (equal length) with paired g draws.
void draw_g(const PairLayout& layout, double s, RngStream stream, std::span<double> lower,
            std::span<double> upper, int threads = 0);

void draw_g_reference(const WinMatrix& wins, double s, RngStream stream, std::span<double> lower,
                      std::span<double> upper);

}  // namespace idp::kernels
