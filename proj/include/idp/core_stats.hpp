#pragma once

#include "idp/sample.hpp"

#include <cstddef>
#include <vector>

namespace idp {

/// n1 x n2 table of pairwise contributions, row-major.
/// entry(j, k) = H(Y_k - X_j) under Midrank, I(X_j < Y_k) under Strict.
class WinMatrix {
public:
    WinMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double operator()(std::size_t j, std::size_t k) const { return entries_[j * cols_ + k]; }
    const std::vector<double>& entries() const noexcept { return entries_; }

    double grand_sum() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> entries_;
};

/// H(z): 1 for z > 0, 1/2 at z = 0, 0 for z < 0.
double heaviside(double z);

/// Pairwise contribution of (x, y) to U.
inline double pair_win(double x, double y, TieMode ties) {
    if (x < y) return 1.0;
    if (x == y && ties == TieMode::Midrank) return 0.5;
    return 0.0;
}

/// Mann-Whitney U: number of pairs with X < Y (plus half the ties under Midrank).
/// O((n1 + n2) log(n1 + n2)).
double u_statistic(const Sample& x, const Sample& y, TieMode ties = TieMode::Midrank);

WinMatrix win_matrix(const Sample& x, const Sample& y, TieMode ties = TieMode::Midrank);

/// Standard normal CDF.
double normal_cdf(double z);

enum class MwwMethod { NormalApprox, ExactPermutation };

struct MwwResult {
    double u = 0.0;
    double z = 0.0;        ///< standardized U/(n1 n2); 0 for the exact method
    double p_value = 1.0;  ///< one-sided, alternative P(X <= Y) > 1/2
    bool reject = false;   ///< p_value < gamma
};

/// Null variance of U/(n1 n2) when F_X = F_Y: (n1 + n2) / (12 n1 n2).
double mww_null_variance(std::size_t n1, std::size_t n2);

/// Largest group size accepted by the exact permutation method.
inline constexpr std::size_t kExactPermutationMaxSize = 12;

/// One-sided Mann-Whitney-Wilcoxon test. NormalApprox uses neither a
/// continuity correction nor a tie-corrected variance. ExactPermutation
/// enumerates the permutation distribution of the pooled midranks and
/// throws SizeError when either group exceeds kExactPermutationMaxSize.
MwwResult mww_test(const Sample& x, const Sample& y, double gamma,
                   MwwMethod method = MwwMethod::NormalApprox);

}  // namespace idp
