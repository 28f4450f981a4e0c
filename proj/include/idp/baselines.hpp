#pragma once

#include "idp/idp.hpp"
#include "idp/rng.hpp"
#include "idp/sample.hpp"

#include <cstdint>
#include <string>

namespace idp {

/// Comparison tests run next to the IDP test.
enum class BaselineKind { BBDP, FiftyFifty, MWW };

std::string to_string(BaselineKind kind);
BaselineKind parse_baseline_kind(const std::string& name);

struct BbResult {
    double prob = 0.0;  ///< posterior probability of P(X <= Y) > c at s = 0
    double se = 0.0;
    bool greater = false;  ///< prob > 1 - gamma
};

/// Bayesian-bootstrap Dirichlet-process test: the IDP machinery at s = 0,
/// where lower and upper posteriors coincide.
BbResult bb_test(const Sample& x, const Sample& y, double gamma, double c, std::size_t mc_samples,
                 std::uint64_t seed, TieMode ties = TieMode::Midrank, int threads = 0);

/// The IDP action when determinate, a fair coin flip otherwise.
bool fifty_fifty(const Decision& idp, Engine& rng);

}  // namespace idp
