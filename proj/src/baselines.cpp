#include "idp/baselines.hpp"

#include <random>

namespace idp {

std::string to_string(BaselineKind kind) {
    switch (kind) {
        case BaselineKind::BBDP: return "bbdp";
        case BaselineKind::FiftyFifty: return "fiftyfifty";
        case BaselineKind::MWW: return "mww";
    }
    return "unknown";
}

BaselineKind parse_baseline_kind(const std::string& name) {
    if (name == "bbdp") return BaselineKind::BBDP;
    if (name == "fiftyfifty") return BaselineKind::FiftyFifty;
    if (name == "mww") return BaselineKind::MWW;
    throw ArgumentError("unknown baseline '" + name + "'");
}

BbResult bb_test(const Sample& x, const Sample& y, double gamma, double c, std::size_t mc_samples,
                 std::uint64_t seed, TieMode ties, int threads) {
    TestConfig config;
    config.s = 0.0;
    config.gamma = gamma;
    config.c = c;
    config.mc_samples = mc_samples;
    config.seed = seed;
    config.ties = ties;
    config.threads = threads;

    const ProbabilityEstimate p = lower_prob(x, y, config);
    return BbResult{p.estimate, p.se, p.estimate > 1.0 - gamma};
}

bool fifty_fifty(const Decision& idp, Engine& rng) {
    switch (idp.outcome) {
        case Outcome::Greater: return true;
        case Outcome::NotGreater: return false;
        case Outcome::Indeterminate: break;
    }
    return std::bernoulli_distribution(0.5)(rng);
}

}  // namespace idp
