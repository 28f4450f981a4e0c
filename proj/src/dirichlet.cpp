#include "idp/dirichlet.hpp"

#include "idp/sample.hpp"

#include <cmath>

namespace idp {

namespace {

void check_parameters(double s, std::size_t n) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw ArgumentError("prior strength s must be finite and >= 0");
    if (n == 0) throw ArgumentError("Dirichlet dimension n must be >= 1");
}

}  // namespace

DirichletSampler::DirichletSampler(double s, std::size_t n)
    : s_(s), n_(n), prior_mass_(s > 0.0 ? s : 1.0, 1.0) {
    check_parameters(s, n);
}

void DirichletSampler::draw(Engine& rng, std::span<double> out) {
    if (out.size() != n_ + 1) throw ArgumentError("weight buffer must hold n + 1 values");

    // libstdc++ boosts shape < 1 via Gamma(s + 1) * U^(1/s), valid on (0, 1).
    double total = s_ > 0.0 ? (out[0] = prior_mass_(rng)) : (out[0] = 0.0);
    for (std::size_t i = 1; i <= n_; ++i) {
        out[i] = unit_mass_(rng);
        total += out[i];
    }
    const double inv = 1.0 / total;
    for (double& v : out) v *= inv;
}

WeightVector sample_weights(double s, std::size_t n, Engine& rng) {
    DirichletSampler sampler(s, n);
    std::vector<double> buffer(n + 1);
    sampler.draw(rng, buffer);
    return WeightVector{buffer[0], std::vector<double>(buffer.begin() + 1, buffer.end())};
}

WeightMoments weight_moments(double s, std::size_t n, bool augmented) {
    check_parameters(s, n);
    const double total = s + static_cast<double>(n);
    const double scale = 1.0 / (total * (total + 1.0));
    const std::size_t offset = augmented ? 1 : 0;
    const std::size_t dim = n + offset;

    WeightMoments m;
    m.augmented = augmented;
    m.mean.assign(dim, 1.0 / total);
    m.second.assign(dim * dim, scale);
    for (std::size_t j = offset; j < dim; ++j) m.second[j * dim + j] = 2.0 * scale;

    if (augmented) {
        m.mean[0] = s / total;
        m.second[0] = s * (s + 1.0) * scale;
        for (std::size_t j = 1; j < dim; ++j) {
            m.second[j] = s * scale;
            m.second[j * dim] = s * scale;
        }
    }
    return m;
}

}  // namespace idp
