#pragma once

#include "idp/rng.hpp"

#include <boost/random/exponential_distribution.hpp>

#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace idp {

/// A draw (w0, w1, ..., wn) ~ Dir(s, 1, ..., 1).
///
/// w0 is the mass on the prior atom, w[i] the mass on observation i.
/// Components are non-negative and sum to one; w0 == 0 exactly when s == 0.
struct WeightVector {
    double w0 = 0.0;
    std::vector<double> w;
};

/// Closed-form first and second moments of Dir(s, 1, ..., 1).
///
/// When `augmented`, index 0 refers to w0 and indices 1..n to the observation
/// weights; otherwise only the n observation weights are represented.
struct WeightMoments {
    std::vector<double> mean;
    std::vector<double> second;  ///< row-major dim x dim, E[w_j w_k]
    bool augmented = false;

    std::size_t dim() const noexcept { return mean.size(); }
    double second_at(std::size_t j, std::size_t k) const { return second[j * dim() + k]; }
};

/// Samples Dir(s, 1, ..., 1) by normalizing one Gamma(s) and n Exp(1) variates.
/// Exp(1) uses Boost's ziggurat sampler.
///
/// s == 0 is treated structurally (w0 = 0) rather than as a Gamma(0) draw.
/// Distribution objects are owned by the sampler, so a sampler must not be
/// shared between threads; give each task its own.
class DirichletSampler {
public:
    DirichletSampler(double s, std::size_t n);

    double s() const noexcept { return s_; }
    std::size_t n() const noexcept { return n_; }

    /// Writes (w0, w1, ..., wn) into `out`, which must hold n + 1 values.
    void draw(Engine& rng, std::span<double> out);

private:
    double s_;
    std::size_t n_;
    std::gamma_distribution<double> prior_mass_;
    boost::random::exponential_distribution<double> unit_mass_{1.0};
};

WeightVector sample_weights(double s, std::size_t n, Engine& rng);

WeightMoments weight_moments(double s, std::size_t n, bool augmented);

}  // namespace idp
