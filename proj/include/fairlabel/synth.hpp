#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fairlabel/types.hpp"

namespace fairlabel {

struct LinearGeneratorSpec {
    std::size_t n_samples = 0;
    std::size_t n_features = 0;
    double p_noise = 0.0;           // fraction of rows with random labels
    double feature_noise_std = 0.0; // optional additive Gaussian on features
    std::uint64_t seed = 0;

    void validate() const;
};

struct ClusterGeneratorSpec {
    std::size_t n_samples = 0;
    std::size_t n_informative = 8;
    double cube_edge = 0.5;
    double cluster_std = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct QuantileGeneratorSpec {
    std::size_t n_samples = 0;
    std::size_t n_features = 0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct BiasSpec {
    Group target_value = Group::Minority;
    FlipDirection direction = FlipDirection::OneToZero;
    double severity = 0.0;  // per-eligible-record flip probability
    std::uint64_t seed = 0;
};

struct LinearDataset {
    TabularDataset dataset;
    std::vector<double> coefficients;
    double intercept = 0.0;
};

// Linear-rule dataset: the first floor(n*(1-p_noise)) rows follow
// label = [sigmoid(a.x + b) > 0.5], the rest get uniform random labels.
// Protected tags default to Majority until assign_protected runs.
LinearDataset generate_linear(const LinearGeneratorSpec& spec);

// Gaussian clusters centered on vertices of an n_informative-dimensional
// hypercube scaled by cube_edge; equal clusters per class, balanced labels.
TabularDataset generate_hypercube_clusters(const ClusterGeneratorSpec& spec);

// Standard multivariate normal; label 1 iff squared norm exceeds the
// empirical median, so class counts differ by at most 1.
TabularDataset generate_gaussian_quantiles(const QuantileGeneratorSpec& spec);

// Tags each row Minority independently with probability minority_fraction.
TabularDataset assign_protected(const TabularDataset& ds,
                                double minority_fraction, std::uint64_t seed);

// Flips eligible labels (matching group and direction) independently with
// probability severity; returns the new dataset and the injected-flip log.
std::pair<TabularDataset, FlipLog> inject_bias(const TabularDataset& ds,
                                               const BiasSpec& bias);

}  // namespace fairlabel
