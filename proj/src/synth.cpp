#include "fairlabel/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fairlabel/classify.hpp"
#include "fairlabel/error.hpp"
#include "fairlabel/rng.hpp"

namespace fairlabel {

namespace {

TabularDataset make_base(std::size_t n, std::size_t d, std::string provenance) {
    TabularDataset ds;
    ds.row_ids.resize(n);
    std::iota(ds.row_ids.begin(), ds.row_ids.end(), 0);
    ds.features = Matrix(n, d);
    ds.labels.assign(n, 0);
    ds.protected_tags.assign(n, majority_tag());
    ds.provenance = std::move(provenance);
    return ds;
}

}  // namespace

void LinearGeneratorSpec::validate() const {
    if (n_samples == 0 || n_features == 0) {
        throw InvalidSpec("n_samples and n_features must be positive");
    }
    if (p_noise < 0.0 || p_noise > 1.0) {
        throw InvalidSpec("p_noise must lie in [0,1]");
    }
    if (static_cast<double>(n_samples) * (1.0 - p_noise) < 1.0) {
        throw InvalidSpec("need at least one noise-free sample");
    }
    if (feature_noise_std < 0.0) {
        throw InvalidSpec("feature_noise_std must be >= 0");
    }
}

void ClusterGeneratorSpec::validate() const {
    if (n_samples == 0) throw InvalidSpec("n_samples must be positive");
    if (n_informative < 1) throw InvalidSpec("n_informative must be >= 1");
    if (cube_edge <= 0.0) throw InvalidSpec("cube_edge must be > 0");
    if (cluster_std <= 0.0) throw InvalidSpec("cluster_std must be > 0");
}

void QuantileGeneratorSpec::validate() const {
    if (n_samples < 2) throw InvalidSpec("n_samples must be >= 2");
    if (n_features == 0) throw InvalidSpec("n_features must be positive");
}

LinearDataset generate_linear(const LinearGeneratorSpec& spec) {
    spec.validate();
    const std::size_t n = spec.n_samples, d = spec.n_features;
    const auto n_perfect = static_cast<std::size_t>(
        static_cast<double>(n) * (1.0 - spec.p_noise));

    LinearDataset out;
    out.dataset = make_base(n, d, "synthetic-linear");
    out.intercept = 0.0;
    out.coefficients.resize(d);
    Rng coef_rng(derive_seed(spec.seed, "linear-coefficients"));
    for (double& c : out.coefficients) c = coef_rng.next_uniform(-1.0, 1.0);

    Rng x_rng(derive_seed(spec.seed, "linear-features"));
    Rng noise_x_rng(derive_seed(spec.seed, "linear-noise-features"));
    Rng noise_y_rng(derive_seed(spec.seed, "linear-noise-labels"));
    Rng jitter_rng(derive_seed(spec.seed, "linear-feature-jitter"));

    for (std::size_t i = 0; i < n; ++i) {
        Rng& rng = i < n_perfect ? x_rng : noise_x_rng;
        double z = out.intercept;
        for (std::size_t f = 0; f < d; ++f) {
            const double x = rng.next_normal();
            out.dataset.features.at(i, f) = x;
            z += out.coefficients[f] * x;
        }
        if (i < n_perfect) {
            out.dataset.labels[i] = sigmoid(z) > 0.5 ? 1 : 0;
        } else {
            out.dataset.labels[i] = noise_y_rng.next_bernoulli(0.5) ? 1 : 0;
        }
    }
    if (spec.feature_noise_std > 0.0) {
        for (double& v : out.dataset.features.data) {
            v += spec.feature_noise_std * jitter_rng.next_normal();
        }
    }
    return out;
}

TabularDataset generate_hypercube_clusters(const ClusterGeneratorSpec& spec) {
    spec.validate();
    const std::size_t n = spec.n_samples, d = spec.n_informative;
    TabularDataset ds = make_base(n, d, "synthetic-hypercube");

    // Two clusters per class on four distinct hypercube vertices (random
    // vertices when d allows, antipodal corners for d = 1).
    const std::size_t n_clusters = 4;
    Rng vertex_rng(derive_seed(spec.seed, "hypercube-vertices"));
    std::vector<std::vector<double>> centers;
    std::vector<std::vector<int>> used;
    while (centers.size() < n_clusters) {
        std::vector<int> bits(d);
        for (int& b : bits) b = vertex_rng.next_bernoulli(0.5) ? 1 : 0;
        if (d >= 2 && std::find(used.begin(), used.end(), bits) != used.end()) {
            continue;
        }
        used.push_back(bits);
        std::vector<double> c(d);
        for (std::size_t f = 0; f < d; ++f) {
            c[f] = (bits[f] == 1 ? 1.0 : -1.0) * spec.cube_edge;
        }
        centers.push_back(std::move(c));
    }

    Rng sample_rng(derive_seed(spec.seed, "hypercube-samples"));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng shuffle_rng(derive_seed(spec.seed, "hypercube-shuffle"));
    for (std::size_t i = n - 1; i > 0; --i) {
        std::swap(order[i], order[shuffle_rng.next_below(i + 1)]);
    }
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = order[k];
        const int label = static_cast<int>(k % 2);           // balanced +-1
        const std::size_t cluster =
            static_cast<std::size_t>(label) * 2 + sample_rng.next_below(2);
        ds.labels[i] = label;
        for (std::size_t f = 0; f < d; ++f) {
            ds.features.at(i, f) =
                centers[cluster][f] + spec.cluster_std * sample_rng.next_normal();
        }
    }
    return ds;
}

TabularDataset generate_gaussian_quantiles(const QuantileGeneratorSpec& spec) {
    spec.validate();
    const std::size_t n = spec.n_samples, d = spec.n_features;
    TabularDataset ds = make_base(n, d, "synthetic-quantiles");
    Rng rng(derive_seed(spec.seed, "quantile-samples"));
    std::vector<double> sq_norm(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t f = 0; f < d; ++f) {
            const double x = rng.next_normal();
            ds.features.at(i, f) = x;
            sq_norm[i] += x * x;
        }
    }
    // Outer half (largest squared norms) gets label 1; exact balance.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return sq_norm[a] < sq_norm[b];
    });
    for (std::size_t k = n / 2; k < n; ++k) ds.labels[order[k]] = 1;
    return ds;
}

TabularDataset assign_protected(const TabularDataset& ds,
                                double minority_fraction, std::uint64_t seed) {
    if (ds.size() == 0) throw EmptyGroup("dataset is empty");
    if (!(minority_fraction > 0.0 && minority_fraction < 1.0)) {
        throw InvalidFraction("minority_fraction must lie in (0,1)");
    }
    TabularDataset out = ds;
    Rng rng(derive_seed(seed, "assign_protected"));
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.protected_tags[i] = rng.next_bernoulli(minority_fraction)
                                    ? minority_tag()
                                    : majority_tag();
    }
    return out;
}

std::pair<TabularDataset, FlipLog> inject_bias(const TabularDataset& ds,
                                               const BiasSpec& bias) {
    if (bias.severity < 0.0 || bias.severity > 1.0) {
        throw InvalidSpec("severity must lie in [0,1]");
    }
    const int eligible_label =
        bias.direction == FlipDirection::OneToZero ? 1 : 0;
    bool any_eligible = false;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (ds.protected_tags[i].group == bias.target_value &&
            ds.labels[i] == eligible_label) {
            any_eligible = true;
            break;
        }
    }
    if (!any_eligible) {
        throw NoEligibleRows("no rows match target group and direction");
    }

    TabularDataset out = ds;
    FlipLog log;
    log.dataset_provenance = ds.provenance;
    Rng rng(derive_seed(bias.seed, "inject_bias"));
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out.protected_tags[i].group != bias.target_value) continue;
        if (out.labels[i] != eligible_label) continue;
        if (rng.next_bernoulli(bias.severity)) {
            out.labels[i] = 1 - eligible_label;
            log.entries.push_back(
                {out.row_ids[i], bias.direction, FlipOrigin::Injected});
        }
    }
    return {std::move(out), std::move(log)};
}

}  // namespace fairlabel
