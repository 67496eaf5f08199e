#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairlabel/classify.hpp"
#include "fairlabel/debias.hpp"
#include "fairlabel/fairmetrics.hpp"
#include "fairlabel/types.hpp"

namespace fairlabel {

enum class SyntheticFamily { Linear, Hypercube, Quantiles };

struct SyntheticExperimentConfig {
    SyntheticFamily family = SyntheticFamily::Linear;
    std::size_t n_samples = 20000;
    std::size_t n_features = 10;   // linear / quantiles
    double p_noise = 0.1;          // linear
    std::size_t n_informative = 8; // hypercube
    double cube_edge = 0.5;
    double cluster_std = 1.0;

    double minority_fraction = 0.5;
    double minority_severity = 0.2;                 // minority 1 -> 0
    std::optional<double> majority_severity;        // majority 0 -> 1

    DebiasConfig fairlabel;
    DebiasConfig naive;
    ClassifierSpec downstream;

    double test_fraction = 0.2;
    int repetitions = 5;
    std::uint64_t base_seed = 0;

    void validate() const;
};

struct MethodMetrics {
    std::optional<double> cfr;  // empty when no bias was injected
    double mfr = 0.0;
    double f1 = 0.0;
    double model_dir = 0.0;
    double model_did = 0.0;
    double debiased_label_dir = 0.0;
};

struct RepetitionResult {
    int repetition = 0;
    std::uint64_t seed = 0;
    MethodMetrics fairlabel;
    MethodMetrics naive;
    double clean_label_dir = 0.0;
    double biased_label_dir = 0.0;   // label DIR of the un-debiased data
    double biased_model_dir = 0.0;   // DIR of a model trained on biased data
};

struct Aggregate {
    double mean = 0.0;
    double stddev = 0.0;
};

struct ExperimentResult {
    nlohmann::json config;
    double bias_rate = 0.0;
    std::vector<RepetitionResult> repetitions;
    std::map<std::string, Aggregate> aggregates;
};

ExperimentResult run_synthetic_experiment(
    const SyntheticExperimentConfig& cfg);

// One result per rate; seeds are derived independently per rate. When the
// config carries a majority severity, it sweeps at the same rate.
std::vector<ExperimentResult> sweep_bias_rate(
    const SyntheticExperimentConfig& cfg, const std::vector<double>& rates);

struct BenchmarkConfig {
    DebiasConfig debias;
    ClassifierSpec downstream;
    double test_fraction = 0.2;
    std::uint64_t seed = 0;
};

struct BenchmarkResult {
    FairnessReport raw_labels;      // label-based DIR of the full dataset
    FairnessReport original_model;  // prediction DIR, trained on raw labels
    FairnessReport debiased_model;  // prediction DIR, trained post-FairLabel
    double dir_gain = 0.0;
    std::size_t flips_proposed = 0;
};

BenchmarkResult run_benchmark_experiment(const TabularDataset& ds,
                                         const BenchmarkConfig& cfg);

enum class ResultFormat { Json, Csv };

// Bit-stable serialization: sorted keys, 6-decimal values.
void emit_results(const ExperimentResult& result, const std::string& path,
                  ResultFormat format);
void emit_sweep_csv(const std::vector<ExperimentResult>& results,
                    const std::string& path);

nlohmann::json experiment_result_to_json(const ExperimentResult& result);
ExperimentResult experiment_result_from_json(const nlohmann::json& j);

nlohmann::json synthetic_config_to_json(const SyntheticExperimentConfig& cfg);
SyntheticExperimentConfig synthetic_config_from_json(const nlohmann::json& j);

nlohmann::json classifier_spec_to_json(const ClassifierSpec& spec);
ClassifierSpec classifier_spec_from_json(const nlohmann::json& j);

nlohmann::json debias_config_to_json(const DebiasConfig& cfg);
DebiasConfig debias_config_from_json(const nlohmann::json& j);

}  // namespace fairlabel
