#include "fairlabel/harness.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "fairlabel/core.hpp"
#include "fairlabel/error.hpp"
#include "fairlabel/io.hpp"
#include "fairlabel/rng.hpp"
#include "fairlabel/synth.hpp"

namespace fairlabel {

namespace {

TabularDataset generate_family(const SyntheticExperimentConfig& cfg,
                               std::uint64_t seed) {
    switch (cfg.family) {
        case SyntheticFamily::Linear: {
            LinearGeneratorSpec spec;
            spec.n_samples = cfg.n_samples;
            spec.n_features = cfg.n_features;
            spec.p_noise = cfg.p_noise;
            spec.seed = seed;
            return generate_linear(spec).dataset;
        }
        case SyntheticFamily::Hypercube: {
            ClusterGeneratorSpec spec;
            spec.n_samples = cfg.n_samples;
            spec.n_informative = cfg.n_informative;
            spec.cube_edge = cfg.cube_edge;
            spec.cluster_std = cfg.cluster_std;
            spec.seed = seed;
            return generate_hypercube_clusters(spec);
        }
        case SyntheticFamily::Quantiles: {
            QuantileGeneratorSpec spec;
            spec.n_samples = cfg.n_samples;
            spec.n_features = cfg.n_features;
            spec.seed = seed;
            return generate_gaussian_quantiles(spec);
        }
    }
    throw InvalidSpec("unknown synthetic family");
}

std::vector<std::size_t> positions_of(const TabularDataset& ds,
                                      const std::vector<std::int64_t>& ids) {
    std::unordered_set<std::int64_t> wanted(ids.begin(), ids.end());
    std::vector<std::size_t> out;
    out.reserve(ids.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (wanted.count(ds.row_ids[i])) out.push_back(i);
    }
    return out;
}

double safe_dir(const std::vector<int>& y, const std::vector<GroupTag>& g) {
    auto [rate_min, rate_maj] = selection_rates(y, g);
    if (rate_maj == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return rate_min / rate_maj;
}

struct DownstreamEval {
    double f1 = 0.0;
    double model_dir = 0.0;
    double model_did = 0.0;
};

DownstreamEval eval_downstream(const ClassifierSpec& spec,
                               const TabularDataset& train,
                               const TabularDataset& test,
                               const std::vector<int>& clean_test_labels) {
    const ClassifierModel model = fit(spec, train);
    const std::vector<int> preds = predict(model, test.features, 0.5);
    DownstreamEval out;
    out.f1 = f1(clean_test_labels, preds);
    auto [rate_min, rate_maj] = selection_rates(preds, test.protected_tags);
    out.model_did = rate_min - rate_maj;
    out.model_dir = rate_maj > 0.0
                        ? rate_min / rate_maj
                        : std::numeric_limits<double>::quiet_NaN();
    return out;
}

RepetitionResult run_repetition(const SyntheticExperimentConfig& cfg, int rep) {
    RepetitionResult result;
    result.repetition = rep;
    result.seed = cfg.base_seed + static_cast<std::uint64_t>(rep);
    const std::uint64_t seed = result.seed;

    TabularDataset clean = assign_protected(
        generate_family(cfg, derive_seed(seed, "generate")),
        cfg.minority_fraction, derive_seed(seed, "protected"));
    result.clean_label_dir = safe_dir(clean.labels, clean.protected_tags);

    // Inject the known bias; the injected log is the ground truth that
    // CFR/MFR are scored against.
    TabularDataset biased = clean;
    FlipLog injected;
    injected.dataset_provenance = clean.provenance;
    {
        BiasSpec bias;
        bias.target_value = Group::Minority;
        bias.direction = FlipDirection::OneToZero;
        bias.severity = cfg.minority_severity;
        bias.seed = derive_seed(seed, "bias-minority");
        auto [ds, log] = inject_bias(biased, bias);
        biased = std::move(ds);
        injected.entries.insert(injected.entries.end(), log.entries.begin(),
                                log.entries.end());
    }
    if (cfg.majority_severity) {
        BiasSpec bias;
        bias.target_value = Group::Majority;
        bias.direction = FlipDirection::ZeroToOne;
        bias.severity = *cfg.majority_severity;
        bias.seed = derive_seed(seed, "bias-majority");
        auto [ds, log] = inject_bias(biased, bias);
        biased = std::move(ds);
        injected.entries.insert(injected.entries.end(), log.entries.begin(),
                                log.entries.end());
    }
    result.biased_label_dir = safe_dir(biased.labels, biased.protected_tags);

    DebiasConfig fl_cfg = cfg.fairlabel;
    fl_cfg.seed = derive_seed(seed, "fairlabel");
    auto [debiased_fl, report_fl] = fair_label(biased, fl_cfg);

    DebiasConfig nv_cfg = cfg.naive;
    nv_cfg.seed = derive_seed(seed, "naive");
    auto [debiased_nv, report_nv] = naive_debias(biased, nv_cfg);

    auto score_flips = [&](const DebiasReport& report, MethodMetrics& m) {
        if (injected.empty()) {
            m.cfr = std::nullopt;
        } else {
            m.cfr = cfr(injected, report.proposed_flips);
        }
        m.mfr = mfr(injected, report.proposed_flips);
    };
    score_flips(report_fl, result.fairlabel);
    score_flips(report_nv, result.naive);
    result.fairlabel.debiased_label_dir =
        safe_dir(debiased_fl.labels, debiased_fl.protected_tags);
    result.naive.debiased_label_dir =
        safe_dir(debiased_nv.labels, debiased_nv.protected_tags);

    // Shared 80/20 split keyed by row id so D1/D2/D3 use identical rows.
    auto [clean_train, clean_test] =
        split_train_test(clean, cfg.test_fraction, derive_seed(seed, "split"));
    const std::vector<std::size_t> train_pos =
        positions_of(clean, clean_train.row_ids);
    const std::vector<std::size_t> test_pos =
        positions_of(clean, clean_test.row_ids);

    ClassifierSpec m1_spec = cfg.downstream;
    m1_spec.seed = derive_seed(seed, "model-fairlabel");
    const DownstreamEval ev_fl =
        eval_downstream(m1_spec, select_rows(debiased_fl, train_pos),
                        clean_test, clean_test.labels);
    result.fairlabel.f1 = ev_fl.f1;
    result.fairlabel.model_dir = ev_fl.model_dir;
    result.fairlabel.model_did = ev_fl.model_did;

    ClassifierSpec m2_spec = cfg.downstream;
    m2_spec.seed = derive_seed(seed, "model-naive");
    const DownstreamEval ev_nv =
        eval_downstream(m2_spec, select_rows(debiased_nv, train_pos),
                        clean_test, clean_test.labels);
    result.naive.f1 = ev_nv.f1;
    result.naive.model_dir = ev_nv.model_dir;
    result.naive.model_did = ev_nv.model_did;

    ClassifierSpec m0_spec = cfg.downstream;
    m0_spec.seed = derive_seed(seed, "model-biased");
    result.biased_model_dir =
        eval_downstream(m0_spec, select_rows(biased, train_pos), clean_test,
                        clean_test.labels)
            .model_dir;
    return result;
}

void accumulate(std::map<std::string, std::vector<double>>& samples,
                const std::string& key, double v) {
    if (std::isfinite(v)) samples[key].push_back(v);
}

Aggregate aggregate_of(const std::vector<double>& xs) {
    Aggregate a;
    if (xs.empty()) return a;
    double sum = 0.0;
    for (double x : xs) sum += x;
    a.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - a.mean) * (x - a.mean);
        a.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return a;
}

std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

nlohmann::json method_metrics_to_json(const MethodMetrics& m) {
    return {
        {"cfr", m.cfr ? nlohmann::json(round6(*m.cfr)) : nlohmann::json(nullptr)},
        {"mfr", round6(m.mfr)},
        {"f1", round6(m.f1)},
        {"model_dir", round6(m.model_dir)},
        {"model_did", round6(m.model_did)},
        {"debiased_label_dir", round6(m.debiased_label_dir)},
    };
}

MethodMetrics method_metrics_from_json(const nlohmann::json& j) {
    MethodMetrics m;
    if (!j.at("cfr").is_null()) m.cfr = j.at("cfr").get<double>();
    m.mfr = j.at("mfr").get<double>();
    m.f1 = j.at("f1").get<double>();
    m.model_dir = j.at("model_dir").get<double>();
    m.model_did = j.at("model_did").get<double>();
    m.debiased_label_dir = j.at("debiased_label_dir").get<double>();
    return m;
}

}  // namespace

void SyntheticExperimentConfig::validate() const {
    if (repetitions < 1) throw InvalidSpec("repetitions must be >= 1");
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw InvalidSpec("test_fraction must lie in (0,1)");
    }
    if (minority_severity < 0.0 || minority_severity > 1.0) {
        throw InvalidSpec("minority_severity must lie in [0,1]");
    }
    if (majority_severity &&
        (*majority_severity < 0.0 || *majority_severity > 1.0)) {
        throw InvalidSpec("majority_severity must lie in [0,1]");
    }
    fairlabel.validate();
    naive.validate();
    downstream.validate();
}

ExperimentResult run_synthetic_experiment(
    const SyntheticExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult result;
    result.config = synthetic_config_to_json(cfg);
    result.bias_rate = cfg.minority_severity;
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
        try {
            result.repetitions.push_back(run_repetition(cfg, rep));
        } catch (const Error& e) {
            throw Error("repetition " + std::to_string(rep) + " (seed " +
                        std::to_string(cfg.base_seed +
                                       static_cast<std::uint64_t>(rep)) +
                        ") failed: " + e.what());
        }
    }

    std::map<std::string, std::vector<double>> samples;
    for (const RepetitionResult& r : result.repetitions) {
        const std::pair<const char*, const MethodMetrics*> methods[] = {
            {"fairlabel", &r.fairlabel}, {"naive", &r.naive}};
        for (const auto& [name, m] : methods) {
            if (m->cfr) accumulate(samples, std::string(name) + ".cfr", *m->cfr);
            accumulate(samples, std::string(name) + ".mfr", m->mfr);
            accumulate(samples, std::string(name) + ".f1", m->f1);
            accumulate(samples, std::string(name) + ".model_dir", m->model_dir);
            accumulate(samples, std::string(name) + ".model_did", m->model_did);
            accumulate(samples, std::string(name) + ".debiased_label_dir",
                       m->debiased_label_dir);
        }
        accumulate(samples, "clean_label_dir", r.clean_label_dir);
        accumulate(samples, "biased_label_dir", r.biased_label_dir);
        accumulate(samples, "biased_model_dir", r.biased_model_dir);
    }
    for (const auto& [key, xs] : samples) {
        result.aggregates[key] = aggregate_of(xs);
    }
    return result;
}

std::vector<ExperimentResult> sweep_bias_rate(
    const SyntheticExperimentConfig& cfg, const std::vector<double>& rates) {
    for (double r : rates) {
        if (r < 0.0 || r > 1.0) throw InvalidSpec("rate outside [0,1]");
    }
    std::vector<ExperimentResult> out;
    out.reserve(rates.size());
    for (double rate : rates) {
        SyntheticExperimentConfig point = cfg;
        point.minority_severity = rate;
        if (point.majority_severity) point.majority_severity = rate;
        point.base_seed = derive_seed(cfg.base_seed, "rate-" + fixed6(rate));
        out.push_back(run_synthetic_experiment(point));
    }
    return out;
}

BenchmarkResult run_benchmark_experiment(const TabularDataset& ds,
                                         const BenchmarkConfig& cfg) {
    BenchmarkResult result;
    result.raw_labels =
        fairness_report(ds.labels, ds.protected_tags, MetricSource::Labels);

    auto [train, test] = split_train_test(ds, cfg.test_fraction,
                                          derive_seed(cfg.seed, "benchmark"));
    ClassifierSpec spec_a = cfg.downstream;
    spec_a.seed = derive_seed(cfg.seed, "model-original");
    const ClassifierModel model_a = fit(spec_a, train);
    result.original_model =
        fairness_report(test.labels, predict(model_a, test.features, 0.5),
                        test.protected_tags, MetricSource::Predictions);

    DebiasConfig debias_cfg = cfg.debias;
    debias_cfg.seed = derive_seed(cfg.seed, "debias");
    auto [debiased_train, report] = fair_label(train, debias_cfg);
    result.flips_proposed = report.proposed_flips.size();

    ClassifierSpec spec_b = cfg.downstream;
    spec_b.seed = derive_seed(cfg.seed, "model-debiased");
    const ClassifierModel model_b = fit(spec_b, debiased_train);
    result.debiased_model =
        fairness_report(test.labels, predict(model_b, test.features, 0.5),
                        test.protected_tags, MetricSource::Predictions);

    result.dir_gain = result.debiased_model.dir - result.original_model.dir;
    return result;
}

nlohmann::json experiment_result_to_json(const ExperimentResult& result) {
    nlohmann::json reps = nlohmann::json::array();
    for (const RepetitionResult& r : result.repetitions) {
        reps.push_back({
            {"repetition", r.repetition},
            {"seed", r.seed},
            {"fairlabel", method_metrics_to_json(r.fairlabel)},
            {"naive", method_metrics_to_json(r.naive)},
            {"clean_label_dir", round6(r.clean_label_dir)},
            {"biased_label_dir", round6(r.biased_label_dir)},
            {"biased_model_dir", round6(r.biased_model_dir)},
        });
    }
    nlohmann::json aggs = nlohmann::json::object();
    for (const auto& [key, a] : result.aggregates) {
        aggs[key] = {{"mean", round6(a.mean)}, {"std", round6(a.stddev)}};
    }
    return {{"config", result.config},
            {"bias_rate", round6(result.bias_rate)},
            {"repetitions", reps},
            {"aggregates", aggs}};
}

ExperimentResult experiment_result_from_json(const nlohmann::json& j) {
    ExperimentResult result;
    result.config = j.at("config");
    result.bias_rate = j.at("bias_rate").get<double>();
    for (const auto& r : j.at("repetitions")) {
        RepetitionResult rep;
        rep.repetition = r.at("repetition").get<int>();
        rep.seed = r.at("seed").get<std::uint64_t>();
        rep.fairlabel = method_metrics_from_json(r.at("fairlabel"));
        rep.naive = method_metrics_from_json(r.at("naive"));
        rep.clean_label_dir = r.at("clean_label_dir").get<double>();
        rep.biased_label_dir = r.at("biased_label_dir").get<double>();
        rep.biased_model_dir = r.at("biased_model_dir").get<double>();
        result.repetitions.push_back(std::move(rep));
    }
    for (const auto& [key, a] : j.at("aggregates").items()) {
        result.aggregates[key] = {a.at("mean").get<double>(),
                                  a.at("std").get<double>()};
    }
    return result;
}

void emit_results(const ExperimentResult& result, const std::string& path,
                  ResultFormat format) {
    if (format == ResultFormat::Json) {
        write_text_file(path, experiment_result_to_json(result).dump(2) + "\n");
        return;
    }
    emit_sweep_csv({result}, path);
}

void emit_sweep_csv(const std::vector<ExperimentResult>& results,
                    const std::string& path) {
    std::ostringstream out;
    out << "rate,method,metric,mean,std\n";
    for (const ExperimentResult& r : results) {
        for (const auto& [key, a] : r.aggregates) {
            const auto dot = key.find('.');
            const std::string method =
                dot == std::string::npos ? "overall" : key.substr(0, dot);
            const std::string metric =
                dot == std::string::npos ? key : key.substr(dot + 1);
            out << fixed6(r.bias_rate) << ',' << method << ',' << metric << ','
                << fixed6(a.mean) << ',' << fixed6(a.stddev) << '\n';
        }
    }
    write_text_file(path, out.str());
}

nlohmann::json classifier_spec_to_json(const ClassifierSpec& spec) {
    std::string kind;
    switch (spec.kind) {
        case ClassifierKind::LogisticRegression: kind = "logistic"; break;
        case ClassifierKind::DecisionTree: kind = "tree"; break;
        case ClassifierKind::GradientBoostedTrees: kind = "gbt"; break;
    }
    return {{"kind", kind},
            {"learning_rate", spec.learning_rate},
            {"epochs", spec.epochs},
            {"l2_penalty", spec.l2_penalty},
            {"rounds", spec.rounds},
            {"depth", spec.depth},
            {"tree_depth", spec.tree_depth},
            {"seed", spec.seed}};
}

ClassifierSpec classifier_spec_from_json(const nlohmann::json& j) {
    ClassifierSpec spec;
    const std::string kind = j.value("kind", "logistic");
    if (kind == "logistic") spec.kind = ClassifierKind::LogisticRegression;
    else if (kind == "tree") spec.kind = ClassifierKind::DecisionTree;
    else if (kind == "gbt") spec.kind = ClassifierKind::GradientBoostedTrees;
    else throw InvalidSpec("unknown classifier kind '" + kind + "'");
    spec.learning_rate = j.value("learning_rate", spec.learning_rate);
    spec.epochs = j.value("epochs", spec.epochs);
    spec.l2_penalty = j.value("l2_penalty", spec.l2_penalty);
    spec.rounds = j.value("rounds", spec.rounds);
    spec.depth = j.value("depth", spec.depth);
    spec.tree_depth = j.value("tree_depth", spec.tree_depth);
    spec.seed = j.value("seed", spec.seed);
    return spec;
}

nlohmann::json debias_config_to_json(const DebiasConfig& cfg) {
    nlohmann::json policy;
    if (cfg.threshold_policy.mode == ThresholdPolicy::Mode::Fixed) {
        policy = {{"mode", "fixed"}, {"threshold", cfg.threshold_policy.fixed}};
    } else {
        policy = {{"mode", "tune"},
                  {"holdout_fraction", cfg.threshold_policy.holdout_fraction},
                  {"grid_step", cfg.threshold_policy.grid_step}};
    }
    return {{"classifier", classifier_spec_to_json(cfg.classifier)},
            {"threshold_policy", policy},
            {"run_fairmaj", cfg.run_fairmaj},
            {"iterations", cfg.iterations},
            {"seed", cfg.seed}};
}

DebiasConfig debias_config_from_json(const nlohmann::json& j) {
    DebiasConfig cfg;
    if (j.contains("classifier")) {
        cfg.classifier = classifier_spec_from_json(j.at("classifier"));
    }
    if (j.contains("threshold_policy")) {
        const auto& p = j.at("threshold_policy");
        const std::string mode = p.value("mode", "fixed");
        if (mode == "fixed") {
            cfg.threshold_policy =
                ThresholdPolicy::fixed_at(p.value("threshold", 0.5));
        } else if (mode == "tune") {
            cfg.threshold_policy = ThresholdPolicy::tuned(
                p.value("holdout_fraction", 0.2), p.value("grid_step", 0.01));
        } else {
            throw InvalidSpec("unknown threshold mode '" + mode + "'");
        }
    }
    cfg.run_fairmaj = j.value("run_fairmaj", cfg.run_fairmaj);
    cfg.iterations = j.value("iterations", cfg.iterations);
    cfg.seed = j.value("seed", cfg.seed);
    return cfg;
}

nlohmann::json synthetic_config_to_json(const SyntheticExperimentConfig& cfg) {
    std::string family;
    switch (cfg.family) {
        case SyntheticFamily::Linear: family = "linear"; break;
        case SyntheticFamily::Hypercube: family = "hypercube"; break;
        case SyntheticFamily::Quantiles: family = "quantiles"; break;
    }
    return {{"family", family},
            {"n_samples", cfg.n_samples},
            {"n_features", cfg.n_features},
            {"p_noise", cfg.p_noise},
            {"n_informative", cfg.n_informative},
            {"cube_edge", cfg.cube_edge},
            {"cluster_std", cfg.cluster_std},
            {"minority_fraction", cfg.minority_fraction},
            {"minority_severity", cfg.minority_severity},
            {"majority_severity", cfg.majority_severity
                                      ? nlohmann::json(*cfg.majority_severity)
                                      : nlohmann::json(nullptr)},
            {"fairlabel", debias_config_to_json(cfg.fairlabel)},
            {"naive", debias_config_to_json(cfg.naive)},
            {"downstream", classifier_spec_to_json(cfg.downstream)},
            {"test_fraction", cfg.test_fraction},
            {"repetitions", cfg.repetitions},
            {"base_seed", cfg.base_seed}};
}

SyntheticExperimentConfig synthetic_config_from_json(const nlohmann::json& j) {
    SyntheticExperimentConfig cfg;
    const std::string family = j.value("family", "linear");
    if (family == "linear") cfg.family = SyntheticFamily::Linear;
    else if (family == "hypercube") cfg.family = SyntheticFamily::Hypercube;
    else if (family == "quantiles") cfg.family = SyntheticFamily::Quantiles;
    else throw InvalidSpec("unknown synthetic family '" + family + "'");
    cfg.n_samples = j.value("n_samples", cfg.n_samples);
    cfg.n_features = j.value("n_features", cfg.n_features);
    cfg.p_noise = j.value("p_noise", cfg.p_noise);
    cfg.n_informative = j.value("n_informative", cfg.n_informative);
    cfg.cube_edge = j.value("cube_edge", cfg.cube_edge);
    cfg.cluster_std = j.value("cluster_std", cfg.cluster_std);
    cfg.minority_fraction = j.value("minority_fraction", cfg.minority_fraction);
    cfg.minority_severity = j.value("minority_severity", cfg.minority_severity);
    if (j.contains("majority_severity") && !j.at("majority_severity").is_null()) {
        cfg.majority_severity = j.at("majority_severity").get<double>();
    }
    if (j.contains("fairlabel")) {
        cfg.fairlabel = debias_config_from_json(j.at("fairlabel"));
    }
    if (j.contains("naive")) {
        cfg.naive = debias_config_from_json(j.at("naive"));
    }
    if (j.contains("downstream")) {
        cfg.downstream = classifier_spec_from_json(j.at("downstream"));
    }
    cfg.test_fraction = j.value("test_fraction", cfg.test_fraction);
    cfg.repetitions = j.value("repetitions", cfg.repetitions);
    cfg.base_seed = j.value("base_seed", cfg.base_seed);
    return cfg;
}

}  // namespace fairlabel
