// Command-line front end for the FairLabel library: synthetic data
// generation, bias injection, debiasing, metric evaluation, and the
// synthetic/benchmark experiment pipelines.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairlabel/core.hpp"
#include "fairlabel/debias.hpp"
#include "fairlabel/error.hpp"
#include "fairlabel/fairmetrics.hpp"
#include "fairlabel/harness.hpp"
#include "fairlabel/ingest.hpp"
#include "fairlabel/io.hpp"
#include "fairlabel/rng.hpp"
#include "fairlabel/synth.hpp"

namespace fl = fairlabel;

namespace {

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw fl::FileNotFound(path);
    nlohmann::json j;
    in >> j;
    return j;
}

fl::ClassifierSpec spec_for(const std::string& name, std::uint64_t seed) {
    if (name == "logistic") return fl::ClassifierSpec::logistic(seed);
    if (name == "gbt") return fl::ClassifierSpec::gbt(seed);
    if (name == "tree") return fl::ClassifierSpec::decision_tree(seed);
    throw fl::InvalidSpec("unknown classifier '" + name + "'");
}

fl::TabularDataset load_benchmark(const std::string& name,
                                  const std::string& path,
                                  fl::IngestStats* stats = nullptr) {
    if (name == "adult") return fl::load_adult(path, stats);
    if (name == "german") return fl::load_german(path, stats);
    if (name == "compas") return fl::load_compas(path, stats);
    throw fl::InvalidSpec("unknown benchmark dataset '" + name + "'");
}

int run(int argc, char** argv) {
    CLI::App app{"FairLabel: directional label-bias detection and correction"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a synthetic dataset");
    std::string gen_family = "linear", gen_out;
    std::size_t gen_n = 20000, gen_d = 10;
    double gen_p_noise = 0.0, gen_minority_fraction = 0.5;
    double gen_cube_edge = 0.5, gen_cluster_std = 1.0;
    std::uint64_t gen_seed = 0;
    gen->add_option("--family", gen_family, "linear|hypercube|quantiles");
    gen->add_option("--n", gen_n, "Number of samples");
    gen->add_option("--d", gen_d, "Number of features");
    gen->add_option("--p-noise", gen_p_noise, "Random-label fraction (linear)");
    gen->add_option("--cube-edge", gen_cube_edge, "Hypercube edge length");
    gen->add_option("--cluster-std", gen_cluster_std, "Cluster std dev");
    gen->add_option("--minority-fraction", gen_minority_fraction,
                    "Probability of the Minority tag per row");
    gen->add_option("--seed", gen_seed, "Random seed");
    gen->add_option("--out", gen_out, "Output CSV path")->required();
    gen->callback([&] {
        fl::TabularDataset ds;
        if (gen_family == "linear") {
            fl::LinearGeneratorSpec spec;
            spec.n_samples = gen_n;
            spec.n_features = gen_d;
            spec.p_noise = gen_p_noise;
            spec.seed = gen_seed;
            ds = fl::generate_linear(spec).dataset;
        } else if (gen_family == "hypercube") {
            fl::ClusterGeneratorSpec spec;
            spec.n_samples = gen_n;
            spec.n_informative = gen_d;
            spec.cube_edge = gen_cube_edge;
            spec.cluster_std = gen_cluster_std;
            spec.seed = gen_seed;
            ds = fl::generate_hypercube_clusters(spec);
        } else if (gen_family == "quantiles") {
            fl::QuantileGeneratorSpec spec;
            spec.n_samples = gen_n;
            spec.n_features = gen_d;
            spec.seed = gen_seed;
            ds = fl::generate_gaussian_quantiles(spec);
        } else {
            throw fl::InvalidSpec("unknown family '" + gen_family + "'");
        }
        ds = fl::assign_protected(ds, gen_minority_fraction,
                                  fl::derive_seed(gen_seed, "cli-protected"));
        fl::write_dataset_csv(ds, gen_out);
        std::cout << "wrote " << ds.size() << " rows to " << gen_out << "\n";
    });

    // inject-bias
    auto* inj = app.add_subcommand("inject-bias", "Inject directional bias");
    std::string inj_in, inj_out, inj_log, inj_group = "minority",
                inj_direction = "1to0";
    double inj_severity = 0.2;
    std::uint64_t inj_seed = 0;
    inj->add_option("--in", inj_in, "Input dataset CSV")->required();
    inj->add_option("--group", inj_group, "majority|minority");
    inj->add_option("--direction", inj_direction, "0to1|1to0");
    inj->add_option("--severity", inj_severity, "Flip probability");
    inj->add_option("--seed", inj_seed, "Random seed");
    inj->add_option("--out", inj_out, "Output dataset CSV")->required();
    inj->add_option("--log", inj_log, "Flip-log JSON path")->required();
    inj->callback([&] {
        const fl::TabularDataset ds = fl::read_dataset_csv(inj_in);
        fl::BiasSpec bias;
        bias.target_value =
            inj_group == "majority" ? fl::Group::Majority : fl::Group::Minority;
        bias.direction = inj_direction == "0to1" ? fl::FlipDirection::ZeroToOne
                                                 : fl::FlipDirection::OneToZero;
        bias.severity = inj_severity;
        bias.seed = inj_seed;
        auto [biased, log] = fl::inject_bias(ds, bias);
        fl::write_dataset_csv(biased, inj_out);
        fl::write_flip_log(log, inj_log);
        std::cout << "flipped " << log.size() << " labels\n";
    });

    // debias
    auto* deb = app.add_subcommand("debias", "Run a debiasing method");
    std::string deb_in, deb_out, deb_report, deb_method = "fairlabel",
                deb_classifier = "gbt", deb_threshold = "0.5";
    std::uint64_t deb_seed = 0;
    deb->add_option("--in", deb_in, "Input dataset CSV")->required();
    deb->add_option("--method", deb_method, "fairlabel|fairmin|fairmaj|naive");
    deb->add_option("--classifier", deb_classifier, "logistic|tree|gbt");
    deb->add_option("--threshold", deb_threshold, "Fixed value or 'tune'");
    deb->add_option("--seed", deb_seed, "Random seed");
    deb->add_option("--out", deb_out, "Debiased dataset CSV")->required();
    deb->add_option("--report", deb_report, "Report JSON path");
    deb->callback([&] {
        const fl::TabularDataset ds = fl::read_dataset_csv(deb_in);
        fl::DebiasConfig cfg;
        cfg.classifier = spec_for(deb_classifier, deb_seed);
        cfg.seed = deb_seed;
        cfg.threshold_policy = deb_threshold == "tune"
                                   ? fl::ThresholdPolicy::tuned()
                                   : fl::ThresholdPolicy::fixed_at(
                                         std::stod(deb_threshold));
        std::pair<fl::TabularDataset, fl::DebiasReport> out;
        if (deb_method == "fairmin") {
            out = fl::fair_min(ds, cfg);
        } else if (deb_method == "fairmaj") {
            out = fl::fair_maj(ds, cfg);
        } else if (deb_method == "fairlabel") {
            cfg.run_fairmaj = true;
            out = fl::fair_label(ds, cfg);
        } else if (deb_method == "naive") {
            out = fl::naive_debias(ds, cfg);
        } else {
            throw fl::InvalidSpec("unknown method '" + deb_method + "'");
        }
        fl::write_dataset_csv(out.first, deb_out);
        if (!deb_report.empty()) {
            fl::write_text_file(
                deb_report,
                fl::debias_report_to_json(out.second).dump(2) + "\n");
        }
        std::cout << "proposed " << out.second.proposed_flips.size()
                  << " flips\n";
    });

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "Compute debias/fairness metrics");
    std::string ev_data, ev_injected, ev_proposed, ev_metrics = "cfr,mfr,dir,did",
                ev_out, ev_predictions;
    ev->add_option("--data", ev_data, "Dataset CSV")->required();
    ev->add_option("--flips-injected", ev_injected, "Injected flip log");
    ev->add_option("--flips-proposed", ev_proposed, "Proposed flip log");
    ev->add_option("--predictions", ev_predictions,
                   "Optional CSV of row_id,prediction pairs for f1");
    ev->add_option("--metrics", ev_metrics, "Comma-separated metric list");
    ev->add_option("--out", ev_out, "Output JSON")->required();
    ev->callback([&] {
        const fl::TabularDataset ds = fl::read_dataset_csv(ev_data);
        nlohmann::json out = nlohmann::json::object();
        std::optional<fl::FlipLog> injected, proposed;
        if (!ev_injected.empty()) injected = fl::read_flip_log(ev_injected);
        if (!ev_proposed.empty()) proposed = fl::read_flip_log(ev_proposed);
        std::stringstream names(ev_metrics);
        std::string metric;
        while (std::getline(names, metric, ',')) {
            if (metric == "cfr") {
                if (!injected || !proposed) {
                    throw fl::InvalidSpec("cfr needs both flip logs");
                }
                out["cfr"] = fl::round6(fl::cfr(*injected, *proposed));
            } else if (metric == "mfr") {
                if (!injected || !proposed) {
                    throw fl::InvalidSpec("mfr needs both flip logs");
                }
                out["mfr"] = fl::round6(fl::mfr(*injected, *proposed));
            } else if (metric == "dir") {
                out["dir"] =
                    fl::round6(fl::dir(ds.labels, ds.protected_tags));
            } else if (metric == "did") {
                out["did"] =
                    fl::round6(fl::did(ds.labels, ds.protected_tags));
            } else if (metric == "f1") {
                if (ev_predictions.empty()) {
                    throw fl::InvalidSpec("f1 needs --predictions");
                }
                const fl::TabularDataset preds =
                    fl::read_dataset_csv(ev_predictions);
                out["f1"] = fl::round6(fl::f1(ds.labels, preds.labels));
            } else {
                throw fl::InvalidSpec("unknown metric '" + metric + "'");
            }
        }
        fl::write_text_file(ev_out, out.dump(2) + "\n");
        std::cout << out.dump(2) << "\n";
    });

    // experiment
    auto* exp = app.add_subcommand("experiment", "End-to-end pipelines");
    exp->require_subcommand(1);

    auto* exp_syn = exp->add_subcommand("synthetic", "Synthetic pipeline");
    std::string syn_config, syn_out = "results";
    std::vector<double> syn_rates;
    exp_syn->add_option("--config", syn_config, "Config JSON")->required();
    exp_syn
        ->add_option("--rates", syn_rates,
                     "Optional bias-rate sweep (comma separated)")
        ->delimiter(',');
    exp_syn->add_option("--out", syn_out, "Output directory")->required();
    exp_syn->callback([&] {
        const fl::SyntheticExperimentConfig cfg =
            fl::synthetic_config_from_json(load_json(syn_config));
        std::filesystem::create_directories(syn_out);
        if (syn_rates.empty()) {
            const fl::ExperimentResult result =
                fl::run_synthetic_experiment(cfg);
            fl::emit_results(result, syn_out + "/result.json",
                             fl::ResultFormat::Json);
            fl::emit_results(result, syn_out + "/result.csv",
                             fl::ResultFormat::Csv);
        } else {
            const auto results = fl::sweep_bias_rate(cfg, syn_rates);
            fl::emit_sweep_csv(results, syn_out + "/sweep.csv");
            for (const auto& r : results) {
                fl::emit_results(
                    r,
                    syn_out + "/result_rate_" + std::to_string(r.bias_rate) +
                        ".json",
                    fl::ResultFormat::Json);
            }
        }
        std::cout << "results written to " << syn_out << "\n";
    });

    auto* exp_bench = exp->add_subcommand("benchmark", "Benchmark pipeline");
    std::string bench_dataset, bench_path, bench_out = "results",
                bench_classifier = "gbt";
    std::uint64_t bench_seed = 0;
    exp_bench->add_option("--dataset", bench_dataset, "adult|german|compas")
        ->required();
    exp_bench->add_option("--data-path", bench_path, "Path to the source file")
        ->required();
    exp_bench->add_option("--classifier", bench_classifier,
                          "logistic|tree|gbt");
    exp_bench->add_option("--seed", bench_seed, "Random seed");
    exp_bench->add_option("--out", bench_out, "Output directory")->required();
    exp_bench->callback([&] {
        const fl::TabularDataset ds = load_benchmark(bench_dataset, bench_path);
        fl::BenchmarkConfig cfg;
        cfg.debias.classifier = spec_for(bench_classifier, bench_seed);
        cfg.debias.threshold_policy = fl::ThresholdPolicy::tuned();
        cfg.downstream = spec_for(bench_classifier, bench_seed);
        cfg.seed = bench_seed;
        const fl::BenchmarkResult result = fl::run_benchmark_experiment(ds, cfg);
        std::filesystem::create_directories(bench_out);
        const nlohmann::json j = {
            {"dataset", bench_dataset},
            {"raw_labels", fl::fairness_report_to_json(result.raw_labels)},
            {"original_model",
             fl::fairness_report_to_json(result.original_model)},
            {"debiased_model",
             fl::fairness_report_to_json(result.debiased_model)},
            {"dir_gain", fl::round6(result.dir_gain)},
            {"flips_proposed", result.flips_proposed},
        };
        fl::write_text_file(bench_out + "/" + bench_dataset + ".json",
                            j.dump(2) + "\n");
        std::cout << j.dump(2) << "\n";
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const fl::Error& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\"}\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"" << e.what() << "\"}\n";
        return 2;
    }
}
