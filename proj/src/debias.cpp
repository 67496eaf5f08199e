#include "fairlabel/debias.hpp"

#include <cmath>
#include <limits>
#include <string_view>
#include <vector>

#include "fairlabel/core.hpp"
#include "fairlabel/error.hpp"
#include "fairlabel/fairmetrics.hpp"
#include "fairlabel/rng.hpp"

namespace fairlabel {

void DebiasConfig::validate() const {
    classifier.validate();
    if (threshold_policy.fixed < 0.0 || threshold_policy.fixed > 1.0) {
        throw InvalidSpec("fixed threshold must lie in [0,1]");
    }
    if (!(threshold_policy.holdout_fraction > 0.0 &&
          threshold_policy.holdout_fraction < 1.0)) {
        throw InvalidSpec("holdout_fraction must lie in (0,1)");
    }
    if (!(threshold_policy.grid_step > 0.0 &&
          threshold_policy.grid_step <= 0.5)) {
        throw InvalidSpec("grid_step must lie in (0, 0.5]");
    }
    if (iterations < 1) throw InvalidSpec("iterations must be >= 1");
}

namespace {

double label_dir_or_nan(const TabularDataset& ds) {
    auto [rate_min, rate_maj] = selection_rates(ds.labels, ds.protected_tags);
    if (rate_maj == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return rate_min / rate_maj;
}

void fill_rates(const TabularDataset& pre, const TabularDataset& post,
                DebiasReport& report) {
    auto [pre_min, pre_maj] = selection_rates(pre.labels, pre.protected_tags);
    auto [post_min, post_maj] =
        selection_rates(post.labels, post.protected_tags);
    report.pre_rate_minority = pre_min;
    report.pre_rate_majority = pre_maj;
    report.post_rate_minority = post_min;
    report.post_rate_majority = post_maj;
    report.pre_label_dir = label_dir_or_nan(pre);
    report.post_label_dir = label_dir_or_nan(post);
}

enum class TrainOn { Majority, Minority, All };

// Shared skeleton of FairMin / FairMaj / Naive: fit the phase's classifier,
// resolve the threshold, flip the eligible rows of the scored group.
std::pair<TabularDataset, DebiasReport> run_phase(const TabularDataset& ds,
                                                  const DebiasConfig& cfg,
                                                  DebiasPhase phase,
                                                  TrainOn train_on,
                                                  std::string_view stage) {
    cfg.validate();
    if (train_on != TrainOn::All) {
        partition_by_group(ds);  // both groups must exist
    }

    auto train_slice = [&](const TabularDataset& pool) -> TabularDataset {
        switch (train_on) {
            case TrainOn::Majority: return partition_by_group(pool).first;
            case TrainOn::Minority: return partition_by_group(pool).second;
            case TrainOn::All: return pool;
        }
        throw InvalidSpec("unknown training population");
    };

    ClassifierModel model;
    double threshold = cfg.threshold_policy.fixed;
    std::optional<double> tuned;
    if (cfg.threshold_policy.mode == ThresholdPolicy::Mode::TuneToUnitDIR) {
        auto [work, holdout] = split_train_test(
            ds, cfg.threshold_policy.holdout_fraction,
            derive_seed(cfg.seed, stage));
        model = fit(cfg.classifier, train_slice(work));
        threshold = tune_threshold(model, holdout, phase,
                                   cfg.threshold_policy.grid_step);
        tuned = threshold;
    } else {
        model = fit(cfg.classifier, train_slice(ds));
    }

    const std::vector<double> scores = predict_proba(model, ds.features);
    const Group flip_group =
        phase == DebiasPhase::Min ? Group::Minority : Group::Majority;
    const int eligible_label = phase == DebiasPhase::Min ? 0 : 1;
    const FlipDirection dir = phase == DebiasPhase::Min
                                  ? FlipDirection::ZeroToOne
                                  : FlipDirection::OneToZero;
    FlipLog flips;
    flips.dataset_provenance = ds.provenance;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (ds.protected_tags[i].group != flip_group) continue;
        if (ds.labels[i] != eligible_label) continue;
        const bool predicted_one = scores[i] > threshold;
        if (phase == DebiasPhase::Min ? predicted_one : !predicted_one) {
            flips.entries.push_back({ds.row_ids[i], dir, FlipOrigin::Proposed});
        }
    }

    TabularDataset out = apply_flips(ds, flips);
    DebiasReport report;
    report.proposed_flips = std::move(flips);
    if (phase == DebiasPhase::Min) report.tuned_threshold_min = tuned;
    else report.tuned_threshold_maj = tuned;
    fill_rates(ds, out, report);
    return {std::move(out), std::move(report)};
}

}  // namespace

double tune_threshold(const ClassifierModel& model,
                      const TabularDataset& holdout, DebiasPhase phase,
                      double grid_step) {
    partition_by_group(holdout);  // both groups required
    const std::vector<double> scores = predict_proba(model, holdout.features);
    const int n_steps = static_cast<int>(std::ceil(1.0 / grid_step));
    double best_t = 1.0;
    double best_dist = std::numeric_limits<double>::infinity();
    std::vector<int> labels(holdout.size());
    for (int k = 0; k <= n_steps; ++k) {
        const double t = std::min(1.0, k * grid_step);
        labels = holdout.labels;
        for (std::size_t i = 0; i < holdout.size(); ++i) {
            if (phase == DebiasPhase::Min) {
                if (holdout.protected_tags[i].group == Group::Minority &&
                    labels[i] == 0 && scores[i] > t) {
                    labels[i] = 1;
                }
            } else {
                if (holdout.protected_tags[i].group == Group::Majority &&
                    labels[i] == 1 && scores[i] <= t) {
                    labels[i] = 0;
                }
            }
        }
        auto [rate_min, rate_maj] =
            selection_rates(labels, holdout.protected_tags);
        if (rate_maj == 0.0) continue;
        const double dist = std::abs(rate_min / rate_maj - 1.0);
        if (dist <= best_dist) {  // ties break toward the larger t
            best_dist = dist;
            best_t = t;
        }
    }
    return best_t;
}

std::pair<TabularDataset, DebiasReport> fair_min(const TabularDataset& ds,
                                                 const DebiasConfig& cfg) {
    return run_phase(ds, cfg, DebiasPhase::Min, TrainOn::Majority,
                     "fairmin-holdout");
}

std::pair<TabularDataset, DebiasReport> fair_maj(const TabularDataset& ds,
                                                 const DebiasConfig& cfg) {
    return run_phase(ds, cfg, DebiasPhase::Maj, TrainOn::Minority,
                     "fairmaj-holdout");
}

std::pair<TabularDataset, DebiasReport> naive_debias(const TabularDataset& ds,
                                                     const DebiasConfig& cfg) {
    return run_phase(ds, cfg, DebiasPhase::Min, TrainOn::All,
                     "naive-holdout");
}

std::pair<TabularDataset, DebiasReport> fair_label(const TabularDataset& ds,
                                                   const DebiasConfig& cfg) {
    cfg.validate();
    TabularDataset current = ds;
    DebiasReport combined;
    combined.proposed_flips.dataset_provenance = ds.provenance;
    for (int iter = 0; iter < cfg.iterations; ++iter) {
        auto [after_min, rep_min] = fair_min(current, cfg);
        current = std::move(after_min);
        combined.proposed_flips.entries.insert(
            combined.proposed_flips.entries.end(),
            rep_min.proposed_flips.entries.begin(),
            rep_min.proposed_flips.entries.end());
        combined.tuned_threshold_min = rep_min.tuned_threshold_min;
        if (cfg.run_fairmaj) {
            auto [after_maj, rep_maj] = fair_maj(current, cfg);
            current = std::move(after_maj);
            combined.proposed_flips.entries.insert(
                combined.proposed_flips.entries.end(),
                rep_maj.proposed_flips.entries.begin(),
                rep_maj.proposed_flips.entries.end());
            combined.tuned_threshold_maj = rep_maj.tuned_threshold_maj;
        }
    }
    fill_rates(ds, current, combined);
    return {std::move(current), std::move(combined)};
}

}  // namespace fairlabel
