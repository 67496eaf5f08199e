#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "fairlabel/classify.hpp"
#include "fairlabel/types.hpp"

namespace fairlabel {

enum class DebiasPhase { Min, Maj };

struct ThresholdPolicy {
    enum class Mode { Fixed, TuneToUnitDIR };
    Mode mode = Mode::Fixed;
    double fixed = 0.5;
    double holdout_fraction = 0.2;
    double grid_step = 0.01;

    static ThresholdPolicy fixed_at(double t) { return {Mode::Fixed, t}; }
    static ThresholdPolicy tuned(double holdout = 0.2, double step = 0.01) {
        ThresholdPolicy p;
        p.mode = Mode::TuneToUnitDIR;
        p.holdout_fraction = holdout;
        p.grid_step = step;
        return p;
    }
};

// The debiasing classifier is its own spec, decoupled from any downstream
// task model.
struct DebiasConfig {
    ClassifierSpec classifier;
    ThresholdPolicy threshold_policy;
    bool run_fairmaj = false;
    int iterations = 1;  // experimental; one FairMin (+FairMaj) pass each
    std::uint64_t seed = 0;

    void validate() const;
};

struct DebiasReport {
    FlipLog proposed_flips;  // origin = Proposed
    std::optional<double> tuned_threshold_min;
    std::optional<double> tuned_threshold_maj;
    double pre_rate_minority = 0.0, pre_rate_majority = 0.0;
    double post_rate_minority = 0.0, post_rate_majority = 0.0;
    double pre_label_dir = 0.0, post_label_dir = 0.0;
};

// Trains on the majority group, scores minority rows, flips minority labels
// 0 -> 1 where the score strictly exceeds the threshold.
std::pair<TabularDataset, DebiasReport> fair_min(const TabularDataset& ds,
                                                 const DebiasConfig& cfg);

// Mirror image: trains on the minority group, flips majority labels 1 -> 0
// where the model predicts 0 (score <= threshold).
std::pair<TabularDataset, DebiasReport> fair_maj(const TabularDataset& ds,
                                                 const DebiasConfig& cfg);

// FairMin, then optionally FairMaj on its output; reports are merged.
std::pair<TabularDataset, DebiasReport> fair_label(const TabularDataset& ds,
                                                   const DebiasConfig& cfg);

// Baseline: same flip rule as FairMin but the classifier is trained on all
// rows, ignoring the direction structure of the bias.
std::pair<TabularDataset, DebiasReport> naive_debias(const TabularDataset& ds,
                                                     const DebiasConfig& cfg);

// Grid search over t in {0, step, 2*step, ..., 1}: simulates the phase's
// flips on the holdout and returns the t whose label-based DIR is closest to
// 1, ties broken toward the larger t.
double tune_threshold(const ClassifierModel& model,
                      const TabularDataset& holdout, DebiasPhase phase,
                      double grid_step);

}  // namespace fairlabel
