#pragma once

#include <optional>
#include <vector>

#include "fairlabel/types.hpp"

namespace fairlabel {

enum class MetricSource { Labels, Predictions };

// Per-group confusion counts; u = majority, p = minority.
struct GroupConfusion {
    long tp_u = 0, fp_u = 0, tn_u = 0, fn_u = 0;
    long tp_p = 0, fp_p = 0, tn_p = 0, fn_p = 0;

    long n_u() const { return tp_u + fp_u + tn_u + fn_u; }
    long n_p() const { return tp_p + fp_p + tn_p + fn_p; }
};

// Appendix-suite metrics; a field is empty when its rate denominator is zero.
struct AppendixMetrics {
    std::optional<double> spd, di, eoo, abad, aaod, aeord;
    std::optional<double> eo_max_dev, dp_max_dev;
};

struct FairnessReport {
    double rate_minority = 0.0;
    double rate_majority = 0.0;
    double dir = 0.0;
    double did = 0.0;
    AppendixMetrics appendix;
    MetricSource source = MetricSource::Labels;
};

// Correct Flip Rate: fraction of injected flips whose inverse appears in the
// proposed log. Throws EmptyInjectedLog when there is no ground truth.
double cfr(const FlipLog& injected, const FlipLog& proposed);

// Wrong-flip rate: fraction of proposed flips whose row was never
// bias-injected. 0 when nothing was proposed.
double mfr(const FlipLog& injected, const FlipLog& proposed);

// Literal miss rate, 1 - CFR.
double miss_rate(const FlipLog& injected, const FlipLog& proposed);

double f1(const std::vector<int>& y_true, const std::vector<int>& y_pred);

// (rate_minority, rate_majority); both groups must be present.
std::pair<double, double> selection_rates(const std::vector<int>& y,
                                          const std::vector<GroupTag>& groups);

double dir(const std::vector<int>& y, const std::vector<GroupTag>& groups);
double did(const std::vector<int>& y, const std::vector<GroupTag>& groups);

GroupConfusion group_confusion(const std::vector<int>& y_true,
                               const std::vector<int>& y_pred,
                               const std::vector<GroupTag>& groups);

AppendixMetrics appendix_metrics(const GroupConfusion& gc);

// DIR/DID/selection rates of a (labels-or-predictions, groups) pairing.
FairnessReport fairness_report(const std::vector<int>& y,
                               const std::vector<GroupTag>& groups,
                               MetricSource source);

// Full report including the appendix suite (needs ground truth).
FairnessReport fairness_report(const std::vector<int>& y_true,
                               const std::vector<int>& y_pred,
                               const std::vector<GroupTag>& groups,
                               MetricSource source);

}  // namespace fairlabel
