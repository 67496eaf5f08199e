#include "fairlabel/fairmetrics.hpp"

#include <cmath>
#include <cstdint>
#include <set>
#include <utility>

#include "fairlabel/error.hpp"

namespace fairlabel {

double cfr(const FlipLog& injected, const FlipLog& proposed) {
    if (injected.empty()) {
        throw EmptyInjectedLog("CFR undefined without injected flips");
    }
    std::set<std::pair<std::int64_t, FlipDirection>> prop;
    for (const FlipEntry& e : proposed.entries) {
        prop.emplace(e.row_id, e.direction);
    }
    long correct = 0;
    for (const FlipEntry& e : injected.entries) {
        if (prop.count({e.row_id, inverted(e.direction)})) ++correct;
    }
    return static_cast<double>(correct) /
           static_cast<double>(injected.size());
}

double mfr(const FlipLog& injected, const FlipLog& proposed) {
    if (proposed.empty()) return 0.0;
    std::set<std::int64_t> inj;
    for (const FlipEntry& e : injected.entries) inj.insert(e.row_id);
    long wrong = 0;
    for (const FlipEntry& e : proposed.entries) {
        if (!inj.count(e.row_id)) ++wrong;
    }
    return static_cast<double>(wrong) / static_cast<double>(proposed.size());
}

double miss_rate(const FlipLog& injected, const FlipLog& proposed) {
    return 1.0 - cfr(injected, proposed);
}

double f1(const std::vector<int>& y_true, const std::vector<int>& y_pred) {
    if (y_true.size() != y_pred.size()) {
        throw LengthMismatch("y_true and y_pred lengths differ");
    }
    long tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (y_pred[i] == 1 && y_true[i] == 1) ++tp;
        else if (y_pred[i] == 1) ++fp;
        else if (y_true[i] == 1) ++fn;
    }
    const long denom = 2 * tp + fp + fn;
    if (denom == 0) return 0.0;
    return 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

std::pair<double, double> selection_rates(const std::vector<int>& y,
                                          const std::vector<GroupTag>& groups) {
    if (y.size() != groups.size()) {
        throw LengthMismatch("labels and groups lengths differ");
    }
    long n_min = 0, n_maj = 0, pos_min = 0, pos_maj = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (groups[i].group == Group::Minority) {
            ++n_min;
            pos_min += y[i];
        } else {
            ++n_maj;
            pos_maj += y[i];
        }
    }
    if (n_min == 0 || n_maj == 0) throw EmptyGroup("both groups required");
    return {static_cast<double>(pos_min) / static_cast<double>(n_min),
            static_cast<double>(pos_maj) / static_cast<double>(n_maj)};
}

double dir(const std::vector<int>& y, const std::vector<GroupTag>& groups) {
    auto [rate_min, rate_maj] = selection_rates(y, groups);
    if (rate_maj == 0.0) throw ZeroMajorityRate("majority selection rate is 0");
    return rate_min / rate_maj;
}

double did(const std::vector<int>& y, const std::vector<GroupTag>& groups) {
    auto [rate_min, rate_maj] = selection_rates(y, groups);
    return rate_min - rate_maj;
}

GroupConfusion group_confusion(const std::vector<int>& y_true,
                               const std::vector<int>& y_pred,
                               const std::vector<GroupTag>& groups) {
    if (y_true.size() != y_pred.size() || y_true.size() != groups.size()) {
        throw LengthMismatch("inputs to group_confusion differ in length");
    }
    GroupConfusion gc;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const bool minority = groups[i].group == Group::Minority;
        if (y_true[i] == 1 && y_pred[i] == 1) (minority ? gc.tp_p : gc.tp_u)++;
        else if (y_true[i] == 0 && y_pred[i] == 1) (minority ? gc.fp_p : gc.fp_u)++;
        else if (y_true[i] == 0 && y_pred[i] == 0) (minority ? gc.tn_p : gc.tn_u)++;
        else (minority ? gc.fn_p : gc.fn_u)++;
    }
    return gc;
}

namespace {

std::optional<double> rate(long num, long denom) {
    if (denom == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(denom);
}

}  // namespace

AppendixMetrics appendix_metrics(const GroupConfusion& gc) {
    AppendixMetrics m;
    const auto sel_p = rate(gc.tp_p + gc.fp_p, gc.n_p());
    const auto sel_u = rate(gc.tp_u + gc.fp_u, gc.n_u());
    const auto tpr_p = rate(gc.tp_p, gc.tp_p + gc.fn_p);
    const auto tpr_u = rate(gc.tp_u, gc.tp_u + gc.fn_u);
    const auto tnr_p = rate(gc.tn_p, gc.tn_p + gc.fp_p);
    const auto tnr_u = rate(gc.tn_u, gc.tn_u + gc.fp_u);
    const auto fpr_p = rate(gc.fp_p, gc.fp_p + gc.tn_p);
    const auto fpr_u = rate(gc.fp_u, gc.fp_u + gc.tn_u);

    if (sel_p && sel_u) {
        m.spd = *sel_p - *sel_u;
        m.dp_max_dev = std::abs(*sel_p - *sel_u);
        if (*sel_u > 0.0) m.di = *sel_p / *sel_u;
    }
    if (tpr_p && tpr_u) {
        m.eoo = *tpr_p - *tpr_u;
        m.aeord = std::abs(*tpr_p - *tpr_u);
    }
    if (tpr_p && tpr_u && tnr_p && tnr_u) {
        m.abad = std::abs(0.5 * (*tpr_p + *tnr_p) - 0.5 * (*tpr_u + *tnr_u));
    }
    if (tpr_p && tpr_u && fpr_p && fpr_u) {
        m.aaod = 0.5 * std::abs((*fpr_p - *fpr_u) + (*tpr_p - *tpr_u));
        m.eo_max_dev =
            std::max(std::abs(*tpr_p - *tpr_u), std::abs(*fpr_p - *fpr_u));
    }
    return m;
}

FairnessReport fairness_report(const std::vector<int>& y,
                               const std::vector<GroupTag>& groups,
                               MetricSource source) {
    FairnessReport r;
    auto [rate_min, rate_maj] = selection_rates(y, groups);
    r.rate_minority = rate_min;
    r.rate_majority = rate_maj;
    r.did = rate_min - rate_maj;
    if (rate_maj == 0.0) throw ZeroMajorityRate("majority selection rate is 0");
    r.dir = rate_min / rate_maj;
    r.source = source;
    return r;
}

FairnessReport fairness_report(const std::vector<int>& y_true,
                               const std::vector<int>& y_pred,
                               const std::vector<GroupTag>& groups,
                               MetricSource source) {
    FairnessReport r = fairness_report(y_pred, groups, source);
    r.appendix = appendix_metrics(group_confusion(y_true, y_pred, groups));
    return r;
}

}  // namespace fairlabel
