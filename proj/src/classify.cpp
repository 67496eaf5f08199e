#include "fairlabel/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fairlabel/error.hpp"

namespace fairlabel {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

namespace {

double softplus(double z) {
    return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

constexpr int kMaxBins = 64;
constexpr double kTreeLambda = 1e-6;

// Quantile-binned view of a feature matrix for histogram tree growth.
struct BinnedData {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<std::uint8_t> codes;             // n*d, row-major
    std::vector<std::vector<double>> cuts;       // per feature, ascending

    static BinnedData build(const Matrix& x) {
        BinnedData b;
        b.n = x.rows;
        b.d = x.cols;
        b.codes.assign(b.n * b.d, 0);
        b.cuts.resize(b.d);
        std::vector<double> col(b.n);
        for (std::size_t f = 0; f < b.d; ++f) {
            for (std::size_t i = 0; i < b.n; ++i) col[i] = x.at(i, f);
            std::vector<double> sorted = col;
            std::sort(sorted.begin(), sorted.end());
            std::vector<double>& cuts = b.cuts[f];
            for (int q = 1; q < kMaxBins; ++q) {
                std::size_t idx = b.n * static_cast<std::size_t>(q) / kMaxBins;
                if (idx >= b.n) idx = b.n - 1;
                double v = sorted[idx];
                if (cuts.empty() || v > cuts.back()) cuts.push_back(v);
            }
            for (std::size_t i = 0; i < b.n; ++i) {
                auto it = std::lower_bound(cuts.begin(), cuts.end(), col[i]);
                b.codes[i * b.d + f] =
                    static_cast<std::uint8_t>(it - cuts.begin());
            }
        }
        return b;
    }

    std::uint8_t code(std::size_t row, std::size_t f) const {
        return codes[row * d + f];
    }
};

struct GrowParams {
    int max_depth = 3;
    double leaf_scale = 1.0;  // learning rate folded into leaf values
};

// Grows a regression tree on (grad, hess) with Newton leaf values
// sum(g)/(sum(h)+lambda). Used for GBT rounds and the standalone tree
// (where hess = 1 and the leaf value is the mean target).
class TreeGrower {
public:
    TreeGrower(const BinnedData& bins, const std::vector<double>& grad,
               const std::vector<double>& hess, const GrowParams& params)
        : bins_(bins), grad_(grad), hess_(hess), params_(params) {}

    Tree grow() {
        Tree tree;
        std::vector<std::size_t> all(bins_.n);
        std::iota(all.begin(), all.end(), 0);
        grow_node(tree, all, 0);
        return tree;
    }

private:
    int grow_node(Tree& tree, std::vector<std::size_t>& rows, int depth) {
        double g = 0.0, h = 0.0;
        for (std::size_t r : rows) {
            g += grad_[r];
            h += hess_[r];
        }
        const int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes[node_id].value = params_.leaf_scale * g / (h + kTreeLambda);

        if (depth >= params_.max_depth || rows.size() < 2) return node_id;

        int best_f = -1, best_bin = -1;
        double best_gain = 1e-12;
        const double parent_score = g * g / (h + kTreeLambda);
        std::vector<double> bin_g(kMaxBins), bin_h(kMaxBins);
        std::vector<std::size_t> bin_n(kMaxBins);
        for (std::size_t f = 0; f < bins_.d; ++f) {
            const std::size_t n_cuts = bins_.cuts[f].size();
            if (n_cuts == 0) continue;
            std::fill(bin_g.begin(), bin_g.end(), 0.0);
            std::fill(bin_h.begin(), bin_h.end(), 0.0);
            std::fill(bin_n.begin(), bin_n.end(), 0);
            for (std::size_t r : rows) {
                const std::uint8_t c = bins_.code(r, f);
                bin_g[c] += grad_[r];
                bin_h[c] += hess_[r];
                bin_n[c] += 1;
            }
            double gl = 0.0, hl = 0.0;
            std::size_t nl = 0;
            for (std::size_t b = 0; b < n_cuts; ++b) {
                gl += bin_g[b];
                hl += bin_h[b];
                nl += bin_n[b];
                if (nl == 0 || nl == rows.size()) continue;
                const double gr = g - gl, hr = h - hl;
                const double gain = gl * gl / (hl + kTreeLambda) +
                                    gr * gr / (hr + kTreeLambda) - parent_score;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_f = static_cast<int>(f);
                    best_bin = static_cast<int>(b);
                }
            }
        }
        if (best_f < 0) return node_id;

        std::vector<std::size_t> left, right;
        left.reserve(rows.size());
        right.reserve(rows.size());
        for (std::size_t r : rows) {
            (bins_.code(r, static_cast<std::size_t>(best_f)) <=
                     static_cast<std::uint8_t>(best_bin)
                 ? left
                 : right)
                .push_back(r);
        }
        rows.clear();
        rows.shrink_to_fit();

        tree.nodes[node_id].is_leaf = false;
        tree.nodes[node_id].feature = best_f;
        tree.nodes[node_id].threshold =
            bins_.cuts[static_cast<std::size_t>(best_f)]
                      [static_cast<std::size_t>(best_bin)];
        const int left_id = grow_node(tree, left, depth + 1);
        tree.nodes[node_id].left = left_id;
        const int right_id = grow_node(tree, right, depth + 1);
        tree.nodes[node_id].right = right_id;
        return node_id;
    }

    const BinnedData& bins_;
    const std::vector<double>& grad_;
    const std::vector<double>& hess_;
    GrowParams params_;
};

bool has_both_classes(const std::vector<int>& y) {
    bool zero = false, one = false;
    for (int v : y) (v == 1 ? one : zero) = true;
    return zero && one;
}

ClassifierModel fit_logistic(const ClassifierSpec& spec,
                             const TabularDataset& train) {
    if (train.size() < 2 || !has_both_classes(train.labels)) {
        throw DegenerateTraining(
            "logistic regression needs both label classes");
    }
    const std::size_t n = train.size(), d = train.feature_dim();
    ClassifierModel model;
    model.spec = spec;
    model.feature_dim = d;
    model.feature_mean.assign(d, 0.0);
    model.feature_scale.assign(d, 1.0);
    for (std::size_t f = 0; f < d; ++f) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += train.features.at(i, f);
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double c = train.features.at(i, f) - mean;
            var += c * c;
        }
        var /= static_cast<double>(n);
        model.feature_mean[f] = mean;
        model.feature_scale[f] = var > 0.0 ? std::sqrt(var) : 1.0;
    }
    Matrix z(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t f = 0; f < d; ++f) {
            z.at(i, f) = (train.features.at(i, f) - model.feature_mean[f]) /
                         model.feature_scale[f];
        }
    }
    model.weights.assign(d, 0.0);
    model.intercept = 0.0;
    for (int epoch = 0; epoch < spec.epochs; ++epoch) {
        LogisticLossGrad lg = logistic_loss_grad(z, train.labels, model.weights,
                                                 model.intercept,
                                                 spec.l2_penalty);
        for (std::size_t f = 0; f < d; ++f) {
            model.weights[f] -= spec.learning_rate * lg.grad_weights[f];
        }
        model.intercept -= spec.learning_rate * lg.grad_intercept;
    }
    return model;
}

ClassifierModel fit_decision_tree(const ClassifierSpec& spec,
                                  const TabularDataset& train) {
    if (train.size() < 1) throw DegenerateTraining("empty training set");
    ClassifierModel model;
    model.spec = spec;
    model.feature_dim = train.feature_dim();
    BinnedData bins = BinnedData::build(train.features);
    std::vector<double> grad(train.size()), hess(train.size(), 1.0);
    for (std::size_t i = 0; i < train.size(); ++i) {
        grad[i] = static_cast<double>(train.labels[i]);
    }
    GrowParams params;
    params.max_depth = spec.tree_depth;
    model.trees.push_back(TreeGrower(bins, grad, hess, params).grow());
    return model;
}

ClassifierModel fit_gbt(const ClassifierSpec& spec,
                        const TabularDataset& train) {
    if (train.size() < 1) throw DegenerateTraining("empty training set");
    const std::size_t n = train.size();
    ClassifierModel model;
    model.spec = spec;
    model.feature_dim = train.feature_dim();
    double pbar = 0.0;
    for (int y : train.labels) pbar += y;
    pbar /= static_cast<double>(n);
    pbar = std::clamp(pbar, 1e-6, 1.0 - 1e-6);
    model.base_score = std::log(pbar / (1.0 - pbar));

    BinnedData bins = BinnedData::build(train.features);
    std::vector<double> margin(n, model.base_score);
    std::vector<double> grad(n), hess(n);
    GrowParams params;
    params.max_depth = spec.depth;
    params.leaf_scale = spec.learning_rate;
    for (int round = 0; round < spec.rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            const double p = sigmoid(margin[i]);
            grad[i] = static_cast<double>(train.labels[i]) - p;
            hess[i] = std::max(p * (1.0 - p), 1e-12);
        }
        Tree tree = TreeGrower(bins, grad, hess, params).grow();
        for (std::size_t i = 0; i < n; ++i) {
            margin[i] += tree.predict(train.features.row(i));
        }
        model.trees.push_back(std::move(tree));
    }
    return model;
}

}  // namespace

void ClassifierSpec::validate() const {
    if (learning_rate <= 0.0) throw InvalidSpec("learning_rate must be > 0");
    if (epochs < 1) throw InvalidSpec("epochs must be >= 1");
    if (l2_penalty < 0.0) throw InvalidSpec("l2_penalty must be >= 0");
    if (rounds < 1) throw InvalidSpec("rounds must be >= 1");
    if (depth < 1 || tree_depth < 1) throw InvalidSpec("depth must be >= 1");
}

double Tree::predict(std::span<const double> x) const {
    int node = 0;
    while (!nodes[static_cast<std::size_t>(node)].is_leaf) {
        const TreeNode& nd = nodes[static_cast<std::size_t>(node)];
        node = x[static_cast<std::size_t>(nd.feature)] <= nd.threshold
                   ? nd.left
                   : nd.right;
    }
    return nodes[static_cast<std::size_t>(node)].value;
}

LogisticLossGrad logistic_loss_grad(const Matrix& features,
                                    const std::vector<int>& labels,
                                    const std::vector<double>& weights,
                                    double intercept, double l2_penalty) {
    if (features.rows != labels.size() || features.cols != weights.size()) {
        throw DimensionMismatch("loss inputs disagree on shape");
    }
    const std::size_t n = features.rows, d = features.cols;
    LogisticLossGrad out;
    out.grad_weights.assign(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double z = intercept;
        auto xi = features.row(i);
        for (std::size_t f = 0; f < d; ++f) z += weights[f] * xi[f];
        const double y = labels[i];
        out.loss += softplus(z) - y * z;
        const double err = sigmoid(z) - y;
        for (std::size_t f = 0; f < d; ++f) out.grad_weights[f] += err * xi[f];
        out.grad_intercept += err;
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    out.loss *= inv_n;
    out.grad_intercept *= inv_n;
    for (std::size_t f = 0; f < d; ++f) {
        out.grad_weights[f] = out.grad_weights[f] * inv_n +
                              l2_penalty * weights[f];
        out.loss += 0.5 * l2_penalty * weights[f] * weights[f];
    }
    return out;
}

ClassifierModel fit(const ClassifierSpec& spec, const TabularDataset& train) {
    spec.validate();
    switch (spec.kind) {
        case ClassifierKind::LogisticRegression:
            return fit_logistic(spec, train);
        case ClassifierKind::DecisionTree:
            return fit_decision_tree(spec, train);
        case ClassifierKind::GradientBoostedTrees:
            return fit_gbt(spec, train);
    }
    throw InvalidSpec("unknown classifier kind");
}

std::vector<double> predict_proba(const ClassifierModel& model,
                                  const Matrix& features) {
    if (features.cols != model.feature_dim) {
        throw DimensionMismatch("expected width " +
                                std::to_string(model.feature_dim) + ", got " +
                                std::to_string(features.cols));
    }
    std::vector<double> scores(features.rows, 0.0);
    switch (model.spec.kind) {
        case ClassifierKind::LogisticRegression: {
            for (std::size_t i = 0; i < features.rows; ++i) {
                double z = model.intercept;
                for (std::size_t f = 0; f < features.cols; ++f) {
                    z += model.weights[f] *
                         (features.at(i, f) - model.feature_mean[f]) /
                         model.feature_scale[f];
                }
                scores[i] = sigmoid(z);
            }
            break;
        }
        case ClassifierKind::DecisionTree: {
            for (std::size_t i = 0; i < features.rows; ++i) {
                scores[i] =
                    std::clamp(model.trees[0].predict(features.row(i)), 0.0, 1.0);
            }
            break;
        }
        case ClassifierKind::GradientBoostedTrees: {
            for (std::size_t i = 0; i < features.rows; ++i) {
                double margin = model.base_score;
                for (const Tree& t : model.trees) {
                    margin += t.predict(features.row(i));
                }
                scores[i] = sigmoid(margin);
            }
            break;
        }
    }
    return scores;
}

std::vector<int> predict(const ClassifierModel& model, const Matrix& features,
                         double threshold) {
    std::vector<double> scores = predict_proba(model, features);
    std::vector<int> out(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        out[i] = scores[i] > threshold ? 1 : 0;
    }
    return out;
}

}  // namespace fairlabel
