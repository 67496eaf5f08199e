#pragma once

#include <cstdint>
#include <vector>

#include "fairlabel/types.hpp"

namespace fairlabel {

enum class ClassifierKind { LogisticRegression, DecisionTree, GradientBoostedTrees };

struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::LogisticRegression;

    // Logistic regression: full-batch gradient descent, zero init,
    // features standardized with training-set statistics.
    double learning_rate = 0.1;
    int epochs = 500;
    double l2_penalty = 1e-4;

    // Trees. depth applies to GBT trees; a standalone decision tree uses
    // tree_depth.
    int rounds = 100;
    int depth = 3;
    int tree_depth = 6;

    std::uint64_t seed = 0;

    void validate() const;

    static ClassifierSpec logistic(std::uint64_t seed = 0) {
        ClassifierSpec s;
        s.kind = ClassifierKind::LogisticRegression;
        s.seed = seed;
        return s;
    }
    static ClassifierSpec gbt(std::uint64_t seed = 0) {
        ClassifierSpec s;
        s.kind = ClassifierKind::GradientBoostedTrees;
        s.seed = seed;
        return s;
    }
    static ClassifierSpec decision_tree(std::uint64_t seed = 0) {
        ClassifierSpec s;
        s.kind = ClassifierKind::DecisionTree;
        s.seed = seed;
        return s;
    }
};

struct TreeNode {
    bool is_leaf = true;
    int feature = -1;
    double threshold = 0.0;  // x[feature] <= threshold goes left
    int left = -1;
    int right = -1;
    double value = 0.0;
};

struct Tree {
    std::vector<TreeNode> nodes;
    double predict(std::span<const double> x) const;
};

// Fitted predictor. Immutable; safe for concurrent prediction.
struct ClassifierModel {
    ClassifierSpec spec;
    std::size_t feature_dim = 0;

    // Logistic regression parameters (on standardized features).
    std::vector<double> weights;
    double intercept = 0.0;
    std::vector<double> feature_mean;
    std::vector<double> feature_scale;

    // Tree backends.
    std::vector<Tree> trees;
    double base_score = 0.0;  // log-odds prior for GBT
};

ClassifierModel fit(const ClassifierSpec& spec, const TabularDataset& train);

// One probability per row, each in [0,1].
std::vector<double> predict_proba(const ClassifierModel& model,
                                  const Matrix& features);

// Strict thresholding: 1 iff score > threshold.
std::vector<int> predict(const ClassifierModel& model, const Matrix& features,
                         double threshold);

// Penalized mean negative log-likelihood of logistic regression and its
// analytic gradient. Exposed for finite-difference verification.
struct LogisticLossGrad {
    double loss = 0.0;
    std::vector<double> grad_weights;
    double grad_intercept = 0.0;
};
LogisticLossGrad logistic_loss_grad(const Matrix& features,
                                    const std::vector<int>& labels,
                                    const std::vector<double>& weights,
                                    double intercept, double l2_penalty);

double sigmoid(double z);

}  // namespace fairlabel
