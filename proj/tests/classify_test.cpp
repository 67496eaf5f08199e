#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "fairlabel/classify.hpp"
#include "fairlabel/error.hpp"
#include "fairlabel/synth.hpp"
#include "test_util.hpp"

using namespace fairlabel;

namespace {

TabularDataset one_dim_separable(std::size_t per_side) {
    TabularDataset ds;
    ds.provenance = "test";
    const std::size_t n = 2 * per_side;
    ds.row_ids.resize(n);
    std::iota(ds.row_ids.begin(), ds.row_ids.end(), 0);
    ds.features = Matrix(n, 1);
    ds.labels.resize(n);
    ds.protected_tags.assign(n, majority_tag());
    for (std::size_t i = 0; i < n; ++i) {
        const bool positive = i >= per_side;
        ds.features.at(i, 0) = positive ? 1.0 : -1.0;
        ds.labels[i] = positive ? 1 : 0;
    }
    return ds;
}

ClassifierModel manual_logistic(std::vector<double> weights, double intercept) {
    ClassifierModel m;
    m.spec = ClassifierSpec::logistic();
    m.feature_dim = weights.size();
    m.feature_mean.assign(weights.size(), 0.0);
    m.feature_scale.assign(weights.size(), 1.0);
    m.weights = std::move(weights);
    m.intercept = intercept;
    return m;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    return dot / std::sqrt(na * nb);
}

}  // namespace

TEST_CASE("separable data forces a positive logistic weight") {
    const ClassifierModel model =
        fit(ClassifierSpec::logistic(), one_dim_separable(10));
    CHECK(model.weights[0] > 0.0);
}

TEST_CASE("single-class training set is degenerate for logistic") {
    TabularDataset ds = one_dim_separable(10);
    for (int& y : ds.labels) y = 1;
    CHECK_THROWS_AS(fit(ClassifierSpec::logistic(), ds), DegenerateTraining);
}

TEST_CASE("zero-parameter logistic scores everything 0.5") {
    const ClassifierModel model = manual_logistic({0.0}, 0.0);
    Matrix x(3, 1);
    x.data = {-5.0, 0.0, 7.0};
    for (double s : predict_proba(model, x)) CHECK(s == 0.5);
}

TEST_CASE("logistic scores follow sigmoid limits") {
    const ClassifierModel model = manual_logistic({1.0}, 0.0);
    Matrix x(2, 1);
    x.data = {0.0, 40.0};
    const auto scores = predict_proba(model, x);
    CHECK(scores[0] == 0.5);
    CHECK(scores[1] > 0.999999);
}

TEST_CASE("logistic scores match a direct sigmoid evaluation") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = 1 + rng.next_below(6);
        std::vector<double> w(d);
        for (double& v : w) v = rng.next_uniform(-2.0, 2.0);
        const double b = rng.next_uniform(-1.0, 1.0);
        const ClassifierModel model = manual_logistic(w, b);
        Matrix x(5, d);
        for (double& v : x.data) v = rng.next_normal();
        const auto scores = predict_proba(model, x);
        for (std::size_t i = 0; i < 5; ++i) {
            double z = b;
            for (std::size_t f = 0; f < d; ++f) z += w[f] * x.at(i, f);
            CHECK(std::abs(scores[i] - 1.0 / (1.0 + std::exp(-z))) < 1e-12);
        }
    }
}

TEST_CASE("predict uses a strict threshold") {
    const ClassifierModel model = manual_logistic({1.0}, 0.0);
    Matrix x(2, 1);
    // sigmoid(-0.4055) ~ 0.4, sigmoid(0.4055) ~ 0.6
    x.data = {-0.405465, 0.405465};
    CHECK(predict(model, x, 0.5) == std::vector<int>{0, 1});
    CHECK(predict(model, x, 1.0) == std::vector<int>{0, 0});
    CHECK(predict(model, x, 0.0) == std::vector<int>{1, 1});
}

TEST_CASE("raising the threshold never adds positives") {
    Rng rng(23);
    const ClassifierModel model = manual_logistic({0.7, -1.3}, 0.2);
    Matrix x(40, 2);
    for (double& v : x.data) v = rng.next_normal();
    long prev = 41;
    for (double t = 0.0; t <= 1.0; t += 0.05) {
        const auto preds = predict(model, x, t);
        const long ones = std::accumulate(preds.begin(), preds.end(), 0L);
        CHECK(ones <= prev);
        prev = ones;
    }
}

TEST_CASE("dimension mismatches are rejected") {
    const ClassifierModel model = manual_logistic({1.0, 2.0}, 0.0);
    Matrix x(1, 3);
    CHECK_THROWS_AS(predict_proba(model, x), DimensionMismatch);
}

TEST_CASE("gradient descent never increases the penalized loss") {
    Rng rng(31);
    Matrix x(60, 4);
    for (double& v : x.data) v = rng.next_normal();
    std::vector<int> y(60);
    for (int& v : y) v = rng.next_bernoulli(0.5) ? 1 : 0;
    std::vector<double> w(4, 0.0);
    double b = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int epoch = 0; epoch < 200; ++epoch) {
        const LogisticLossGrad lg = logistic_loss_grad(x, y, w, b, 1e-4);
        CHECK(lg.loss <= prev + 1e-12);
        prev = lg.loss;
        for (std::size_t f = 0; f < 4; ++f) w[f] -= 0.1 * lg.grad_weights[f];
        b -= 0.1 * lg.grad_intercept;
    }
}

TEST_CASE("analytic gradient matches central finite differences") {
    Rng rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 5 + rng.next_below(20);
        const std::size_t d = 1 + rng.next_below(4);
        Matrix x(n, d);
        for (double& v : x.data) v = rng.next_normal();
        std::vector<int> y(n);
        for (int& v : y) v = rng.next_bernoulli(0.5) ? 1 : 0;
        std::vector<double> w(d);
        for (double& v : w) v = rng.next_uniform(-1.0, 1.0);
        const double b = rng.next_uniform(-1.0, 1.0);
        const double h = 1e-5;
        const LogisticLossGrad lg = logistic_loss_grad(x, y, w, b, 1e-4);
        for (std::size_t f = 0; f < d; ++f) {
            std::vector<double> wp = w, wm = w;
            wp[f] += h;
            wm[f] -= h;
            const double fd = (logistic_loss_grad(x, y, wp, b, 1e-4).loss -
                               logistic_loss_grad(x, y, wm, b, 1e-4).loss) /
                              (2 * h);
            CHECK(std::abs(lg.grad_weights[f] - fd) <=
                  1e-4 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST_CASE("fit is deterministic") {
    Rng rng(41);
    const TabularDataset ds = testutil::random_dataset(rng, 200, 5);
    for (const ClassifierSpec& spec :
         {ClassifierSpec::logistic(3), ClassifierSpec::gbt(3),
          ClassifierSpec::decision_tree(3)}) {
        const ClassifierModel a = fit(spec, ds);
        const ClassifierModel b = fit(spec, ds);
        CHECK(predict_proba(a, ds.features) == predict_proba(b, ds.features));
    }
}

TEST_CASE("logistic recovers the generating direction on clean linear data") {
    LinearGeneratorSpec spec;
    spec.n_samples = 10000;
    spec.n_features = 10;
    spec.p_noise = 0.0;
    spec.seed = 5;
    const LinearDataset data = generate_linear(spec);
    const ClassifierModel model =
        fit(ClassifierSpec::logistic(), data.dataset);
    // undo standardization to compare against the raw-feature coefficients
    std::vector<double> raw(model.weights.size());
    for (std::size_t f = 0; f < raw.size(); ++f) {
        raw[f] = model.weights[f] / model.feature_scale[f];
    }
    CHECK(cosine(raw, data.coefficients) > 0.95);
}

TEST_CASE("GBT beats logistic on a non-linear boundary") {
    Rng rng(43);
    TabularDataset ds;
    ds.provenance = "xor";
    ds.row_ids.resize(500);
    std::iota(ds.row_ids.begin(), ds.row_ids.end(), 0);
    ds.features = Matrix(500, 2);
    ds.labels.resize(500);
    ds.protected_tags.assign(500, majority_tag());
    for (std::size_t i = 0; i < 500; ++i) {
        const double a = rng.next_uniform(-1.0, 1.0);
        const double b = rng.next_uniform(-1.0, 1.0);
        ds.features.at(i, 0) = a;
        ds.features.at(i, 1) = b;
        ds.labels[i] = (a > 0.0) != (b > 0.0) ? 1 : 0;
    }
    auto train_error = [&](const ClassifierSpec& spec) {
        const auto preds = predict(fit(spec, ds), ds.features, 0.5);
        long wrong = 0;
        for (std::size_t i = 0; i < 500; ++i) wrong += preds[i] != ds.labels[i];
        return static_cast<double>(wrong) / 500.0;
    };
    CHECK(train_error(ClassifierSpec::gbt()) <
          train_error(ClassifierSpec::logistic()));
}

TEST_CASE("hyperparameters are validated") {
    ClassifierSpec spec = ClassifierSpec::logistic();
    spec.learning_rate = 0.0;
    CHECK_THROWS_AS(spec.validate(), InvalidSpec);
    spec = ClassifierSpec::gbt();
    spec.rounds = 0;
    CHECK_THROWS_AS(spec.validate(), InvalidSpec);
    spec = ClassifierSpec::gbt();
    spec.depth = 0;
    CHECK_THROWS_AS(spec.validate(), InvalidSpec);
}
