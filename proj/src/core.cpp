#include "fairlabel/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "fairlabel/error.hpp"
#include "fairlabel/rng.hpp"

namespace fairlabel {

void TabularDataset::validate() const {
    const std::size_t n = row_ids.size();
    if (labels.size() != n || protected_tags.size() != n || features.rows != n) {
        throw SchemaMismatch("row_ids/features/labels/protected sizes differ");
    }
    std::unordered_set<std::int64_t> seen;
    seen.reserve(n);
    for (std::int64_t id : row_ids) {
        if (!seen.insert(id).second) {
            throw DuplicateRowId("row id " + std::to_string(id));
        }
    }
    for (int y : labels) {
        if (y != 0 && y != 1) {
            throw SchemaMismatch("label outside {0,1}");
        }
    }
    for (double v : features.data) {
        if (!std::isfinite(v)) {
            throw SchemaMismatch("non-finite feature value");
        }
    }
}

FlipLog FlipLog::inverted_log() const {
    FlipLog out;
    out.dataset_provenance = dataset_provenance;
    out.entries.reserve(entries.size());
    for (const FlipEntry& e : entries) {
        out.entries.push_back({e.row_id, inverted(e.direction), e.origin});
    }
    return out;
}

TabularDataset select_rows(const TabularDataset& ds,
                           const std::vector<std::size_t>& positions) {
    TabularDataset out;
    out.provenance = ds.provenance;
    out.row_ids.reserve(positions.size());
    out.labels.reserve(positions.size());
    out.protected_tags.reserve(positions.size());
    out.features = Matrix(positions.size(), ds.feature_dim());
    std::size_t r = 0;
    for (std::size_t p : positions) {
        out.row_ids.push_back(ds.row_ids[p]);
        out.labels.push_back(ds.labels[p]);
        out.protected_tags.push_back(ds.protected_tags[p]);
        auto src = ds.features.row(p);
        std::copy(src.begin(), src.end(), out.features.row(r).begin());
        ++r;
    }
    return out;
}

std::pair<TabularDataset, TabularDataset> partition_by_group(
    const TabularDataset& ds) {
    if (ds.size() == 0) throw EmptyGroup("dataset is empty");
    std::vector<std::size_t> maj, min;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        (ds.protected_tags[i].group == Group::Majority ? maj : min).push_back(i);
    }
    if (maj.empty()) throw EmptyGroup("no majority rows");
    if (min.empty()) throw EmptyGroup("no minority rows");
    return {select_rows(ds, maj), select_rows(ds, min)};
}

std::pair<TabularDataset, TabularDataset> split_train_test(
    const TabularDataset& ds, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw InvalidFraction("test_fraction must lie in (0,1)");
    }
    const std::size_t n = ds.size();
    const auto n_test = static_cast<std::size_t>(
        std::llround(static_cast<double>(n) * test_fraction));
    if (n_test < 1 || n - n_test < 1) {
        throw InvalidFraction("split would leave an empty side");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(derive_seed(seed, "split_train_test"));
    // Fisher-Yates with our own draws for cross-platform determinism.
    for (std::size_t i = n - 1; i > 0; --i) {
        std::size_t j = rng.next_below(i + 1);
        std::swap(order[i], order[j]);
    }
    std::vector<std::size_t> test(order.begin(), order.begin() + n_test);
    std::vector<std::size_t> train(order.begin() + n_test, order.end());
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    return {select_rows(ds, train), select_rows(ds, test)};
}

TabularDataset concat(const TabularDataset& a, const TabularDataset& b) {
    if (a.feature_dim() != b.feature_dim()) {
        throw SchemaMismatch("feature dimensionality differs: " +
                             std::to_string(a.feature_dim()) + " vs " +
                             std::to_string(b.feature_dim()));
    }
    std::unordered_set<std::int64_t> ids(a.row_ids.begin(), a.row_ids.end());
    for (std::int64_t id : b.row_ids) {
        if (ids.count(id)) throw DuplicateRowId("row id " + std::to_string(id));
    }
    TabularDataset out;
    out.provenance = a.provenance;
    out.row_ids = a.row_ids;
    out.row_ids.insert(out.row_ids.end(), b.row_ids.begin(), b.row_ids.end());
    out.labels = a.labels;
    out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
    out.protected_tags = a.protected_tags;
    out.protected_tags.insert(out.protected_tags.end(),
                              b.protected_tags.begin(), b.protected_tags.end());
    out.features = Matrix(a.size() + b.size(), a.feature_dim());
    std::copy(a.features.data.begin(), a.features.data.end(),
              out.features.data.begin());
    std::copy(b.features.data.begin(), b.features.data.end(),
              out.features.data.begin() + static_cast<std::ptrdiff_t>(
                                              a.features.data.size()));
    return out;
}

TabularDataset apply_flips(const TabularDataset& ds, const FlipLog& flips) {
    std::unordered_map<std::int64_t, std::size_t> index;
    index.reserve(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) index.emplace(ds.row_ids[i], i);

    TabularDataset out = ds;
    for (const FlipEntry& e : flips.entries) {
        auto it = index.find(e.row_id);
        if (it == index.end()) {
            throw UnknownRowId("row id " + std::to_string(e.row_id));
        }
        const int expected = e.direction == FlipDirection::ZeroToOne ? 0 : 1;
        if (out.labels[it->second] != expected) {
            throw DirectionMismatch("row id " + std::to_string(e.row_id) +
                                    " label does not match flip direction");
        }
        out.labels[it->second] = 1 - expected;
    }
    return out;
}

}  // namespace fairlabel
