#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fairlabel/types.hpp"

namespace fairlabel {

// Returns (majority rows, minority rows), row order preserved.
// Throws EmptyGroup if either side would be empty.
std::pair<TabularDataset, TabularDataset> partition_by_group(
    const TabularDataset& ds);

// Deterministic random split; test size = round(N * test_fraction).
// Returns (train, test) with disjoint row ids.
std::pair<TabularDataset, TabularDataset> split_train_test(
    const TabularDataset& ds, double test_fraction, std::uint64_t seed);

// Row-wise concatenation: a's rows then b's rows. Requires matching feature
// dimensionality and disjoint row ids.
TabularDataset concat(const TabularDataset& a, const TabularDataset& b);

// Applies the listed label flips, returning a new dataset. Every flip row id
// must exist and its direction must match the current label.
TabularDataset apply_flips(const TabularDataset& ds, const FlipLog& flips);

// Dataset restricted to the given row positions (not ids), in that order.
TabularDataset select_rows(const TabularDataset& ds,
                           const std::vector<std::size_t>& positions);

}  // namespace fairlabel
