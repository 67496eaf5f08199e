#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "fairlabel/rng.hpp"
#include "fairlabel/types.hpp"

namespace fairlabel::testutil {

// Random dataset with both groups and both label classes guaranteed in each
// group (first four rows are maj/0, maj/1, min/0, min/1).
inline TabularDataset random_dataset(Rng& rng, std::size_t n, std::size_t d) {
    if (n < 4) throw std::invalid_argument("random_dataset needs n >= 4");
    TabularDataset ds;
    ds.provenance = "test";
    ds.row_ids.resize(n);
    std::iota(ds.row_ids.begin(), ds.row_ids.end(), 0);
    ds.features = Matrix(n, d);
    for (double& v : ds.features.data) v = rng.next_normal();
    ds.labels.resize(n);
    ds.protected_tags.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        ds.labels[i] = rng.next_bernoulli(0.5) ? 1 : 0;
        ds.protected_tags[i] =
            rng.next_bernoulli(0.5) ? minority_tag() : majority_tag();
    }
    ds.labels[0] = 0;
    ds.protected_tags[0] = majority_tag();
    ds.labels[1] = 1;
    ds.protected_tags[1] = majority_tag();
    ds.labels[2] = 0;
    ds.protected_tags[2] = minority_tag();
    ds.labels[3] = 1;
    ds.protected_tags[3] = minority_tag();
    return ds;
}

}  // namespace fairlabel::testutil
