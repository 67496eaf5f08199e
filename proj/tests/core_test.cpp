#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <limits>
#include <set>
#include <tuple>

#include "fairlabel/core.hpp"
#include "fairlabel/error.hpp"
#include "test_util.hpp"

using namespace fairlabel;

namespace {

TabularDataset four_row_dataset() {
    TabularDataset ds;
    ds.provenance = "test";
    ds.row_ids = {0, 1, 2, 3};
    ds.features = Matrix(4, 2);
    for (std::size_t i = 0; i < ds.features.data.size(); ++i) {
        ds.features.data[i] = static_cast<double>(i);
    }
    ds.labels = {0, 0, 1, 1};
    ds.protected_tags = {majority_tag(), minority_tag(), majority_tag(),
                         minority_tag()};
    return ds;
}

using RowKey = std::tuple<std::int64_t, int, Group>;

std::multiset<RowKey> row_multiset(const TabularDataset& ds) {
    std::multiset<RowKey> out;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        out.insert({ds.row_ids[i], ds.labels[i], ds.protected_tags[i].group});
    }
    return out;
}

}  // namespace

TEST_CASE("partition_by_group splits by tag, preserving row ids") {
    const auto [maj, min] = partition_by_group(four_row_dataset());
    CHECK(maj.row_ids == std::vector<std::int64_t>{0, 2});
    CHECK(min.row_ids == std::vector<std::int64_t>{1, 3});
    CHECK(maj.labels == std::vector<int>{0, 1});
}

TEST_CASE("partition_by_group rejects single-group data") {
    TabularDataset ds = four_row_dataset();
    for (auto& t : ds.protected_tags) t = majority_tag();
    CHECK_THROWS_AS(partition_by_group(ds), EmptyGroup);
    CHECK_THROWS_AS(partition_by_group(TabularDataset{}), EmptyGroup);
}

TEST_CASE("split_train_test produces round(N*fraction) test rows") {
    Rng rng(1);
    const TabularDataset ds = testutil::random_dataset(rng, 100, 3);
    const auto [train, test] = split_train_test(ds, 0.2, 7);
    CHECK(train.size() == 80);
    CHECK(test.size() == 20);
    std::vector<std::int64_t> all = train.row_ids;
    all.insert(all.end(), test.row_ids.begin(), test.row_ids.end());
    std::sort(all.begin(), all.end());
    CHECK(all == ds.row_ids);
}

TEST_CASE("split_train_test is a pure function of (ds, fraction, seed)") {
    Rng rng(2);
    const TabularDataset ds = testutil::random_dataset(rng, 50, 2);
    const auto a = split_train_test(ds, 0.3, 11);
    const auto b = split_train_test(ds, 0.3, 11);
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
}

TEST_CASE("split_train_test depends on the seed") {
    Rng rng(3);
    const TabularDataset ds = testutil::random_dataset(rng, 10, 2);
    const auto a = split_train_test(ds, 0.2, 1);
    const auto b = split_train_test(ds, 0.2, 2);
    CHECK(a.second.row_ids != b.second.row_ids);
}

TEST_CASE("split_train_test validates the fraction") {
    Rng rng(4);
    const TabularDataset ds = testutil::random_dataset(rng, 10, 2);
    CHECK_THROWS_AS(split_train_test(ds, 0.0, 1), InvalidFraction);
    CHECK_THROWS_AS(split_train_test(ds, 1.0, 1), InvalidFraction);
    CHECK_THROWS_AS(split_train_test(ds, 0.01, 1), InvalidFraction);
}

TEST_CASE("concat appends rows in order") {
    Rng rng(5);
    TabularDataset a = testutil::random_dataset(rng, 4, 3);
    TabularDataset b = testutil::random_dataset(rng, 5, 3);
    b.row_ids = {10, 11, 12, 13, 14};
    const TabularDataset c = concat(a, b);
    CHECK(c.size() == 9);
    CHECK(c.row_ids ==
          std::vector<std::int64_t>{0, 1, 2, 3, 10, 11, 12, 13, 14});
    CHECK(c.features.at(8, 2) == b.features.at(4, 2));
}

TEST_CASE("concat rejects mismatched schemas and duplicate ids") {
    Rng rng(6);
    const TabularDataset a = testutil::random_dataset(rng, 5, 10);
    const TabularDataset b = testutil::random_dataset(rng, 5, 9);
    CHECK_THROWS_AS(concat(a, b), SchemaMismatch);
    const TabularDataset c = testutil::random_dataset(rng, 5, 10);
    CHECK_THROWS_AS(concat(a, c), DuplicateRowId);  // same 0..4 ids
}

TEST_CASE("partition then concat conserves rows up to order") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const TabularDataset ds =
            testutil::random_dataset(rng, 8 + rng.next_below(40), 3);
        const auto [maj, min] = partition_by_group(ds);
        const TabularDataset rebuilt = concat(maj, min);
        CHECK(row_multiset(rebuilt) == row_multiset(ds));
    }
}

TEST_CASE("apply_flips flips exactly the listed labels") {
    TabularDataset ds = four_row_dataset();
    ds.labels = {0, 0, 1, 1};
    FlipLog log;
    log.entries = {{1, FlipDirection::ZeroToOne, FlipOrigin::Injected}};
    const TabularDataset out = apply_flips(ds, log);
    CHECK(out.labels == std::vector<int>{0, 1, 1, 1});
    CHECK(ds.labels == std::vector<int>{0, 0, 1, 1});  // input untouched
    CHECK(out.features == ds.features);
    CHECK(out.protected_tags == ds.protected_tags);
}

TEST_CASE("apply_flips with an empty log is the identity") {
    const TabularDataset ds = four_row_dataset();
    CHECK(apply_flips(ds, FlipLog{}) == ds);
}

TEST_CASE("apply_flips error paths") {
    const TabularDataset ds = four_row_dataset();
    FlipLog wrong_direction;
    wrong_direction.entries = {
        {2, FlipDirection::ZeroToOne, FlipOrigin::Injected}};
    CHECK_THROWS_AS(apply_flips(ds, wrong_direction), DirectionMismatch);
    FlipLog unknown;
    unknown.entries = {{99, FlipDirection::ZeroToOne, FlipOrigin::Injected}};
    CHECK_THROWS_AS(apply_flips(ds, unknown), UnknownRowId);
}

TEST_CASE("apply_flips is undone by the inverted log") {
    Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const TabularDataset ds =
            testutil::random_dataset(rng, 6 + rng.next_below(30), 2);
        FlipLog log;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            if (!rng.next_bernoulli(0.3)) continue;
            log.entries.push_back({ds.row_ids[i],
                                   ds.labels[i] == 0 ? FlipDirection::ZeroToOne
                                                     : FlipDirection::OneToZero,
                                   FlipOrigin::Injected});
        }
        const TabularDataset flipped = apply_flips(ds, log);
        CHECK(apply_flips(flipped, log.inverted_log()) == ds);
    }
}

TEST_CASE("validate rejects malformed datasets") {
    TabularDataset ds = four_row_dataset();
    ds.validate();
    ds.row_ids[1] = 0;
    CHECK_THROWS_AS(ds.validate(), DuplicateRowId);
    ds = four_row_dataset();
    ds.labels[0] = 2;
    CHECK_THROWS_AS(ds.validate(), SchemaMismatch);
    ds = four_row_dataset();
    ds.features.data[0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(ds.validate(), SchemaMismatch);
}
