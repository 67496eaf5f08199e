#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fairlabel/matrix.hpp"

namespace fairlabel {

enum class Group { Majority, Minority };

// Binary protected-group tag plus the raw attribute value it was mapped from
// (e.g. "Male" -> Majority).
struct GroupTag {
    Group group = Group::Majority;
    std::string raw;

    bool operator==(const GroupTag&) const = default;
};

inline GroupTag majority_tag(std::string raw = "majority") {
    return {Group::Majority, std::move(raw)};
}
inline GroupTag minority_tag(std::string raw = "minority") {
    return {Group::Minority, std::move(raw)};
}

// Immutable tabular dataset: every transform returns a new value. Row
// identity is an explicit id, not a positional index, so label-flip records
// survive partition/concat reordering.
struct TabularDataset {
    std::vector<std::int64_t> row_ids;
    Matrix features;
    std::vector<int> labels;  // each 0 or 1
    std::vector<GroupTag> protected_tags;
    std::string provenance;

    std::size_t size() const { return row_ids.size(); }
    std::size_t feature_dim() const { return features.cols; }

    // Checks the structural invariants; throws SchemaMismatch on violation.
    void validate() const;

    bool operator==(const TabularDataset&) const = default;
};

enum class FlipDirection { ZeroToOne, OneToZero };
enum class FlipOrigin { Injected, Proposed };

inline FlipDirection inverted(FlipDirection d) {
    return d == FlipDirection::ZeroToOne ? FlipDirection::OneToZero
                                         : FlipDirection::ZeroToOne;
}

struct FlipEntry {
    std::int64_t row_id = 0;
    FlipDirection direction = FlipDirection::ZeroToOne;
    FlipOrigin origin = FlipOrigin::Injected;

    bool operator==(const FlipEntry&) const = default;
};

// Record of label flips, either injected during synthetic bias generation or
// proposed by a debiaser. At most one entry per (row_id, origin).
struct FlipLog {
    std::vector<FlipEntry> entries;
    std::string dataset_provenance;

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }

    // Returns a log with every direction inverted (used to undo flips).
    FlipLog inverted_log() const;

    bool operator==(const FlipLog&) const = default;
};

}  // namespace fairlabel
