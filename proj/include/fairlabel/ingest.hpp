#pragma once

#include <string>

#include "fairlabel/types.hpp"

namespace fairlabel {

struct IngestStats {
    std::size_t raw_rows = 0;   // parsed data rows before any cleaning
    std::size_t kept_rows = 0;  // rows in the returned dataset
};

// UCI Adult (Census Income). path may be a single file or a directory
// containing adult.data and adult.test. Label 1 iff income > 50K;
// Majority = Male. Rows with '?' markers are dropped; categoricals are
// one-hot encoded with the alphabetically-first level dropped. The sex
// column is the protected attribute and is excluded from the features.
TabularDataset load_adult(const std::string& path,
                          IngestStats* stats = nullptr);

// Statlog German Credit (german.data, space-separated, 20 attributes +
// outcome). Label 1 = good credit. Majority = male, derived from the
// combined personal-status-and-sex attribute (A91/A93/A94 male).
TabularDataset load_german(const std::string& path,
                           IngestStats* stats = nullptr);

// ProPublica COMPAS two-year recidivism file. Applies the standard filter
// (|days_b_screening_arrest| <= 30, is_recid != -1, c_charge_degree != 'O',
// score_text != 'N/A'); stats->raw_rows counts the rows surviving that
// filter. Race is then binarized: Caucasian = Majority, African-American =
// Minority, all other rows dropped. Label 1 = no two-year recidivism.
TabularDataset load_compas(const std::string& path,
                           IngestStats* stats = nullptr);

}  // namespace fairlabel
