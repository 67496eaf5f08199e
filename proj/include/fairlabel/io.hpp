#pragma once

#include <string>

#include <json.hpp>

#include "fairlabel/debias.hpp"
#include "fairlabel/fairmetrics.hpp"
#include "fairlabel/types.hpp"

namespace fairlabel {

// Dataset CSV: header row, then
//   row_id,x0,...,x{d-1},label,protected,protected_raw
// with protected in {majority, minority}.
void write_dataset_csv(const TabularDataset& ds, const std::string& path);
TabularDataset read_dataset_csv(const std::string& path);

// Flip-log JSON:
//   [{"row_id":int,"direction":"0to1"|"1to0","origin":"injected"|"proposed"}]
nlohmann::json flip_log_to_json(const FlipLog& log);
FlipLog flip_log_from_json(const nlohmann::json& j);
void write_flip_log(const FlipLog& log, const std::string& path);
FlipLog read_flip_log(const std::string& path);

nlohmann::json debias_report_to_json(const DebiasReport& report);
nlohmann::json fairness_report_to_json(const FairnessReport& report);

// Rounds to 6 decimals so serialized results are bit-stable across runs.
double round6(double v);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace fairlabel
