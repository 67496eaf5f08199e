#include "fairlabel/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fairlabel/error.hpp"

namespace fairlabel {

double round6(double v) {
    if (!std::isfinite(v)) return v;
    return std::round(v * 1e6) / 1e6;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw IoError("write failed for " + path);
}

namespace {

std::string format_feature(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string direction_str(FlipDirection d) {
    return d == FlipDirection::ZeroToOne ? "0to1" : "1to0";
}

FlipDirection direction_from(const std::string& s) {
    if (s == "0to1") return FlipDirection::ZeroToOne;
    if (s == "1to0") return FlipDirection::OneToZero;
    throw SchemaError("unknown flip direction '" + s + "'");
}

std::string origin_str(FlipOrigin o) {
    return o == FlipOrigin::Injected ? "injected" : "proposed";
}

FlipOrigin origin_from(const std::string& s) {
    if (s == "injected") return FlipOrigin::Injected;
    if (s == "proposed") return FlipOrigin::Proposed;
    throw SchemaError("unknown flip origin '" + s + "'");
}

nlohmann::json opt_to_json(const std::optional<double>& v) {
    if (!v) return nullptr;
    return round6(*v);
}

}  // namespace

void write_dataset_csv(const TabularDataset& ds, const std::string& path) {
    std::ostringstream out;
    out << "row_id";
    for (std::size_t f = 0; f < ds.feature_dim(); ++f) out << ",x" << f;
    out << ",label,protected,protected_raw\n";
    for (std::size_t i = 0; i < ds.size(); ++i) {
        out << ds.row_ids[i];
        for (std::size_t f = 0; f < ds.feature_dim(); ++f) {
            out << ',' << format_feature(ds.features.at(i, f));
        }
        const GroupTag& tag = ds.protected_tags[i];
        out << ',' << ds.labels[i] << ','
            << (tag.group == Group::Majority ? "majority" : "minority") << ','
            << tag.raw << '\n';
    }
    write_text_file(path, out.str());
}

TabularDataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFound(path);
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("empty file " + path);
    const std::vector<std::string> header = split_csv_line(line);
    if (header.size() < 4 || header.front() != "row_id") {
        throw SchemaError("unexpected dataset header in " + path);
    }
    const std::size_t d = header.size() - 4;

    TabularDataset ds;
    ds.provenance = path;
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw SchemaError("row with " + std::to_string(cells.size()) +
                              " cells, expected " +
                              std::to_string(header.size()));
        }
        ds.row_ids.push_back(std::stoll(cells[0]));
        for (std::size_t f = 0; f < d; ++f) {
            values.push_back(std::stod(cells[1 + f]));
        }
        ds.labels.push_back(std::stoi(cells[1 + d]));
        GroupTag tag;
        tag.group = cells[2 + d] == "minority" ? Group::Minority
                                               : Group::Majority;
        tag.raw = cells[3 + d];
        ds.protected_tags.push_back(std::move(tag));
    }
    ds.features = Matrix(ds.row_ids.size(), d);
    ds.features.data = std::move(values);
    ds.validate();
    return ds;
}

nlohmann::json flip_log_to_json(const FlipLog& log) {
    nlohmann::json arr = nlohmann::json::array();
    for (const FlipEntry& e : log.entries) {
        arr.push_back({{"row_id", e.row_id},
                       {"direction", direction_str(e.direction)},
                       {"origin", origin_str(e.origin)}});
    }
    return arr;
}

FlipLog flip_log_from_json(const nlohmann::json& j) {
    FlipLog log;
    for (const auto& item : j) {
        log.entries.push_back({item.at("row_id").get<std::int64_t>(),
                               direction_from(item.at("direction")),
                               origin_from(item.at("origin"))});
    }
    return log;
}

void write_flip_log(const FlipLog& log, const std::string& path) {
    write_text_file(path, flip_log_to_json(log).dump(2) + "\n");
}

FlipLog read_flip_log(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFound(path);
    nlohmann::json j;
    in >> j;
    return flip_log_from_json(j);
}

nlohmann::json debias_report_to_json(const DebiasReport& report) {
    return {
        {"proposed_flips", flip_log_to_json(report.proposed_flips)},
        {"tuned_threshold_min", opt_to_json(report.tuned_threshold_min)},
        {"tuned_threshold_maj", opt_to_json(report.tuned_threshold_maj)},
        {"pre_rate_minority", round6(report.pre_rate_minority)},
        {"pre_rate_majority", round6(report.pre_rate_majority)},
        {"post_rate_minority", round6(report.post_rate_minority)},
        {"post_rate_majority", round6(report.post_rate_majority)},
        {"pre_label_dir", std::isfinite(report.pre_label_dir)
                              ? nlohmann::json(round6(report.pre_label_dir))
                              : nlohmann::json(nullptr)},
        {"post_label_dir", std::isfinite(report.post_label_dir)
                               ? nlohmann::json(round6(report.post_label_dir))
                               : nlohmann::json(nullptr)},
    };
}

nlohmann::json fairness_report_to_json(const FairnessReport& report) {
    return {
        {"source",
         report.source == MetricSource::Labels ? "labels" : "predictions"},
        {"rate_minority", round6(report.rate_minority)},
        {"rate_majority", round6(report.rate_majority)},
        {"dir", round6(report.dir)},
        {"did", round6(report.did)},
        {"spd", opt_to_json(report.appendix.spd)},
        {"di", opt_to_json(report.appendix.di)},
        {"eoo", opt_to_json(report.appendix.eoo)},
        {"abad", opt_to_json(report.appendix.abad)},
        {"aaod", opt_to_json(report.appendix.aaod)},
        {"aeord", opt_to_json(report.appendix.aeord)},
        {"eo_max_dev", opt_to_json(report.appendix.eo_max_dev)},
        {"dp_max_dev", opt_to_json(report.appendix.dp_max_dev)},
    };
}

}  // namespace fairlabel
