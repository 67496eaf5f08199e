#include "fairlabel/ingest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fairlabel/error.hpp"

namespace fairlabel {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_comma(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    return out;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

// RFC-4180-ish CSV reader: quoted cells may contain commas, doubled quotes,
// and newlines.
std::vector<std::vector<std::string>> read_csv_records(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFound(path);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < content.size(); ++i) {
        const char c = content[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(cell);
            cell.clear();
        } else if (c == '\n') {
            row.push_back(cell);
            cell.clear();
            records.push_back(std::move(row));
            row.clear();
        } else if (c != '\r') {
            cell += c;
        }
    }
    if (!cell.empty() || !row.empty()) {
        row.push_back(cell);
        records.push_back(std::move(row));
    }
    return records;
}

// One-hot encodes the categorical columns (alphabetically-first level
// dropped to avoid collinearity) and assembles the feature matrix.
Matrix encode_features(const std::vector<std::vector<std::string>>& rows,
                       const std::vector<std::size_t>& numeric_cols,
                       const std::vector<std::size_t>& categorical_cols) {
    std::map<std::size_t, std::vector<std::string>> levels;
    for (std::size_t c : categorical_cols) {
        std::set<std::string> seen;
        for (const auto& row : rows) seen.insert(row[c]);
        std::vector<std::string> lv(seen.begin(), seen.end());
        if (!lv.empty()) lv.erase(lv.begin());  // drop first level
        levels[c] = std::move(lv);
    }
    std::size_t d = numeric_cols.size();
    for (const auto& [c, lv] : levels) d += lv.size();

    Matrix m(rows.size(), d);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::size_t f = 0;
        for (std::size_t c : numeric_cols) {
            try {
                m.at(i, f++) = std::stod(rows[i][c]);
            } catch (const std::exception&) {
                throw SchemaError("non-numeric value '" + rows[i][c] +
                                  "' in numeric column");
            }
        }
        for (const auto& [c, lv] : levels) {
            for (const std::string& level : lv) {
                m.at(i, f++) = rows[i][c] == level ? 1.0 : 0.0;
            }
        }
    }
    return m;
}

TabularDataset assemble(std::vector<std::vector<std::string>> rows,
                        const std::vector<std::size_t>& numeric_cols,
                        const std::vector<std::size_t>& categorical_cols,
                        std::vector<int> labels, std::vector<GroupTag> tags,
                        std::string provenance) {
    if (rows.empty()) throw EmptyAfterCleaning(provenance);
    TabularDataset ds;
    ds.features = encode_features(rows, numeric_cols, categorical_cols);
    ds.labels = std::move(labels);
    ds.protected_tags = std::move(tags);
    ds.row_ids.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        ds.row_ids[i] = static_cast<std::int64_t>(i);
    }
    ds.provenance = std::move(provenance);
    ds.validate();
    return ds;
}

void read_adult_file(const std::string& path,
                     std::vector<std::vector<std::string>>& out) {
    std::ifstream in(path);
    if (!in) throw FileNotFound(path);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '|') continue;
        std::vector<std::string> cells = split_comma(line);
        if (cells.size() != 15) {
            throw SchemaError("adult row with " +
                              std::to_string(cells.size()) +
                              " fields, expected 15");
        }
        // adult.test labels carry a trailing period
        if (!cells[14].empty() && cells[14].back() == '.') {
            cells[14].pop_back();
        }
        out.push_back(std::move(cells));
    }
}

}  // namespace

TabularDataset load_adult(const std::string& path, IngestStats* stats) {
    namespace fs = std::filesystem;
    std::vector<std::vector<std::string>> raw;
    if (fs::is_directory(path)) {
        bool found = false;
        for (const char* name : {"adult.data", "adult.test"}) {
            const fs::path p = fs::path(path) / name;
            if (fs::exists(p)) {
                read_adult_file(p.string(), raw);
                found = true;
            }
        }
        if (!found) throw FileNotFound(path + "/adult.{data,test}");
    } else {
        read_adult_file(path, raw);
    }
    if (stats) stats->raw_rows = raw.size();

    std::vector<std::vector<std::string>> rows;
    std::vector<int> labels;
    std::vector<GroupTag> tags;
    for (auto& cells : raw) {
        if (std::find(cells.begin(), cells.end(), "?") != cells.end()) continue;
        labels.push_back(cells[14].find(">50K") != std::string::npos ? 1 : 0);
        tags.push_back(cells[9] == "Male" ? GroupTag{Group::Majority, "Male"}
                                          : GroupTag{Group::Minority, cells[9]});
        rows.push_back(std::move(cells));
    }
    if (stats) stats->kept_rows = rows.size();
    return assemble(std::move(rows), {0, 2, 4, 10, 11, 12},
                    {1, 3, 5, 6, 7, 8, 13}, std::move(labels), std::move(tags),
                    "uci-adult");
}

TabularDataset load_german(const std::string& path, IngestStats* stats) {
    std::ifstream in(path);
    if (!in) throw FileNotFound(path);
    std::vector<std::vector<std::string>> rows;
    std::vector<int> labels;
    std::vector<GroupTag> tags;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        std::vector<std::string> cells =
            line.find(',') != std::string::npos ? split_comma(line)
                                                : split_ws(line);
        if (cells.size() != 21) {
            throw SchemaError("german row with " +
                              std::to_string(cells.size()) +
                              " fields, expected 21");
        }
        labels.push_back(cells[20] == "1" ? 1 : 0);
        // A91/A93/A94 encode male applicants, A92/A95 female.
        const std::string& status = cells[8];
        const bool male = status == "A91" || status == "A93" || status == "A94";
        tags.push_back(male ? GroupTag{Group::Majority, status}
                            : GroupTag{Group::Minority, status});
        rows.push_back(std::move(cells));
    }
    if (stats) {
        stats->raw_rows = rows.size();
        stats->kept_rows = rows.size();
    }
    return assemble(std::move(rows), {1, 4, 7, 10, 12, 15, 17},
                    {0, 2, 3, 5, 6, 9, 11, 13, 14, 16, 18, 19},
                    std::move(labels), std::move(tags), "german-credit");
}

TabularDataset load_compas(const std::string& path, IngestStats* stats) {
    const auto records = read_csv_records(path);
    if (records.size() < 2) throw SchemaError("compas file has no data rows");
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < records[0].size(); ++i) {
        col[records[0][i]] = i;
    }
    const char* required[] = {"sex",
                              "age",
                              "age_cat",
                              "race",
                              "juv_fel_count",
                              "juv_misd_count",
                              "juv_other_count",
                              "priors_count",
                              "c_charge_degree",
                              "decile_score",
                              "days_b_screening_arrest",
                              "is_recid",
                              "score_text",
                              "two_year_recid"};
    for (const char* name : required) {
        if (!col.count(name)) {
            throw SchemaError(std::string("missing compas column ") + name);
        }
    }
    auto cell = [&](const std::vector<std::string>& r,
                    const char* name) -> const std::string& {
        return r[col.at(name)];
    };

    std::size_t filtered = 0;
    std::vector<std::vector<std::string>> rows;
    std::vector<int> labels;
    std::vector<GroupTag> tags;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.size() != records[0].size()) continue;
        const std::string& days = cell(r, "days_b_screening_arrest");
        if (days.empty()) continue;
        double days_v = 0.0;
        try {
            days_v = std::stod(days);
        } catch (const std::exception&) {
            continue;
        }
        if (days_v < -30.0 || days_v > 30.0) continue;
        if (cell(r, "is_recid") == "-1") continue;
        if (cell(r, "c_charge_degree") == "O") continue;
        if (cell(r, "score_text") == "N/A") continue;
        ++filtered;

        const std::string& race = cell(r, "race");
        if (race != "Caucasian" && race != "African-American") continue;
        labels.push_back(cell(r, "two_year_recid") == "0" ? 1 : 0);
        tags.push_back(race == "Caucasian"
                           ? GroupTag{Group::Majority, race}
                           : GroupTag{Group::Minority, race});
        std::vector<std::string> kept;
        for (const char* name :
             {"age", "juv_fel_count", "juv_misd_count", "juv_other_count",
              "priors_count", "decile_score", "days_b_screening_arrest", "sex",
              "age_cat", "c_charge_degree"}) {
            kept.push_back(cell(r, name));
        }
        rows.push_back(std::move(kept));
    }
    if (stats) {
        stats->raw_rows = filtered;
        stats->kept_rows = rows.size();
    }
    return assemble(std::move(rows), {0, 1, 2, 3, 4, 5, 6}, {7, 8, 9},
                    std::move(labels), std::move(tags), "compas");
}

}  // namespace fairlabel
