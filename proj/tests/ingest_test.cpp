#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "fairlabel/error.hpp"
#include "fairlabel/ingest.hpp"

using namespace fairlabel;

namespace {

struct TempFile {
    std::string path;
    TempFile(const std::string& name, const std::string& content) {
        path = std::string("fairlabel_ingest_") + name;
        std::ofstream out(path, std::ios::binary);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

std::string adult_row(const std::string& sex, const std::string& income,
                      const std::string& workclass = "Private") {
    return "39, " + workclass +
           ", 77516, Bachelors, 13, Never-married, Adm-clerical,"
           " Not-in-family, White, " +
           sex + ", 2174, 0, 40, United-States, " + income;
}

std::string german_row(const std::string& status, const std::string& outcome) {
    return "A11 6 A34 A43 1169 A65 A75 4 " + status +
           " A101 4 A121 67 A143 A152 2 A173 1 A192 A201 " + outcome;
}

const char* compas_header =
    "id,name,sex,age,age_cat,race,juv_fel_count,juv_misd_count,"
    "juv_other_count,priors_count,c_charge_degree,decile_score,"
    "days_b_screening_arrest,is_recid,score_text,two_year_recid\n";

std::string compas_row(const std::string& name, const std::string& race,
                       const std::string& days, const std::string& is_recid,
                       const std::string& degree, const std::string& score_text,
                       const std::string& recid) {
    return "1," + name + ",Male,30,25 - 45," + race + ",0,0,0,2," + degree +
           ",4," + days + "," + is_recid + "," + score_text + "," + recid +
           "\n";
}

}  // namespace

TEST_CASE("adult rows parse with labels, protected sex, and '?' drops") {
    const TempFile f("adult.data",
                     adult_row("Male", ">50K") + "\n" +
                         adult_row("Female", "<=50K") + "\n" +
                         adult_row("Male", "<=50K", "?") + "\n");
    IngestStats stats;
    const TabularDataset ds = load_adult(f.path, &stats);
    CHECK(stats.raw_rows == 3);
    CHECK(stats.kept_rows == 2);
    CHECK(ds.size() == 2);
    CHECK(ds.labels == std::vector<int>{1, 0});
    CHECK(ds.protected_tags[0].group == Group::Majority);
    CHECK(ds.protected_tags[1].group == Group::Minority);
    CHECK(ds.protected_tags[1].raw == "Female");
    // 6 numeric columns plus one-hot categoricals; sex is not a feature
    CHECK(ds.feature_dim() >= 6);
    CHECK(ds.features.at(0, 0) == 39.0);
    CHECK(ds.features.at(0, 1) == 77516.0);
}

TEST_CASE("adult test-split labels lose their trailing period") {
    const TempFile f("adult.test",
                     "|1x3 Cross validator\n" + adult_row("Male", ">50K.") +
                         "\n" + adult_row("Female", "<=50K.") + "\n");
    const TabularDataset ds = load_adult(f.path);
    CHECK(ds.labels == std::vector<int>{1, 0});
}

TEST_CASE("adult rejects rows with the wrong field count") {
    const TempFile f("adult_bad.data", "1, 2, 3\n");
    CHECK_THROWS_AS(load_adult(f.path), SchemaError);
    CHECK_THROWS_AS(load_adult("no_such_adult_file"), FileNotFound);
}

TEST_CASE("german rows parse with credit labels and status-derived groups") {
    const TempFile f("german.data", german_row("A93", "1") + "\n" +
                                        german_row("A92", "2") + "\n" +
                                        german_row("A91", "1") + "\n");
    IngestStats stats;
    const TabularDataset ds = load_german(f.path, &stats);
    CHECK(stats.raw_rows == 3);
    CHECK(stats.kept_rows == 3);
    CHECK(ds.labels == std::vector<int>{1, 0, 1});
    CHECK(ds.protected_tags[0].group == Group::Majority);
    CHECK(ds.protected_tags[1].group == Group::Minority);
    CHECK(ds.protected_tags[2].group == Group::Majority);
    CHECK(ds.features.at(0, 0) == 6.0);     // duration
    CHECK(ds.features.at(0, 1) == 1169.0);  // credit amount
}

TEST_CASE("german rejects malformed rows") {
    const TempFile f("german_bad.data", "A11 6 A34\n");
    CHECK_THROWS_AS(load_german(f.path), SchemaError);
    CHECK_THROWS_AS(load_german("no_such_german_file"), FileNotFound);
}

TEST_CASE("compas applies the screening filter before binarizing race") {
    std::string content = compas_header;
    content += compas_row("keep-aa", "African-American", "0", "0", "F",
                          "High", "1");
    content += compas_row("keep-cauc", "Caucasian", "-5", "1", "M", "Low", "0");
    content += compas_row("drop-days", "Caucasian", "45", "0", "F", "Low", "0");
    content += compas_row("drop-recid", "Caucasian", "0", "-1", "F", "Low", "0");
    content += compas_row("drop-ord", "Caucasian", "0", "0", "O", "Low", "0");
    content += compas_row("drop-score", "Caucasian", "0", "0", "F", "N/A", "0");
    content += compas_row("drop-missing-days", "Caucasian", "", "0", "F",
                          "Low", "0");
    content += compas_row("other-race", "Hispanic", "0", "0", "F", "Low", "0");
    const TempFile f("compas.csv", content);
    IngestStats stats;
    const TabularDataset ds = load_compas(f.path, &stats);
    // three rows survive the filter, two survive race binarization
    CHECK(stats.raw_rows == 3);
    CHECK(stats.kept_rows == 2);
    CHECK(ds.size() == 2);
    CHECK(ds.protected_tags[0].group == Group::Minority);
    CHECK(ds.protected_tags[1].group == Group::Majority);
    // label 1 means no recidivism within two years
    CHECK(ds.labels == std::vector<int>{0, 1});
    CHECK(ds.features.at(0, 0) == 30.0);  // age
}

TEST_CASE("compas CSV reader handles quoted names with commas") {
    std::string content = compas_header;
    content += "1,\"Doe, John\",Male,30,25 - 45,Caucasian,0,0,0,2,F,4,0,0,"
               "Low,0\n";
    const TempFile f("compas_quoted.csv", content);
    const TabularDataset ds = load_compas(f.path);
    CHECK(ds.size() == 1);
    CHECK(ds.labels[0] == 1);
}

TEST_CASE("compas schema errors") {
    const TempFile missing("compas_missing.csv", "id,name\n1,foo\n");
    CHECK_THROWS_AS(load_compas(missing.path), SchemaError);
    CHECK_THROWS_AS(load_compas("no_such_compas_file"), FileNotFound);
    const TempFile all_filtered(
        "compas_empty.csv",
        std::string(compas_header) +
            compas_row("gone", "Caucasian", "99", "0", "F", "Low", "0"));
    CHECK_THROWS_AS(load_compas(all_filtered.path), EmptyAfterCleaning);
}
