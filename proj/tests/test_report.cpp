#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "fockcs/report.hpp"

using namespace fockcs;

TEST(Records, StatusFromComparison) {
    EXPECT_EQ(check_at_most("a", "x", 1e-13, 1e-12).status, CheckStatus::pass);
    EXPECT_EQ(check_at_most("a", "x", 1e-11, 1e-12).status, CheckStatus::fail);
    EXPECT_EQ(check_at_least("a", "x", 10.0, 10.0).status, CheckStatus::pass);
    EXPECT_EQ(check_within("a", "x", 1.05, 0.9, 1.1).status, CheckStatus::pass);
    EXPECT_EQ(check_within("a", "x", 1.2, 0.9, 1.1).status, CheckStatus::fail);
    EXPECT_EQ(check_true("a", "x", false).status, CheckStatus::fail);
    EXPECT_EQ(info("a", "x", 3.0).status, CheckStatus::info);
    // NaN never passes
    EXPECT_EQ(check_at_most("a", "x", NAN, 1.0).status, CheckStatus::fail);
}

TEST(ReportJson, ShapeAndSoftening) {
    Report r;
    r.scenario = "demo";
    r.add(check_at_most("ok", "anchor", 0.5, 1.0));
    CheckRecord bad = check_at_most("bad", "anchor", 2.0, 1.0);
    bad.truncation_sensitive = true;
    r.add(bad);
    r.add(info("inf", "plumbing", INFINITY));
    EXPECT_TRUE(r.any_fail());
    nlohmann::json j = r.to_json();
    EXPECT_EQ(j["status"], "fail");
    EXPECT_EQ(j["records"][2]["measured"], "inf");
    EXPECT_EQ(j["records"][0]["comparison"], "<=");
    EXPECT_FALSE(j["records"][2].contains("threshold"));

    r.soften_truncation_failures("small N");
    EXPECT_FALSE(r.any_fail());
    EXPECT_EQ(r.find("bad")->status, CheckStatus::warn);
    EXPECT_EQ(r.find("bad")->note, "small N");
    EXPECT_EQ(r.find("nope"), nullptr);
}

TEST(ReportCsv, OneLinePerRecord) {
    Report r;
    r.add(check_within("w", "a", 1.0, 0.5, 2.0));
    EXPECT_EQ(r.to_csv(), "id,anchor,measured,comparison,threshold,threshold_hi,status\nw,\"a\",1,in,0.5,2,pass\n");
}

TEST(WriteAtomically, ReplacesContentAndLeavesNoTemp) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "fockcs_report_test";
    fs::remove_all(dir);
    const std::string path = (dir / "sub" / "r.json").string();
    write_atomically(path, "first");
    write_atomically(path, "second");
    std::ifstream in(path);
    std::string s((std::istreambuf_iterator<char>(in)), {});
    EXPECT_EQ(s, "second");
    EXPECT_FALSE(fs::exists(path + ".tmp"));
    fs::remove_all(dir);
}
