// Drives the fockcs executable end to end and checks exit codes and output placement.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
};

Outcome run(const std::string& args, const std::string& env = {}) {
    const std::string cmd = env + " " + std::string(FOCKCS_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) return {-1, {}};
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    const int status = ::pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string scenario(const std::string& name) { return std::string(FOCKCS_SCENARIO_DIR) + "/" + name; }

fs::path scratch_dir(const std::string& tag) {
    const fs::path d = fs::temp_directory_path() / ("fockcs_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, ValidateAcceptsShippedScenarios) {
    for (const auto& e : fs::directory_iterator(FOCKCS_SCENARIO_DIR)) {
        const Outcome o = run("validate " + e.path().string());
        EXPECT_EQ(o.code, 0) << e.path();
        EXPECT_EQ(o.out.rfind("ok: ", 0), 0u);
    }
}

TEST(Cli, InputErrorsExitOne) {
    EXPECT_EQ(run("validate /nonexistent.json").code, 1);
    EXPECT_EQ(run("run").code, 1);
    EXPECT_EQ(run("no-such-command").code, 1);
    EXPECT_EQ(run("verify-all --dim 3").code, 1);
    const fs::path d = scratch_dir("bad");
    std::ofstream(d / "bad.json") << R"({"name":"x","kind":"wco","params":{"symbols":{"A":[0,0]}}})";
    EXPECT_EQ(run("run " + (d / "bad.json").string()).code, 1);
    fs::remove_all(d);
}

TEST(Cli, RunPassingScenarioExitsZero) {
    const Outcome o = run("run " + scenario("conjugation_plain.json"));
    EXPECT_EQ(o.code, 0);
    EXPECT_NE(o.out.find("\"scenario\": \"conjugation-plain\""), std::string::npos);
}

TEST(Cli, FailingCheckExitsTwo) {
    const fs::path d = scratch_dir("fail");
    // eta = 0 gives a bounded candidate sequence, so the empty-spectrum certificate fails
    std::ofstream(d / "f.json") << R"({"name":"eta0","kind":"spectrum",
        "params":{"family":{"variant":"translation","E":[1,0],"F":[0,0],
                            "conjugation":{"a":[1,0],"b":[0,0],"c":[1,0]}},
                  "eta":[[0,0]]}})";
    const Outcome o = run("run " + (d / "f.json").string());
    EXPECT_EQ(o.code, 2) << o.out;
    fs::remove_all(d);
}

TEST(Cli, OutputDirEnvironment) {
    const fs::path d = scratch_dir("env");
    const Outcome o = run("run " + scenario("semigroup_translation.json"), "FOCKCS_OUTPUT_DIR=" + d.string());
    EXPECT_EQ(o.code, 0);
    EXPECT_TRUE(o.out.empty());
    const std::string csv = slurp(d / "semigroup-translation.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,norm,weighted");

    // explicit -o wins over the environment
    const Outcome o2 = run("run " + scenario("conjugation_plain.json") + " -o " + (d / "explicit.json").string(),
                           "FOCKCS_OUTPUT_DIR=" + d.string());
    EXPECT_EQ(o2.code, 0);
    EXPECT_TRUE(fs::exists(d / "explicit.json"));
    EXPECT_FALSE(fs::exists(d / "conjugation-plain.json"));
    fs::remove_all(d);
}

TEST(Cli, EvolveWritesCsvSeries) {
    const Outcome o = run("evolve --kappa 0.5 --lambda 1 --t-end 2 --steps 4");
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out.substr(0, 8), "t,u00_re");
    int lines = 0;
    for (char c : o.out) lines += c == '\n';
    EXPECT_EQ(lines, 5);
}

TEST(Cli, SpectrumCommand) {
    const fs::path d = scratch_dir("spec");
    std::ofstream(d / "fam.json") << R"({"variant":"dilation","ell":[1,0],"G":[0,0],"H":[0,0],
        "conjugation":{"a":[1,0],"b":[0,0],"c":[1,0]}})";
    const Outcome o = run("spectrum --family " + (d / "fam.json").string() + " --kmax 3 --dim 40");
    EXPECT_EQ(o.code, 0);
    EXPECT_NE(o.out.find("predicted"), std::string::npos);
    EXPECT_EQ(run("spectrum --family " + (d / "fam.json").string() + " --kmax 50 --dim 40").code, 1);
    fs::remove_all(d);
}

TEST(Cli, VerifyAllSmallDimCsv) {
    const Outcome o = run("verify-all --dim 16 --format csv");
    // only the divergence certificate for eta = 0 is a genuine failure
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.out.find("c08.eta0"), std::string::npos);
    EXPECT_NE(o.out.find("c01."), std::string::npos);
}
