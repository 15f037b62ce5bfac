#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <memory>
#include <string>
#include <sys/wait.h>

namespace {

struct CliRun {
    int status = -1;
    std::string out;
};

// Runs the CLI with stderr discarded.
CliRun run(const std::string& args)
{
    const std::string cmd = std::string(MZVCHECK_PATH) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return r;
    }
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), n);
    }
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

TEST(Cli, EvalJson)
{
    const CliRun r = run("eval lupu 0 0 --prec 128 --format json");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("route"), "lupu");
    EXPECT_EQ(j.at("value").get<std::string>().substr(0, 12), "1.2020569031");
}

TEST(Cli, MurakamiEvalReportsExponent)
{
    const CliRun r = run("eval murakami --a 0 --b 0 --format json");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out).at("murakami_exponent"), 1);
}

TEST(Cli, CrosscheckExitCodes)
{
    EXPECT_EQ(run("crosscheck 1 1 --prec 128 --routes zagier,murakami,lupu").status, 0);
    const CliRun failed = run("crosscheck 0 0 --prec 128 --routes murakami,lupu --normalization as-printed");
    EXPECT_EQ(failed.status, 2);
    const auto j = nlohmann::json::parse(failed.out);
    EXPECT_EQ(j.at("cells").at(0).at("deviations").at(0).at("power_of_two_ratio"), 1);
}

TEST(Cli, KernelExitCodes)
{
    EXPECT_EQ(run("kernel H 2 2 50").status, 0);
    const CliRun failed = run("kernel T-final-display 0 1 0");
    EXPECT_EQ(failed.status, 2);
    EXPECT_NE(failed.out.find("\"pass\":false"), std::string::npos);
}

TEST(Cli, TableCsv)
{
    const CliRun r = run("table 0 0 10 csv");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "a,b,H,T\r\n0,0,1.2020569032,1.0517997903\r\n");
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run("").status, 3);
    EXPECT_EQ(run("eval").status, 3);
    EXPECT_EQ(run("eval simpson 0 0").status, 3);
    EXPECT_EQ(run("eval lupu 0 0 --prec 8").status, 3);
    EXPECT_EQ(run("eval zagier 0 0 --normalization odd").status, 3);
    EXPECT_EQ(run("table 0 0 500").status, 3);
    EXPECT_EQ(run("kernel Q").status, 3);
}

} // namespace
