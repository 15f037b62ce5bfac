#include "mzv/report.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <algorithm>

namespace mzv {
namespace {

CrossCheckOptions small_options(Normalization norm)
{
    CrossCheckOptions options;
    options.a_max = 1;
    options.b_max = 1;
    options.precision_bits = 128;
    options.routes = {{Route::Zagier, norm}, {Route::Murakami, norm}, {Route::Lupu, norm}};
    return options;
}

TEST(Routes, NamesRoundTrip)
{
    for (const char* name : {"direct", "zagier", "lupu", "integral", "murakami:corrected", "murakami:as-printed"}) {
        EXPECT_EQ(parse_route(name).name(), name);
    }
    EXPECT_EQ(parse_route("murakami", Normalization::AsPrinted).name(), "murakami:as-printed");
    EXPECT_THROW(parse_route("simpson"), std::invalid_argument);
    EXPECT_FALSE(parse_route("zagier").supports(SeriesKind::T));
    EXPECT_FALSE(parse_route("murakami").supports(SeriesKind::H));
    EXPECT_THROW(evaluate(parse_route("zagier"), SeriesKind::T, {0, 0}, PrecisionContext(64)), std::invalid_argument);
}

TEST(Routes, JustifiedDigits)
{
    const PrecisionContext ctx(64);
    EvalResult r{BigFloat(1L, ctx), BigFloat::parse("3e-12", ctx), 64, false};
    EXPECT_EQ(justified_digits(r), 11);
    r.error_bound = BigFloat(0L, ctx);
    EXPECT_EQ(justified_digits(r), 19);
    r.error_bound = BigFloat(5L, ctx);
    EXPECT_EQ(justified_digits(r), 0);
    EXPECT_EQ(format_bound(BigFloat::parse("1.2341e-5", ctx)), "1.24e-05");
}

TEST(Report, CorrectedCrosscheckPasses)
{
    const CrossCheckReport report = run_crosscheck(small_options(Normalization::Corrected));
    EXPECT_TRUE(report.pass);
    ASSERT_EQ(report.cells.size(), 4U);
    EXPECT_EQ(report.cells[1].a, 0U);
    EXPECT_EQ(report.cells[1].b, 1U);
    EXPECT_EQ(report.murakami_exponent, 1);
    EXPECT_TRUE(report.murakami_validated);
}

TEST(Report, AsPrintedRecordsPowerOfTwoRatio)
{
    const CrossCheckReport report = run_crosscheck(small_options(Normalization::AsPrinted));
    EXPECT_FALSE(report.pass);
    const CrossCheckCell& origin = report.cells.front();
    EXPECT_FALSE(origin.pass);
    const auto it = std::find_if(origin.deviations.begin(), origin.deviations.end(),
                                 [](const PairDeviation& d) { return !d.pass; });
    ASSERT_NE(it, origin.deviations.end());
    EXPECT_EQ(it->first, "murakami:as-printed");
    EXPECT_EQ(it->second, "lupu");
    ASSERT_TRUE(it->power_of_two_ratio.has_value());
    EXPECT_EQ(*it->power_of_two_ratio, 1);
}

TEST(Report, JsonRoundTrip)
{
    CrossCheckReport report = run_crosscheck(small_options(Normalization::AsPrinted));
    report.timestamp = "2026-01-01T00:00:00Z";
    const nlohmann::json j = report;
    EXPECT_EQ(j.at("metadata").at("version"), kVersion);
    EXPECT_EQ(j.get<CrossCheckReport>(), report);
    EXPECT_EQ(nlohmann::json::parse(j.dump()).get<CrossCheckReport>(), report);
}

TEST(Report, DeterministicApartFromTimestamp)
{
    CrossCheckOptions options = small_options(Normalization::Corrected);
    const CrossCheckReport serial = run_crosscheck(options);
    options.jobs = 4;
    const CrossCheckReport parallel = run_crosscheck(options);
    EXPECT_EQ(nlohmann::json(serial).dump(), nlohmann::json(parallel).dump());
}

TEST(Table, OriginValues)
{
    const auto rows = build_table(0, 0, 10);
    ASSERT_EQ(rows.size(), 1U);
    EXPECT_EQ(rows[0].h, "1.2020569032");
    EXPECT_EQ(rows[0].t, "1.0517997903");
}

TEST(Table, JsonRoundTripAndCsvShape)
{
    const auto rows = build_table(2, 2, 30, 256, 3);
    ASSERT_EQ(rows.size(), 9U);
    EXPECT_EQ(table_from_json(table_json(rows, 30, 256)), rows);
    const std::string csv = table_csv(rows);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10);
    EXPECT_EQ(csv.rfind("a,b,H,T\r\n", 0), 0U);
    EXPECT_EQ(detail::csv_field("x,y"), "\"x,y\"");
    EXPECT_EQ(detail::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Table, RejectsDigitsBeyondPrecision)
{
    EXPECT_THROW(build_table(0, 0, max_table_digits(128) + 1, 128), std::invalid_argument);
    EXPECT_THROW(build_table(0, 0, -1), std::invalid_argument);
}

TEST(KernelReport, CertificateJson)
{
    const auto certs = run_kernel(KernelContext::TFinalDisplay, 0, 1, 0, 2);
    ASSERT_EQ(certs.size(), 2U);
    const nlohmann::json j = certificate_json(certs[1]);
    EXPECT_EQ(j.at("pass"), false);
    EXPECT_EQ(j.at("context"), "T-final-display");
    EXPECT_EQ(j.at("counterexample").at("n"), 0);
}

} // namespace
} // namespace mzv
