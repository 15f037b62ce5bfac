#pragma once

// Cross-check grids, value tables and kernel certificates, with their JSON and
// CSV encodings. All numbers leave this layer as decimal strings.

#include "mzv/kernel.hpp"
#include "mzv/routes.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace mzv {

inline constexpr const char* kVersion = "1.0.0";

struct RouteValue {
    std::string route;
    std::string value;
    std::string error_bound;
    long precision_bits = 0;
    bool heuristic = false;

    friend bool operator==(const RouteValue&, const RouteValue&) = default;
};

struct PairDeviation {
    std::string kind;
    std::string first;
    std::string second;
    std::string deviation;
    std::string allowed;
    bool pass = false;
    /// log2(first / second) when it is an integer and the pair failed.
    std::optional<int> power_of_two_ratio;

    friend bool operator==(const PairDeviation&, const PairDeviation&) = default;
};

struct CrossCheckCell {
    unsigned a = 0;
    unsigned b = 0;
    std::vector<RouteValue> h_values;
    std::vector<RouteValue> t_values;
    std::vector<PairDeviation> deviations;
    std::string max_deviation;
    bool pass = true;

    friend bool operator==(const CrossCheckCell&, const CrossCheckCell&) = default;
};

struct CrossCheckReport {
    unsigned a_max = 0;
    unsigned b_max = 0;
    long precision_bits = 0;
    std::vector<std::string> routes;
    std::string tolerance;
    int murakami_exponent = 0;
    bool murakami_validated = false;
    std::string version = kVersion;
    std::string timestamp;
    std::vector<CrossCheckCell> cells;
    bool pass = true;

    friend bool operator==(const CrossCheckReport&, const CrossCheckReport&) = default;
};

struct CrossCheckOptions {
    unsigned a_max = 4;
    unsigned b_max = 4;
    long precision_bits = 192;
    std::vector<RouteSpec> routes;
    /// Absolute tolerance standing in for the bound of heuristic routes.
    std::string tolerance = "1e-30";
    RouteOptions route_options;
    unsigned jobs = 1;
};

namespace detail {

inline std::optional<int> integer_log2_ratio(const BigFloat& x, const BigFloat& y)
{
    if (x.is_zero() || y.is_zero() || x.sign() != y.sign()) {
        return std::nullopt;
    }
    const double ratio = std::log2((x / y).to_double());
    const double nearest = std::round(ratio);
    if (nearest == 0.0 || std::abs(ratio - nearest) > 1e-9) {
        return std::nullopt;
    }
    return static_cast<int>(nearest);
}

struct Evaluated {
    RouteSpec spec;
    EvalResult result;
};

inline CrossCheckCell check_cell(HoffmanIndex h, const CrossCheckOptions& options, const PrecisionContext& ctx)
{
    CrossCheckCell cell;
    cell.a = h.a;
    cell.b = h.b;
    const BigFloat tolerance = BigFloat::parse(options.tolerance, ctx);
    BigFloat max_dev(0L, ctx);

    for (SeriesKind kind : {SeriesKind::H, SeriesKind::T}) {
        std::vector<Evaluated> done;
        for (const RouteSpec& spec : options.routes) {
            if (spec.supports(kind)) {
                done.push_back({spec, evaluate(spec, kind, h, ctx, options.route_options)});
            }
        }
        auto& values = kind == SeriesKind::H ? cell.h_values : cell.t_values;
        for (const Evaluated& e : done) {
            values.push_back({e.spec.name(), format_value(e.result), format_bound(e.result.error_bound),
                              e.result.precision_bits, e.result.heuristic});
        }
        for (std::size_t i = 0; i < done.size(); ++i) {
            for (std::size_t j = i + 1; j < done.size(); ++j) {
                const EvalResult& x = done[i].result;
                const EvalResult& y = done[j].result;
                const BigFloat dev = abs(x.value - y.value);
                const BigFloat allowed =
                    (x.heuristic ? tolerance : x.error_bound) + (y.heuristic ? tolerance : y.error_bound);
                PairDeviation pair{to_string(kind), done[i].spec.name(), done[j].spec.name(),
                                   dev.to_scientific(3), format_bound(allowed), dev <= allowed, std::nullopt};
                if (!pair.pass) {
                    pair.power_of_two_ratio = integer_log2_ratio(x.value, y.value);
                }
                cell.pass = cell.pass && pair.pass;
                max_dev = max(max_dev, dev);
                cell.deviations.push_back(std::move(pair));
            }
        }
    }
    cell.max_deviation = max_dev.to_scientific(3);
    return cell;
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn)
{
    jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < jobs; ++t) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& w : workers) {
        w.join();
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

} // namespace detail

/// Evaluates every route on the grid 0..a_max x 0..b_max and compares each
/// pair of routes per kind. Cells come out sorted by (a, b).
inline CrossCheckReport run_crosscheck(const CrossCheckOptions& options)
{
    const PrecisionContext ctx(options.precision_bits);
    CrossCheckReport report;
    report.a_max = options.a_max;
    report.b_max = options.b_max;
    report.precision_bits = options.precision_bits;
    report.tolerance = options.tolerance;
    for (const RouteSpec& r : options.routes) {
        report.routes.push_back(r.name());
    }
    const MurakamiNormalization& norm = resolve_murakami_normalization();
    report.murakami_exponent = norm.exponent;
    report.murakami_validated = norm.validated;

    std::vector<HoffmanIndex> grid;
    for (unsigned a = 0; a <= options.a_max; ++a) {
        for (unsigned b = 0; b <= options.b_max; ++b) {
            grid.push_back({a, b});
        }
    }
    report.cells.resize(grid.size());
    detail::parallel_for(grid.size(), options.jobs,
                         [&](std::size_t i) { report.cells[i] = detail::check_cell(grid[i], options, ctx); });
    report.pass = std::all_of(report.cells.begin(), report.cells.end(), [](const auto& c) { return c.pass; });
    return report;
}

// JSON encodings. nlohmann::json objects keep keys sorted.

inline void to_json(nlohmann::json& j, const RouteValue& v)
{
    j = {{"route", v.route},
         {"value", v.value},
         {"error_bound", v.error_bound},
         {"precision_bits", v.precision_bits},
         {"heuristic", v.heuristic}};
}

inline void from_json(const nlohmann::json& j, RouteValue& v)
{
    j.at("route").get_to(v.route);
    j.at("value").get_to(v.value);
    j.at("error_bound").get_to(v.error_bound);
    j.at("precision_bits").get_to(v.precision_bits);
    j.at("heuristic").get_to(v.heuristic);
}

inline void to_json(nlohmann::json& j, const PairDeviation& d)
{
    j = {{"kind", d.kind},         {"first", d.first}, {"second", d.second},
         {"deviation", d.deviation}, {"allowed", d.allowed}, {"pass", d.pass}};
    j["power_of_two_ratio"] = d.power_of_two_ratio ? nlohmann::json(*d.power_of_two_ratio) : nlohmann::json();
}

inline void from_json(const nlohmann::json& j, PairDeviation& d)
{
    j.at("kind").get_to(d.kind);
    j.at("first").get_to(d.first);
    j.at("second").get_to(d.second);
    j.at("deviation").get_to(d.deviation);
    j.at("allowed").get_to(d.allowed);
    j.at("pass").get_to(d.pass);
    const auto& ratio = j.at("power_of_two_ratio");
    d.power_of_two_ratio = ratio.is_null() ? std::nullopt : std::optional<int>(ratio.get<int>());
}

inline void to_json(nlohmann::json& j, const CrossCheckCell& c)
{
    j = {{"a", c.a},
         {"b", c.b},
         {"H", c.h_values},
         {"T", c.t_values},
         {"deviations", c.deviations},
         {"max_deviation", c.max_deviation},
         {"pass", c.pass}};
}

inline void from_json(const nlohmann::json& j, CrossCheckCell& c)
{
    j.at("a").get_to(c.a);
    j.at("b").get_to(c.b);
    j.at("H").get_to(c.h_values);
    j.at("T").get_to(c.t_values);
    j.at("deviations").get_to(c.deviations);
    j.at("max_deviation").get_to(c.max_deviation);
    j.at("pass").get_to(c.pass);
}

inline void to_json(nlohmann::json& j, const CrossCheckReport& r)
{
    j = {{"grid", {{"a_max", r.a_max}, {"b_max", r.b_max}}},
         {"precision_bits", r.precision_bits},
         {"routes", r.routes},
         {"tolerance", r.tolerance},
         {"metadata",
          {{"murakami_exponent", r.murakami_exponent},
           {"murakami_validated", r.murakami_validated},
           {"version", r.version},
           {"timestamp", r.timestamp}}},
         {"cells", r.cells},
         {"pass", r.pass}};
}

inline void from_json(const nlohmann::json& j, CrossCheckReport& r)
{
    j.at("grid").at("a_max").get_to(r.a_max);
    j.at("grid").at("b_max").get_to(r.b_max);
    j.at("precision_bits").get_to(r.precision_bits);
    j.at("routes").get_to(r.routes);
    j.at("tolerance").get_to(r.tolerance);
    const auto& meta = j.at("metadata");
    meta.at("murakami_exponent").get_to(r.murakami_exponent);
    meta.at("murakami_validated").get_to(r.murakami_validated);
    meta.at("version").get_to(r.version);
    meta.at("timestamp").get_to(r.timestamp);
    j.at("cells").get_to(r.cells);
    j.at("pass").get_to(r.pass);
}

/// One JSON object per certificate, suitable for a JSON-lines file.
inline nlohmann::json certificate_json(const Certificate& c)
{
    nlohmann::json j = {{"context", to_string(c.context)},
                        {"a", c.a},
                        {"b", c.b},
                        {"n_max", c.n_max},
                        {"pass", c.passed}};
    if (c.counterexample) {
        j["counterexample"] = {{"n", c.counterexample->n},
                               {"lhs", c.counterexample->lhs.get_str()},
                               {"rhs", c.counterexample->rhs.get_str()}};
    }
    return j;
}

/// Certifies every (a, b) in the grid; certificates sorted by (a, b).
inline std::vector<Certificate> run_kernel(KernelContext context, unsigned a_max, unsigned b_max,
                                           std::uint64_t n_max, unsigned jobs = 1)
{
    std::vector<std::pair<unsigned, unsigned>> grid;
    for (unsigned a = 0; a <= a_max; ++a) {
        for (unsigned b = 0; b <= b_max; ++b) {
            grid.emplace_back(a, b);
        }
    }
    std::vector<Certificate> out(grid.size());
    detail::parallel_for(grid.size(), jobs, [&](std::size_t i) {
        out[i] = certify(context, grid[i].first, grid[i].second, n_max);
    });
    return out;
}

struct TableRow {
    unsigned a = 0;
    unsigned b = 0;
    std::string h;
    std::string t;

    friend bool operator==(const TableRow&, const TableRow&) = default;
};

/// Largest number of fractional digits a table at `precision_bits` may show.
inline int max_table_digits(long precision_bits)
{
    return static_cast<int>(std::floor(static_cast<double>(precision_bits) * 0.30102999566398120)) - 2;
}

/// H(a,b) and T(a,b) by the Lupu series on the grid, `digits` fractional digits.
inline std::vector<TableRow> build_table(unsigned a_max, unsigned b_max, int digits, long precision_bits = 256,
                                         unsigned jobs = 1)
{
    if (digits < 0 || digits > max_table_digits(precision_bits)) {
        throw std::invalid_argument("table: digits must lie in [0, " + std::to_string(max_table_digits(precision_bits)) +
                                    "] at " + std::to_string(precision_bits) + " bits");
    }
    const PrecisionContext ctx(precision_bits);
    std::vector<TableRow> rows;
    for (unsigned a = 0; a <= a_max; ++a) {
        for (unsigned b = 0; b <= b_max; ++b) {
            rows.push_back({a, b, {}, {}});
        }
    }
    detail::parallel_for(rows.size(), jobs, [&](std::size_t i) {
        const HoffmanIndex h{rows[i].a, rows[i].b};
        rows[i].h = lupu_H(h, ctx).value.to_fixed(digits);
        rows[i].t = lupu_T(h, ctx).value.to_fixed(digits);
    });
    return rows;
}

inline nlohmann::json table_json(const std::vector<TableRow>& rows, int digits, long precision_bits)
{
    nlohmann::json list = nlohmann::json::array();
    for (const TableRow& r : rows) {
        list.push_back({{"a", r.a}, {"b", r.b}, {"H", r.h}, {"T", r.t}});
    }
    return {{"digits", digits}, {"precision_bits", precision_bits}, {"route", "lupu"}, {"rows", list}};
}

inline std::vector<TableRow> table_from_json(const nlohmann::json& j)
{
    std::vector<TableRow> rows;
    for (const auto& r : j.at("rows")) {
        rows.push_back({r.at("a").get<unsigned>(), r.at("b").get<unsigned>(), r.at("H").get<std::string>(),
                        r.at("T").get<std::string>()});
    }
    return rows;
}

namespace detail {

// RFC 4180: quote fields containing separators, quotes or line breaks.
inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

} // namespace detail

inline std::string table_csv(const std::vector<TableRow>& rows)
{
    std::ostringstream out;
    out << "a,b,H,T\r\n";
    for (const TableRow& r : rows) {
        out << r.a << ',' << r.b << ',' << detail::csv_field(r.h) << ',' << detail::csv_field(r.t) << "\r\n";
    }
    return out.str();
}

} // namespace mzv
