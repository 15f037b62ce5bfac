// mzvcheck: evaluate H(a,b) = zeta({2}^a,3,{2}^b) and T(a,b) = t({2}^a,3,{2}^b)
// by independent routes, cross-check them, and replay the exact termwise
// identities behind the even-zeta series.
//
// Exit codes: 0 all checks pass, 2 a check failed, 3 usage error, 4 internal error.

#include "mzv/report.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 2;
constexpr int kExitUsage = 3;
constexpr int kExitInternal = 4;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

// Writes to --out when given, stdout otherwise.
void emit(const std::string& path, const std::string& body)
{
    if (path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw UsageError("cannot open '" + path + "' for writing");
    }
    file << body;
}

std::vector<mzv::RouteSpec> parse_routes(const std::vector<std::string>& names, mzv::Normalization fallback)
{
    std::vector<mzv::RouteSpec> out;
    for (const auto& name : names) {
        out.push_back(mzv::parse_route(name, fallback));
    }
    return out;
}

struct EvalArgs {
    std::string route;
    unsigned a = 0;
    unsigned b = 0;
    std::string kind = "h";
    long prec = 192;
    std::uint64_t terms = 100'000;
    std::string normalization = "corrected";
    std::string format = "text";
};

int run_eval(const EvalArgs& args)
{
    const mzv::Normalization norm = mzv::parse_normalization(args.normalization);
    const mzv::RouteSpec spec = mzv::parse_route(args.route, norm);
    const mzv::SeriesKind kind = spec.route == mzv::Route::Zagier     ? mzv::SeriesKind::H
                                 : spec.route == mzv::Route::Murakami ? mzv::SeriesKind::T
                                                                      : mzv::parse_kind(args.kind);
    const mzv::PrecisionContext ctx(args.prec);
    mzv::RouteOptions options;
    options.direct_terms = args.terms;
    const mzv::HoffmanIndex h{args.a, args.b};
    const mzv::EvalResult r = mzv::evaluate(spec, kind, h, ctx, options);

    if (args.format == "json") {
        nlohmann::json j = {{"route", spec.name()},
                            {"kind", mzv::to_string(kind)},
                            {"a", h.a},
                            {"b", h.b},
                            {"value", mzv::format_value(r)},
                            {"error_bound", mzv::format_bound(r.error_bound)},
                            {"precision_bits", r.precision_bits},
                            {"heuristic", r.heuristic}};
        if (spec.route == mzv::Route::Murakami) {
            j["murakami_exponent"] = mzv::resolve_murakami_normalization().exponent;
        }
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << spec.name() << ' ' << mzv::to_string(kind) << '(' << h.a << ',' << h.b << ")\n"
                  << "value        " << mzv::format_value(r) << '\n'
                  << "error_bound  " << mzv::format_bound(r.error_bound) << (r.heuristic ? " (heuristic)" : "")
                  << '\n'
                  << "precision    " << r.precision_bits << " bits\n";
        if (spec.route == mzv::Route::Murakami) {
            std::cout << "normalization " << mzv::to_string(spec.normalization) << " (e = "
                      << mzv::resolve_murakami_normalization().exponent << ")\n";
        }
    }
    return kExitPass;
}

struct CrosscheckArgs {
    unsigned a_max = 4;
    unsigned b_max = 4;
    long prec = 192;
    std::uint64_t terms = 100'000;
    std::vector<std::string> routes{"zagier", "murakami", "lupu", "integral"};
    std::string normalization = "corrected";
    std::string tolerance = "1e-30";
    std::string out;
    unsigned jobs = 1;
};

int run_crosscheck(const CrosscheckArgs& args)
{
    mzv::CrossCheckOptions options;
    options.a_max = args.a_max;
    options.b_max = args.b_max;
    options.precision_bits = args.prec;
    options.routes = parse_routes(args.routes, mzv::parse_normalization(args.normalization));
    options.tolerance = args.tolerance;
    options.route_options.direct_terms = args.terms;
    options.jobs = args.jobs;

    mzv::CrossCheckReport report = mzv::run_crosscheck(options);
    report.timestamp = utc_timestamp();
    emit(args.out, nlohmann::json(report).dump(2) + "\n");

    for (const auto& cell : report.cells) {
        for (const auto& d : cell.deviations) {
            if (!d.pass) {
                std::cerr << "FAIL " << d.kind << '(' << cell.a << ',' << cell.b << ") " << d.first << " vs "
                          << d.second << ": deviation " << d.deviation << " > " << d.allowed;
                if (d.power_of_two_ratio) {
                    std::cerr << " (ratio 2^" << *d.power_of_two_ratio << ")";
                }
                std::cerr << '\n';
            }
        }
    }
    std::cerr << (report.pass ? "crosscheck: pass" : "crosscheck: FAIL") << '\n';
    return report.pass ? kExitPass : kExitCheckFailed;
}

struct KernelArgs {
    std::string context = "H";
    unsigned a_max = 6;
    unsigned b_max = 6;
    std::uint64_t n_max = 500;
    std::string out;
    unsigned jobs = 1;
};

int run_kernel(const KernelArgs& args)
{
    const mzv::KernelContext context = mzv::parse_kernel_context(args.context);
    const auto certs = mzv::run_kernel(context, args.a_max, args.b_max, args.n_max, args.jobs);
    std::string body;
    bool pass = true;
    for (const auto& c : certs) {
        body += mzv::certificate_json(c).dump() + "\n";
        if (!c.passed) {
            pass = false;
            std::cerr << "IdentityViolation " << mzv::to_string(c.context) << '(' << c.a << ',' << c.b
                      << ") n=" << c.counterexample->n << " lhs=" << c.counterexample->lhs.get_str()
                      << " rhs=" << c.counterexample->rhs.get_str() << '\n';
        }
    }
    emit(args.out, body);
    std::cerr << (pass ? "kernel: pass" : "kernel: FAIL") << '\n';
    return pass ? kExitPass : kExitCheckFailed;
}

struct TableArgs {
    unsigned a_max = 4;
    unsigned b_max = 4;
    int digits = 30;
    std::string format = "csv";
    long prec = 256;
    std::string out;
    unsigned jobs = 1;
};

int run_table(const TableArgs& args)
{
    const auto rows = mzv::build_table(args.a_max, args.b_max, args.digits, args.prec, args.jobs);
    if (args.format == "json") {
        emit(args.out, mzv::table_json(rows, args.digits, args.prec).dump(2) + "\n");
    } else {
        emit(args.out, mzv::table_csv(rows));
    }
    return kExitPass;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Evaluate and cross-check zeta({2}^a,3,{2}^b) and t({2}^a,3,{2}^b)"};
    app.require_subcommand(1);

    EvalArgs eval;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate H(a,b) or T(a,b) by one route");
    eval_cmd->add_option("route", eval.route, "direct | zagier | murakami[:as-printed|:corrected] | lupu | integral")
        ->required();
    eval_cmd->add_option("a,--a", eval.a, "Number of leading 2s");
    eval_cmd->add_option("b,--b", eval.b, "Number of trailing 2s");
    eval_cmd->add_option("--kind", eval.kind, "h (multiple zeta) or t (multiple t-value)")
        ->check(CLI::IsMember({"h", "t", "H", "T"}));
    eval_cmd->add_option("--prec", eval.prec, "Precision in bits")->check(CLI::Range(64L, 1L << 20));
    eval_cmd->add_option("--N", eval.terms, "Terms for the direct route")->check(CLI::PositiveNumber);
    eval_cmd->add_option("--normalization", eval.normalization, "as-printed | corrected")
        ->check(CLI::IsMember({"as-printed", "corrected"}));
    eval_cmd->add_option("--format", eval.format, "text | json")->check(CLI::IsMember({"text", "json"}));

    CrosscheckArgs cross;
    auto* cross_cmd = app.add_subcommand("crosscheck", "Compare routes on a grid of (a,b)");
    cross_cmd->add_option("a_max,--a-max", cross.a_max, "Largest a");
    cross_cmd->add_option("b_max,--b-max", cross.b_max, "Largest b");
    cross_cmd->add_option("--prec", cross.prec, "Precision in bits")->check(CLI::Range(64L, 1L << 20));
    cross_cmd->add_option("--N", cross.terms, "Terms for the direct route")->check(CLI::PositiveNumber);
    cross_cmd->add_option("--routes", cross.routes, "Comma-separated routes")->delimiter(',');
    cross_cmd->add_option("--normalization", cross.normalization, "Default Murakami normalization")
        ->check(CLI::IsMember({"as-printed", "corrected"}));
    cross_cmd->add_option("--tolerance", cross.tolerance, "Absolute tolerance for the quadrature route");
    cross_cmd->add_option("--out", cross.out, "Report path (JSON); stdout if omitted");
    cross_cmd->add_option("--jobs", cross.jobs, "Concurrent grid cells")->check(CLI::PositiveNumber);

    KernelArgs kernel;
    auto* kernel_cmd = app.add_subcommand("kernel", "Replay the exact termwise identities");
    kernel_cmd->add_option("context", kernel.context, "H | T | T-final-display")
        ->check(CLI::IsMember({"H", "T", "h", "t", "T-final-display", "t-final-display"}));
    kernel_cmd->add_option("a_max,--a-max", kernel.a_max, "Largest a");
    kernel_cmd->add_option("b_max,--b-max", kernel.b_max, "Largest b");
    kernel_cmd->add_option("n_max,--n-max", kernel.n_max, "Largest series index n");
    kernel_cmd->add_option("--out", kernel.out, "Certificate path (JSON lines); stdout if omitted");
    kernel_cmd->add_option("--jobs", kernel.jobs, "Concurrent grid cells")->check(CLI::PositiveNumber);

    TableArgs table;
    auto* table_cmd = app.add_subcommand("table", "Tabulate H(a,b) and T(a,b) from the Lupu series");
    table_cmd->add_option("a_max,--a-max", table.a_max, "Largest a");
    table_cmd->add_option("b_max,--b-max", table.b_max, "Largest b");
    table_cmd->add_option("digits,--digits", table.digits, "Fractional digits");
    table_cmd->add_option("format,--format", table.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    table_cmd->add_option("--prec", table.prec, "Precision in bits")->check(CLI::Range(64L, 1L << 20));
    table_cmd->add_option("--out", table.out, "Output path; stdout if omitted");
    table_cmd->add_option("--jobs", table.jobs, "Concurrent grid cells")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*eval_cmd) {
            return run_eval(eval);
        }
        if (*cross_cmd) {
            return run_crosscheck(cross);
        }
        if (*kernel_cmd) {
            return run_kernel(kernel);
        }
        if (*table_cmd) {
            return run_table(table);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitUsage;
}
