#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <tuple>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "run_config.hpp"
#include "suites.hpp"

using namespace patchring;
using namespace patchring::cli;

namespace {

constexpr int schema_version = 1;
constexpr const char* artifact_version = "0.1.0";

nlohmann::json make_report(const RunConfig& rc, const ConfigPtr& cfg, std::vector<CaseRecord> records, double total_ms)
{
    std::stable_sort(records.begin(), records.end(), [](const CaseRecord& a, const CaseRecord& b) {
        return std::tie(a.suite, a.id) < std::tie(b.suite, b.id);
    });
    nlohmann::json cases = nlohmann::json::array();
    std::map<std::string, std::map<std::string, int>> per_suite;
    int pass = 0, fail = 0, skip = 0;
    for (const auto& r : records) {
        cases.push_back({{"suite", r.suite},
                         {"id", r.id},
                         {"status", r.status},
                         {"details", r.details},
                         {"elapsed_ms", r.elapsed_ms}});
        per_suite[r.suite][r.status] += 1;
        (r.status == "pass" ? pass : r.status == "fail" ? fail : skip) += 1;
    }
    nlohmann::json config = to_json(rc);
    config["resolved_field"] = cfg->field().name();
    return {{"schema_version", schema_version},
            {"artifact", {{"name", "patchring"}, {"version", artifact_version}}},
            {"config", config},
            {"records", cases},
            {"summary",
             {{"total", static_cast<int>(records.size())},
              {"pass", pass},
              {"fail", fail},
              {"skip", skip},
              {"per_suite", per_suite},
              {"elapsed_ms", total_ms}}}};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"patchring: exact arithmetic checks for the analytic rings D_J mod t^N"};
    std::string config_path;
    std::vector<std::string> suites;
    std::uint64_t seed = 0;
    int precision = 0;
    std::string output;
    bool verbose = false;
    bool tamper = false;
    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--suite", suites, "suite to run (repeatable): all, rings, split, intersect, cartan, kummer, "
                                      "certificate");
    auto* seed_opt = app.add_option("--seed", seed, "random seed");
    auto* prec_opt = app.add_option("--precision", precision, "truncation order N");
    app.add_option("--output", output, "report path (default: stdout)");
    app.add_flag("--verbose", verbose, "per-case progress on stderr");
    app.add_flag("--tamper-certificate", tamper, "debug: replace b by b^2 in the certificate (negative control)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    RunConfig rc;
    ConfigPtr cfg;
    try {
        if (!config_path.empty())
            rc = load_config(config_path);
        if (!suites.empty())
            rc.suites = suites;
        if (*seed_opt)
            rc.seed = seed;
        if (*prec_opt)
            rc.precision = precision;
        if (!output.empty())
            rc.output = output;
        rc.tamper_certificate = rc.tamper_certificate || tamper;
        validate(rc);
        cfg = make_configuration(rc);
        if (std::find(rc.suites.begin(), rc.suites.end(), "certificate") != rc.suites.end() ||
            std::find(rc.suites.begin(), rc.suites.end(), "all") != rc.suites.end())
            build_scenario(cfg, rc.i, rc.j, rc.k, rc.q, rc.q_prime); // validates the scenario parameters
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const patchring::error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    const SuiteContext ctx{rc, cfg, verbose};
    std::vector<CaseRecord> records;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& name : rc.selected_suites())
        run_suite(name, ctx, records);
    const double total_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    const nlohmann::json report = make_report(rc, cfg, records, total_ms);
    if (rc.output.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(rc.output);
        if (!out) {
            std::cerr << "cannot write report to '" << rc.output << "'\n";
            return 2;
        }
        out << report.dump(2) << "\n";
    }
    const int failed = report["summary"]["fail"].get<int>();
    std::cerr << "patchring: " << report["summary"]["pass"].get<int>() << " passed, " << failed << " failed, "
              << report["summary"]["skip"].get<int>() << " skipped\n";
    return failed > 0 ? 1 : 0;
}
