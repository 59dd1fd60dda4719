// pflab: batch driver for the diffuse-interface laboratory.
//   pflab run      --config file [key=value ...] [--out DIR]
//   pflab validate --config file [key=value ...]
//   pflab report   FILE        (pretty-print a report.json / CSV file)

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pflab/config.hpp"
#include "pflab/experiments.hpp"
#include "pflab/solver.hpp"

using namespace pflab;

namespace {

ExperimentConfig load_config(const std::string& config_path,
                             const std::vector<std::string>& overrides) {
    std::map<std::string, std::string> kv;
    if (!config_path.empty()) kv = parse_config_file(config_path);
    for (const auto& ov : overrides) {
        auto eq = ov.find('=');
        require(eq != std::string::npos && eq > 0, "override must be key=value: '" + ov + "'");
        kv[ov.substr(0, eq)] = ov.substr(eq + 1);
    }
    return make_config(kv);
}

int print_validation(const ValidationReport& rep) {
    if (rep.passed()) {
        std::puts("validate: pass");
        return 0;
    }
    for (const auto& f : rep.findings)
        std::printf("validate: FAIL [%s] %s\n", f.key.c_str(), f.message.c_str());
    return static_cast<int>(ExitCode::Validation);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pflab: advective Allen-Cahn solver and varifold diagnostics"};
    app.require_subcommand(1);

    std::string config_path, out_dir, report_path;
    std::vector<std::string> overrides;

    auto* run = app.add_subcommand("run", "run an experiment end to end");
    run->add_option("--config", config_path, "key=value config file");
    run->add_option("--out", out_dir, "output directory (default $PFLAB_OUT_ROOT/<experiment>)");
    run->add_option("overrides", overrides, "key=value overrides");

    auto* validate = app.add_subcommand("validate", "check a config without running");
    validate->add_option("--config", config_path, "key=value config file");
    validate->add_option("overrides", overrides, "key=value overrides");

    auto* report = app.add_subcommand("report", "pretty-print a report file");
    report->add_option("file", report_path, "report.json or .csv file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            ExperimentConfig cfg = load_config(config_path, overrides);
            return print_validation(validate_config(cfg));
        }
        if (run->parsed()) {
            ExperimentConfig cfg = load_config(config_path, overrides);
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            ValidationReport v = validate_config(cfg);
            if (!v.passed()) return print_validation(v);
            std::string out = resolve_out_dir(cfg);
            try {
                run_experiment(cfg, out);
            } catch (const SolveFailure& e) {
                std::fprintf(stderr, "solver: %s\n", e.what());
                std::fprintf(stderr, "partial reports in %s\n", out.c_str());
                return static_cast<int>(ExitCode::Solver);
            }
            std::printf("run: reports written to %s\n", out.c_str());
            return 0;
        }
        if (report->parsed()) {
            std::ifstream is(report_path);
            require(is.good(), "report: cannot open " + report_path);
            if (report_path.size() > 5 &&
                report_path.compare(report_path.size() - 5, 5, ".json") == 0) {
                nlohmann::json j = nlohmann::json::parse(is);
                std::cout << j.dump(2) << '\n';
            } else {
                std::string line;
                while (std::getline(is, line)) {
                    for (auto& ch : line)
                        if (ch == ',') ch = '\t';
                    std::cout << line << '\n';
                }
            }
            return 0;
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        // config/validation problems exit 2, I/O problems exit 4
        std::string what = e.what();
        bool io = what.rfind("io:", 0) == 0 || what.rfind("snapshot:", 0) == 0 ||
                  what.rfind("report:", 0) == 0;
        return static_cast<int>(io ? ExitCode::Io : ExitCode::Validation);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return static_cast<int>(ExitCode::Io);
    }
    return 0;
}
