// qzeno.cpp — scenario runner CLI: run / verify / spectrum over a config file.
// Exit codes: 0 ok, 1 usage or config error, 2 verification failure,
// 3 numerical failure.

#include "qzeno/runner.hpp"

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>

namespace {

struct Args {
    std::string config_path;
    std::string out_prefix;
    bool quiet = false;
};

qzeno::cli::RunOptions options_from(const Args& args) {
    qzeno::cli::RunOptions opt;
    if (!args.out_prefix.empty()) opt.out_prefix = args.out_prefix;
    opt.quiet = args.quiet;
    return opt;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-excitation decay, entanglement events, and Zeno schedules"};
    app.require_subcommand(1);

    Args run_args, verify_args, spectrum_args;

    auto* run_cmd = app.add_subcommand("run", "execute a scenario and emit CSV artifacts");
    run_cmd->add_option("config", run_args.config_path, "run configuration file")->required();
    run_cmd->add_option("--out", run_args.out_prefix, "output path prefix (overrides [output])");
    run_cmd->add_flag("--quiet", run_args.quiet, "suppress informational output");

    auto* verify_cmd = app.add_subcommand("verify", "compare engine output against oracles");
    verify_cmd->add_option("config", verify_args.config_path, "run configuration file")->required();
    verify_cmd->add_flag("--quiet", verify_args.quiet, "suppress informational output");

    auto* spectrum_cmd = app.add_subcommand("spectrum", "emit the omega,weight eigen-CSV");
    spectrum_cmd->add_option("config", spectrum_args.config_path, "run configuration file")
        ->required();
    spectrum_cmd->add_option("--out", spectrum_args.out_prefix,
                             "output path prefix (overrides [output])");
    spectrum_cmd->add_flag("--quiet", spectrum_args.quiet, "suppress informational output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run_cmd->parsed()) {
            const auto cfg = qzeno::cli::load_config(run_args.config_path);
            qzeno::cli::run_scenario(cfg, options_from(run_args), std::cout, std::cerr);
            return 0;
        }
        if (verify_cmd->parsed()) {
            const auto cfg = qzeno::cli::load_config(verify_args.config_path);
            const auto report = qzeno::cli::verify_scenario(cfg);
            if (!verify_args.quiet || !report.all_pass())
                qzeno::cli::print_report(std::cout, report);
            return report.all_pass() ? 0 : 2;
        }
        if (spectrum_cmd->parsed()) {
            const auto cfg = qzeno::cli::load_config(spectrum_args.config_path);
            qzeno::cli::run_spectrum(cfg, options_from(spectrum_args), std::cout);
            return 0;
        }
    } catch (const qzeno::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
