// Command-line front end for the skewfold shared library.  Talks to the
// library exclusively through its C interface.
#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "skewfold/skewfold.h"

namespace {

struct CommonOpts {
    std::string scenario;
    std::string config_file;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::size_t workers = 0;
    bool workers_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("scenario", opts.scenario, "scenario name (see `list`)")
        ->required();
    cmd->add_option("--config", opts.config_file, "JSON config file")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", opts.out_dir, "output directory for CSV/JSON");
    cmd->add_option("--seed", opts.seed, "master seed")
        ->each([&](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--workers", opts.workers, "worker threads (0 = auto)")
        ->each([&](const std::string&) { opts.workers_set = true; });
}

int status_to_exit(sf_status s) {
    switch (s) {
        case SF_OK:
            return 0;
        case SF_ERR_VERIFY:
            return 1;
        default:
            return 2;
    }
}

int run(const CommonOpts& opts, bool print_checks) {
    sf_config* config = nullptr;
    sf_status s = opts.config_file.empty()
                      ? sf_config_from_json("{}", &config)
                      : sf_config_from_file(opts.config_file.c_str(), &config);
    if (s != SF_OK) {
        std::fprintf(stderr, "error: %s\n", sf_last_error());
        return status_to_exit(s);
    }
    sf_config_set_scenario(config, opts.scenario.c_str());
    if (opts.seed_set) sf_config_set_seed(config, opts.seed);
    if (!opts.out_dir.empty()) sf_config_set_out_dir(config, opts.out_dir.c_str());
    if (opts.workers_set) sf_config_set_workers(config, opts.workers);

    sf_report* report = nullptr;
    s = sf_run(config, &report);
    if (report) {
        if (print_checks) {
            std::printf("%s\n", sf_report_json(report));
        }
        std::printf("%s: %s (%zu checks)\n", opts.scenario.c_str(),
                    sf_report_passed(report) ? "PASS" : "FAIL",
                    sf_report_check_count(report));
        sf_report_free(report);
    } else {
        std::fprintf(stderr, "error: %s\n", sf_last_error());
    }
    sf_config_free(config);
    return status_to_exit(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skewfold: simulation and verification of skew unfoldings "
                 "of reflected semimartingales"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(sf_version()));

    CommonOpts sim_opts;
    auto* simulate = app.add_subcommand(
        "simulate", "run a scenario and write sample paths + report");
    add_common(simulate, sim_opts);

    CommonOpts verify_opts;
    auto* verify = app.add_subcommand(
        "verify", "run a scenario's checks and print the report");
    add_common(verify, verify_opts);

    auto* list = app.add_subcommand("list", "list available scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (list->parsed()) {
        std::printf("%s\n", sf_list_scenarios());
        return 0;
    }
    if (simulate->parsed()) {
        if (sim_opts.out_dir.empty()) sim_opts.out_dir = "out";
        return run(sim_opts, false);
    }
    return run(verify_opts, true);
}
