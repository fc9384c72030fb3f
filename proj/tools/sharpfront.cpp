#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sharpfront/cli.hpp"

using namespace sharpfront;

namespace {

ExperimentConfig load(const std::string& path) {
    if (path.empty()) {
        ExperimentConfig c;
        c.validate();
        return c;
    }
    return parse_config(path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sharpfront: hyperbolic Keller-Segel fronts and sharp traveling waves"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out;
    int workers = 1;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
        sub->add_option("--out", out, "output directory (default: $SHARPFRONT_OUT or out)");
    };
    auto* sim = app.add_subcommand("simulate", "run the upwind scheme and write trace/snapshots");
    add_common(sim);
    auto* wave = app.add_subcommand("wave", "solve for the sharp traveling wave");
    add_common(wave);
    auto* seed_opt = wave->add_option("--seed", seed, "seed for the randomized operator check");
    auto* sweep = app.add_subcommand("sweep", "parameter sweep over independent runs");
    add_common(sweep);
    sweep->add_option("--workers", workers, "concurrent runs")->check(CLI::PositiveNumber);
    auto* chibar = app.add_subcommand("chibar", "chibar: threshold on chi_hat for the wave construction");
    chibar->add_option("--out", out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        const std::optional<std::string> cli_out =
            out.empty() ? std::nullopt : std::optional<std::string>(out);
        if (*chibar) {
            ExperimentConfig c;
            return cmd_chibar(resolve_output_dir(c, cli_out));
        }
        const ExperimentConfig c = load(config_path);
        const auto dir = resolve_output_dir(c, cli_out);
        if (*sim) return cmd_simulate(c, dir);
        if (*wave)
            return cmd_wave(c, dir, seed_opt->count() ? std::optional<std::uint64_t>(seed) : std::nullopt);
        if (*sweep) return cmd_sweep(c, dir, workers);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
