#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "sharpfront/config.hpp"

namespace sharpfront {

// --out wins, then output.directory from the config, then $SHARPFRONT_OUT, then "out"
std::filesystem::path resolve_output_dir(const ExperimentConfig& config,
                                         const std::optional<std::string>& cli_out);

int cmd_simulate(const ExperimentConfig& config, const std::filesystem::path& out);
int cmd_wave(const ExperimentConfig& config, const std::filesystem::path& out,
             std::optional<std::uint64_t> seed = std::nullopt);
int cmd_sweep(const ExperimentConfig& config, const std::filesystem::path& out, int workers);
int cmd_chibar(const std::filesystem::path& out);

// sweep entry config: param applied to a copy of base
ExperimentConfig sweep_entry(const ExperimentConfig& base, const std::string& param, double value);

}  // namespace sharpfront
