#pragma once

#include <string>
#include <vector>

#include "sharpfront/model.hpp"

namespace sharpfront {

enum class SeparatrixMode { Truncated, Plain };

struct SweepSpec {
    std::string param;  // alpha | sigma2 | sigma | chi | M
    std::vector<double> values;
    bool with_wave = false;  // also solve for the traveling wave per entry
};

struct ExperimentConfig {
    int schema_version = 1;

    double L = 20.0;
    int M = 2000;

    double sigma = 1.0;
    double chi = 1.0;

    double T_final = 40.0;
    double cfl = 0.9;
    double dt_max = 0.1;
    std::vector<double> snapshot_times{0.0, 10.0, 25.0, 40.0};
    double sample_interval = 0.5;
    bool reaction = true;

    InitialCondition ic = InitialCondition::polynomial();

    std::vector<double> betas{0.0, 0.2, 0.6667, 0.8};
    double t1 = 15.0;
    double t2 = 40.0;
    int jump_window = 3;
    double front_threshold = 1e-8;
    bool track_separatrix = true;
    SeparatrixMode separatrix_mode = SeparatrixMode::Truncated;

    double wave_dz = 1e-3;
    double wave_Z = 40.0;  // in units of sigma
    double wave_tol = 1e-10;
    int wave_max_iter = 200;
    double wave_eta = 0.0;  // 0 picks 1/(2 sigma)

    std::string output_dir;  // empty: SHARPFRONT_OUT or "out"

    SweepSpec sweep;

    // throws InvalidParameter naming the offending key
    void validate() const;
};

// JSON loader; unknown keys produce warnings on stderr
ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

}  // namespace sharpfront
