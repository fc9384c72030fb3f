#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sharpfront/config.hpp"
#include "sharpfront/diagnostics.hpp"
#include "sharpfront/elliptic.hpp"
#include "sharpfront/model.hpp"

namespace sharpfront {

struct SchemeState {
    Field u;
    Field p;
    std::vector<double> v;  // M+1 face velocities from p
    long step_count = 0;
    double dt_last = 0.0;
};

// donor-cell flux at a face with left value uL and right value uR
inline double upwind_flux(double uL, double uR, double v) {
    return v >= 0.0 ? v * uL : v * uR;
}

SchemeState make_state(Field u, const ModelParams& params);
SchemeState make_state(Field u, const NeumannResolvent& R, const ModelParams& params);

double cfl_dt(const SchemeState& state, double cfl, double dt_max);

// one explicit step; pressure and velocities are refreshed for the new u
SchemeState step(const SchemeState& state, double dt, const ModelParams& params,
                 bool reaction = true);
SchemeState step(const SchemeState& state, double dt, const ModelParams& params,
                 const NeumannResolvent& R, bool reaction = true);

double total_mass(const Field& u);

struct RunResult {
    SchemeState final;
    LevelSetTrace trace;
    std::vector<Field> snapshots;
    double max_separatrix_rate = 0.0;
    double min_dt = 0.0;
    double max_abs_velocity = 0.0;
    double min_u = 0.0;
    double max_u = 0.0;
    std::optional<std::string> separatrix_note;  // set when tracking stopped
};

RunResult run(const ExperimentConfig& config);
// same protocol from an explicit initial field (grid taken from u0)
RunResult run(const ExperimentConfig& config, const Field& u0, std::optional<double> h0);

}  // namespace sharpfront
