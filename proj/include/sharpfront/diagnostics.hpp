#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sharpfront/config.hpp"
#include "sharpfront/elliptic.hpp"
#include "sharpfront/model.hpp"

namespace sharpfront {

struct WaveProfile;

// Front positions per sample time. xi[k][b] is NaN when level b has no crossing;
// level 0 is read with front_zero. separatrix is NaN when not tracked.
struct LevelSetTrace {
    double dx = 0.0;
    std::vector<double> levels;
    std::vector<double> times;
    std::vector<std::vector<double>> xi;
    std::vector<double> separatrix;
    std::vector<double> jump;
    std::vector<double> mass;

    std::size_t level_index(double beta) const;
    void write_csv(std::ostream& os) const;
};

std::optional<double> level_set(const Field& u, double beta);
double front_zero(const Field& u, double threshold = 1e-8);

struct SpeedEstimate {
    double value = 0.0;
    bool interpolated = false;  // t1 or t2 fell between samples
};
SpeedEstimate propagation_speed(const LevelSetTrace& trace, double beta, double t1, double t2);

// Integrates dh/dt = -chi p_x(t,h) by the midpoint rule, one call per PDE step,
// with u frozen at the start of the step.
// Truncated mode uses the pressure of u 1_{x<h}; plain mode uses the full
// pressure of the scheme.
class SeparatrixTracker {
public:
    SeparatrixTracker(const Grid1D& grid, const ModelParams& params, double h0,
                      SeparatrixMode mode = SeparatrixMode::Truncated);

    // face_velocity is the scheme velocity (used in plain mode)
    double advance(std::span<const double> u, std::span<const double> face_velocity, double dt);

    double position() const { return h_; }
    double max_rate() const { return max_rate_; }
    double min_rate() const { return min_rate_; }
    long steps() const { return steps_; }

    double velocity_at(std::span<const double> u, std::span<const double> face_velocity,
                       double h) const;

private:
    Grid1D grid_;
    ModelParams params_;
    NeumannResolvent resolvent_;
    SeparatrixMode mode_;
    double h_;
    double max_rate_ = 0.0;
    double min_rate_ = 0.0;
    long steps_ = 0;
    mutable std::vector<double> w_, q_;
};

struct SeparatrixSeries {
    std::vector<double> times;
    std::vector<double> h;
    double max_rate = 0.0;
};

// standalone driver: advances the scheme from u0 and records h*(t) every step
SeparatrixSeries track_separatrix(const Field& u0, const ModelParams& params, double h0,
                                  double T, double cfl, double dt_max,
                                  SeparatrixMode mode = SeparatrixMode::Truncated);

// max of u over the K cells whose centres lie left of front
std::optional<double> jump_height(const Field& u, double front, int K = 3);

struct GapFit {
    double rate = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // rms of log-gap residuals
    int used = 0;
    bool restricted = false;  // samples with gap <= dx were dropped
};
GapFit gap_decay(const LevelSetTrace& trace, double beta, double t_from, double t_to);

struct SmoothSpeedCheck {
    bool ok = false;
    double margin = 0.0;  // min over nodes of c + chi P'(z)
    std::size_t argmin = 0;
};
SmoothSpeedCheck smooth_speed_check(const WaveProfile& profile);

// number of samples with xi(t,beta) > h*(t) + slack for some beta > 0
int levelset_separatrix_violations(const LevelSetTrace& trace, double slack);

}  // namespace sharpfront
