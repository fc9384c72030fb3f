#pragma once

#include <limits>
#include <optional>
#include <random>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sharpfront/elliptic.hpp"
#include "sharpfront/model.hpp"

namespace sharpfront {

// Profile on z_j = -Z + j dz, j = 0..N, with z_N = 0 holding U(0-).
// U is 1 (tail) left of -Z and 0 right of 0.
struct WaveProfile {
    double sigma = 1.0;
    double chi = 1.0;
    double dz = 1e-3;
    double tail = 1.0;
    std::vector<double> z;
    std::vector<double> U;
    std::vector<double> P;
    std::vector<double> Pprime;
    double Pprime0 = 0.0;
    double c = 0.0;
    double U0minus = 0.0;
    int iterations = 0;
    double residual_eta = 0.0;
    double residual_sup = 0.0;
    double projection_distance = 0.0;  // largest correction applied by projection
    std::vector<double> residual_history;

    void write_csv(std::ostream& os) const;
    void write_meta(std::ostream& os, double chibar) const;
};

std::vector<double> wave_grid(double dz, double Z);

struct Admissibility {
    bool ok = true;
    std::optional<std::size_t> index;  // first offending node
    std::string reason;
    double violation = 0.0;  // size of the worst violation
};
Admissibility is_admissible(std::span<const double> U, const ModelParams& params,
                            double tol = 1e-12);

// one application of T by the profile ODE, integrated backward from 0 with RK4
std::vector<double> apply_T_ode(std::span<const double> U, double dz, const ModelParams& params);
// same, reusing a pressure pair already computed for U
std::vector<double> apply_T_ode(std::span<const double> U, const PressurePair& pp, double dz,
                                const ModelParams& params);

// the characteristic route: tau' = chi (P'(0) - P'(tau)), calU' = calU (1 + chi_hat P(tau)
// - (1 + chi_hat) calU), resampled on the z grid. forced_pressure (test mode) replaces
// P in the reaction term by a constant.
std::vector<double> apply_T_tau(std::span<const double> U, double dz, const ModelParams& params,
                                double forced_pressure = std::numeric_limits<double>::quiet_NaN());

WaveProfile fixed_point(const ModelParams& params, double dz, double Z, double tol = 1e-10,
                        int max_iter = 200, double eta = 0.0);

struct WaveSpeed {
    double c = 0.0;             // -chi P'(0)
    double c_quadrature = 0.0;  // composite Simpson of (chi/2 sigma^2) int e^{y/sigma} U
};
// throws InternalConsistency when the two values differ by more than tol
WaveSpeed wave_speed(const WaveProfile& profile, double tol = 1e-10);

// smooth random member of the admissible set on the grid z (for property checks)
std::vector<double> random_admissible_profile(std::span<const double> z, const ModelParams& params,
                                              std::mt19937_64& rng);

double f_appendix(double x);
double find_chibar(double tol = 1e-12);
double porous_medium_profile(double z);

}  // namespace sharpfront
