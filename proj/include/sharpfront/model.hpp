#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sharpfront/errors.hpp"

namespace sharpfront {

struct ModelParams {
    double sigma = 1.0;
    double chi = 1.0;
    double chi_hat = 1.0;  // chi / sigma^2
    bool assumption3_ok = true;

    double jump_bound() const { return 2.0 / (2.0 + chi_hat); }
    double speed_lower() const { return sigma * chi_hat / (2.0 + chi_hat); }
    double speed_upper() const { return sigma * chi_hat / 2.0; }
    // exact bound on the characteristic speed for u in [0,1]
    double max_speed() const { return chi / (2.0 * sigma); }
};

ModelParams make_params(double sigma, double chi);

// Uniform cell-centred grid on [-L, L]. Indices are 0-based here:
// cell i has centre -L + (i + 1/2) dx, face i sits at -L + i dx.
struct Grid1D {
    double L = 20.0;
    int M = 2000;
    double dx = 0.02;

    double center(int i) const { return -L + (i + 0.5) * dx; }
    double face(int i) const { return -L + i * dx; }
};

Grid1D make_grid(double L, int M);

struct Field {
    Grid1D grid;
    std::vector<double> values;
    double time = 0.0;
};

enum class IcKind { Polynomial, Ramp, PlateauRamp, Sigmoid };

struct InitialCondition {
    IcKind kind = IcKind::Polynomial;
    double L = 20.0;
    double x0 = -15.0;
    double exponent = 2.0;
    double alpha = 5.0;

    static InitialCondition polynomial(double L = 20.0, double x0 = -15.0);
    static InitialCondition ramp();
    static InitialCondition plateau_ramp();
    static InitialCondition sigmoid(double alpha, double x0 = -15.0);

    // rightmost point of the support, none when the support is unbounded
    std::optional<double> support_edge() const;
    std::string name() const;
};

IcKind parse_ic_kind(const std::string& s);

double eval_ic(const InitialCondition& ic, double x);
Field sample_ic(const InitialCondition& ic, const Grid1D& grid);

double kernel_rho(double x, double sigma);

// sup of sqrt(-z) e^{eta z} |v(z)| over nodes strictly inside (z.front(), 0)
double norm_eta(std::span<const double> z, std::span<const double> values,
                double eta, double sigma);

}  // namespace sharpfront
