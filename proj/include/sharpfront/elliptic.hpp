#pragma once

#include <span>
#include <vector>

#include "sharpfront/model.hpp"

namespace sharpfront {

// (I - sigma^2 A) with the ghost-cell Neumann closure, factored once.
// Rows: interior [-r, 1+2r, -r], boundary [1+r, -r], r = sigma^2/dx^2.
class NeumannResolvent {
public:
    NeumannResolvent(const Grid1D& grid, double sigma);

    void solve(std::span<const double> rhs, std::span<double> out) const;
    std::vector<double> solve(std::span<const double> rhs) const;
    int size() const { return static_cast<int>(inv_diag_.size()); }

private:
    double r_;
    std::vector<double> inv_diag_;  // 1 / modified pivot
    std::vector<double> upper_;     // modified super-diagonal
};

Field solve_pressure_neumann(const Field& u, const ModelParams& params);

// M+1 face velocities, boundary faces zero
std::vector<double> staggered_velocity(const Field& p, double chi);
void staggered_velocity(std::span<const double> p, double dx, double chi,
                        std::span<double> v);

struct PressurePair {
    std::vector<double> P;
    std::vector<double> Pprime;
    double Pprime0 = 0.0;
};

// Pressure of a profile on the uniform grid z_j = -Z + j dz, j = 0..N (z_N = 0).
// U is extended by tail_value left of -Z and by right_tail right of 0
// (right_tail = 0 is the profile convention, other values are a test mode).
PressurePair convolve_halfline(std::span<const double> U, double dz,
                               double tail_value, double sigma,
                               double right_tail = 0.0);

}  // namespace sharpfront
