// Operator contract on randomized admissible inputs.
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sharpfront/travelingwave.hpp"
#include "support.hpp"

using namespace sharpfront;

TEST_CASE("T maps 200 random admissible profiles into the admissible set") {
    std::mt19937_64 rng(2024);
    const auto params = make_params(1.0, 1.0);
    const double dz = 4e-3;
    const auto z = wave_grid(dz, 40.0);
    double worst_route = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto U = random_admissible_profile(z, params, rng);
        REQUIRE(is_admissible(U, params).ok);
        const auto pp = convolve_halfline(U, dz, 1.0, params.sigma);
        const auto V = apply_T_ode(U, pp, dz, params);
        for (std::size_t j = 0; j < V.size(); ++j) {
            REQUIRE(V[j] >= params.jump_bound());
            REQUIRE(V[j] <= 1.0);
        }
        REQUIRE(oracle::strictly_decreasing_resolved(V));
        const double bv = (1.0 + params.chi_hat * pp.P.back()) / (1.0 + params.chi_hat);
        REQUIRE(std::abs(V.back() - bv) <= 1e-8);
        const auto W = apply_T_tau(U, dz, params);
        for (std::size_t j = 0; j < V.size(); ++j) worst_route = std::max(worst_route, std::abs(V[j] - W[j]));
    }
    CHECK(worst_route <= 1e-6);
}
