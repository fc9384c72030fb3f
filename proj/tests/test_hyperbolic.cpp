#include <doctest.h>

#include <cmath>
#include <vector>

#include "sharpfront/hyperbolic.hpp"

using namespace sharpfront;

TEST_CASE("upwind flux picks the upstream cell") {
    CHECK(upwind_flux(0.8, 0.2, 0.5) == doctest::Approx(0.4));
    CHECK(upwind_flux(0.8, 0.2, -0.5) == doctest::Approx(-0.1));
    CHECK(upwind_flux(0.3, 0.9, 0.0) == 0.0);
}

TEST_CASE("cfl_dt") {
    const auto g = make_grid(1.0, 100);  // dx = 0.02
    SchemeState s;
    s.u = Field{g, std::vector<double>(g.M, 0.0), 0.0};
    s.v.assign(g.M + 1, 0.0);
    CHECK(cfl_dt(s, 0.5, 0.1) == doctest::Approx(0.1));
    s.v[40] = -0.5;
    s.v[41] = 0.2;
    CHECK(cfl_dt(s, 0.9, 1.0) == doctest::Approx(0.036));
    CHECK_THROWS_AS(cfl_dt(s, 1.5, 1.0), InvalidParameter);
}

TEST_CASE("velocities never exceed chi/(2 sigma), so dt stays above cfl dx/0.5") {
    const auto params = make_params(1.0, 1.0);
    const auto g = make_grid(20.0, 2000);
    SchemeState s = make_state(sample_ic(InitialCondition::polynomial(), g), params);
    const NeumannResolvent R(g, 1.0);
    for (int n = 0; n < 2000; ++n) {
        for (double v : s.v) REQUIRE(std::abs(v) <= 0.5);
        const double dt = cfl_dt(s, 0.9, 0.1);
        REQUIRE(dt >= 0.9 * g.dx / 0.5 - 1e-15);
        s = step(s, dt, params, R);
    }
}

TEST_CASE("equilibria are steady") {
    const auto params = make_params(1.0, 1.0);
    const auto g = make_grid(10.0, 200);
    for (double c : {0.0, 1.0}) {
        SchemeState s = make_state(Field{g, std::vector<double>(g.M, c), 0.0}, params);
        for (int n = 0; n < 50; ++n) s = step(s, cfl_dt(s, 0.9, 0.1), params);
        // p = 1 comes back from the solver only up to a few ulps
        for (double v : s.u.values) CHECK(std::abs(v - c) <= 1e-13);
        CHECK(s.step_count == 50);
    }
}

TEST_CASE("reaction off conserves mass") {
    const auto params = make_params(1.0, 1.0);
    const auto g = make_grid(20.0, 1000);
    SchemeState s = make_state(sample_ic(InitialCondition::plateau_ramp(), g), params);
    const double m0 = total_mass(s.u);
    double t = 0;
    for (int n = 0; n < 3000; ++n) {
        const double dt = cfl_dt(s, 0.9, 0.1);
        s = step(s, dt, params, false);
        t += dt;
        REQUIRE(std::abs(total_mass(s.u) - m0) <= 1e-13 * m0);
    }
    CHECK(s.u.time == doctest::Approx(t));
}

TEST_CASE("oversized steps are reported as CFL violations") {
    const auto params = make_params(1.0, 1.0);
    const auto g = make_grid(20.0, 2000);
    SchemeState s = make_state(sample_ic(InitialCondition::ramp(), g), params);
    for (int n = 0; n < 200; ++n) s = step(s, cfl_dt(s, 0.9, 0.1), params);
    CHECK_THROWS_AS(step(s, 50 * cfl_dt(s, 0.9, 0.1), params), CflViolation);
}

TEST_CASE("a uniform state above delta converges to 1 monotonically") {
    ExperimentConfig c;
    c.L = 10.0;
    c.M = 200;
    c.T_final = 10.0;
    c.t1 = 1.0;
    c.t2 = 10.0;
    c.snapshot_times = {0, 1, 2, 4, 6, 8, 10};
    c.track_separatrix = false;
    const auto g = make_grid(c.L, c.M);
    const auto res = run(c, Field{g, std::vector<double>(g.M, 0.3), 0.0}, std::nullopt);
    REQUIRE(res.snapshots.size() == 7);
    double prev = 1.0;
    for (const Field& f : res.snapshots) {
        double d = 0.0;
        for (double v : f.values) d = std::max(d, std::abs(v - 1.0));
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("run samples the trace and snapshots at the configured times") {
    ExperimentConfig c;
    c.M = 400;
    c.T_final = 5.0;
    c.t1 = 1.0;
    c.t2 = 5.0;
    c.sample_interval = 0.5;
    c.snapshot_times = {0.0, 2.5, 5.0};
    const auto res = run(c);
    REQUIRE(res.trace.times.size() == 11);
    for (std::size_t k = 0; k < res.trace.times.size(); ++k)
        CHECK(res.trace.times[k] == doctest::Approx(0.5 * k).epsilon(1e-12));
    REQUIRE(res.snapshots.size() == 3);
    CHECK(res.snapshots[1].time == doctest::Approx(2.5));
    CHECK(res.final.u.time == doctest::Approx(5.0));
}

TEST_CASE("nonincreasing initial data stays nonincreasing") {
    for (const auto& ic : {InitialCondition::polynomial(), InitialCondition::ramp(),
                           InitialCondition::plateau_ramp(), InitialCondition::sigmoid(2.0)}) {
        const auto params = make_params(1.0, 1.0);
        const auto g = make_grid(20.0, 1000);
        SchemeState s = make_state(sample_ic(ic, g), params);
        int created = 0;
        double t = 0;
        while (t < 30) {
            const double dt = cfl_dt(s, 0.9, 0.1);
            s = step(s, dt, params);
            t += dt;
            for (int i = 1; i < g.M; ++i)
                if (s.u.values[i] > s.u.values[i - 1] + 1e-10) ++created;
        }
        CHECK(created == 0);
    }
}

TEST_CASE("front speed under grid refinement") {
    // successive differences shrink
    std::vector<double> speeds;
    for (int M : {500, 1000, 2000, 4000}) {
        ExperimentConfig c;
        c.M = M;
        c.track_separatrix = false;
        c.snapshot_times.clear();
        const auto res = run(c);
        speeds.push_back(propagation_speed(res.trace, 0.0, 15, 40).value);
    }
    for (std::size_t k = 2; k < speeds.size(); ++k)
        CHECK(std::abs(speeds[k] - speeds[k - 1]) < std::abs(speeds[k - 1] - speeds[k - 2]));
}
