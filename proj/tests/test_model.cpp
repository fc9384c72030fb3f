#include <doctest.h>

#include <cmath>
#include <vector>

#include "sharpfront/model.hpp"
#include "support.hpp"

using namespace sharpfront;

TEST_CASE("make_params derives chi_hat and the Assumption 3 flag") {
    const auto p = make_params(1.0, 1.0);
    CHECK(p.chi_hat == 1.0);
    CHECK(p.assumption3_ok);

    CHECK(make_params(2.0, 1.0).chi_hat == doctest::Approx(0.25).epsilon(1e-15));

    // chibar from an independent bisection on f is about 1.045
    const double chibar = oracle::bisect_chibar();
    const auto q = make_params(1.0, 1.2);
    CHECK(q.chi_hat == 1.2);
    CHECK(q.assumption3_ok == (1.2 < chibar));
    CHECK_FALSE(q.assumption3_ok);

    CHECK_THROWS_AS(make_params(0.0, 1.0), InvalidParameter);
    CHECK_THROWS_AS(make_params(1.0, -1.0), InvalidParameter);
}

TEST_CASE("chi_hat is chi / sigma^2 for stored fields") {
    for (double s : {0.1, 0.3, 1.0, 2.5})
        for (double c : {0.2, 1.0, 3.0}) {
            const auto p = make_params(s, c);
            CHECK(p.chi_hat == c / (s * s));
        }
}

TEST_CASE("grid geometry") {
    const auto g = make_grid(20.0, 2000);
    CHECK(g.dx * g.M == doctest::Approx(40.0).epsilon(1e-15));
    for (int i = 0; i + 1 < g.M; ++i) REQUIRE(g.center(i + 1) > g.center(i));
    for (int i = 0; i < g.M; ++i) REQUIRE(std::abs(g.center(i) + g.center(g.M - 1 - i)) < 1e-12);
    CHECK_THROWS_AS(make_grid(20.0, 1), InvalidParameter);
}

TEST_CASE("eval_ic closed forms") {
    const auto poly = InitialCondition::polynomial();
    CHECK(eval_ic(poly, -20.0) == doctest::Approx(1.0));
    CHECK(eval_ic(poly, 0.0) == 0.0);
    CHECK(eval_ic(poly, -17.5) == doctest::Approx(0.25));

    const auto sig = InitialCondition::sigmoid(5.0);
    CHECK(eval_ic(sig, -15.0) == doctest::Approx(0.5));
    CHECK(eval_ic(InitialCondition::sigmoid(1.0), -14.0) ==
          doctest::Approx(1.0 / (1.0 + std::exp(1.0))));

    const auto r1 = InitialCondition::ramp();
    CHECK(eval_ic(r1, -20.0) == doctest::Approx(1.0));
    CHECK(eval_ic(r1, -17.5) == doctest::Approx(0.5));
    CHECK(eval_ic(r1, -15.0) == doctest::Approx(0.0));

    const auto r2 = InitialCondition::plateau_ramp();
    CHECK(eval_ic(r2, -18.0) == 1.0);
    CHECK(eval_ic(r2, -16.25) == doctest::Approx(0.5));
}

TEST_CASE("initial conditions stay in [0,1] and phi1 <= phi2") {
    const InitialCondition ics[] = {InitialCondition::polynomial(), InitialCondition::ramp(),
                                    InitialCondition::plateau_ramp(), InitialCondition::sigmoid(1.0),
                                    InitialCondition::sigmoid(5.0)};
    for (int k = 0; k <= 40000; ++k) {
        const double x = -20.0 + k * 1e-3;
        for (const auto& ic : ics) {
            const double v = eval_ic(ic, x);
            REQUIRE(v >= 0.0);
            REQUIRE(v <= 1.0);
        }
        REQUIRE(eval_ic(InitialCondition::ramp(), x) <= eval_ic(InitialCondition::plateau_ramp(), x));
    }
}

TEST_CASE("kernel_rho values and mass") {
    CHECK(kernel_rho(0.0, 1.0) == 0.5);
    CHECK(kernel_rho(std::log(2.0), 1.0) == doctest::Approx(0.25).epsilon(1e-14));
    for (double s : {0.1, 1.0, 3.0}) {
        // Simpson on each side of the kink at 0
        const auto f = [s](double x) { return kernel_rho(x, s); };
        const double mass = oracle::simpson(f, -40 * s, 0.0, 200000) + oracle::simpson(f, 0.0, 40 * s, 200000);
        CHECK(std::abs(mass - 1.0) < 1e-12);
    }
    for (double x : {0.1, 1.0, 7.0}) {
        CHECK(kernel_rho(x, 1.3) == kernel_rho(-x, 1.3));
        CHECK(kernel_rho(x, 1.3) < kernel_rho(0.0, 1.3));
        CHECK(kernel_rho(x, 1.3) > 0.0);
    }
}

TEST_CASE("norm_eta examples") {
    std::vector<double> z, one, zero;
    for (int j = 0; j <= 20000; ++j) z.push_back(-20.0 + j * 1e-3);
    one.assign(z.size(), 1.0);
    zero.assign(z.size(), 0.0);
    // max of sqrt(-z) e^{z/2} is 1/sqrt(2 e eta) at z = -1
    CHECK(norm_eta(z, one, 0.5, 1.0) == doctest::Approx(1.0 / std::sqrt(2.0 * std::exp(1.0) * 0.5)).epsilon(1e-9));
    CHECK(norm_eta(z, zero, 0.5, 1.0) == 0.0);

    std::vector<double> delta(z.size(), 0.0);
    const std::size_t k4 = 16000;  // z = -4
    REQUIRE(std::abs(z[k4] + 4.0) < 1e-12);
    delta[k4] = 2.0;
    CHECK(norm_eta(z, delta, 0.25, 1.0) == doctest::Approx(4.0 / std::exp(1.0)).epsilon(1e-12));

    CHECK_THROWS_AS(norm_eta(z, one, 0.0, 1.0), InvalidParameter);
    CHECK_THROWS_AS(norm_eta(z, one, 1.0, 1.0), InvalidParameter);
    CHECK_THROWS_AS(norm_eta(z, one, 0.6, 2.0), InvalidParameter);
}

TEST_CASE("norm_eta skips z = 0 and the left end") {
    std::vector<double> z{-3.0, -2.0, -1.0, 0.0};
    std::vector<double> v{100.0, 0.0, 0.0, 100.0};
    CHECK(norm_eta(z, v, 0.5, 1.0) == 0.0);
}
