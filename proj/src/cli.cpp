#include "sharpfront/cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

#include "sharpfront/csv.hpp"
#include "sharpfront/diagnostics.hpp"
#include "sharpfront/hyperbolic.hpp"
#include "sharpfront/travelingwave.hpp"

namespace fs = std::filesystem;

namespace sharpfront {

namespace {

std::ofstream open_out(const fs::path& p) {
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    return f;
}

std::string time_label(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", t);
    return buf;
}

const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

struct SimOutcome {
    double speed_beta0 = std::nan("");
    double jump = std::nan("");
};

SimOutcome simulate_into(const ExperimentConfig& config, const fs::path& out, std::ostream& log) {
    const ModelParams params = make_params(config.sigma, config.chi);
    const RunResult res = run(config);
    fs::create_directories(out);

    {
        auto f = open_out(out / "trace.csv");
        res.trace.write_csv(f);
    }
    const NeumannResolvent R(res.final.u.grid, params.sigma);
    for (const Field& snap : res.snapshots) {
        auto f = open_out(out / ("snapshot_t" + time_label(snap.time) + ".csv"));
        const std::vector<double> p = R.solve(snap.values);
        f << "x,u,p\n";
        for (int i = 0; i < snap.grid.M; ++i)
            f << num17(snap.grid.center(i)) << ',' << num17(snap.values[i]) << ',' << num17(p[i])
              << '\n';
    }

    const LevelSetTrace& tr = res.trace;
    auto f = open_out(out / "summary.meta");
    SimOutcome o;
    f << "schema_version=1\n"
      << "ic=" << config.ic.name() << '\n'
      << "sigma=" << num17(config.sigma) << '\n'
      << "chi=" << num17(config.chi) << '\n'
      << "chi_hat=" << num17(params.chi_hat) << '\n'
      << "assumption3_ok=" << (params.assumption3_ok ? "true" : "false") << '\n'
      << "M=" << config.M << '\n'
      << "L=" << num17(config.L) << '\n'
      << "cfl=" << num17(config.cfl) << '\n'
      << "T_final=" << num17(config.T_final) << '\n'
      << "t1=" << num17(config.t1) << '\n'
      << "t2=" << num17(config.t2) << '\n';
    for (double b : config.betas) {
        try {
            const SpeedEstimate s = propagation_speed(tr, b, config.t1, config.t2);
            f << "speed_beta_" << beta_label(b) << '=' << num17(s.value) << '\n';
            if (s.interpolated) f << "speed_beta_" << beta_label(b) << "_interpolated=true\n";
            if (b == 0.0) o.speed_beta0 = s.value;
            log << "speed(beta=" << beta_label(b) << ") = " << s.value << '\n';
        } catch (const InvalidParameter& e) {
            f << "speed_beta_" << beta_label(b) << "=nan\n";
        }
    }
    o.jump = tr.jump.empty() ? std::nan("") : tr.jump.back();
    const double slack = 0.05;
    const bool jump_ok = o.jump >= params.jump_bound() - slack;
    f << "final_jump=" << num17(o.jump) << '\n'
      << "jump_bound=" << num17(params.jump_bound()) << '\n'
      << "jump_verdict=" << verdict(jump_ok) << '\n';
    if (std::isfinite(o.speed_beta0)) {
        const bool sp_ok = o.speed_beta0 >= params.speed_lower() - 0.02 &&
                           o.speed_beta0 <= params.max_speed() + 0.02;
        f << "speed_lower_bound=" << num17(params.speed_lower()) << '\n'
          << "speed_upper_bound=" << num17(params.max_speed()) << '\n'
          << "speed_verdict=" << verdict(sp_ok) << '\n';
    }
    const double m0 = tr.mass.front(), m1 = tr.mass.back();
    f << "mass_initial=" << num17(m0) << '\n'
      << "mass_final=" << num17(m1) << '\n'
      << "mass_drift_rel=" << num17(std::abs(m1 - m0) / std::max(m0, 1e-300)) << '\n'
      << "min_u=" << num17(res.min_u) << '\n'
      << "max_u=" << num17(res.max_u) << '\n'
      << "invariant_region_verdict=" << verdict(res.min_u >= -1e-12 && res.max_u <= 1 + 1e-12)
      << '\n'
      << "max_abs_velocity=" << num17(res.max_abs_velocity) << '\n'
      << "min_dt=" << num17(res.min_dt) << '\n';
    if (!tr.separatrix.empty() && std::isfinite(tr.separatrix.front())) {
        f << "separatrix_final=" << num17(tr.separatrix.back()) << '\n'
          << "separatrix_max_rate=" << num17(res.max_separatrix_rate) << '\n'
          << "separatrix_rate_verdict="
          << verdict(res.max_separatrix_rate <= params.max_speed() + 1e-6) << '\n'
          << "levelset_above_separatrix_samples="
          << levelset_separatrix_violations(tr, tr.dx) << '\n';
        for (double b : config.betas) {
            if (b == 0.0) continue;
            const GapFit g = gap_decay(tr, b, 0.0, config.T_final);
            f << "gap_rate_beta_" << beta_label(b) << '=' << num17(g.rate) << '\n'
              << "gap_fit_samples_beta_" << beta_label(b) << '=' << g.used << '\n'
              << "gap_fit_restricted_beta_" << beta_label(b) << '='
              << (g.restricted ? "true" : "false") << '\n';
        }
    }
    if (res.separatrix_note) f << "separatrix_note=" << *res.separatrix_note << '\n';
    log << "final jump = " << o.jump << " (bound " << params.jump_bound() << ")\n"
        << "mass drift (relative) = " << std::abs(m1 - m0) / std::max(m0, 1e-300) << '\n';
    return o;
}

}  // namespace

fs::path resolve_output_dir(const ExperimentConfig& config, const std::optional<std::string>& cli_out) {
    if (cli_out && !cli_out->empty()) return *cli_out;
    if (!config.output_dir.empty()) return config.output_dir;
    if (const char* env = std::getenv("SHARPFRONT_OUT"); env && *env) return env;
    return "out";
}

int cmd_simulate(const ExperimentConfig& config, const fs::path& out) {
    try {
        simulate_into(config, out, std::cout);
        std::cout << "wrote " << out.string() << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "simulate failed: " << e.what() << '\n';
        return 1;
    }
}

int cmd_wave(const ExperimentConfig& config, const fs::path& out, std::optional<std::uint64_t> seed) {
    try {
        const ModelParams params = make_params(config.sigma, config.chi);
        const double chibar = find_chibar();
        if (!params.assumption3_ok)
            std::cerr << "warning: chi_hat = " << params.chi_hat << " >= chibar = " << chibar
                      << "; the wave may not exist and the iteration may not converge\n";
        fs::create_directories(out);
        WaveProfile w;
        try {
            w = fixed_point(params, config.wave_dz, config.wave_Z * config.sigma, config.wave_tol,
                            config.wave_max_iter, config.wave_eta);
        } catch (const NonConvergence& e) {
            const fs::path hist = out / "residual_history.csv";
            auto f = open_out(hist);
            f << "iteration,residual_eta\n";
            for (std::size_t k = 0; k < e.history().size(); ++k)
                f << k + 1 << ',' << num17(e.history()[k]) << '\n';
            std::cerr << e.what() << "\nresidual history: " << hist.string() << '\n';
            return 2;
        }
        {
            auto f = open_out(out / "profile.csv");
            w.write_csv(f);
        }
        {
            auto f = open_out(out / "profile.meta");
            w.write_meta(f, chibar);
        }
        const WaveSpeed ws = wave_speed(w);
        const bool in_interval = w.c > params.speed_lower() && w.c < params.speed_upper();
        std::printf("c = %.12f (quadrature %.12f)\n", ws.c, ws.c_quadrature);
        std::printf("U(0-) = %.12f (bound 2/(2+chi_hat) = %.12f)\n", w.U0minus, params.jump_bound());
        std::printf("interval (%.6f, %.6f): %s\n", params.speed_lower(), params.speed_upper(),
                    in_interval ? "inside" : "outside");
        std::printf("iterations = %d, residual_eta = %.3e\n", w.iterations, w.residual_eta);

        if (seed) {
            std::mt19937_64 rng(*seed);
            double worst = 0.0;
            for (int k = 0; k < 5; ++k) {
                const auto U = random_admissible_profile(w.z, params, rng);
                const auto a = apply_T_ode(U, w.dz, params);
                const auto b = apply_T_tau(U, w.dz, params);
                for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
            }
            std::printf("randomized route check (seed %llu): max |T_ode - T_tau| = %.3e\n",
                        static_cast<unsigned long long>(*seed), worst);
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "wave failed: " << e.what() << '\n';
        return 1;
    }
}

ExperimentConfig sweep_entry(const ExperimentConfig& base, const std::string& param, double value) {
    ExperimentConfig c = base;
    if (param == "alpha") {
        if (c.ic.kind != IcKind::Sigmoid) c.ic = InitialCondition::sigmoid(value, c.ic.x0);
        c.ic.alpha = value;
    } else if (param == "sigma2") {
        if (!(value > 0.0)) throw InvalidParameter("sweep.values: sigma2 must be positive");
        c.sigma = std::sqrt(value);
    } else if (param == "sigma") {
        c.sigma = value;
    } else if (param == "chi") {
        c.chi = value;
    } else if (param == "M") {
        c.M = static_cast<int>(std::lround(value));
    } else {
        throw InvalidParameter("sweep.param: expected alpha, sigma2, sigma, chi or M");
    }
    c.validate();
    return c;
}

int cmd_sweep(const ExperimentConfig& config, const fs::path& out, int workers) {
    const SweepSpec& sw = config.sweep;
    if (sw.values.empty()) {
        std::cerr << "sweep failed: key 'sweep.values' must not be empty\n";
        return 1;
    }
    try {
        sweep_entry(config, sw.param, sw.values.front());
    } catch (const std::exception& e) {
        std::cerr << "sweep failed: " << e.what() << '\n';
        return 1;
    }
    fs::create_directories(out);
    const std::size_t n = sw.values.size();
    struct Row {
        double speed = std::nan(""), jump = std::nan(""), c_wave = std::nan("");
        std::string error;
    };
    std::vector<Row> rows(n);
    std::atomic<std::size_t> next{0};
    std::mutex log_mu;

    auto worker = [&] {
        for (std::size_t k = next++; k < n; k = next++) {
            Row& r = rows[k];
            try {
                const ExperimentConfig c = sweep_entry(config, sw.param, sw.values[k]);
                const fs::path dir = out / (sw.param + "_" + time_label(sw.values[k]));
                std::ostringstream log;
                const SimOutcome o = simulate_into(c, dir, log);
                r.speed = o.speed_beta0;
                r.jump = o.jump;
                if (sw.with_wave) {
                    const ModelParams p = make_params(c.sigma, c.chi);
                    try {
                        r.c_wave = fixed_point(p, c.wave_dz, c.wave_Z * c.sigma, c.wave_tol,
                                               c.wave_max_iter, c.wave_eta).c;
                    } catch (const std::exception& e) {
                        r.error = std::string("wave: ") + e.what();
                    }
                }
                std::lock_guard lk(log_mu);
                std::cout << sw.param << '=' << sw.values[k] << ": speed_beta0=" << r.speed
                          << " jump=" << r.jump << '\n';
            } catch (const std::exception& e) {
                r.error = e.what();
                std::lock_guard lk(log_mu);
                std::cerr << sw.param << '=' << sw.values[k] << " failed: " << e.what() << '\n';
            }
        }
    };
    const int nw = std::max(1, std::min<int>(workers, static_cast<int>(n)));
    std::vector<std::thread> pool;
    for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::size_t failed = 0;
    {
        auto f = open_out(out / "sweep.csv");
        f << "param,value,speed_beta0,jump,c_wave\n";
        for (std::size_t k = 0; k < n; ++k)
            f << sw.param << ',' << num17(sw.values[k]) << ',' << num17(rows[k].speed) << ','
              << num17(rows[k].jump) << ',' << num17(rows[k].c_wave) << '\n';
    }
    {
        auto f = open_out(out / "sweep.meta");
        for (std::size_t k = 0; k < n; ++k) {
            if (!rows[k].error.empty()) {
                f << "error_" << k << '=' << rows[k].error << '\n';
                if (!std::isfinite(rows[k].speed)) ++failed;
            }
            if (sw.param == "sigma2" || sw.param == "sigma")
                f << "distance_to_porous_speed_" << k << '='
                  << num17(std::abs(rows[k].speed - 1.0 / std::sqrt(2.0))) << '\n';
        }
    }
    if (sw.param == "sigma2" || sw.param == "sigma")
        for (std::size_t k = 0; k < n; ++k)
            std::cout << "distance to 1/sqrt(2) at " << sw.values[k] << ": "
                      << std::abs(rows[k].speed - 1.0 / std::sqrt(2.0)) << '\n';
    return failed == n ? 1 : 0;
}

int cmd_chibar(const fs::path& out) {
    try {
        const double cb = find_chibar();
        std::printf("chibar = %.12f\n", cb);
        std::printf("f(1) = %.12f\n", f_appendix(1.0));
        fs::create_directories(out);
        auto f = open_out(out / "f_table.csv");
        f << "x,f\n";
        for (int k = 0; k < 50; ++k) {
            const double x = 0.02 + (1.98 - 0.02) * k / 49.0;
            f << num17(x) << ',' << num17(f_appendix(x)) << '\n';
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "chibar failed: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace sharpfront
