#include "sharpfront/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sharpfront {

namespace {

constexpr double kBoundTol = 1e-12;

void refresh(SchemeState& s, const NeumannResolvent& R, const ModelParams& params) {
    s.p.grid = s.u.grid;
    s.p.time = s.u.time;
    s.p.values.resize(s.u.values.size());
    R.solve(s.u.values, s.p.values);
    s.v.resize(s.u.values.size() + 1);
    staggered_velocity(s.p.values, s.u.grid.dx, params.chi, s.v);
}

}  // namespace

SchemeState make_state(Field u, const NeumannResolvent& R, const ModelParams& params) {
    if (static_cast<int>(u.values.size()) != u.grid.M)
        throw InvalidParameter("make_state: field size does not match grid");
    SchemeState s;
    s.u = std::move(u);
    refresh(s, R, params);
    return s;
}

SchemeState make_state(Field u, const ModelParams& params) {
    NeumannResolvent R(u.grid, params.sigma);
    return make_state(std::move(u), R, params);
}

double cfl_dt(const SchemeState& state, double cfl, double dt_max) {
    if (!(cfl > 0.0 && cfl <= 1.0)) throw InvalidParameter("cfl must lie in (0, 1]");
    if (!(dt_max > 0.0)) throw InvalidParameter("dt_max must be positive");
    double vmax = 0.0;
    for (double v : state.v) vmax = std::max(vmax, std::abs(v));
    // reaction slope bound is 1 on [0,1]
    double dt = std::min(dt_max, cfl);
    if (vmax > 0.0) dt = std::min(dt, cfl * state.u.grid.dx / vmax);
    return dt;
}

SchemeState step(const SchemeState& state, double dt, const ModelParams& params,
                 const NeumannResolvent& R, bool reaction) {
    if (!(dt > 0.0)) throw InvalidParameter("step: dt must be positive");
    const auto& u = state.u.values;
    const auto& v = state.v;
    const int M = state.u.grid.M;
    const double lam = dt / state.u.grid.dx;

    SchemeState next;
    next.u.grid = state.u.grid;
    next.u.time = state.u.time + dt;
    next.u.values.resize(M);
    next.step_count = state.step_count + 1;
    next.dt_last = dt;

    double g_left = 0.0;  // boundary face carries no flux
    for (int i = 0; i < M; ++i) {
        const double g_right = (i + 1 < M) ? upwind_flux(u[i], u[i + 1], v[i + 1]) : 0.0;
        double val = u[i] - lam * (g_right - g_left);
        if (reaction) val += dt * u[i] * (1.0 - u[i]);
        if (!(val >= -kBoundTol && val <= 1.0 + kBoundTol)) {
            std::ostringstream msg;
            msg << "step left [0,1]: u[" << i << "] = " << val << " at t = " << next.u.time
                << " (dt = " << dt << "); reduce cfl";
            throw CflViolation(msg.str());
        }
        next.u.values[i] = val;
        g_left = g_right;
    }
    refresh(next, R, params);
    return next;
}

SchemeState step(const SchemeState& state, double dt, const ModelParams& params, bool reaction) {
    NeumannResolvent R(state.u.grid, params.sigma);
    return step(state, dt, params, R, reaction);
}

double total_mass(const Field& u) {
    double s = 0.0;
    for (double x : u.values) s += x;
    return s * u.grid.dx;
}

RunResult run(const ExperimentConfig& config) {
    config.validate();
    const Grid1D grid = make_grid(config.L, config.M);
    const Field u0 = sample_ic(config.ic, grid);
    std::optional<double> h0;
    if (config.track_separatrix) h0 = config.ic.support_edge();
    return run(config, u0, h0);
}

RunResult run(const ExperimentConfig& config, const Field& u0, std::optional<double> h0) {
    const ModelParams params = make_params(config.sigma, config.chi);
    const Grid1D& grid = u0.grid;
    const NeumannResolvent R(grid, params.sigma);

    RunResult res;
    res.trace.dx = grid.dx;
    res.trace.levels = config.betas;
    res.min_dt = std::numeric_limits<double>::infinity();
    res.min_u = *std::min_element(u0.values.begin(), u0.values.end());
    res.max_u = *std::max_element(u0.values.begin(), u0.values.end());

    std::optional<SeparatrixTracker> tracker;
    if (h0) tracker.emplace(grid, params, *h0, config.separatrix_mode);

    SchemeState s = make_state(u0, R, params);
    const double T = config.T_final;
    const double eps = 1e-12 * std::max(1.0, T);

    std::vector<double> snaps = config.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    std::size_t next_snap = 0;
    long sample_k = 0;
    auto next_sample_time = [&] {
        return config.sample_interval > 0.0 ? sample_k * config.sample_interval
                                            : std::numeric_limits<double>::infinity();
    };

    auto record = [&](double t) {
        LevelSetTrace& tr = res.trace;
        tr.times.push_back(t);
        tr.mass.push_back(total_mass(s.u));
        std::vector<double> row;
        for (double b : config.betas) {
            if (b == 0.0) {
                row.push_back(front_zero(s.u, config.front_threshold));
            } else {
                auto x = level_set(s.u, b);
                row.push_back(x ? *x : std::nan(""));
            }
        }
        tr.xi.push_back(std::move(row));
        const double h = tracker ? tracker->position() : std::nan("");
        tr.separatrix.push_back(h);
        const double front = tracker ? h : front_zero(s.u, config.front_threshold);
        auto j = jump_height(s.u, front, config.jump_window);
        tr.jump.push_back(j ? *j : std::nan(""));
    };

    auto handle_events = [&](double t) {
        while (sample_k * config.sample_interval <= t + eps && config.sample_interval > 0.0 &&
               sample_k * config.sample_interval <= T + eps) {
            record(t);
            ++sample_k;
        }
        while (next_snap < snaps.size() && snaps[next_snap] <= t + eps) {
            if (snaps[next_snap] <= T + eps) res.snapshots.push_back(s.u);
            ++next_snap;
        }
    };

    double t = u0.time;
    while (sample_k * config.sample_interval < t - eps && config.sample_interval > 0.0) ++sample_k;
    handle_events(t);

    while (t < T - eps) {
        double target = T;
        target = std::min(target, next_sample_time());
        if (next_snap < snaps.size()) target = std::min(target, snaps[next_snap]);

        double dt = cfl_dt(s, config.cfl, config.dt_max);
        for (double v : s.v) res.max_abs_velocity = std::max(res.max_abs_velocity, std::abs(v));
        if (res.max_abs_velocity > params.max_speed() * (1.0 + 1e-9))
            throw InternalConsistency("face velocity exceeds chi/(2 sigma)");
        bool hit = false;
        if (t + dt >= target - eps) {
            dt = target - t;
            hit = true;
        }
        res.min_dt = std::min(res.min_dt, dt);

        if (tracker) {
            try {
                tracker->advance(s.u.values, s.v, dt);
            } catch (const DomainExit& e) {
                res.separatrix_note = e.what();
                res.max_separatrix_rate = std::max(res.max_separatrix_rate, tracker->max_rate());
                tracker.reset();
            }
        }
        s = step(s, dt, params, R, config.reaction);
        t = hit ? target : t + dt;
        s.u.time = t;
        s.p.time = t;
        for (double x : s.u.values) {
            res.min_u = std::min(res.min_u, x);
            res.max_u = std::max(res.max_u, x);
        }
        handle_events(t);
    }
    if (tracker) res.max_separatrix_rate = std::max(res.max_separatrix_rate, tracker->max_rate());
    if (!std::isfinite(res.min_dt)) res.min_dt = 0.0;
    res.final = std::move(s);
    return res;
}

}  // namespace sharpfront
