#include "sharpfront/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sharpfront/csv.hpp"
#include "sharpfront/hyperbolic.hpp"
#include "sharpfront/travelingwave.hpp"

namespace sharpfront {

std::size_t LevelSetTrace::level_index(double beta) const {
    for (std::size_t b = 0; b < levels.size(); ++b)
        if (std::abs(levels[b] - beta) < 1e-9) return b;
    throw InvalidParameter("level " + beta_label(beta) + " is not in the trace");
}

void LevelSetTrace::write_csv(std::ostream& os) const {
    os << "t,mass,separatrix,jump";
    for (double b : levels) os << ",xi_" << beta_label(b);
    os << '\n';
    for (std::size_t k = 0; k < times.size(); ++k) {
        os << num17(times[k]) << ',' << num17(mass[k]) << ',' << num17(separatrix[k]) << ','
           << num17(jump[k]);
        for (double x : xi[k]) os << ',' << num17(x);
        os << '\n';
    }
}

std::optional<double> level_set(const Field& u, double beta) {
    const auto& v = u.values;
    const int M = static_cast<int>(v.size());
    for (int i = M - 2; i >= 0; --i) {
        if (v[i] >= beta && v[i + 1] < beta) {
            const double th = (v[i] - beta) / (v[i] - v[i + 1]);
            return u.grid.center(i) + th * u.grid.dx;
        }
    }
    // everything at or above beta up to the last cell
    if (M > 0 && v[M - 1] >= beta) return u.grid.L;
    return std::nullopt;
}

double front_zero(const Field& u, double threshold) {
    for (int i = static_cast<int>(u.values.size()) - 1; i >= 0; --i)
        if (u.values[i] > threshold) return u.grid.center(i) + 0.5 * u.grid.dx;
    return -u.grid.L;
}

namespace {

double value_at(const LevelSetTrace& tr, std::size_t b, double t, bool& interp) {
    const auto& ts = tr.times;
    if (ts.empty()) throw InvalidParameter("empty trace");
    const double eps = 1e-9 * std::max(1.0, std::abs(t));
    auto it = std::lower_bound(ts.begin(), ts.end(), t - eps);
    if (it != ts.end() && std::abs(*it - t) <= eps) return tr.xi[it - ts.begin()][b];
    if (it == ts.begin() || it == ts.end())
        throw InvalidParameter("time outside the sampled range");
    interp = true;
    const std::size_t k = it - ts.begin();
    const double w = (t - ts[k - 1]) / (ts[k] - ts[k - 1]);
    return (1 - w) * tr.xi[k - 1][b] + w * tr.xi[k][b];
}

}  // namespace

SpeedEstimate propagation_speed(const LevelSetTrace& trace, double beta, double t1, double t2) {
    if (!(t1 < t2)) throw InvalidParameter("propagation_speed: need t1 < t2");
    const std::size_t b = trace.level_index(beta);
    SpeedEstimate s;
    const double x1 = value_at(trace, b, t1, s.interpolated);
    const double x2 = value_at(trace, b, t2, s.interpolated);
    s.value = (x2 - x1) / (t2 - t1);
    return s;
}

SeparatrixTracker::SeparatrixTracker(const Grid1D& grid, const ModelParams& params, double h0,
                                     SeparatrixMode mode)
    : grid_(grid),
      params_(params),
      resolvent_(grid, params.sigma),
      mode_(mode),
      h_(h0),
      w_(grid.M),
      q_(grid.M) {
    if (h0 < -grid.L || h0 > grid.L) throw DomainExit("separatrix start outside the domain");
}

double SeparatrixTracker::velocity_at(std::span<const double> u,
                                      std::span<const double> face_velocity, double h) const {
    if (h < -grid_.L || h > grid_.L) {
        std::ostringstream msg;
        msg << "separatrix left the domain (h = " << h << ")";
        throw DomainExit(msg.str());
    }
    const int M = grid_.M;
    const double s = (h + grid_.L) / grid_.dx;
    const int k = std::clamp(static_cast<int>(std::floor(s)), 0, M - 1);
    const double th = s - k;

    if (mode_ == SeparatrixMode::Plain)
        return (1 - th) * face_velocity[k] + th * face_velocity[k + 1];

    // pressure of the part of u behind h
    for (int i = 0; i < M; ++i) w_[i] = std::clamp(s - i, 0.0, 1.0) * u[i];
    resolvent_.solve(w_, q_);
    auto g = [&](int f) {
        if (f <= 0 || f >= M) return 0.0;
        return -params_.chi * (q_[f] - q_[f - 1]) / grid_.dx;
    };
    return (1 - th) * g(k) + th * g(k + 1);
}

double SeparatrixTracker::advance(std::span<const double> u,
                                  std::span<const double> face_velocity, double dt) {
    const double v0 = velocity_at(u, face_velocity, h_);
    const double hm = h_ + 0.5 * dt * v0;
    const double rate = velocity_at(u, face_velocity, hm);
    const double hn = h_ + dt * rate;
    if (hn < -grid_.L || hn > grid_.L) {
        std::ostringstream msg;
        msg << "separatrix left the domain (h = " << hn << ")";
        throw DomainExit(msg.str());
    }
    h_ = hn;
    if (steps_ == 0) {
        max_rate_ = rate;
        min_rate_ = rate;
    } else {
        max_rate_ = std::max(max_rate_, rate);
        min_rate_ = std::min(min_rate_, rate);
    }
    ++steps_;
    return rate;
}

SeparatrixSeries track_separatrix(const Field& u0, const ModelParams& params, double h0,
                                  double T, double cfl, double dt_max, SeparatrixMode mode) {
    const NeumannResolvent R(u0.grid, params.sigma);
    SchemeState s = make_state(u0, R, params);
    SeparatrixTracker tr(u0.grid, params, h0, mode);
    SeparatrixSeries out;
    double t = u0.time;
    out.times.push_back(t);
    out.h.push_back(h0);
    while (t < T - 1e-12) {
        double dt = std::min(cfl_dt(s, cfl, dt_max), T - t);
        tr.advance(s.u.values, s.v, dt);
        s = step(s, dt, params, R);
        t += dt;
        out.times.push_back(t);
        out.h.push_back(tr.position());
    }
    out.max_rate = tr.max_rate();
    return out;
}

std::optional<double> jump_height(const Field& u, double front, int K) {
    if (K < 1) throw InvalidParameter("jump window must be positive");
    const Grid1D& g = u.grid;
    if (!(front > -g.L) || front >= g.L) return std::nullopt;
    // last cell whose centre is strictly left of front
    int last = static_cast<int>(std::ceil((front + g.L) / g.dx - 0.5)) - 1;
    last = std::min(last, g.M - 1);
    if (last < 0) return std::nullopt;
    double m = 0.0;
    for (int i = std::max(0, last - K + 1); i <= last; ++i) m = std::max(m, u.values[i]);
    return m;
}

GapFit gap_decay(const LevelSetTrace& trace, double beta, double t_from, double t_to) {
    const std::size_t b = trace.level_index(beta);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<std::pair<double, double>> pts;
    GapFit fit;
    for (std::size_t k = 0; k < trace.times.size(); ++k) {
        const double t = trace.times[k];
        if (t < t_from || t > t_to) continue;
        const double gap = trace.separatrix[k] - trace.xi[k][b];
        if (!(gap > trace.dx)) {
            fit.restricted = true;
            continue;
        }
        pts.emplace_back(t, std::log(gap));
    }
    fit.used = static_cast<int>(pts.size());
    if (fit.used < 2) {
        fit.rate = std::nan("");
        return fit;
    }
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = fit.used;
    const double den = n * sxx - sx * sx;
    fit.rate = (n * sxy - sx * sy) / den;
    fit.intercept = (sy - fit.rate * sx) / n;
    double ss = 0;
    for (auto [x, y] : pts) {
        const double r = y - (fit.intercept + fit.rate * x);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

SmoothSpeedCheck smooth_speed_check(const WaveProfile& profile) {
    SmoothSpeedCheck out;
    out.margin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < profile.Pprime.size(); ++j) {
        const double m = profile.c + profile.chi * profile.Pprime[j];
        if (m < out.margin) {
            out.margin = m;
            out.argmin = j;
        }
    }
    out.ok = out.margin > 0.0;
    return out;
}

int levelset_separatrix_violations(const LevelSetTrace& trace, double slack) {
    int bad = 0;
    for (std::size_t k = 0; k < trace.times.size(); ++k) {
        const double h = trace.separatrix[k];
        if (!std::isfinite(h)) continue;
        for (std::size_t b = 0; b < trace.levels.size(); ++b) {
            if (trace.levels[b] <= 0.0) continue;
            const double x = trace.xi[k][b];
            if (std::isfinite(x) && x > h + slack) {
                ++bad;
                break;
            }
        }
    }
    return bad;
}

}  // namespace sharpfront
