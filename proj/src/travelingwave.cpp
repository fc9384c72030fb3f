#include "sharpfront/travelingwave.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "sharpfront/csv.hpp"

namespace sharpfront {

namespace {

// cubic Hermite on [0,1] with slopes already scaled by the cell width
double hermite(double f0, double f1, double d0, double d1, double t) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * d0 + (-2 * t3 + 3 * t2) * f1 +
           (t3 - t2) * d1;
}

double hermite_mid(double f0, double f1, double d0, double d1) {
    return 0.5 * (f0 + f1) + 0.125 * (d0 - d1);
}

std::vector<double> second_derivative(std::span<const double> U, const PressurePair& pp,
                                      double sigma) {
    std::vector<double> out(U.size());
    for (std::size_t j = 0; j < U.size(); ++j) out[j] = (pp.P[j] - U[j]) / (sigma * sigma);
    return out;
}

void check_profile(std::span<const double> U, double dz) {
    if (U.size() < 4) throw InvalidParameter("profile needs at least 4 nodes");
    if (!(dz > 0.0)) throw InvalidParameter("dz must be positive");
}

}  // namespace

std::vector<double> wave_grid(double dz, double Z) {
    if (!(dz > 0.0) || !(Z > 0.0)) throw InvalidParameter("wave grid needs dz > 0 and Z > 0");
    const long N = std::lround(Z / dz);
    if (N < 3) throw InvalidParameter("wave grid too coarse");
    std::vector<double> z(N + 1);
    for (long j = 0; j <= N; ++j) z[j] = -double(N - j) * dz;
    return z;
}

Admissibility is_admissible(std::span<const double> U, const ModelParams& params, double tol) {
    Admissibility a;
    const double lo = params.jump_bound();
    auto fail = [&](std::size_t j, const std::string& why, double by) {
        if (a.ok || by > a.violation) {
            if (a.ok) {
                a.index = j;
                a.reason = why;
            }
            a.ok = false;
            a.violation = std::max(a.violation, by);
        }
    };
    for (std::size_t j = 0; j < U.size(); ++j) {
        if (U[j] < lo - tol) fail(j, "below 2/(2+chi_hat)", lo - U[j]);
        if (U[j] > 1.0 + tol) fail(j, "above 1", U[j] - 1.0);
        if (j + 1 < U.size() && U[j + 1] > U[j] + tol)
            fail(j, "increasing pair", U[j + 1] - U[j]);
    }
    return a;
}

std::vector<double> apply_T_ode(std::span<const double> U, const PressurePair& pp, double dz,
                                const ModelParams& params) {
    check_profile(U, dz);
    const std::size_t N = U.size() - 1;
    const double ch = params.chi_hat, chi = params.chi;
    const std::vector<double> Ppp = second_derivative(U, pp, params.sigma);
    const double P0 = pp.P[N], Pp0 = pp.Pprime0;

    auto rhs = [&](double P, double Pp, double V, double z) {
        const double den = chi * (Pp0 - Pp);
        if (!(den < -1e-14)) {
            std::ostringstream msg;
            msg << "profile ODE denominator vanishes at z = " << z << " (" << den << ")";
            throw SingularityError(msg.str());
        }
        return V * (1.0 + ch * P - (1.0 + ch) * V) / den;
    };

    std::vector<double> V(N + 1);
    V[N] = (1.0 + ch * P0) / (1.0 + ch);
    // L'Hopital limit of V' at 0-
    const double dV0 = Pp0 * (1.0 + ch * P0) / ((1.0 + ch) * (1.0 + ch * U[N]));

    // Near 0 the right side behaves like 1/z, so a plain step of size dz leaves an
    // O(dz^2) error in the first nodes. Within sigma of 0 the steps are theta*|z|.
    const double rel = dz / params.sigma;
    const double theta = rel;
    const double h_first = dz * std::pow(rel, 1.5);
    const double graded_to = dz / theta;

    auto step_rk4 = [&](double z, double v, double h, auto&& at) {
        double P, Pp;
        at(z, P, Pp);
        const double k1 = (z == 0.0) ? dV0 : rhs(P, Pp, v, z);
        at(z - 0.5 * h, P, Pp);
        const double k2 = rhs(P, Pp, v - 0.5 * h * k1, z - 0.5 * h);
        const double k3 = rhs(P, Pp, v - 0.5 * h * k2, z - 0.5 * h);
        at(z - h, P, Pp);
        const double k4 = rhs(P, Pp, v - h * k3, z - h);
        return v - h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    };

    for (std::size_t j = N; j > 0; --j) {
        const double zj = -double(N - j) * dz;
        if (-zj < graded_to) {
            // Hermite pressure inside cell [z_{j-1}, z_j]
            auto at = [&](double z, double& P, double& Pp) {
                const double t = (z - (zj - dz)) / dz;
                P = hermite(pp.P[j - 1], pp.P[j], dz * pp.Pprime[j - 1], dz * pp.Pprime[j], t);
                Pp = hermite(pp.Pprime[j - 1], pp.Pprime[j], dz * Ppp[j - 1], dz * Ppp[j], t);
            };
            double z = zj, v = V[j];
            const double zend = zj - dz;
            while (z > zend) {
                double h = (z == 0.0) ? h_first : theta * -z;
                if (z - h < zend + 1e-3 * h) h = z - zend;
                v = step_rk4(z, v, h, at);
                z = (h == z - zend) ? zend : z - h;
            }
            V[j - 1] = v;
            continue;
        }
        auto at = [&](double z, double& P, double& Pp) {
            if (z == zj) {
                P = pp.P[j];
                Pp = pp.Pprime[j];
            } else if (z == zj - dz) {
                P = pp.P[j - 1];
                Pp = pp.Pprime[j - 1];
            } else {
                P = hermite_mid(pp.P[j - 1], pp.P[j], dz * pp.Pprime[j - 1], dz * pp.Pprime[j]);
                Pp = hermite_mid(pp.Pprime[j - 1], pp.Pprime[j], dz * Ppp[j - 1], dz * Ppp[j]);
            }
        };
        V[j - 1] = step_rk4(zj, V[j], dz, at);
    }
    return V;
}

std::vector<double> apply_T_ode(std::span<const double> U, double dz, const ModelParams& params) {
    check_profile(U, dz);
    const PressurePair pp = convolve_halfline(U, dz, 1.0, params.sigma);
    return apply_T_ode(U, pp, dz, params);
}

std::vector<double> apply_T_tau(std::span<const double> U, double dz, const ModelParams& params,
                                double forced_pressure) {
    check_profile(U, dz);
    const std::size_t N = U.size() - 1;
    const double Z = N * dz;
    const double ch = params.chi_hat, chi = params.chi;
    const bool forced = !std::isnan(forced_pressure);
    const PressurePair pp = convolve_halfline(U, dz, 1.0, params.sigma);
    const std::vector<double> Ppp = second_derivative(U, pp, params.sigma);
    const double Pp0 = pp.Pprime0;
    const double P0 = forced ? forced_pressure : pp.P[N];

    // P and P' at an arbitrary point by cubic Hermite on the grid
    auto pressure_at = [&](double tau, double& P, double& Pp) {
        const double s = (tau + Z) / dz;
        const std::size_t k = std::min<std::size_t>(N - 1, std::size_t(std::max(0.0, std::floor(s))));
        const double t = s - double(k);
        P = hermite(pp.P[k], pp.P[k + 1], dz * pp.Pprime[k], dz * pp.Pprime[k + 1], t);
        Pp = hermite(pp.Pprime[k], pp.Pprime[k + 1], dz * Ppp[k], dz * Ppp[k + 1], t);
        if (forced) P = forced_pressure;
    };
    struct D {
        double tau, cu;
    };
    auto rhs = [&](double tau, double cu) {
        double P, Pp;
        pressure_at(tau, P, Pp);
        return D{chi * (Pp0 - Pp), cu * (1.0 + ch * P - (1.0 + ch) * cu)};
    };

    const double V0 = (1.0 + ch * P0) / (1.0 + ch);
    const double dV0 = forced ? 0.0 : Pp0 * (1.0 + ch * P0) / ((1.0 + ch) * (1.0 + ch * U[N]));

    // calU(-inf) = V0 imposed through the linearisation at a tiny |tau|
    double tau = -1e-7;
    double cu = V0 + dV0 * tau;
    std::vector<double> taus{0.0, tau}, cus{V0, cu}, slopes{dV0, dV0};
    while (tau > -Z) {
        const D k1 = rhs(tau, cu);
        if (!(k1.tau < 0.0)) throw SingularityError("characteristic speed vanished in the tau route");
        const double ht = std::min(0.25, 0.25 * dz / std::abs(k1.tau));
        const D k2 = rhs(tau + 0.5 * ht * k1.tau, cu + 0.5 * ht * k1.cu);
        const D k3 = rhs(tau + 0.5 * ht * k2.tau, cu + 0.5 * ht * k2.cu);
        const D k4 = rhs(tau + ht * k3.tau, cu + ht * k3.cu);
        tau += ht / 6.0 * (k1.tau + 2 * k2.tau + 2 * k3.tau + k4.tau);
        cu += ht / 6.0 * (k1.cu + 2 * k2.cu + 2 * k3.cu + k4.cu);
        const D d = rhs(tau, cu);
        taus.push_back(tau);
        cus.push_back(cu);
        slopes.push_back(d.cu / d.tau);
    }

    // resample calU against tau; taus is decreasing
    std::vector<double> V(N + 1);
    V[N] = V0;
    std::size_t m = 1;
    for (std::size_t jj = N; jj-- > 0;) {
        const double zj = -double(N - jj) * dz;
        while (m + 1 < taus.size() && taus[m] > zj) ++m;
        const double a = taus[m - 1], b = taus[m];
        const double w = a - b;
        const double t = (a - zj) / w;  // 0 at a, 1 at b
        V[jj] = hermite(cus[m - 1], cus[m], -w * slopes[m - 1], -w * slopes[m], t);
    }
    return V;
}

namespace {

// clamp to the admissible bounds and make nonincreasing; returns the largest change
double project_admissible(std::vector<double>& U, const ModelParams& params) {
    const double lo = params.jump_bound();
    double moved = 0.0;
    for (std::size_t k = U.size(); k-- > 0;) {
        double v = std::clamp(U[k], lo, 1.0);
        if (k + 1 < U.size()) v = std::max(v, U[k + 1]);
        moved = std::max(moved, std::abs(v - U[k]));
        U[k] = v;
    }
    return moved;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

}  // namespace

WaveProfile fixed_point(const ModelParams& params, double dz, double Z, double tol, int max_iter,
                        double eta) {
    if (!(tol > 0.0)) throw InvalidParameter("wave.tol must be positive");
    if (max_iter < 1) throw InvalidParameter("wave.max_iter must be positive");
    if (eta == 0.0) eta = 1.0 / (2.0 * params.sigma);
    if (!params.assumption3_ok)
        std::cerr << "warning: chi_hat = " << params.chi_hat
                  << " is not below chibar; attempting the fixed point anyway\n";

    WaveProfile w;
    w.sigma = params.sigma;
    w.chi = params.chi;
    w.dz = dz;
    w.z = wave_grid(dz, Z);
    const std::size_t n = w.z.size();
    std::vector<double> U(n, 1.0), diff(n);

    bool converged = false;
    for (int it = 1; it <= max_iter; ++it) {
        const PressurePair pp = convolve_halfline(U, dz, 1.0, params.sigma);
        std::vector<double> V = apply_T_ode(U, pp, dz, params);
        const Admissibility adm = is_admissible(V, params, 1e-8);
        if (!adm.ok) w.projection_distance = std::max(w.projection_distance, project_admissible(V, params));
        for (std::size_t k = 0; k < n; ++k) diff[k] = V[k] - U[k];
        const double r = norm_eta(w.z, diff, eta, params.sigma);
        w.residual_history.push_back(r);
        U = std::move(V);
        w.iterations = it;
        if (!std::isfinite(r)) break;
        if (r < tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        std::ostringstream msg;
        msg << "fixed point did not converge in " << w.iterations << " iterations (last residual "
            << w.residual_history.back() << ")";
        throw NonConvergence(msg.str(), w.residual_history);
    }

    const PressurePair pp = convolve_halfline(U, dz, 1.0, params.sigma);
    const std::vector<double> TU = apply_T_ode(U, pp, dz, params);
    for (std::size_t k = 0; k < n; ++k) diff[k] = TU[k] - U[k];
    w.residual_eta = norm_eta(w.z, diff, eta, params.sigma);
    w.residual_sup = sup_diff(TU, U);
    w.U = std::move(U);
    w.P = pp.P;
    w.Pprime = pp.Pprime;
    w.Pprime0 = pp.Pprime0;
    w.U0minus = w.U.back();
    w.c = -params.chi * pp.Pprime0;

    const Admissibility adm = is_admissible(w.U, params, 1e-8);
    if (!adm.ok) throw InternalConsistency("converged profile is not admissible: " + adm.reason);
    const double bv = (1.0 + params.chi_hat * w.P.back()) / (1.0 + params.chi_hat);
    if (std::abs(bv - w.U0minus) > 1e-8)
        throw InternalConsistency("U(0-) does not match (1 + chi_hat P(0))/(1 + chi_hat)");
    if (!(w.c > params.speed_lower() && w.c < params.speed_upper()))
        throw InternalConsistency("wave speed outside (sigma chi_hat/(2+chi_hat), sigma chi_hat/2)");
    return w;
}

WaveSpeed wave_speed(const WaveProfile& profile, double tol) {
    const std::size_t n = profile.U.size();
    if (n < 4) throw InvalidParameter("wave_speed: profile too short");
    const double s = profile.sigma, dz = profile.dz;
    const std::size_t N = n - 1;
    const double Z = N * dz;
    auto f = [&](std::size_t j) { return std::exp(profile.z[j] / s) * profile.U[j]; };

    // composite Simpson, with a 3/8 block at the right end when N is odd
    std::size_t even_end = (N % 2 == 0) ? N : N - 3;
    double acc = 0.0;
    for (std::size_t j = 0; j + 2 <= even_end; j += 2) acc += dz / 3.0 * (f(j) + 4 * f(j + 1) + f(j + 2));
    if (even_end != N)
        acc += 3.0 * dz / 8.0 * (f(N - 3) + 3 * f(N - 2) + 3 * f(N - 1) + f(N));
    acc += profile.tail * s * std::exp(-Z / s);

    WaveSpeed out;
    out.c = -profile.chi * profile.Pprime0;
    out.c_quadrature = profile.chi / (2.0 * s * s) * acc;
    if (std::abs(out.c - out.c_quadrature) > tol) {
        std::ostringstream msg;
        msg << "wave speed cross-check failed: " << out.c << " vs " << out.c_quadrature;
        throw InternalConsistency(msg.str());
    }
    return out;
}

std::vector<double> random_admissible_profile(std::span<const double> z, const ModelParams& params,
                                              std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double lo = params.jump_bound();
    const int K = 1 + static_cast<int>(uni(rng) * 4);
    std::vector<double> c(K), s(K), w(K);
    double wsum = 0.0;
    for (int k = 0; k < K; ++k) {
        c[k] = -25.0 * uni(rng);
        s[k] = 0.3 + 4.7 * uni(rng);
        w[k] = 0.05 + uni(rng);
        wsum += w[k];
    }
    const double base = uni(rng);
    std::vector<double> U(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
        double acc = 0.0;
        for (int k = 0; k < K; ++k) acc += w[k] / wsum / (1.0 + std::exp((z[j] - c[k]) / s[k]));
        U[j] = lo + (1.0 - lo) * (base + (1.0 - base) * acc);
    }
    return U;
}

double f_appendix(double x) {
    if (!(x > 0.0 && x < 2.0)) throw InvalidParameter("f_appendix: x must lie in (0, 2)");
    const double h = 0.5 * x;
    return std::log((2.0 - x) / x) + 2.0 / (2.0 + x) * (h * std::log(h) + 1.0 - h);
}

double find_chibar(double tol) {
    if (!(tol > 0.0)) throw InvalidParameter("find_chibar: tol must be positive");
    double lo = 1e-9, hi = 2.0 - 1e-9;  // f(lo) > 0 > f(hi)
    for (int k = 0; k < 200 && hi - lo > tol; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (f_appendix(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double porous_medium_profile(double z) {
    return std::max(0.0, 1.0 - std::exp(z / std::sqrt(2.0)));
}

void WaveProfile::write_csv(std::ostream& os) const {
    os << "z,U,P,Pprime\n";
    for (std::size_t j = 0; j < U.size(); ++j)
        os << num17(z[j]) << ',' << num17(U[j]) << ',' << num17(P[j]) << ',' << num17(Pprime[j])
           << '\n';
}

void WaveProfile::write_meta(std::ostream& os, double chibar) const {
    os << "c=" << num17(c) << '\n'
       << "U0minus=" << num17(U0minus) << '\n'
       << "iterations=" << iterations << '\n'
       << "residual_eta=" << num17(residual_eta) << '\n'
       << "chi_hat=" << num17(chi / (sigma * sigma)) << '\n'
       << "chibar=" << num17(chibar) << '\n'
       << "residual_sup=" << num17(residual_sup) << '\n'
       << "projection_distance=" << num17(projection_distance) << '\n'
       << "sigma=" << num17(sigma) << '\n'
       << "chi=" << num17(chi) << '\n'
       << "dz=" << num17(dz) << '\n';
}

}  // namespace sharpfront
