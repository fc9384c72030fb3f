#include "sharpfront/elliptic.hpp"

#include <array>
#include <cmath>
#include <iostream>

namespace sharpfront {

NeumannResolvent::NeumannResolvent(const Grid1D& grid, double sigma)
    : r_(sigma * sigma / (grid.dx * grid.dx)),
      inv_diag_(grid.M),
      upper_(grid.M) {
    const int M = grid.M;
    if (M < 2) throw InvalidParameter("pressure solve needs M >= 2");
    auto diag = [&](int i) { return (i == 0 || i == M - 1) ? 1.0 + r_ : 1.0 + 2.0 * r_; };
    // Thomas forward sweep on the constant matrix
    double piv = diag(0);
    inv_diag_[0] = 1.0 / piv;
    upper_[0] = -r_ * inv_diag_[0];
    for (int i = 1; i < M; ++i) {
        piv = diag(i) + r_ * upper_[i - 1];
        inv_diag_[i] = 1.0 / piv;
        upper_[i] = (i < M - 1) ? -r_ * inv_diag_[i] : 0.0;
    }
}

void NeumannResolvent::solve(std::span<const double> rhs, std::span<double> out) const {
    const int M = size();
    if (static_cast<int>(rhs.size()) != M || static_cast<int>(out.size()) != M)
        throw InvalidParameter("resolvent: size mismatch");
    out[0] = rhs[0] * inv_diag_[0];
    for (int i = 1; i < M; ++i) out[i] = (rhs[i] + r_ * out[i - 1]) * inv_diag_[i];
    for (int i = M - 2; i >= 0; --i) out[i] -= upper_[i] * out[i + 1];
}

std::vector<double> NeumannResolvent::solve(std::span<const double> rhs) const {
    std::vector<double> out(rhs.size());
    solve(rhs, out);
    return out;
}

Field solve_pressure_neumann(const Field& u, const ModelParams& params) {
    if (u.grid.M < 2 || static_cast<int>(u.values.size()) != u.grid.M)
        throw InvalidParameter("solve_pressure_neumann: degenerate grid");
    NeumannResolvent R(u.grid, params.sigma);
    return Field{u.grid, R.solve(u.values), u.time};
}

void staggered_velocity(std::span<const double> p, double dx, double chi,
                        std::span<double> v) {
    const std::size_t M = p.size();
    v[0] = 0.0;
    v[M] = 0.0;
    for (std::size_t i = 1; i < M; ++i) v[i] = -chi * (p[i] - p[i - 1]) / dx;
}

std::vector<double> staggered_velocity(const Field& p, double chi) {
    std::vector<double> v(p.values.size() + 1);
    staggered_velocity(p.values, p.grid.dx, chi, v);
    return v;
}

namespace {

// 10-point Gauss-Legendre on [0,1]
struct Gauss {
    std::array<double, 10> x{}, w{};
    Gauss() {
        const int n = 10;
        for (int i = 0; i < n; ++i) {
            double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (t * p1 - p0) / (t * t - 1.0);
                const double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-16) break;
            }
            x[i] = 0.5 * (1.0 - t);
            w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

double lagrange(int k, int o, double t) {
    // basis k of the cubic through local nodes o, o+1, o+2, o+3
    double r = 1.0;
    for (int m = 0; m < 4; ++m)
        if (m != k) r *= (t - (o + m)) / double(k - m);
    return r;
}

// Panel weights for the stencil offsets o = -1 (centred), 0, -2.
struct PanelWeights {
    std::array<std::array<double, 4>, 3> left{}, right{};
    PanelWeights(double dz, double sigma) {
        static const Gauss g;
        const double a = dz / sigma;
        const int offs[3] = {-1, 0, -2};
        for (int s = 0; s < 3; ++s)
            for (int k = 0; k < 4; ++k) {
                double wl = 0.0, wr = 0.0;
                for (int q = 0; q < 10; ++q) {
                    const double t = g.x[q];
                    const double l = lagrange(k, offs[s], t);
                    wl += g.w[q] * std::exp(-(1.0 - t) * a) * l;
                    wr += g.w[q] * std::exp(-t * a) * l;
                }
                left[s][k] = wl * dz / (2.0 * sigma);
                right[s][k] = wr * dz / (2.0 * sigma);
            }
    }
};

}  // namespace

PressurePair convolve_halfline(std::span<const double> U, double dz,
                               double tail_value, double sigma, double right_tail) {
    const int n = static_cast<int>(U.size());
    if (n < 4) throw InvalidParameter("convolve_halfline: need at least 4 nodes");
    if (!(dz > 0.0) || !(sigma > 0.0))
        throw InvalidParameter("convolve_halfline: dz and sigma must be positive");
    const int N = n - 1;
    const double Z = N * dz;
    if (std::exp(-Z / sigma) > 1e-12 && tail_value != 0.0)
        std::cerr << "warning: truncation Z=" << Z << " is short for sigma=" << sigma
                  << " (e^{-Z/sigma} = " << std::exp(-Z / sigma) << ")\n";

    const PanelWeights W(dz, sigma);
    const double E = std::exp(-dz / sigma);
    auto stencil = [&](int j, int& start) {
        start = j - 1;
        if (start < 0) {
            start = 0;
            return 1;
        }
        if (start > N - 3) {
            start = N - 3;
            return 2;
        }
        return 0;
    };

    std::vector<double> IL(n), IR(n);
    IL[0] = 0.5 * tail_value;
    for (int j = 0; j < N; ++j) {
        int s0;
        const int s = stencil(j, s0);
        double acc = 0.0;
        for (int k = 0; k < 4; ++k) acc += W.left[s][k] * U[s0 + k];
        IL[j + 1] = E * IL[j] + acc;
    }
    IR[N] = 0.5 * right_tail;
    for (int j = N - 1; j >= 0; --j) {
        int s0;
        const int s = stencil(j, s0);
        double acc = 0.0;
        for (int k = 0; k < 4; ++k) acc += W.right[s][k] * U[s0 + k];
        IR[j] = E * IR[j + 1] + acc;
    }

    PressurePair out;
    out.P.resize(n);
    out.Pprime.resize(n);
    for (int j = 0; j < n; ++j) {
        out.P[j] = IL[j] + IR[j];
        out.Pprime[j] = (IR[j] - IL[j]) / sigma;
    }
    out.Pprime0 = out.Pprime[N];
    return out;
}

}  // namespace sharpfront
