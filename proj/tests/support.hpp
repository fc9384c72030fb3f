#pragma once

// Independent oracles used by the unit tests. Nothing here calls into the library.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

// Strict decrease as far as doubles can show it. Where 1 - V drops under 1e-12 the
// neighbour gaps are a few ulps and exact ties appear, so only nonincrease is asked there.
inline bool strictly_decreasing_resolved(const std::vector<double>& V, double floor = 1e-12) {
    for (std::size_t j = 0; j + 1 < V.size(); ++j) {
        if (V[j] < V[j + 1]) return false;
        if (1.0 - V[j + 1] > floor && !(V[j] > V[j + 1])) return false;
    }
    return true;
}

// dense Gaussian elimination with partial pivoting
inline std::vector<double> dense_solve(std::vector<std::vector<double>> A, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(A[i][k]) > std::abs(A[piv][k])) piv = i;
        std::swap(A[k], A[piv]);
        std::swap(b[k], b[piv]);
        if (A[k][k] == 0.0) throw std::runtime_error("singular");
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = A[i][k] / A[k][k];
            for (std::size_t j = k; j < n; ++j) A[i][j] -= f * A[k][j];
            b[i] -= f * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
        x[i] = s / A[i][i];
    }
    return x;
}

// the matrix I - sigma^2 A with p_0 = p_1 and p_{M+1} = p_M folded in
inline std::vector<std::vector<double>> neumann_matrix(int M, double dx, double sigma) {
    std::vector<std::vector<double>> A(M, std::vector<double>(M, 0.0));
    const double r = sigma * sigma / (dx * dx);
    for (int i = 0; i < M; ++i) {
        A[i][i] = 1.0;
        // -r (p_{i+1} - 2 p_i + p_{i-1}) with ghost values substituted
        const int left = i > 0 ? i - 1 : i;
        const int right = i < M - 1 ? i + 1 : i;
        A[i][i] += 2 * r;
        A[i][left] -= r;
        A[i][right] -= r;
    }
    return A;
}

// composite Simpson, n even
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int k = 1; k < n; ++k) s += f(a + k * h) * (k % 2 ? 4 : 2);
    return s * h / 3;
}

// Appendix function written out separately from the library
inline long double f_ld(long double x) {
    return std::log((2 - x) / x) + 2 / (2 + x) * (x / 2 * std::log(x / 2) + 1 - x / 2);
}

inline double bisect_chibar() {
    long double lo = 0.5L, hi = 1.5L;
    for (int k = 0; k < 200; ++k) {
        const long double m = (lo + hi) / 2;
        (f_ld(m) > 0 ? lo : hi) = m;
    }
    return static_cast<double>((lo + hi) / 2);
}

}  // namespace oracle
