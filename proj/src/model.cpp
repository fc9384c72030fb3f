#include "sharpfront/model.hpp"

#include <algorithm>
#include <cmath>

#include "sharpfront/travelingwave.hpp"

namespace sharpfront {

namespace {

double chibar_cached() {
    static const double value = find_chibar(1e-14);
    return value;
}

}  // namespace

ModelParams make_params(double sigma, double chi) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw InvalidParameter("sigma must be positive");
    if (!(chi > 0.0) || !std::isfinite(chi))
        throw InvalidParameter("chi must be positive");
    ModelParams p;
    p.sigma = sigma;
    p.chi = chi;
    p.chi_hat = chi / (sigma * sigma);
    p.assumption3_ok = p.chi_hat < chibar_cached();
    return p;
}

Grid1D make_grid(double L, int M) {
    if (!(L > 0.0)) throw InvalidParameter("grid.L must be positive");
    if (M < 2) throw InvalidParameter("grid.M must be at least 2");
    return Grid1D{L, M, 2.0 * L / M};
}

InitialCondition InitialCondition::polynomial(double L, double x0) {
    InitialCondition ic;
    ic.kind = IcKind::Polynomial;
    ic.L = L;
    ic.x0 = x0;
    return ic;
}

InitialCondition InitialCondition::ramp() {
    InitialCondition ic;
    ic.kind = IcKind::Ramp;
    return ic;
}

InitialCondition InitialCondition::plateau_ramp() {
    InitialCondition ic;
    ic.kind = IcKind::PlateauRamp;
    return ic;
}

InitialCondition InitialCondition::sigmoid(double alpha, double x0) {
    InitialCondition ic;
    ic.kind = IcKind::Sigmoid;
    ic.alpha = alpha;
    ic.x0 = x0;
    return ic;
}

std::optional<double> InitialCondition::support_edge() const {
    switch (kind) {
    case IcKind::Polynomial: return x0;
    case IcKind::Ramp:
    case IcKind::PlateauRamp: return -15.0;
    case IcKind::Sigmoid: return std::nullopt;
    }
    return std::nullopt;
}

std::string InitialCondition::name() const {
    switch (kind) {
    case IcKind::Polynomial: return "polynomial";
    case IcKind::Ramp: return "ramp";
    case IcKind::PlateauRamp: return "plateau_ramp";
    case IcKind::Sigmoid: return "sigmoid";
    }
    return "?";
}

IcKind parse_ic_kind(const std::string& s) {
    if (s == "polynomial") return IcKind::Polynomial;
    if (s == "ramp") return IcKind::Ramp;
    if (s == "plateau_ramp") return IcKind::PlateauRamp;
    if (s == "sigmoid") return IcKind::Sigmoid;
    throw InvalidParameter("ic.kind: unknown initial condition '" + s + "'");
}

double eval_ic(const InitialCondition& ic, double x) {
    switch (ic.kind) {
    case IcKind::Polynomial: {
        if (x < -ic.L || x > ic.x0) return 0.0;
        const double num = std::pow(x - ic.x0, ic.exponent);
        const double den = std::pow(ic.L + ic.x0, ic.exponent);
        return std::clamp(num / den, 0.0, 1.0);
    }
    case IcKind::Ramp:
        // phi_1 of the comparison experiment
        if (x < -20.0 || x > -15.0) return 0.0;
        return std::clamp(-(x + 15.0) / 5.0, 0.0, 1.0);
    case IcKind::PlateauRamp:
        // phi_2, made continuous at -17.5 so that phi_1 <= phi_2 holds
        if (x < -20.0 || x > -15.0) return 0.0;
        if (x <= -17.5) return 1.0;
        return std::clamp(-(x + 15.0) / 2.5, 0.0, 1.0);
    case IcKind::Sigmoid: {
        const double s = ic.alpha * (x - ic.x0);
        if (s > 0) {
            const double e = std::exp(-s);
            return e / (1.0 + e);
        }
        return 1.0 / (1.0 + std::exp(s));
    }
    }
    return 0.0;
}

Field sample_ic(const InitialCondition& ic, const Grid1D& grid) {
    Field f{grid, std::vector<double>(grid.M), 0.0};
    for (int i = 0; i < grid.M; ++i) f.values[i] = eval_ic(ic, grid.center(i));
    return f;
}

double kernel_rho(double x, double sigma) {
    return std::exp(-std::abs(x) / sigma) / (2.0 * sigma);
}

double norm_eta(std::span<const double> z, std::span<const double> values,
                double eta, double sigma) {
    if (!(eta > 0.0) || !(eta < 1.0 / sigma))
        throw InvalidParameter("eta must lie in (0, 1/sigma)");
    if (z.size() != values.size())
        throw InvalidParameter("norm_eta: size mismatch");
    double best = 0.0;
    for (std::size_t j = 1; j < z.size(); ++j) {
        if (!(z[j] < 0.0)) continue;
        const double w = std::sqrt(-z[j]) * std::exp(eta * z[j]);
        best = std::max(best, w * std::abs(values[j]));
    }
    return best;
}

}  // namespace sharpfront
