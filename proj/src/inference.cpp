#include "qcomb/inference.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcomb {

namespace {

constexpr double kConditionLimit = 1e8;  // beyond this the comb is unresolvable

struct CombModel {
    std::vector<int> q_values;
    Eigen::MatrixXd columns;  // grid points x components, unit-peak Lorentzians
};

CombModel build_comb_model(const Spectrum& spectrum, const CavityParams& params,
                           CombMapping mapping) {
    const double spacing = comb_position(mapping, params, 1);
    const double lo = spectrum.detunings.front();
    const double hi = spectrum.detunings.back();
    const int q_lo = std::max(0, static_cast<int>(std::ceil((lo - 2.0 * params.kappa) / spacing)));
    const int q_hi = static_cast<int>(std::floor((hi + 2.0 * params.kappa) / spacing));
    if (q_hi < q_lo)
        throw std::invalid_argument("extract_distribution: no comb positions inside the grid");

    CombModel model;
    const int n = static_cast<int>(spectrum.detunings.size());
    const int m = q_hi - q_lo + 1;
    model.q_values.resize(static_cast<size_t>(m));
    model.columns.resize(n, m);
    const double k2 = params.kappa * params.kappa;
    for (int c = 0; c < m; ++c) {
        const int q = q_lo + c;
        model.q_values[static_cast<size_t>(c)] = q;
        const double pos = comb_position(mapping, params, q);
        for (int j = 0; j < n; ++j) {
            const double d = spectrum.detunings[static_cast<size_t>(j)] - pos;
            model.columns(j, c) = k2 / (d * d + k2);
        }
    }
    return model;
}

// Projected-gradient NNLS polish after a clipped unconstrained solve.
Eigen::VectorXd solve_nonnegative(const Eigen::MatrixXd& gram, const Eigen::VectorXd& rhs,
                                  double lambda_max) {
    Eigen::VectorXd x = gram.ldlt().solve(rhs).cwiseMax(0.0);
    const double step = 1.0 / lambda_max;
    const double scale = std::max(x.maxCoeff(), 1e-300);
    for (int it = 0; it < 50000; ++it) {
        Eigen::VectorXd next = (x - step * (gram * x - rhs)).cwiseMax(0.0);
        const double delta = (next - x).cwiseAbs().maxCoeff();
        x = std::move(next);
        if (delta <= 1e-15 * scale) break;
    }
    return x;
}

struct MomentEstimate {
    double center = 0.0;  // in detuning units
    double sigma = 0.0;
    double amplitude = 0.0;
    double residual = 0.0;
};

// Weighted LS fit of a quadratic to log-spectrum above 10% of peak
// (weights s^2), i.e. a Gaussian fit of the contour.
MomentEstimate log_gaussian_seed(std::span<const double> x, std::span<const double> y) {
    const double peak = *std::max_element(y.begin(), y.end());
    Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
    Eigen::Vector3d atb = Eigen::Vector3d::Zero();
    for (size_t i = 0; i < x.size(); ++i) {
        if (y[i] < 0.1 * peak) continue;
        const double w = y[i] * y[i];
        const Eigen::Vector3d row(1.0, x[i], x[i] * x[i]);
        ata += w * row * row.transpose();
        atb += w * row * std::log(y[i]);
    }
    const Eigen::Vector3d coef = ata.ldlt().solve(atb);
    if (!(coef(2) < 0.0))
        throw std::runtime_error("envelope fit: log-spectrum is not concave");
    MomentEstimate est;
    const double sig2 = -0.5 / coef(2);
    est.center = coef(1) * sig2;
    est.sigma = std::sqrt(sig2);
    est.amplitude = std::exp(coef(0) + est.center * est.center / (2.0 * sig2));
    return est;
}

// SSE of the known-kappa broadened contour against the data for a trial width.
double contour_sse(CombMapping mapping, const CavityParams& params, double center,
                   double sigma, std::span<const double> x, std::span<const double> y,
                   double* amplitude_out = nullptr, double* residual_out = nullptr) {
    std::vector<double> grid(x.begin(), x.end());
    Spectrum model;
    switch (mapping) {
        case CombMapping::SingleMode:
            model = voigt_single_mode(params, center, sigma, grid);
            break;
        case CombMapping::TwoModeMin:
            model = badcavity_two_mode_min(params, sigma, center, grid);
            break;
        case CombMapping::TwoModeMax:
            model = badcavity_two_mode_max(params, sigma, center, grid);
            break;
    }
    double mm = 0.0, my = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) {
        mm += model.values[i] * model.values[i];
        my += model.values[i] * y[i];
    }
    const double a = mm > 0.0 ? my / mm : 0.0;
    double sse = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) {
        const double r = a * model.values[i] - y[i];
        sse += r * r;
    }
    if (amplitude_out) *amplitude_out = a;
    if (residual_out) *residual_out = std::sqrt(sse / static_cast<double>(grid.size()));
    return sse;
}

InferenceResult envelope_fallback(const Spectrum& spectrum, const CavityParams& params,
                                  CombMapping mapping, double condition) {
    const auto& xs = spectrum.detunings;
    const auto& ys = spectrum.values;

    // For the two-mode maximum, mask away the classical satellite at
    // Delta_p ~ 0 before fitting the structured right satellite.
    std::vector<double> x_fit, y_fit;
    double peak = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (mapping == CombMapping::TwoModeMax && xs[i] < 10.0 * params.kappa) continue;
        peak = std::max(peak, ys[i]);
    }
    if (!(peak > 0.0))
        throw std::invalid_argument("extract_distribution: spectrum carries no signal");
    for (size_t i = 0; i < xs.size(); ++i) {
        if (mapping == CombMapping::TwoModeMax && xs[i] < 10.0 * params.kappa) continue;
        if (ys[i] >= 0.1 * peak) {
            x_fit.push_back(xs[i]);
            y_fit.push_back(ys[i]);
        }
    }
    if (x_fit.size() < 4)
        throw std::runtime_error("envelope fit: too few points above 10% of peak");

    MomentEstimate seed = log_gaussian_seed(x_fit, y_fit);

    // The log-Gaussian width overestimates sigma_omega (it absorbs the
    // Lorentzian broadening); refine against the exact contour model.
    double lo = std::max(0.05 * seed.sigma, 0.05 * params.kappa);
    double hi = 1.1 * seed.sigma;
    constexpr double kGolden = 0.6180339887498949;
    double a = lo, b = hi;
    double c1 = b - kGolden * (b - a), c2 = a + kGolden * (b - a);
    double f1 = contour_sse(mapping, params, seed.center, c1, x_fit, y_fit);
    double f2 = contour_sse(mapping, params, seed.center, c2, x_fit, y_fit);
    for (int it = 0; it < 64 && (b - a) > 1e-6 * seed.sigma; ++it) {
        if (f1 < f2) {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - kGolden * (b - a);
            f1 = contour_sse(mapping, params, seed.center, c1, x_fit, y_fit);
        } else {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + kGolden * (b - a);
            f2 = contour_sse(mapping, params, seed.center, c2, x_fit, y_fit);
        }
    }
    const double sigma = 0.5 * (a + b);
    double residual = 0.0;
    contour_sse(mapping, params, seed.center, sigma, x_fit, y_fit, nullptr, &residual);

    const double spacing = comb_position(mapping, params, 1);
    InferenceResult result;
    result.envelope_fallback = true;
    result.condition = condition;
    result.mean = seed.center / spacing;
    result.variance = sigma * sigma / (spacing * spacing);
    result.residual = residual / peak;

    // Moment-only estimate: report a discretized Gaussian with those moments.
    const double sq = std::sqrt(result.variance);
    const int q_lo = std::max(0, static_cast<int>(std::floor(result.mean - 6.0 * sq)));
    const int q_hi = static_cast<int>(std::ceil(result.mean + 6.0 * sq));
    NumberDistribution dist;
    dist.meaning = mapping == CombMapping::TwoModeMin
                       ? NumberDistribution::Meaning::OddEvenImbalanceCount
                       : NumberDistribution::Meaning::SubsetCount;
    dist.q_min = q_lo;
    dist.total_atoms = q_hi;
    dist.probs.resize(static_cast<size_t>(q_hi - q_lo) + 1);
    double total = 0.0;
    for (int q = q_lo; q <= q_hi; ++q) {
        const double d = (q - result.mean) / sq;
        total += dist.probs[static_cast<size_t>(q - q_lo)] = std::exp(-0.5 * d * d);
    }
    for (double& p : dist.probs) p /= total;
    result.distribution = std::move(dist);
    return result;
}

}  // namespace

InferenceResult extract_distribution(const Spectrum& spectrum, const CavityParams& params,
                                     CombMapping mapping) {
    params.validate();
    spectrum.validate();
    const double peak = *std::max_element(spectrum.values.begin(), spectrum.values.end());
    if (!(peak > 0.0))
        throw std::invalid_argument("extract_distribution: spectrum carries no signal");

    const CombModel model = build_comb_model(spectrum, params, mapping);
    const int n = static_cast<int>(spectrum.detunings.size());
    const Eigen::Map<const Eigen::VectorXd> s(spectrum.values.data(), n);

    const Eigen::MatrixXd gram = model.columns.transpose() * model.columns;
    const Eigen::VectorXd rhs = model.columns.transpose() * s;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    const double lambda_max = eig.eigenvalues().maxCoeff();
    const double lambda_min = eig.eigenvalues().minCoeff();
    const double condition = lambda_max / std::max(lambda_min, 1e-300);

    if (!(condition < kConditionLimit))
        return envelope_fallback(spectrum, params, mapping, condition);

    const Eigen::VectorXd amp = solve_nonnegative(gram, rhs, lambda_max);
    const double total = amp.sum();
    if (!(total > 0.0))
        throw std::runtime_error("extract_distribution: degenerate all-zero solution");

    InferenceResult result;
    result.condition = condition;
    result.residual = std::sqrt((model.columns * amp - s).squaredNorm() / n) / peak;

    NumberDistribution dist;
    dist.meaning = mapping == CombMapping::TwoModeMin
                       ? NumberDistribution::Meaning::OddEvenImbalanceCount
                       : NumberDistribution::Meaning::SubsetCount;
    dist.q_min = model.q_values.front();
    dist.total_atoms = model.q_values.back();
    dist.probs.resize(model.q_values.size());
    for (size_t i = 0; i < model.q_values.size(); ++i)
        dist.probs[i] = amp(static_cast<Eigen::Index>(i)) / total;
    result.mean = dist.mean();
    result.variance = dist.variance();
    result.distribution = std::move(dist);
    return result;
}

PhaseClass classify_phase(const InferenceResult& result, double threshold) {
    if (!(result.mean > 1e-9)) return PhaseClass::Indeterminate;
    return result.variance / result.mean > threshold ? PhaseClass::SuperfluidLike
                                                     : PhaseClass::MottInsulatorLike;
}

std::string to_string(PhaseClass phase) {
    switch (phase) {
        case PhaseClass::MottInsulatorLike: return "MI-like";
        case PhaseClass::SuperfluidLike: return "SF-like";
        case PhaseClass::Indeterminate: return "indeterminate";
    }
    return "unknown";
}

}  // namespace qcomb
