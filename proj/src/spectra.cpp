#include "qcomb/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qcomb/quadrature.hpp"

namespace qcomb {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310002;
constexpr double kQuadTolFactor = 1e-10;  // absolute tolerance relative to peak scale

void check_grid(std::span<const double> grid) {
    if (grid.empty()) throw std::invalid_argument("spectrum grid is empty");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("spectrum grid must be strictly increasing");
}

}  // namespace

CavityParams CavityParams::with_kappa(double kappa) {
    CavityParams p;
    p.kappa = kappa;
    p.eta0 = kappa;
    p.validate();
    return p;
}

void CavityParams::validate() const {
    if (!(kappa > 0.0)) throw std::invalid_argument("CavityParams: kappa must be > 0");
    if (!(delta0 > 0.0)) throw std::invalid_argument("CavityParams: delta0 must be > 0");
    if (!(delta1 > 0.0)) throw std::invalid_argument("CavityParams: delta1 must be > 0");
    if (!(eta0 >= 0.0)) throw std::invalid_argument("CavityParams: eta0 must be >= 0");
}

void Spectrum::validate() const {
    check_grid(detunings);
    if (values.size() != detunings.size())
        throw std::invalid_argument("Spectrum: values/detunings size mismatch");
    for (double v : values)
        if (!(v >= 0.0)) throw std::invalid_argument("Spectrum: negative photon number");
}

double single_mode_photons(double q, const CavityParams& params, double detuning) {
    const double d = detuning - params.delta0 * q;
    return params.eta0 * params.eta0 / (d * d + params.kappa * params.kappa);
}

double two_mode_photons(double d11, double d10_abs2, const CavityParams& params,
                        double detuning) {
    if (d10_abs2 < 0.0) throw std::invalid_argument("two_mode_photons: |D_10|^2 < 0");
    const double k2 = params.kappa * params.kappa;
    const double split2 = params.delta1 * params.delta1 * d10_abs2;
    const double dp = detuning - params.delta1 * d11;
    const double core = dp * dp - split2 - k2;
    return split2 * params.eta0 * params.eta0 / (core * core + 4.0 * k2 * dp * dp);
}

double comb_position(CombMapping mapping, const CavityParams& params, int q) {
    return (mapping == CombMapping::SingleMode ? 1.0 : 2.0) * params.delta0 * q;
}

Spectrum spectrum_expectation(const NumberDistribution& dist, CombMapping mapping,
                              const CavityParams& params, std::span<const double> grid) {
    check_grid(grid);
    params.validate();
    dist.validate();

    const bool wants_imbalance = (mapping == CombMapping::TwoModeMin);
    const bool has_imbalance =
        (dist.meaning == NumberDistribution::Meaning::OddEvenImbalanceCount);
    if (wants_imbalance != has_imbalance)
        throw std::invalid_argument(
            wants_imbalance
                ? "two-mode minimum mapping needs an odd/even imbalance distribution"
                : "subset-count mapping fed an imbalance distribution");

    Spectrum s;
    s.meta.params = params;
    s.meta.geometry = mapping == CombMapping::SingleMode ? "single"
                      : mapping == CombMapping::TwoModeMax ? "two-max"
                                                           : "two-min";
    s.detunings.assign(grid.begin(), grid.end());
    s.values.resize(grid.size());

    const int n_atoms = dist.total_atoms;
    for (size_t j = 0; j < grid.size(); ++j) {
        const double dp = grid[j];
        double acc = 0.0;
        for (int q = dist.q_min; q <= dist.q_max(); ++q) {
            const double w = dist.p(q);
            if (w == 0.0) continue;
            double f = 0.0;
            switch (mapping) {
                case CombMapping::SingleMode:
                    f = single_mode_photons(q, params, dp);
                    break;
                case CombMapping::TwoModeMax:
                    f = two_mode_photons(q, static_cast<double>(q) * q, params, dp);
                    break;
                case CombMapping::TwoModeMin: {
                    const double imb = 2.0 * q - n_atoms;
                    f = two_mode_photons(n_atoms, imb * imb, params, dp);
                    break;
                }
            }
            acc += w * f;
        }
        s.values[j] = acc;
    }
    return s;
}

Spectrum spectrum_expectation(const JointDistribution& joint, const CavityParams& params,
                              std::span<const double> grid) {
    check_grid(grid);
    params.validate();

    Spectrum s;
    s.meta.params = params;
    s.meta.geometry = "two-min";
    s.meta.extended = true;
    s.detunings.assign(grid.begin(), grid.end());
    s.values.resize(grid.size());

    const int n1 = joint.total_atoms + 1;
    for (size_t j = 0; j < grid.size(); ++j) {
        const double dp = grid[j];
        double acc = 0.0;
        for (int qa = 0; qa < n1; ++qa) {
            for (int qb = 0; qa + qb < n1; ++qb) {
                const double w = joint.p(qa, qb);
                if (w == 0.0) continue;
                const double diff = qa - qb;
                acc += w * two_mode_photons(qa + qb, diff * diff, params, dp);
            }
        }
        s.values[j] = acc;
    }
    return s;
}

Spectrum spectrum_mi(std::span<const int> fillings, const ModeGeometry& geom_0,
                     const ModeGeometry* geom_1, const LatticeRegion& region,
                     const CavityParams& params, std::span<const double> grid) {
    check_grid(grid);
    params.validate();

    Spectrum s;
    s.meta.state = "mi";
    s.meta.params = params;
    s.detunings.assign(grid.begin(), grid.end());
    s.values.resize(grid.size());

    if (geom_1 == nullptr) {
        s.meta.geometry = "single";
        const Complex d00 = coupling_coefficient(geom_0, geom_0, fillings, region);
        for (size_t j = 0; j < grid.size(); ++j)
            s.values[j] = single_mode_photons(d00.real(), params, grid[j]);
        return s;
    }

    s.meta.geometry = "general";
    const Complex d11 = coupling_coefficient(*geom_1, *geom_1, fillings, region);
    const Complex d10 = coupling_coefficient(*geom_1, geom_0, fillings, region);
    for (size_t j = 0; j < grid.size(); ++j)
        s.values[j] = two_mode_photons(d11.real(), std::norm(d10), params, grid[j]);
    return s;
}

// --- envelopes -----------------------------------------------------------------

double CombEnvelope::evaluate(double detuning) const {
    if (degenerate)
        throw std::domain_error("CombEnvelope: width is zero, envelope undefined "
                                "(the comb is a single Lorentzian)");
    const double d = detuning - center;
    return amplitude * delta0 / (kSqrt2Pi * sigma_w) *
           std::exp(-d * d / (2.0 * sigma_w * sigma_w));
}

CombEnvelope envelope_single_mode(int atoms, int sites, int illuminated,
                                  const CavityParams& params) {
    params.validate();
    const LatticeRegion region(sites, illuminated);
    const double nk = static_cast<double>(atoms) * region.illuminated / region.sites;
    CombEnvelope env;
    env.center = params.delta0 * nk;
    env.sigma_w =
        params.delta0 * std::sqrt(nk * (1.0 - static_cast<double>(illuminated) / sites));
    env.amplitude = params.peak_scale();
    env.spacing = params.delta0;
    env.delta0 = params.delta0;
    env.degenerate = !(env.sigma_w > 0.0);
    return env;
}

CombEnvelope envelope_two_mode_max(int atoms, int sites, int illuminated,
                                   const CavityParams& params) {
    CombEnvelope env = envelope_single_mode(atoms, sites, illuminated, params);
    env.center *= 2.0;
    env.sigma_w *= 2.0;
    env.amplitude = 0.5 * params.peak_scale();
    env.spacing = 2.0 * params.delta0;
    env.left_satellite = 0.25 * params.peak_scale();
    return env;
}

CombEnvelope envelope_two_mode_min(int atoms, int sites, const CavityParams& params) {
    params.validate();
    if (sites < 1) throw std::invalid_argument("envelope_two_mode_min: M must be >= 1");
    if (atoms < 0) throw std::invalid_argument("envelope_two_mode_min: N must be >= 0");
    CombEnvelope env;
    env.center = params.delta0 * atoms;
    env.sigma_w = params.delta0 * std::sqrt(static_cast<double>(atoms));
    env.amplitude = params.peak_scale();
    env.spacing = 2.0 * params.delta0;
    env.delta0 = params.delta0;
    env.degenerate = !(env.sigma_w > 0.0);
    return env;
}

// --- bad-cavity integrals --------------------------------------------------------

namespace {

std::vector<std::pair<double, double>> gaussian_window(double center, double sigma) {
    return {{center - 8.0 * sigma, center + 8.0 * sigma}};
}

void add_resonance_window(std::vector<std::pair<double, double>>& windows,
                          std::vector<double>& splits, double resonance, double kappa) {
    windows.emplace_back(resonance - 50.0 * kappa, resonance + 50.0 * kappa);
    splits.push_back(resonance);
    splits.push_back(resonance - 5.0 * kappa);
    splits.push_back(resonance + 5.0 * kappa);
}

void clip_windows(std::vector<std::pair<double, double>>& windows, double lo) {
    for (auto& w : windows) {
        w.first = std::max(w.first, lo);
        w.second = std::max(w.second, lo);
    }
}

}  // namespace

Spectrum voigt_single_mode(const CavityParams& params, double center, double sigma_w,
                           std::span<const double> grid) {
    check_grid(grid);
    params.validate();
    if (!(sigma_w > 0.0))
        throw std::invalid_argument("voigt_single_mode: sigma_w must be > 0");

    const double k2 = params.kappa * params.kappa;
    const double norm = params.eta0 * params.eta0 / (kSqrt2Pi * sigma_w);
    const double tol = kQuadTolFactor * params.peak_scale() / std::max(norm, 1e-300);

    Spectrum s;
    s.meta.geometry = "single";
    s.meta.params = params;
    s.detunings.assign(grid.begin(), grid.end());
    s.values.resize(grid.size());

    const double inv2s2 = 1.0 / (2.0 * sigma_w * sigma_w);
    for (size_t j = 0; j < grid.size(); ++j) {
        const double dp = grid[j];
        auto integrand = [&](double w) {
            const double g = std::exp(-(w - center) * (w - center) * inv2s2);
            const double d = dp - w;
            return g / (d * d + k2);
        };
        auto windows = gaussian_window(center, sigma_w);
        std::vector<double> splits{center};
        add_resonance_window(windows, splits, dp, params.kappa);
        clip_windows(windows, 0.0);
        s.values[j] = norm * integrate_segments(integrand, windows, splits, tol);
    }
    return s;
}

Spectrum badcavity_two_mode_min(const CavityParams& params, double sigma_w, double center,
                                std::span<const double> grid) {
    check_grid(grid);
    params.validate();
    if (!(sigma_w > 0.0))
        throw std::invalid_argument("badcavity_two_mode_min: sigma_w must be > 0");

    const double k2 = params.kappa * params.kappa;
    const double norm = params.eta0 * params.eta0 / (kSqrt2Pi * sigma_w);
    const double tol = kQuadTolFactor * params.peak_scale() / std::max(norm, 1e-300);

    Spectrum s;
    s.meta.geometry = "two-min";
    s.meta.params = params;
    s.detunings.assign(grid.begin(), grid.end());
    s.values.resize(grid.size());

    const double inv2s2 = 1.0 / (2.0 * sigma_w * sigma_w);
    for (size_t j = 0; j < grid.size(); ++j) {
        const double dpp = grid[j] - center;
        const double dpp2 = dpp * dpp;
        auto integrand = [&](double w) {
            const double w2 = w * w;
            const double core = dpp2 - w2 - k2;
            return w2 * std::exp(-w2 * inv2s2) / (core * core + 4.0 * k2 * dpp2);
        };
        auto windows = gaussian_window(0.0, sigma_w);
        std::vector<double> splits{0.0};
        if (dpp2 > k2) {
            const double w_res = std::sqrt(dpp2 - k2);
            add_resonance_window(windows, splits, w_res, params.kappa);
            add_resonance_window(windows, splits, -w_res, params.kappa);
        }
        s.values[j] = norm * integrate_segments(integrand, windows, splits, tol);
    }
    return s;
}

Spectrum badcavity_two_mode_max(const CavityParams& params, double sigma_w, double center,
                                std::span<const double> grid) {
    check_grid(grid);
    params.validate();
    if (!(sigma_w > 0.0))
        throw std::invalid_argument("badcavity_two_mode_max: sigma_w must be > 0");

    const double k2 = params.kappa * params.kappa;
    const double norm = params.eta0 * params.eta0 / (4.0 * kSqrt2Pi * sigma_w);
    const double tol = kQuadTolFactor * params.peak_scale() / std::max(norm, 1e-300);

    Spectrum s;
    s.meta.geometry = "two-max";
    s.meta.params = params;
    s.detunings.assign(grid.begin(), grid.end());
    s.values.resize(grid.size());

    const double inv2s2 = 1.0 / (2.0 * sigma_w * sigma_w);
    for (size_t j = 0; j < grid.size(); ++j) {
        const double dp = grid[j];
        auto integrand = [&](double w) {
            const double g = std::exp(-(w - center) * (w - center) * inv2s2);
            const double core = dp * (dp - w) + k2;
            return w * w * g / (core * core + k2 * w * w);
        };
        auto windows = gaussian_window(center, sigma_w);
        std::vector<double> splits{center};
        if (dp != 0.0)
            add_resonance_window(windows, splits, dp + k2 / dp, params.kappa);
        clip_windows(windows, 0.0);
        s.values[j] = norm * integrate_segments(integrand, windows, splits, tol);
    }
    return s;
}

// --- grids ------------------------------------------------------------------------

std::vector<double> make_grid(double lo, double hi, int points) {
    if (!(hi > lo)) throw std::invalid_argument("make_grid: need hi > lo");
    if (points < 2) throw std::invalid_argument("make_grid: need at least 2 points");
    std::vector<double> g(static_cast<size_t>(points));
    const double step = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) g[static_cast<size_t>(i)] = lo + step * i;
    g.back() = hi;
    return g;
}

std::vector<double> refine_grid(std::vector<double> grid, std::span<const double> resonances,
                                double kappa) {
    if (grid.empty()) throw std::invalid_argument("refine_grid: empty grid");
    const double lo = grid.front(), hi = grid.back();
    for (double c : resonances) {
        for (int k = -6; k <= 6; ++k) {
            const double x = c + k * kappa / 3.0;
            if (x >= lo && x <= hi) grid.push_back(x);
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               grid.end());
    return grid;
}

}  // namespace qcomb
