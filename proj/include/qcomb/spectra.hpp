#ifndef QCOMB_SPECTRA_HPP
#define QCOMB_SPECTRA_HPP

#include <span>
#include <string>
#include <vector>

#include "qcomb/geometry.hpp"
#include "qcomb/states.hpp"

namespace qcomb {

// Cavity and probe parameters. delta0 = g^2/Delta_0a is the frequency unit:
// kappa, detunings and widths are all expressed in units of delta0.
struct CavityParams {
    double kappa = 0.1;
    double delta0 = 1.0;
    double delta1 = 1.0;  // the two modes are degenerate (omega_0 = omega_1)
    double eta0 = 0.1;    // probe amplitude; defaults to kappa

    static CavityParams with_kappa(double kappa);
    void validate() const;  // kappa > 0, delta0 > 0, eta0 >= 0
    double peak_scale() const { return eta0 * eta0 / (kappa * kappa); }
};

struct SpectrumMeta {
    std::string state;     // "mi", "sf", "custom", ...
    std::string geometry;  // "single", "two-max", "two-min", "general"
    CavityParams params;
    bool extended = false;  // trinomial two-mode-minimum path with K < M
};

// Sampled photon number <a^dag a> vs probe detuning Delta_p.
struct Spectrum {
    std::vector<double> detunings;  // strictly increasing
    std::vector<double> values;     // nonnegative
    SpectrumMeta meta;

    void validate() const;
};

// --- steady-state photon numbers ---------------------------------------------

// One mode, |u_0|^2 = 1 geometry: |eta0|^2 / ((Delta_p - delta0 q)^2 + kappa^2).
double single_mode_photons(double q, const CavityParams& params, double detuning);

// Photon number in mode 1 of a driven two-mode pair, for given coupling
// coefficients D_11 (real) and |D_10|^2.
double two_mode_photons(double d11, double d10_abs2, const CavityParams& params,
                        double detuning);

// --- expectation spectra (Lorentzian combs) ----------------------------------

enum class CombMapping { SingleMode, TwoModeMax, TwoModeMin };

// Comb positions: delta0*q (single mode) or 2*delta0*q (both two-mode cases).
double comb_position(CombMapping mapping, const CavityParams& params, int q);

// Weighted sum over q of the per-q photon-number curve. The distribution
// must carry the matching statistical variable: subset count for SingleMode /
// TwoModeMax, odd-site count for TwoModeMin (whole lattice illuminated).
Spectrum spectrum_expectation(const NumberDistribution& dist, CombMapping mapping,
                              const CavityParams& params, std::span<const double> grid);

// Two modes in a diffraction minimum with K < M: trinomial over the
// (odd count, even count) pair; D_10 = q_a - q_b, D_11 = q_a + q_b.
Spectrum spectrum_expectation(const JointDistribution& joint, const CavityParams& params,
                              std::span<const double> grid);

// Exact spectrum of a Fock configuration for arbitrary mode geometries
// (single mode when geom_1 is null).
Spectrum spectrum_mi(std::span<const int> fillings, const ModeGeometry& geom_0,
                     const ModeGeometry* geom_1, const LatticeRegion& region,
                     const CavityParams& params, std::span<const double> grid);

// --- analytic envelopes -------------------------------------------------------

// Gaussian envelope of an SF comb. For K = M the width vanishes and the comb
// is a single Lorentzian; `degenerate` marks that case and evaluate() is
// then undefined (throws std::domain_error).
struct CombEnvelope {
    double center = 0.0;       // Delta~_p
    double sigma_w = 0.0;      // sigma_omega
    double amplitude = 0.0;    // alpha
    double spacing = 1.0;      // comb pitch: delta0 or 2*delta0
    double delta0 = 1.0;
    bool degenerate = false;   // K == M (or N == 0)
    double left_satellite = 0.0;  // classical satellite at Delta_p = 0 (two-mode max)

    double evaluate(double detuning) const;
};

CombEnvelope envelope_single_mode(int atoms, int sites, int illuminated,
                                  const CavityParams& params);
CombEnvelope envelope_two_mode_max(int atoms, int sites, int illuminated,
                                   const CavityParams& params);
CombEnvelope envelope_two_mode_min(int atoms, int sites, const CavityParams& params);

// --- bad-cavity (continuum) contours ------------------------------------------

// Gaussian-of-shifts convolved with the cavity Lorentzian (Voigt contour),
// integrated adaptively to 1e-10 x peak scale.
Spectrum voigt_single_mode(const CavityParams& params, double center, double sigma_w,
                           std::span<const double> grid);
Spectrum badcavity_two_mode_min(const CavityParams& params, double sigma_w, double center,
                                std::span<const double> grid);
Spectrum badcavity_two_mode_max(const CavityParams& params, double sigma_w, double center,
                                std::span<const double> grid);

// --- grids ---------------------------------------------------------------------

std::vector<double> make_grid(double lo, double hi, int points);

// Adds 3 sample points per half-width over +-2 kappa around each resonance.
std::vector<double> refine_grid(std::vector<double> grid, std::span<const double> resonances,
                                double kappa);

}  // namespace qcomb

#endif
