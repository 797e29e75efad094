#ifndef QCOMB_INFERENCE_HPP
#define QCOMB_INFERENCE_HPP

#include "qcomb/spectra.hpp"
#include "qcomb/states.hpp"

namespace qcomb {

// Result of inverting a transmission spectrum back to the atom-number
// distribution that produced it.
struct InferenceResult {
    NumberDistribution distribution;  // estimated p^(q), normalized
    double mean = 0.0;
    double variance = 0.0;
    double residual = 0.0;            // RMS fit residual relative to spectrum peak
    bool envelope_fallback = false;   // comb unresolved; moments from contour fit
    double condition = 0.0;           // cond(A^T A) estimate of the comb system
};

// Inverts the Lorentzian comb: solves A p = s with nonnegativity, where
// column q of A is the unit-peak Lorentzian of width kappa at the comb
// position of q. kappa and delta0 are known instrument constants. When the
// system is too ill-conditioned to resolve components (kappa ~ comb spacing),
// degrades to moment estimation by fitting the known-kappa broadened contour.
InferenceResult extract_distribution(const Spectrum& spectrum, const CavityParams& params,
                                     CombMapping mapping);

enum class PhaseClass { MottInsulatorLike, SuperfluidLike, Indeterminate };

// Number fluctuations relative to the mean decide the label:
// variance/mean > threshold reads as SF-like. mean == 0 is indeterminate.
PhaseClass classify_phase(const InferenceResult& result, double threshold = 0.1);

std::string to_string(PhaseClass phase);

}  // namespace qcomb

#endif
