#ifndef QCOMB_STATES_HPP
#define QCOMB_STATES_HPP

#include <cstdint>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "qcomb/geometry.hpp"

namespace qcomb {

// Probability mass function over a scalar statistical variable q (a subset
// atom count, or the odd-site atom count when probing the odd/even imbalance).
// Support is the contiguous window [q_min, q_min + probs.size() - 1] inside
// 0..total_atoms; mass dropped by tail truncation is kept in truncated_mass.
struct NumberDistribution {
    enum class Meaning { SubsetCount, OddEvenImbalanceCount };

    Meaning meaning = Meaning::SubsetCount;
    int q_min = 0;
    std::vector<double> probs;
    int total_atoms = 0;     // N; support never extends past it
    double truncated_mass = 0.0;

    int q_max() const { return q_min + static_cast<int>(probs.size()) - 1; }
    double p(int q) const {
        return (q < q_min || q > q_max()) ? 0.0 : probs[static_cast<size_t>(q - q_min)];
    }
    double sum() const;
    double mean() const;
    double variance() const;

    static NumberDistribution delta(int q, int total_atoms,
                                    Meaning meaning = Meaning::SubsetCount);

    // Checks nonnegativity, support bounds, and sum + truncated_mass == 1
    // within 1e-12. Throws std::invalid_argument.
    void validate() const;
};

// Joint PMF over the atom counts (q_a, q_b) of two disjoint site subsets,
// stored dense with stride total_atoms + 1.
struct JointDistribution {
    int total_atoms = 0;                 // N
    int subset_a = 0, subset_b = 0;      // Q_a, Q_b
    std::vector<double> probs;           // p(q_a, q_b) at q_a*(N+1) + q_b

    double p(int qa, int qb) const {
        const int n1 = total_atoms + 1;
        if (qa < 0 || qb < 0 || qa >= n1 || qb >= n1) return 0.0;
        return probs[static_cast<size_t>(qa) * n1 + qb];
    }
    NumberDistribution marginal_a() const;
    double sum() const;
};

struct GaussianApprox {
    double center = 0.0;  // q~ = N Q / M
    double sigma = 0.0;   // sqrt(N (Q/M)(1 - Q/M))
};

// --- atomic states ----------------------------------------------------------

struct MottInsulator {
    OccupationVector fillings;  // nonnegative, one entry per site
};

struct Superfluid {
    int atoms = 0;  // N
    int sites = 1;  // M
};

struct CustomState {
    NumberDistribution dist;
};

using AtomicState = std::variant<MottInsulator, Superfluid, CustomState>;

// Uniform MI with n = N/M atoms per site; requires M | N.
MottInsulator mi_uniform(int atoms, int sites);

// --- reductions -------------------------------------------------------------

// MI subset count is deterministic: delta at N_K = sum of fillings over 1..K.
NumberDistribution mi_distribution(std::span<const int> fillings, const LatticeRegion& region);

// Binomial reduction of the SF multinomial for a subset of Q specified sites:
// p(q) = C(N,q) (Q/M)^q (1-Q/M)^(N-q), computed in the log domain.
NumberDistribution sf_subset_distribution(int atoms, int sites, int subset_sites);

// Odd-site atom count for the odd/even imbalance variable (whole lattice
// illuminated, M even): binomial with Q = M/2. The imbalance entering the
// two-mode minimum is 2q - N.
NumberDistribution sf_imbalance_distribution(int atoms, int sites);

// Trinomial reduction for two disjoint subsets of sizes Q_a, Q_b.
JointDistribution joint_subset_distribution(int atoms, int sites, int subset_a, int subset_b);

GaussianApprox gaussian_approx(int atoms, int sites, int subset_sites);

// Projective measurement with outcome q: collapses to a delta at q.
// Throws std::domain_error for outcomes outside the support or with p = 0.
NumberDistribution project_measurement(const NumberDistribution& dist, int outcome);

// Inverse-CDF draw. The generator overload advances the generator state, so a
// sequence of draws is reproducible from one seed.
int sample_outcome(const NumberDistribution& dist, std::mt19937_64& gen);
int sample_outcome(const NumberDistribution& dist, std::uint64_t seed);

}  // namespace qcomb

#endif
