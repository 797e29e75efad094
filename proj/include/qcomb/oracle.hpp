#ifndef QCOMB_ORACLE_HPP
#define QCOMB_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "qcomb/states.hpp"

namespace qcomb {

// Raised when an enumeration would exceed the configuration cap; the caller
// should fall back to the binomial/trinomial reductions.
class EnumerationCapExceeded : public std::runtime_error {
public:
    explicit EnumerationCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::uint64_t kDefaultConfigCap = 100'000'000;

// One Fock configuration with its multinomial weight N!/(q_1!...q_M!)/M^N,
// kept in the log domain until the final exponentiation.
struct WeightedConfiguration {
    OccupationVector occupation;
    double log_weight;
};

// C(N+M-1, M-1), saturated far above any realistic cap.
std::uint64_t composition_count(int atoms, int sites);

double configuration_log_weight(std::span<const int> occupation, int sites);

// Composition of rank `rank` (lexicographic order) via the combinatorial
// number system; inverse of the enumeration order below.
OccupationVector unrank_composition(std::uint64_t rank, int atoms, int sites);

// Advances a composition to its lexicographic successor in place; returns
// false after the last one (N, 0, ..., 0).
bool next_composition(OccupationVector& occ);

// Visits every composition of N atoms over M sites exactly once, in
// lexicographic order, with log-domain weights. Throws EnumerationCapExceeded
// before any work if the composition count exceeds `cap`.
void enumerate_configurations(int atoms, int sites,
                              const std::function<void(const WeightedConfiguration&)>& visit,
                              std::uint64_t cap = kDefaultConfigCap);

// Exact SF expectation of f over all configurations (Eq.-(4)-style multinomial
// average). Chunked by composition rank; chunk partial sums are combined with
// a fixed pairwise tree, so the result is identical for any thread count.
double exact_expectation(const std::function<double(std::span<const int>)>& f, int atoms,
                         int sites, std::uint64_t cap = kDefaultConfigCap, int threads = 1);

// MI expectation is the single-configuration evaluation.
double mi_expectation(const std::function<double(std::span<const int>)>& f,
                      std::span<const int> fillings);

// PMF of an integer statistic of the configuration under SF weights.
NumberDistribution exact_distribution(
    const std::function<int(std::span<const int>)>& statistic, int atoms, int sites,
    NumberDistribution::Meaning meaning = NumberDistribution::Meaning::SubsetCount,
    std::uint64_t cap = kDefaultConfigCap);

}  // namespace qcomb

#endif
