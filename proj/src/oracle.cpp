#include "qcomb/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <thread>
#include <vector>

namespace qcomb {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

void check_nm(int atoms, int sites) {
    if (atoms < 0) throw std::invalid_argument("oracle: N must be >= 0");
    if (sites < 1) throw std::invalid_argument("oracle: M must be >= 1");
}

// Deterministic pairwise reduction: independent of how partials were produced.
double pairwise_reduce(std::vector<double> v) {
    if (v.empty()) return 0.0;
    size_t n = v.size();
    while (n > 1) {
        const size_t half = n / 2;
        for (size_t i = 0; i < half; ++i) v[i] = v[2 * i] + v[2 * i + 1];
        if (n % 2 == 1) {
            v[half] = v[n - 1];
            n = half + 1;
        } else {
            n = half;
        }
    }
    return v[0];
}

}  // namespace

std::uint64_t composition_count(int atoms, int sites) {
    check_nm(atoms, sites);
    // C(N+M-1, M-1) with multiply/divide interleaving; saturates on overflow.
    std::uint64_t result = 1;
    const int k = sites - 1;
    for (int i = 1; i <= k; ++i) {
        const std::uint64_t num = static_cast<std::uint64_t>(atoms) + i;
        // result * num / i is integral at each step for C(n, k) built this way
        if (result > kSaturated / num) return kSaturated;
        result = result * num / i;
    }
    return result;
}

double configuration_log_weight(std::span<const int> occupation, int sites) {
    int n = 0;
    double lfact = 0.0;
    for (int q : occupation) {
        n += q;
        lfact += std::lgamma(q + 1.0);
    }
    return std::lgamma(n + 1.0) - lfact - n * std::log(static_cast<double>(sites));
}

OccupationVector unrank_composition(std::uint64_t rank, int atoms, int sites) {
    check_nm(atoms, sites);
    OccupationVector occ(static_cast<size_t>(sites), 0);
    int remaining = atoms;
    for (int pos = 0; pos < sites - 1; ++pos) {
        const int rest = sites - pos - 1;
        int value = 0;
        while (true) {
            const std::uint64_t block = composition_count(remaining - value, rest);
            if (rank < block) break;
            rank -= block;
            ++value;
            if (value > remaining)
                throw std::out_of_range("unrank_composition: rank out of range");
        }
        occ[static_cast<size_t>(pos)] = value;
        remaining -= value;
    }
    occ.back() = remaining;
    if (rank != 0) throw std::out_of_range("unrank_composition: rank out of range");
    return occ;
}

bool next_composition(OccupationVector& occ) {
    const int m = static_cast<int>(occ.size());
    if (m == 1) return false;
    if (occ.back() > 0) {
        // shift one unit from the tail onto the second-to-last slot
        occ[static_cast<size_t>(m - 2)] += 1;
        occ[static_cast<size_t>(m - 1)] -= 1;
        return true;
    }
    // find rightmost nonzero among positions 0..m-2
    int i = m - 2;
    while (i >= 0 && occ[static_cast<size_t>(i)] == 0) --i;
    if (i <= 0) return false;  // (N, 0, ..., 0) is last
    const int moved = occ[static_cast<size_t>(i)];
    occ[static_cast<size_t>(i)] = 0;
    occ[static_cast<size_t>(i - 1)] += 1;
    occ.back() = moved - 1;
    return true;
}

void enumerate_configurations(int atoms, int sites,
                              const std::function<void(const WeightedConfiguration&)>& visit,
                              std::uint64_t cap) {
    check_nm(atoms, sites);
    const std::uint64_t total = composition_count(atoms, sites);
    if (total > cap)
        throw EnumerationCapExceeded("enumeration of " + std::to_string(total) +
                                     " configurations exceeds cap " + std::to_string(cap) +
                                     "; use the binomial/trinomial reductions instead");
    WeightedConfiguration wc;
    wc.occupation.assign(static_cast<size_t>(sites), 0);
    wc.occupation.back() = atoms;
    do {
        wc.log_weight = configuration_log_weight(wc.occupation, sites);
        visit(wc);
    } while (next_composition(wc.occupation));
}

double exact_expectation(const std::function<double(std::span<const int>)>& f, int atoms,
                         int sites, std::uint64_t cap, int threads) {
    check_nm(atoms, sites);
    const std::uint64_t total = composition_count(atoms, sites);
    if (total > cap)
        throw EnumerationCapExceeded("enumeration of " + std::to_string(total) +
                                     " configurations exceeds cap " + std::to_string(cap));

    constexpr std::uint64_t kChunk = 8192;
    const std::uint64_t n_chunks = (total + kChunk - 1) / kChunk;
    std::vector<double> partial(static_cast<size_t>(n_chunks), 0.0);

    auto run_chunk = [&](std::uint64_t c) {
        const std::uint64_t begin = c * kChunk;
        const std::uint64_t end = std::min(begin + kChunk, total);
        OccupationVector occ = unrank_composition(begin, atoms, sites);
        double sum = 0.0;
        for (std::uint64_t r = begin; r < end; ++r) {
            sum += std::exp(configuration_log_weight(occ, sites)) * f(occ);
            if (r + 1 < end) next_composition(occ);
        }
        partial[static_cast<size_t>(c)] = sum;
    };

    const int n_workers = std::max(1, std::min<int>(threads, static_cast<int>(n_chunks)));
    if (n_workers == 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::uint64_t> cursor{0};
        for (int t = 0; t < n_workers; ++t)
            pool.emplace_back([&] {
                for (std::uint64_t c; (c = cursor.fetch_add(1)) < n_chunks;) run_chunk(c);
            });
        for (auto& th : pool) th.join();
    }
    return pairwise_reduce(std::move(partial));
}

double mi_expectation(const std::function<double(std::span<const int>)>& f,
                      std::span<const int> fillings) {
    return f(fillings);
}

NumberDistribution exact_distribution(
    const std::function<int(std::span<const int>)>& statistic, int atoms, int sites,
    NumberDistribution::Meaning meaning, std::uint64_t cap) {
    std::map<int, double> hist;
    enumerate_configurations(
        atoms, sites,
        [&](const WeightedConfiguration& wc) {
            hist[statistic(wc.occupation)] += std::exp(wc.log_weight);
        },
        cap);

    NumberDistribution d;
    d.meaning = meaning;
    d.total_atoms = atoms;
    d.q_min = hist.begin()->first;
    const int q_max = hist.rbegin()->first;
    d.probs.assign(static_cast<size_t>(q_max - d.q_min) + 1, 0.0);
    for (const auto& [q, w] : hist) d.probs[static_cast<size_t>(q - d.q_min)] = w;
    return d;
}

}  // namespace qcomb
