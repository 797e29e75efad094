#include "qcomb/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qcomb {

namespace {

constexpr double kNormTol = 1e-12;
// Tail components below 1e-16 of the mode are dropped (kept in truncated_mass).
constexpr double kTailCutLog = -36.8413614879047;  // ln(1e-16)

double log_binomial_pmf(int n, int q, double log_p, double log_1mp) {
    return std::lgamma(n + 1.0) - std::lgamma(q + 1.0) - std::lgamma(n - q + 1.0) +
           q * log_p + (n - q) * log_1mp;
}

}  // namespace

double NumberDistribution::sum() const {
    double s = 0.0;
    for (double v : probs) s += v;
    return s;
}

double NumberDistribution::mean() const {
    double m = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) m += (q_min + static_cast<double>(i)) * probs[i];
    return m;
}

double NumberDistribution::variance() const {
    const double m = mean();
    double v = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        const double d = q_min + static_cast<double>(i) - m;
        v += d * d * probs[i];
    }
    return v;
}

NumberDistribution NumberDistribution::delta(int q, int total_atoms, Meaning meaning) {
    NumberDistribution d;
    d.meaning = meaning;
    d.q_min = q;
    d.probs = {1.0};
    d.total_atoms = total_atoms;
    return d;
}

void NumberDistribution::validate() const {
    if (probs.empty())
        throw std::invalid_argument("NumberDistribution: empty support");
    if (q_min < 0 || q_max() > total_atoms)
        throw std::invalid_argument("NumberDistribution: support outside 0..N");
    for (double v : probs)
        if (!(v >= 0.0))
            throw std::invalid_argument("NumberDistribution: negative or NaN probability");
    if (std::abs(sum() + truncated_mass - 1.0) > kNormTol)
        throw std::invalid_argument("NumberDistribution: probabilities sum to " +
                                    std::to_string(sum() + truncated_mass) + ", expected 1");
}

NumberDistribution JointDistribution::marginal_a() const {
    NumberDistribution m;
    m.q_min = 0;
    m.total_atoms = total_atoms;
    m.probs.assign(static_cast<size_t>(total_atoms) + 1, 0.0);
    const int n1 = total_atoms + 1;
    for (int qa = 0; qa < n1; ++qa)
        for (int qb = 0; qb < n1; ++qb)
            m.probs[static_cast<size_t>(qa)] += probs[static_cast<size_t>(qa) * n1 + qb];
    return m;
}

double JointDistribution::sum() const {
    double s = 0.0;
    for (double v : probs) s += v;
    return s;
}

MottInsulator mi_uniform(int atoms, int sites) {
    if (sites < 1) throw std::invalid_argument("mi_uniform: M must be >= 1");
    if (atoms < 0) throw std::invalid_argument("mi_uniform: N must be >= 0");
    if (atoms % sites != 0)
        throw std::invalid_argument("mi_uniform: uniform filling requires M | N (got N=" +
                                    std::to_string(atoms) + ", M=" + std::to_string(sites) + ")");
    return MottInsulator{OccupationVector(static_cast<size_t>(sites), atoms / sites)};
}

NumberDistribution mi_distribution(std::span<const int> fillings, const LatticeRegion& region) {
    if (static_cast<int>(fillings.size()) != region.sites)
        throw std::invalid_argument("mi_distribution: fillings/region size mismatch");
    int total = 0;
    for (int q : fillings) {
        if (q < 0) throw std::invalid_argument("mi_distribution: negative filling");
        total += q;
    }
    const int nk = subset_count(fillings, region.illuminated);
    return NumberDistribution::delta(nk, total);
}

NumberDistribution sf_subset_distribution(int atoms, int sites, int subset_sites) {
    if (sites < 1) throw std::invalid_argument("sf_subset_distribution: M must be >= 1");
    if (atoms < 0) throw std::invalid_argument("sf_subset_distribution: N must be >= 0");
    if (subset_sites < 0 || subset_sites > sites)
        throw std::invalid_argument("sf_subset_distribution: Q must satisfy 0 <= Q <= M");

    if (atoms == 0 || subset_sites == 0) return NumberDistribution::delta(0, atoms);
    if (subset_sites == sites) return NumberDistribution::delta(atoms, atoms);

    const double ratio = static_cast<double>(subset_sites) / sites;
    const double log_p = std::log(ratio);
    const double log_1mp = std::log1p(-ratio);

    // Expand outward from the mode; everything below the tail cut is truncated.
    const int mode = std::clamp(static_cast<int>((atoms + 1.0) * ratio), 0, atoms);
    const double log_pmax = log_binomial_pmf(atoms, mode, log_p, log_1mp);

    int lo = mode, hi = mode;
    while (lo > 0 && log_binomial_pmf(atoms, lo - 1, log_p, log_1mp) >= log_pmax + kTailCutLog)
        --lo;
    while (hi < atoms && log_binomial_pmf(atoms, hi + 1, log_p, log_1mp) >= log_pmax + kTailCutLog)
        ++hi;

    NumberDistribution d;
    d.q_min = lo;
    d.total_atoms = atoms;
    d.probs.resize(static_cast<size_t>(hi - lo) + 1);
    double kept = 0.0;
    for (int q = lo; q <= hi; ++q) {
        const double v = std::exp(log_binomial_pmf(atoms, q, log_p, log_1mp));
        d.probs[static_cast<size_t>(q - lo)] = v;
        kept += v;
    }
    d.truncated_mass = std::max(0.0, 1.0 - kept);
    return d;
}

NumberDistribution sf_imbalance_distribution(int atoms, int sites) {
    if (sites % 2 != 0)
        throw std::invalid_argument("sf_imbalance_distribution: defined for even M only (got M=" +
                                    std::to_string(sites) + ")");
    NumberDistribution d = sf_subset_distribution(atoms, sites, sites / 2);
    d.meaning = NumberDistribution::Meaning::OddEvenImbalanceCount;
    return d;
}

JointDistribution joint_subset_distribution(int atoms, int sites, int subset_a, int subset_b) {
    if (sites < 1) throw std::invalid_argument("joint_subset_distribution: M must be >= 1");
    if (atoms < 0) throw std::invalid_argument("joint_subset_distribution: N must be >= 0");
    if (subset_a < 0 || subset_b < 0 || subset_a + subset_b > sites)
        throw std::invalid_argument("joint_subset_distribution: need Q_a, Q_b >= 0 and Q_a + Q_b <= M");
    if (atoms > 4000)
        throw std::invalid_argument("joint_subset_distribution: dense trinomial limited to N <= 4000");

    JointDistribution j;
    j.total_atoms = atoms;
    j.subset_a = subset_a;
    j.subset_b = subset_b;
    const int n1 = atoms + 1;
    j.probs.assign(static_cast<size_t>(n1) * n1, 0.0);

    const double pa = static_cast<double>(subset_a) / sites;
    const double pb = static_cast<double>(subset_b) / sites;
    const double pr = 1.0 - pa - pb;
    const double log_pa = subset_a > 0 ? std::log(pa) : 0.0;
    const double log_pb = subset_b > 0 ? std::log(pb) : 0.0;
    const double log_pr = (subset_a + subset_b < sites) ? std::log(pr) : 0.0;

    const double log_nfact = std::lgamma(atoms + 1.0);
    for (int qa = 0; qa <= atoms; ++qa) {
        if (subset_a == 0 && qa > 0) break;
        for (int qb = 0; qb + qa <= atoms; ++qb) {
            if (subset_b == 0 && qb > 0) break;
            const int qr = atoms - qa - qb;
            if (subset_a + subset_b == sites && qr > 0) continue;
            const double lw = log_nfact - std::lgamma(qa + 1.0) - std::lgamma(qb + 1.0) -
                              std::lgamma(qr + 1.0) + qa * log_pa + qb * log_pb + qr * log_pr;
            j.probs[static_cast<size_t>(qa) * n1 + qb] = std::exp(lw);
        }
    }
    return j;
}

GaussianApprox gaussian_approx(int atoms, int sites, int subset_sites) {
    if (atoms < 1) throw std::invalid_argument("gaussian_approx: N must be >= 1");
    if (sites < 1 || subset_sites < 0 || subset_sites > sites)
        throw std::invalid_argument("gaussian_approx: need M >= 1 and 0 <= Q <= M");
    const double ratio = static_cast<double>(subset_sites) / sites;
    return {atoms * ratio, std::sqrt(atoms * ratio * (1.0 - ratio))};
}

NumberDistribution project_measurement(const NumberDistribution& dist, int outcome) {
    if (dist.p(outcome) <= 0.0)
        throw std::domain_error("project_measurement: outcome " + std::to_string(outcome) +
                                " has zero probability");
    return NumberDistribution::delta(outcome, dist.total_atoms, dist.meaning);
}

int sample_outcome(const NumberDistribution& dist, std::mt19937_64& gen) {
    // 53-bit uniform in [0,1); bit-reproducible across platforms.
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    const double target = u * (dist.sum() + dist.truncated_mass);
    double cdf = 0.0;
    for (size_t i = 0; i < dist.probs.size(); ++i) {
        cdf += dist.probs[i];
        if (target < cdf) return dist.q_min + static_cast<int>(i);
    }
    return dist.q_max();
}

int sample_outcome(const NumberDistribution& dist, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    return sample_outcome(dist, gen);
}

}  // namespace qcomb
