#include "qcomb/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcomb {

ModeGeometry ModeGeometry::from_angle(Kind kind, double kd, double theta,
                                      double phase, int label) {
    ModeGeometry geom;
    geom.kind = kind;
    geom.kx_d = kd * std::cos(theta);
    geom.phase = phase;
    geom.label = label;
    geom.validate();
    return geom;
}

void ModeGeometry::validate() const {
    if (!std::isfinite(kx_d) || !std::isfinite(phase))
        throw std::invalid_argument("ModeGeometry: kx_d and phase must be finite");
}

LatticeRegion::LatticeRegion(int m, int k) : sites(m), illuminated(k) {
    if (m < 1)
        throw std::invalid_argument("LatticeRegion: M must be >= 1");
    if (k < 1 || k > m)
        throw std::invalid_argument("LatticeRegion: K must satisfy 1 <= K <= M");
}

Complex mode_function(const ModeGeometry& geom, int site) {
    if (site < 1)
        throw std::invalid_argument("mode_function: site index starts at 1");
    const double arg = site * geom.kx_d + geom.phase;
    if (geom.kind == ModeGeometry::Kind::Traveling)
        return {std::cos(arg), std::sin(arg)};
    return {std::cos(arg), 0.0};
}

Complex coupling_coefficient(const ModeGeometry& geom_l, const ModeGeometry& geom_m,
                             std::span<const int> occupation, const LatticeRegion& region) {
    if (static_cast<int>(occupation.size()) != region.sites)
        throw std::invalid_argument("coupling_coefficient: occupation has " +
                                    std::to_string(occupation.size()) + " entries, region has " +
                                    std::to_string(region.sites) + " sites");
    Complex sum = 0.0;
    for (int i = 1; i <= region.illuminated; ++i) {
        const double q = occupation[static_cast<size_t>(i - 1)];
        sum += std::conj(mode_function(geom_l, i)) * mode_function(geom_m, i) * q;
    }
    return sum;
}

int subset_count(std::span<const int> occupation, int illuminated) {
    if (illuminated < 0 || illuminated > static_cast<int>(occupation.size()))
        throw std::invalid_argument("subset_count: K out of range");
    int n = 0;
    for (int i = 0; i < illuminated; ++i) n += occupation[static_cast<size_t>(i)];
    return n;
}

PairClass classify_pair(const ModeGeometry& geom_0, const ModeGeometry& geom_1,
                        const LatticeRegion& region) {
    constexpr double tol = 1e-9;
    bool is_max = true;
    bool is_min = true;
    for (int i = 1; i <= region.illuminated; ++i) {
        const Complex w = std::conj(mode_function(geom_1, i)) * mode_function(geom_0, i);
        const double sign = (i % 2 == 1) ? 1.0 : -1.0;
        if (std::abs(w - Complex(1.0)) > tol) is_max = false;
        if (std::abs(w - Complex(sign)) > tol) is_min = false;
        if (!is_max && !is_min) return PairClass::General;
    }
    if (is_max) return PairClass::Maximum;
    return PairClass::Minimum;
}

}  // namespace qcomb
