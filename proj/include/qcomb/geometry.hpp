#ifndef QCOMB_GEOMETRY_HPP
#define QCOMB_GEOMETRY_HPP

#include <complex>
#include <span>
#include <vector>

namespace qcomb {

using Complex = std::complex<double>;

// Spatial profile of one cavity mode evaluated on the lattice sites.
// A mode is parameterized by the dimensionless product kx_d = |k|·d·cosθ
// (axial wavenumber times lattice period) and a spatial phase.
struct ModeGeometry {
    enum class Kind { Traveling, Standing };

    Kind kind = Kind::Traveling;
    double kx_d = 0.0;   // radians per site
    double phase = 0.0;  // radians
    int label = 0;       // mode index l in {0, 1}

    // Helper constructor from |k|·d and the angle between mode and lattice axis.
    static ModeGeometry from_angle(Kind kind, double kd, double theta,
                                   double phase = 0.0, int label = 0);

    void validate() const;  // throws std::invalid_argument on non-finite fields
};

// Lattice of M sites; the illuminated region is the prefix 1..K.
struct LatticeRegion {
    int sites = 1;        // M
    int illuminated = 1;  // K, 1 <= K <= M

    LatticeRegion() = default;
    LatticeRegion(int m, int k);  // validates
};

// One Fock configuration (q_1, ..., q_M).
using OccupationVector = std::vector<int>;

// u_l(r_j) for site j = 1..M:
//   traveling: exp(i(j·kx_d + phase)),  standing: cos(j·kx_d + phase)
Complex mode_function(const ModeGeometry& geom, int site);

// D_lm = sum over illuminated sites of u_l*(r_i) u_m(r_i) q_i.
Complex coupling_coefficient(const ModeGeometry& geom_l, const ModeGeometry& geom_m,
                             std::span<const int> occupation, const LatticeRegion& region);

// Number of atoms in the illuminated prefix, N_K = sum_{i<=K} q_i.
int subset_count(std::span<const int> occupation, int illuminated);

enum class PairClass { Maximum, Minimum, General };

// Classify a mode pair by the per-site product u_1*(r_i) u_0(r_i):
// identically 1 -> Maximum, (-1)^(i+1) -> Minimum, else General.
PairClass classify_pair(const ModeGeometry& geom_0, const ModeGeometry& geom_1,
                        const LatticeRegion& region);

}  // namespace qcomb

#endif
