#pragma once

#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "fockbench/bogoljubov.hpp"
#include "fockbench/errors.hpp"
#include "fockbench/fock.hpp"

namespace fockbench {

// Angles are measured in turns: theta in [0, 1) stands for the circle point
// exp(2 pi i theta); conjugation is theta -> -theta mod 1.

struct AtomicMeasure {
    struct Atom {
        double angle; // in [0, 1)
        double mass;  // > 0
    };
    std::vector<Atom> atoms;
};

/// Weights on the uniform grid j/N, N a power of two.
struct GridMeasure {
    int n = 0;
    Eigen::VectorXd weights;
};

/// Self-similar measure on an arc: the attractor of the maps
/// t -> offset_b + ratio * t on [-1, 1] (angle = center + half_width * t),
/// with equal branch weights, truncated at the given depth.  When
/// symmetrized, half the mass sits on the conjugate arc with mirrored maps.
struct CantorMeasure {
    double center = 0.0;
    double half_width = 0.0;
    double ratio = 0.0; // in (0, 1/2)
    std::vector<double> offsets;
    int depth = 0;
    bool symmetrized = false;
};

using TorusMeasure = std::variant<AtomicMeasure, GridMeasure, CantorMeasure>;

void validate(const TorusMeasure& mu);

TorusMeasure dirac(double angle);
TorusMeasure haar(int grid_n);
TorusMeasure middle_thirds_cantor(int depth);

/// Window of Fourier-Stieltjes coefficients mu_hat(n) = int z^n dmu for
/// |n| <= window.  coeff(0) = 1 and coeff(-n) = conj(coeff(n)).
struct FourierWindow {
    int window = 0;
    Eigen::VectorXcd coefficients; // index n + window
    double tail_bound = 0.0;       // depth-truncation bound for Cantor sources
    std::string source;

    Complex coeff(int n) const;
};

/// Exact sums for atoms and grids; the level-by-level phase-average product
/// for Cantor measures, with the truncation tail bound reported.
FourierWindow fourier(const TorusMeasure& mu, int window);

struct SymmetryReport {
    double max_imag = 0.0;
    double tol = 0.0;
    bool symmetric = false;
};

/// Symmetric measures have purely real coefficients; reports the largest
/// imaginary part over the window.
SymmetryReport is_symmetric(const TorusMeasure& mu, int window, double tol = 1e-9);

/// Tail suprema sup_{m <= |n| <= window} |mu_hat(n)| for m = 1..window.
/// A finite decay profile only; no asymptotic verdict is attempted.
Eigen::VectorXd rajchman_profile(const TorusMeasure& mu, int window);

/// Render to grid weights (atoms to nearest grid point, Cantor measures by
/// dyadic cell mass).  grid_n must be a power of two.
GridMeasure render(const TorusMeasure& mu, int grid_n);

/// Circular convolution on a common grid.  With grid_n = 0 both inputs must
/// already be grids of equal size.
GridMeasure convolve(const TorusMeasure& mu, const TorusMeasure& nu, int grid_n);

/// Normalized partial sum of the convolution-geometric series
///   sum_{m=1..terms} 2^-m mu^(*m) / (1 - 2^-terms),
/// whose coefficients approach mu_hat / (2 - mu_hat).
GridMeasure m_infinity(const TorusMeasure& mu, int terms, int grid_n);

struct CantorFamilyParams {
    double region_lo = 1.0 / 16.0; // arcs are allocated inside (region_lo, region_hi)
    double region_hi = 7.0 / 16.0; // within the upper half-circle
    double fill = 0.5;             // fraction of each slot covered by the arc
    double ratio = 0.21;
    double ratio_spread = 0.04;    // distinct members get distinct contraction ratios
    int depth = 24;
};

/// Symmetrized Cantor measure on the arc pair indexed by the bit string:
/// distinct indices give measures with disjoint topological supports.
TorusMeasure cantor_family_member(const std::vector<bool>& bits, const CantorFamilyParams& params);

/// Dyadic cell masses at resolution 2^-level (cells [i 2^-level, (i+1) 2^-level)).
Eigen::VectorXd cell_masses(const TorusMeasure& mu, int level);

/// Indices of the dyadic cells at resolution 2^-level carrying mass strictly
/// above the threshold.
std::vector<int> support_cells(const TorusMeasure& mu, int level, double threshold = 0.0);

/// Bhattacharyya affinity sum_I sqrt(mu(I) nu(I)) over dyadic cells at
/// resolution 2^-level: 1 for identical measures, 0 exactly when the cell
/// supports are disjoint.
double singularity_score(const TorusMeasure& mu, const TorusMeasure& nu, int level);

struct HSpaceRep {
    Eigen::MatrixXcd matrix; // multiplication by z^n on the weighted grid space
    OrthogonalRep rep;       // generator = multiplication by z
};

/// The representation (pi(n) zeta)(z) = z^n zeta(z) on L2(T, mu) for a
/// symmetric grid measure, in weight-normalized coordinates where the grid
/// conjugation z -> zbar becomes the basis permutation j -> N - j.
HSpaceRep h_space_rep(const GridMeasure& mu, long n);

} // namespace fockbench
