#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "fockbench/torus.hpp"

namespace fockbench {

/// Measure on T^2 arising as the pushforward of (source x Haar) under
/// Psi(z1, z2) = (z1 conj(z2), z2).  The change of variables forces
/// eta_hat(m, n) = source_hat(m) when m = n and 0 otherwise, so the 2-d
/// object is stored as its diagonal coefficient sequence; the fiber over the
/// second coordinate t is the source measure rotated by conj(t).
struct TorusSquareMeasure {
    int window = 0;
    Eigen::VectorXcd diag;        // source_hat(m), index m + window
    int grid_n = 0;               // resolution of the fiber render
    Eigen::VectorXd fiber_weights; // grid render of the source measure

    Complex coeff(int m, int n) const;
};

TorusSquareMeasure pushforward_psi(const TorusMeasure& minf, int window, int grid_n = 4096);

struct MasaInvariantReport {
    std::vector<std::string> family_ids;
    Eigen::MatrixXd pairwise;       // cell-affinity scores of the first-coordinate fibers
    Eigen::VectorXd vs_haar;        // affinity of each fiber measure with Haar
    Eigen::VectorXd fiber_max_cell; // atom proxy: largest single-cell fiber mass
    int resolution_level = 0;
    std::string multiplicity;       // always "not computed"
};

/// Pairwise singularity diagnostics for the pushforward measures built from
/// a family of circle measures: Psi collapses 2-d singularity questions to
/// the first-coordinate fiber measures sum 2^-m mu^(*m).
MasaInvariantReport disjointness_matrix(const std::vector<TorusMeasure>& family, int level,
                                        int window, int terms = 20, int grid_n = 1 << 14);

struct ExoticnessReport {
    int fiber_count = 0;
    int level = 0;
    Eigen::VectorXd atom_proxy;    // per fiber, max single-cell mass at the finer level
    Eigen::VectorXd haar_affinity; // per fiber, affinity with Haar at the finer level
    bool atoms_flagged = false;    // some fiber concentrates in a single cell
    bool exotic_consistent = false; // both diagnostics decay under refinement
};

/// Samples fibers of eta over the second coordinate and reports atom proxies
/// and Haar affinities at the given resolution and one level finer.
ExoticnessReport exoticness_probe(const TorusSquareMeasure& eta, int level, int fibers = 16);

} // namespace fockbench
