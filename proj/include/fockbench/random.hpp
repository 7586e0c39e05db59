#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "fockbench/bogoljubov.hpp"
#include "fockbench/fock.hpp"
#include "fockbench/subspaces.hpp"
#include "fockbench/wick.hpp"

namespace fockbench {

/// splitmix64 generator: tiny, seedable, byte-stable across platforms.
/// Per-trial streams are derived from the master seed so results do not
/// depend on evaluation order.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    double uniform();                  // [0, 1)
    double uniform(double lo, double hi);
    double normal();                   // Box-Muller, two uniforms per draw
    Complex cnormal();
    long integer(long lo, long hi);    // inclusive bounds

    Rng fork(std::uint64_t stream) const; // independent deterministic substream

private:
    std::uint64_t state_;
};

Eigen::MatrixXd random_orthogonal(Rng& rng, int dim);
Eigen::MatrixXcd random_unitary(Rng& rng, int dim);

/// Random involutive permutation (a conjugation basis action).
std::vector<int> random_involution(Rng& rng, int dim);

/// Unitary compatible with the spec's conjugation: the image of a random
/// real orthogonal matrix under the isometry identifying the
/// conjugation-fixed real subspace with R^dim.
OrthogonalRep random_rep(Rng& rng, const HilbertSpec& spec);

/// Random conjugation-fixed unit vector (an element of the real subspace).
HVector random_real_letter(Rng& rng, const HilbertSpec& spec);

SubspaceFrame random_frame(Rng& rng, int ambient_dim, int rank);

/// Random conjugation-closed frame (real-structured subspace), for sector
/// decompositions.
SubspaceFrame random_conj_closed_frame(Rng& rng, const HilbertSpec& spec, int rank);

/// count frames of the given rank, pairwise exactly orthogonal at the start
/// and then rotated toward each other by angles at most asin(eps_target);
/// the true pairwise bound is measured afterwards and must be used in bounds.
std::vector<SubspaceFrame> random_eps_family(Rng& rng, int ambient_dim, int count, int rank,
                                             double eps_target);

double measured_pairwise_eps(const std::vector<SubspaceFrame>& frames);

/// Random Wick expression with conjugation-fixed letters, complex
/// coefficients, and words of length 1..max_degree.
WickExpression random_expression(Rng& rng, const HilbertSpec& spec, int max_degree, int terms,
                                 bool include_scalar = true);

Eigen::VectorXcd random_cvector(Rng& rng, int dim);

} // namespace fockbench
