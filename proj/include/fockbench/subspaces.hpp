#pragma once

#include <vector>

#include <Eigen/Core>

#include "fockbench/errors.hpp"

namespace fockbench {

/// Orthonormal frame spanning a closed subspace of C^ambient_dim.
struct SubspaceFrame {
    int ambient_dim = 0;
    Eigen::MatrixXcd frame; // ambient_dim x rank, orthonormal columns

    static SubspaceFrame from_columns(const Eigen::MatrixXcd& columns,
                                      double rank_threshold = 1e-8);

    int rank() const { return static_cast<int>(frame.cols()); }
    void validate(double tol = 1e-10) const;

    Eigen::VectorXcd project(const Eigen::VectorXcd& xi) const;
    double projection_norm_sq(const Eigen::VectorXcd& xi) const;
};

/// Largest singular value of frame(K)^H frame(L): equals ||p q|| for the
/// orthogonal projections p, q onto the two subspaces, so K and L are
/// eps-orthogonal exactly when this value is <= eps.
double eps_of_pair(const SubspaceFrame& K, const SubspaceFrame& L);

/// Orthonormal frame for the span of all inputs.  Rank is decided by a
/// relative singular-value threshold (default 1e-8).
SubspaceFrame join(const std::vector<SubspaceFrame>& subspaces, double rank_threshold = 1e-8);

/// delta(eps) = 2 eps / sqrt(1 - eps - sqrt(2) eps sqrt(1 - eps)) on [0, 1/2).
double delta(double eps);

/// j-fold composition of delta.  Intermediate iterates must stay below 1/2
/// and the final value below 1; otherwise a RangeError names the failing step.
double delta_iterate(double eps, int j);

struct BoundPair {
    double lhs = 0.0; // measured quantity
    double rhs = 0.0; // bound it must not exceed
    double margin() const { return rhs - lhs; }
};

/// ||P_K xi||^2 + ||P_L xi||^2  vs  (1 + eps)^2 ||P_{K v L} xi||^2.
BoundPair two_projection_bound(const SubspaceFrame& K, const SubspaceFrame& L, double eps,
                               const Eigen::VectorXcd& xi);

/// Measured eps between span(q1, q2) and q3  vs  sqrt(2) eps / sqrt(1 - eps).
BoundPair three_subspace_fact(const SubspaceFrame& q1, const SubspaceFrame& q2,
                              const SubspaceFrame& q3, double eps);

/// 2^k subspaces with a validated pairwise eps-orthogonality bound.
struct EpsFamily {
    std::vector<SubspaceFrame> subspaces;
    double eps = 0.0;

    static EpsFamily validated(std::vector<SubspaceFrame> subspaces, double eps);
    int k() const; // log2 of the family size
};

/// sum_{i<2^level} ||P_i xi||^2  vs  prod_{j<level} (1 + delta^(j)(eps))^2 ||P_join xi||^2.
BoundPair family_bound_check(const EpsFamily& fam, int level, const Eigen::VectorXcd& xi);

} // namespace fockbench
