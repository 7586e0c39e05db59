#include "fockbench/subspaces.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

namespace fockbench {

SubspaceFrame SubspaceFrame::from_columns(const Eigen::MatrixXcd& columns, double rank_threshold) {
    if (columns.cols() == 0 || columns.rows() == 0)
        throw ParameterError("SubspaceFrame: need at least one column");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(columns, Eigen::ComputeThinU);
    const double top = svd.singularValues()(0);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > rank_threshold * top) ++rank;
    if (rank == 0) throw ParameterError("SubspaceFrame: columns span the zero subspace");
    SubspaceFrame f;
    f.ambient_dim = static_cast<int>(columns.rows());
    f.frame = svd.matrixU().leftCols(rank);
    return f;
}

void SubspaceFrame::validate(double tol) const {
    if (ambient_dim <= 0 || frame.rows() != ambient_dim)
        throw ParameterError("SubspaceFrame: ambient dimension mismatch");
    if (frame.cols() < 1 || frame.cols() > frame.rows())
        throw PreconditionError("SubspaceFrame: rank must lie in [1, ambient_dim]");
    const Eigen::MatrixXcd gram = frame.adjoint() * frame;
    const double err = (gram - Eigen::MatrixXcd::Identity(frame.cols(), frame.cols())).norm();
    if (err > tol * static_cast<double>(frame.cols()))
        throw PreconditionError("SubspaceFrame: columns are not orthonormal (defect " +
                                std::to_string(err) + ")");
}

Eigen::VectorXcd SubspaceFrame::project(const Eigen::VectorXcd& xi) const {
    return frame * (frame.adjoint() * xi);
}

double SubspaceFrame::projection_norm_sq(const Eigen::VectorXcd& xi) const {
    return (frame.adjoint() * xi).squaredNorm();
}

double eps_of_pair(const SubspaceFrame& K, const SubspaceFrame& L) {
    if (K.ambient_dim != L.ambient_dim)
        throw DimensionError("eps_of_pair: ambient dimensions differ");
    const Eigen::MatrixXcd cross = K.frame.adjoint() * L.frame;
    // evaluating both orientations keeps the result exactly symmetric in (K, L)
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cross);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd_t(Eigen::MatrixXcd(cross.adjoint()));
    return std::max(svd.singularValues()(0), svd_t.singularValues()(0));
}

SubspaceFrame join(const std::vector<SubspaceFrame>& subspaces, double rank_threshold) {
    if (subspaces.empty()) throw ParameterError("join: empty subspace list");
    const int ambient = subspaces.front().ambient_dim;
    int total = 0;
    for (const auto& s : subspaces) {
        if (s.ambient_dim != ambient) throw DimensionError("join: ambient dimensions differ");
        total += s.rank();
    }
    Eigen::MatrixXcd stacked(ambient, total);
    int col = 0;
    for (const auto& s : subspaces) {
        stacked.middleCols(col, s.rank()) = s.frame;
        col += s.rank();
    }
    return SubspaceFrame::from_columns(stacked, rank_threshold);
}

double delta(double eps) {
    if (eps < 0.0 || eps >= 0.5)
        throw RangeError("delta: eps must lie in [0, 1/2), got " + std::to_string(eps));
    const double root = std::sqrt(1.0 - eps);
    const double denom = 1.0 - eps - std::sqrt(2.0) * eps * root;
    return 2.0 * eps / std::sqrt(denom);
}

double delta_iterate(double eps, int j) {
    if (j < 0) throw ParameterError("delta_iterate: j must be nonnegative");
    double value = eps;
    for (int step = 1; step <= j; ++step) {
        if (value >= 0.5)
            throw RangeError("delta_iterate: iterate " + std::to_string(step - 1) + " equals " +
                             std::to_string(value) + " >= 1/2, cannot compose further");
        value = delta(value);
    }
    if (j > 0 && value >= 1.0)
        throw RangeError("delta_iterate: final iterate " + std::to_string(value) + " >= 1");
    return value;
}

BoundPair two_projection_bound(const SubspaceFrame& K, const SubspaceFrame& L, double eps,
                               const Eigen::VectorXcd& xi) {
    const double measured = eps_of_pair(K, L);
    if (measured > eps + 1e-12)
        throw PreconditionError("two_projection_bound: measured eps " + std::to_string(measured) +
                                " exceeds the claimed bound " + std::to_string(eps));
    BoundPair out;
    out.lhs = K.projection_norm_sq(xi) + L.projection_norm_sq(xi);
    const SubspaceFrame joined = join({K, L});
    out.rhs = (1.0 + eps) * (1.0 + eps) * joined.projection_norm_sq(xi);
    return out;
}

BoundPair three_subspace_fact(const SubspaceFrame& q1, const SubspaceFrame& q2,
                              const SubspaceFrame& q3, double eps) {
    if (eps < 0.0 || eps >= 1.0) throw RangeError("three_subspace_fact: eps must lie in [0, 1)");
    const double pairwise = std::max({eps_of_pair(q1, q2), eps_of_pair(q2, q3), eps_of_pair(q3, q1)});
    if (pairwise > eps + 1e-12)
        throw PreconditionError("three_subspace_fact: measured pairwise eps " +
                                std::to_string(pairwise) + " exceeds " + std::to_string(eps));
    BoundPair out;
    out.lhs = eps_of_pair(join({q1, q2}), q3);
    out.rhs = std::sqrt(2.0) * eps / std::sqrt(1.0 - eps);
    return out;
}

EpsFamily EpsFamily::validated(std::vector<SubspaceFrame> subspaces, double eps) {
    if (subspaces.empty()) throw ParameterError("EpsFamily: empty family");
    const size_t n = subspaces.size();
    if ((n & (n - 1)) != 0) throw ParameterError("EpsFamily: family size must be a power of two");
    if (eps < 0.0 || eps >= 1.0) throw RangeError("EpsFamily: eps must lie in [0, 1)");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            const double m = eps_of_pair(subspaces[i], subspaces[j]);
            if (m > eps + 1e-9)
                throw ParameterError("EpsFamily: pair (" + std::to_string(i) + "," +
                                     std::to_string(j) + ") has eps " + std::to_string(m) +
                                     " above the claimed " + std::to_string(eps));
        }
    EpsFamily f;
    f.subspaces = std::move(subspaces);
    f.eps = eps;
    return f;
}

int EpsFamily::k() const {
    int k = 0;
    size_t n = subspaces.size();
    while (n > 1) {
        n >>= 1;
        ++k;
    }
    return k;
}

BoundPair family_bound_check(const EpsFamily& fam, int level, const Eigen::VectorXcd& xi) {
    const int k = fam.k();
    if (level < 1 || level > k)
        throw RangeError("family_bound_check: level must lie in [1, k]");
    delta_iterate(fam.eps, k - 1); // throws when eps is inadmissible for this family size
    BoundPair out;
    const size_t count = size_t{1} << level;
    double factor = 1.0;
    for (int j = 0; j < level; ++j) {
        const double d = delta_iterate(fam.eps, j);
        factor *= (1.0 + d) * (1.0 + d);
    }
    std::vector<SubspaceFrame> first(fam.subspaces.begin(),
                                     fam.subspaces.begin() + static_cast<long>(count));
    for (const auto& s : first) out.lhs += s.projection_norm_sq(xi);
    out.rhs = factor * join(first).projection_norm_sq(xi);
    return out;
}

} // namespace fockbench
