#include "fockbench/random.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace fockbench {

std::uint64_t Rng::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::cnormal() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im) / std::sqrt(2.0);
}

long Rng::integer(long lo, long hi) {
    if (hi < lo) throw ParameterError("Rng::integer: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
}

Rng Rng::fork(std::uint64_t stream) const {
    Rng child(state_ ^ (0xd1b54a32d192ed03ULL * (stream + 1)));
    child.next();
    return child;
}

Eigen::MatrixXd random_orthogonal(Rng& rng, int dim) {
    Eigen::MatrixXd g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j); // fix the QR sign ambiguity
    return q;
}

Eigen::MatrixXcd random_unitary(Rng& rng, int dim) {
    Eigen::MatrixXcd g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.cnormal();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        if (d != Complex(0.0)) q.col(j) *= d / std::abs(d);
    }
    return q;
}

std::vector<int> random_involution(Rng& rng, int dim) {
    std::vector<int> perm(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) perm[static_cast<size_t>(i)] = i;
    std::vector<int> free_idx = perm;
    // repeatedly either fix the first free index or pair it with another
    std::vector<int> out = perm;
    while (free_idx.size() >= 2) {
        const int a = free_idx.front();
        if (rng.uniform() < 0.4) {
            free_idx.erase(free_idx.begin());
            continue;
        }
        const size_t pick = static_cast<size_t>(rng.integer(1, static_cast<long>(free_idx.size()) - 1));
        const int b = free_idx[pick];
        out[static_cast<size_t>(a)] = b;
        out[static_cast<size_t>(b)] = a;
        free_idx.erase(free_idx.begin() + static_cast<long>(pick));
        free_idx.erase(free_idx.begin());
    }
    return out;
}

namespace {

// Unitary V whose columns form an orthonormal basis of the conjugation-fixed
// real subspace: conj(V x) = V conj(x) for real-coefficient x.
Eigen::MatrixXcd real_structure_isometry(const HilbertSpec& spec) {
    const int dim = spec.dim;
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(dim, dim);
    int col = 0;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < dim; ++i) {
        const int j = spec.conj_perm[static_cast<size_t>(i)];
        if (j == i) {
            v(i, col++) = 1.0;
        } else if (i < j) {
            v(i, col) = inv_sqrt2;
            v(j, col) = inv_sqrt2;
            ++col;
            v(i, col) = Complex(0.0, inv_sqrt2);
            v(j, col) = Complex(0.0, -inv_sqrt2);
            ++col;
        }
    }
    return v;
}

} // namespace

OrthogonalRep random_rep(Rng& rng, const HilbertSpec& spec) {
    const Eigen::MatrixXcd v = real_structure_isometry(spec);
    const Eigen::MatrixXd o = random_orthogonal(rng, spec.dim);
    OrthogonalRep rep;
    rep.space = spec;
    rep.gen = v * o.cast<Complex>() * v.adjoint();
    rep.validate();
    return rep;
}

HVector random_real_letter(Rng& rng, const HilbertSpec& spec) {
    const Eigen::MatrixXcd v = real_structure_isometry(spec);
    Eigen::VectorXd real_coords(spec.dim);
    for (int i = 0; i < spec.dim; ++i) real_coords[i] = rng.normal();
    real_coords.normalize();
    return HVector{spec, v * real_coords.cast<Complex>()};
}

Eigen::VectorXcd random_cvector(Rng& rng, int dim) {
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = rng.cnormal();
    return v;
}

SubspaceFrame random_frame(Rng& rng, int ambient_dim, int rank) {
    if (rank < 1 || rank > ambient_dim) throw ParameterError("random_frame: bad rank");
    const Eigen::MatrixXcd u = random_unitary(rng, ambient_dim);
    SubspaceFrame f;
    f.ambient_dim = ambient_dim;
    f.frame = u.leftCols(rank);
    return f;
}

SubspaceFrame random_conj_closed_frame(Rng& rng, const HilbertSpec& spec, int rank) {
    if (rank < 1 || rank > spec.dim) throw ParameterError("random_conj_closed_frame: bad rank");
    const Eigen::MatrixXcd v = real_structure_isometry(spec);
    const Eigen::MatrixXd o = random_orthogonal(rng, spec.dim);
    SubspaceFrame f;
    f.ambient_dim = spec.dim;
    f.frame = v * o.leftCols(rank).cast<Complex>();
    return f;
}

std::vector<SubspaceFrame> random_eps_family(Rng& rng, int ambient_dim, int count, int rank,
                                             double eps_target) {
    if (count * rank > ambient_dim)
        throw ParameterError("random_eps_family: ambient dimension too small");
    if (eps_target < 0.0 || eps_target >= 1.0)
        throw RangeError("random_eps_family: eps_target must lie in [0, 1)");
    const Eigen::MatrixXcd u = random_unitary(rng, ambient_dim);
    // Half the budget per subspace keeps the measured pairwise value near the
    // target after both sides of a pair have been rotated.
    const double max_angle = std::asin(eps_target) / 2.0;
    std::vector<SubspaceFrame> out;
    out.reserve(static_cast<size_t>(count));
    for (int s = 0; s < count; ++s) {
        Eigen::MatrixXcd block = u.middleCols(s * rank, rank);
        for (int c = 0; c < rank; ++c) {
            // random direction inside the other subspaces' span
            Eigen::VectorXcd dir = Eigen::VectorXcd::Zero(ambient_dim);
            for (int s2 = 0; s2 < count; ++s2) {
                if (s2 == s) continue;
                for (int c2 = 0; c2 < rank; ++c2)
                    dir += rng.cnormal() * u.col(s2 * rank + c2);
            }
            const double dn = dir.norm();
            if (dn == 0.0) continue;
            dir /= dn;
            const double angle = rng.uniform() * max_angle;
            block.col(c) = std::cos(angle) * block.col(c) + std::sin(angle) * dir;
        }
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(block);
        Eigen::MatrixXcd q = qr.householderQ();
        SubspaceFrame f;
        f.ambient_dim = ambient_dim;
        f.frame = q.leftCols(rank);
        out.push_back(std::move(f));
    }
    return out;
}

double measured_pairwise_eps(const std::vector<SubspaceFrame>& frames) {
    double m = 0.0;
    for (size_t i = 0; i < frames.size(); ++i)
        for (size_t j = i + 1; j < frames.size(); ++j)
            m = std::max(m, eps_of_pair(frames[i], frames[j]));
    return m;
}

WickExpression random_expression(Rng& rng, const HilbertSpec& spec, int max_degree, int terms,
                                 bool include_scalar) {
    WickExpression x = WickExpression::identity(spec, include_scalar ? rng.cnormal() : Complex(0.0));
    for (int t = 0; t < terms; ++t) {
        const int len = static_cast<int>(rng.integer(1, max_degree));
        std::vector<HVector> letters;
        letters.reserve(static_cast<size_t>(len));
        for (int i = 0; i < len; ++i) letters.push_back(random_real_letter(rng, spec));
        x.terms.push_back(WickTerm{rng.cnormal(), WickWord{std::move(letters)}});
    }
    return simplify(x);
}

} // namespace fockbench
