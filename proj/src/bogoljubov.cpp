#include "fockbench/bogoljubov.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

namespace fockbench {

namespace {

Eigen::MatrixXcd conj_perm_matrix(const HilbertSpec& space) {
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(space.dim, space.dim);
    for (int i = 0; i < space.dim; ++i) c(space.conj_perm[static_cast<size_t>(i)], i) = 1.0;
    return c;
}

} // namespace

void OrthogonalRep::validate(double tol) const {
    space.validate();
    if (gen.rows() != space.dim || gen.cols() != space.dim)
        throw ParameterError("OrthogonalRep: generator shape must match dim");
    const double unit_err =
        (gen.adjoint() * gen - Eigen::MatrixXcd::Identity(space.dim, space.dim)).norm();
    if (unit_err > tol * space.dim)
        throw ParameterError("OrthogonalRep: generator is not unitary (defect " +
                             std::to_string(unit_err) + ")");
    // pi(1) ebar = conj(pi(1) e)  <=>  C conj(U) C = U with C the basis conjugation.
    const Eigen::MatrixXcd c = conj_perm_matrix(space);
    const double conj_err = (c * gen.conjugate() * c - gen).norm();
    if (conj_err > tol * space.dim)
        throw ParameterError("OrthogonalRep: generator is not conjugation-compatible (defect " +
                             std::to_string(conj_err) + ")");
}

Eigen::MatrixXcd OrthogonalRep::power(long g) const {
    Eigen::MatrixXcd base = g >= 0 ? gen : Eigen::MatrixXcd(gen.adjoint());
    unsigned long n = g >= 0 ? static_cast<unsigned long>(g) : static_cast<unsigned long>(-g);
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(space.dim, space.dim);
    while (n > 0) { // square-and-multiply keeps long scans cheap
        if (n & 1UL) result = result * base;
        base = base * base;
        n >>= 1UL;
    }
    return result;
}

HVector OrthogonalRep::apply(long g, const HVector& v) const {
    require_same_space(space, v.space, "OrthogonalRep::apply");
    return HVector{space, power(g) * v.coeffs};
}

FockVector second_quantize(const OrthogonalRep& rep, long g, const FockVector& psi) {
    require_same_space(rep.space, psi.space, "second_quantize");
    if (g == 0) return psi;
    const Eigen::MatrixXcd u = rep.power(g);
    FockVector out = FockVector::zero(psi.space, psi.cutoff);
    out.prune_threshold = psi.prune_threshold;
    // Letterwise image of a basis word is a tensor product of matrix columns,
    // expanded depth-first into the sparse word map.
    FockWord scratch;
    for (const auto& [w, c] : psi.coeffs) {
        scratch.assign(w.size(), 0);
        const int n = static_cast<int>(w.size());
        auto expand = [&](auto&& self, int pos, Complex acc) -> void {
            if (acc == Complex(0.0)) return;
            if (pos == n) {
                out.add_term(scratch, acc);
                return;
            }
            const int src = w[static_cast<size_t>(pos)];
            for (int row = 0; row < rep.space.dim; ++row) {
                const Complex entry = u(row, src);
                if (entry == Complex(0.0)) continue;
                scratch[static_cast<size_t>(pos)] = row;
                self(self, pos + 1, acc * entry);
            }
        };
        expand(expand, 0, c);
    }
    return out;
}

WickExpression bogoljubov_act(const OrthogonalRep& rep, long g, const WickExpression& x) {
    require_same_space(rep.space, x.space, "bogoljubov_act");
    if (g == 0) return x;
    const Eigen::MatrixXcd u = rep.power(g);
    WickExpression out = x;
    for (auto& t : out.terms)
        for (auto& l : t.word.letters) l.coeffs = u * l.coeffs;
    return out;
}

MixingPair mixing_coefficient(const OrthogonalRep& rep, long g, const HVector& e, const HVector& f) {
    require_same_space(rep.space, e.space, "mixing_coefficient");
    require_same_space(rep.space, f.space, "mixing_coefficient");
    if (!is_conj_fixed(e) || !is_conj_fixed(f))
        throw PreconditionError("mixing_coefficient: letters must be conjugation-fixed");
    MixingPair out;
    const WickExpression moved = bogoljubov_act(rep, g, WickExpression::generator(e));
    out.trace_form = trace(wick_product(moved, WickExpression::generator(f)));
    out.rep_form = inner(rep.apply(g, e), f);
    return out;
}

CrossedProductElement CrossedProductElement::zero(const HilbertSpec& space, int window) {
    if (window < 0) throw ParameterError("CrossedProductElement: window must be nonnegative");
    CrossedProductElement x;
    x.space = space;
    x.window = window;
    return x;
}

CrossedProductElement CrossedProductElement::unitary(const HilbertSpec& space, long g, int window) {
    return embed(WickExpression::identity(space), g, window);
}

CrossedProductElement CrossedProductElement::embed(const WickExpression& x, long g, int window) {
    CrossedProductElement out = zero(x.space, window);
    out.set_mode(g, x);
    return out;
}

void CrossedProductElement::set_mode(long h, WickExpression x) {
    require_same_space(space, x.space, "CrossedProductElement::set_mode");
    if (h < -static_cast<long>(window) || h > static_cast<long>(window))
        throw RangeError("CrossedProductElement: mode " + std::to_string(h) +
                         " outside the window [-" + std::to_string(window) + ", " +
                         std::to_string(window) + "]");
    fourier[h] = std::move(x);
}

int CrossedProductElement::max_degree() const {
    int d = 0;
    for (const auto& [h, x] : fourier) d = std::max(d, x.degree());
    return d;
}

CrossedProductElement cp_product(const CrossedProductElement& x, const CrossedProductElement& y,
                                 const OrthogonalRep& rep) {
    require_same_space(x.space, y.space, "cp_product");
    require_same_space(x.space, rep.space, "cp_product");
    CrossedProductElement out = CrossedProductElement::zero(x.space, std::max(x.window, y.window));
    for (const auto& [g, a] : x.fourier)
        for (const auto& [h, b] : y.fourier) {
            const long mode = g + h;
            if (mode < -static_cast<long>(out.window) || mode > static_cast<long>(out.window))
                throw RangeError("cp_product: mode " + std::to_string(mode) +
                                 " leaves the window [-" + std::to_string(out.window) + ", " +
                                 std::to_string(out.window) + "]");
            WickExpression piece = wick_product(a, bogoljubov_act(rep, g, b));
            auto it = out.fourier.find(mode);
            if (it == out.fourier.end())
                out.fourier.emplace(mode, std::move(piece));
            else
                it->second = it->second + piece;
        }
    return out;
}

CrossedProductElement cp_adjoint(const CrossedProductElement& x, const OrthogonalRep& rep) {
    CrossedProductElement out = CrossedProductElement::zero(x.space, x.window);
    for (const auto& [g, a] : x.fourier)
        out.fourier.emplace(-g, bogoljubov_act(rep, -g, wick_adjoint(a)));
    return out;
}

Complex cp_trace(const CrossedProductElement& x) {
    auto it = x.fourier.find(0);
    return it == x.fourier.end() ? Complex(0.0) : trace(it->second);
}

namespace {

void check_conj_closed(const SubspaceFrame& K, const HilbertSpec& space, const char* where) {
    if (K.ambient_dim != space.dim)
        throw DimensionError(std::string(where) + ": frame ambient dimension mismatch");
    const Eigen::MatrixXcd c = conj_perm_matrix(space);
    const Eigen::MatrixXcd p = K.frame * K.frame.adjoint();
    if ((c * p.conjugate() * c - p).norm() > 1e-10 * space.dim)
        throw PreconditionError(std::string(where) + ": subspace is not conjugation-closed");
}

} // namespace

SectorMass sector_decompose(const CrossedProductElement& x, const SubspaceFrame& K,
                            const OrthogonalRep& rep) {
    require_same_space(x.space, rep.space, "sector_decompose");
    K.validate();
    check_conj_closed(K, x.space, "sector_decompose");
    const int dim = x.space.dim;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    const Eigen::MatrixXcd p = K.frame * K.frame.adjoint();

    SectorMass mass;
    for (const auto& [h, expr] : x.fourier) {
        const int degree = expr.degree();
        FockVector xi = wick_apply(expr, FockVector::vacuum(x.space, degree));
        const Eigen::MatrixXcd uh = rep.power(h);
        const Eigen::MatrixXcd q = uh * p * uh.adjoint(); // projection onto pi(h)K

        Eigen::VectorXcd letter = Eigen::VectorXcd::Zero(dim);
        // degree >= 2 words grouped by middle letters: each group is a
        // (first, last) coefficient matrix the slot projections act on.
        std::map<FockWord, Eigen::MatrixXcd> groups;
        for (const auto& [w, c] : xi.coeffs) {
            if (w.empty()) {
                mass.scalar += std::norm(c);
            } else if (w.size() == 1) {
                letter[w.front()] += c;
            } else {
                FockWord middle(w.begin() + 1, w.end() - 1);
                auto [it, inserted] = groups.try_emplace(std::move(middle),
                                                         Eigen::MatrixXcd::Zero(dim, dim));
                it->second(w.front(), w.back()) += c;
            }
        }
        mass.k_line += (p * letter).squaredNorm();
        mass.k_perp_line += ((id - p) * letter).squaredNorm();
        for (const auto& [middle, m] : groups) {
            mass.x1 += (p * m * q.transpose()).squaredNorm();
            mass.x2 += (p * m * (id - q).transpose()).squaredNorm();
            mass.x3 += ((id - p) * m * q.transpose()).squaredNorm();
            mass.y += ((id - p) * m * (id - q).transpose()).squaredNorm();
        }
    }
    return mass;
}

ClaimCheck claim_check(const OrthogonalRep& rep, long g, const SubspaceFrame& K, int cutoff) {
    require_same_space(rep.space, rep.space, "claim_check");
    if (K.ambient_dim != rep.space.dim)
        throw DimensionError("claim_check: frame ambient dimension mismatch");
    K.validate(); // rank-deficient frames fail orthonormality here
    if (cutoff < 1) throw ParameterError("claim_check: cutoff must be at least 1");
    const Eigen::MatrixXcd compressed = K.frame.adjoint() * rep.power(g) * K.frame;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(compressed);
    ClaimCheck out;
    out.measured = svd.singularValues()(0);
    out.predicted = static_cast<double>(K.rank()) * compressed.cwiseAbs().maxCoeff();
    return out;
}

FockVector jbj_apply(const OrthogonalRep& rep, long h, const WickExpression& b,
                     const FockVector& psi) {
    const WickExpression moved = wick_adjoint(bogoljubov_act(rep, h, b));
    return modular_conjugation(wick_apply(moved, modular_conjugation(psi)));
}

Complex step3_pairing(const std::vector<HVector>& a_letters, const std::vector<HVector>& b_letters,
                      const std::map<long, HVector>& e_modes,
                      const std::map<long, HVector>& f_modes, const OrthogonalRep& rep) {
    const size_t s = a_letters.size();
    const size_t t = b_letters.size();

    Eigen::MatrixXcd span(rep.space.dim, s + t);
    int col = 0;
    for (const auto& l : a_letters) {
        require_same_space(rep.space, l.space, "step3_pairing");
        span.col(col++) = l.coeffs;
    }
    for (const auto& l : b_letters) {
        require_same_space(rep.space, l.space, "step3_pairing");
        span.col(col++) = l.coeffs;
    }
    if (span.cols() == 0) throw PreconditionError("step3_pairing: no letters given");
    const SubspaceFrame K = SubspaceFrame::from_columns(span);
    auto check_perp = [&](const std::map<long, HVector>& modes, const char* name) {
        for (const auto& [h, v] : modes) {
            require_same_space(rep.space, v.space, "step3_pairing");
            if ((K.frame.adjoint() * v.coeffs).norm() > 1e-10 * (1.0 + v.norm()))
                throw PreconditionError(std::string("step3_pairing: ") + name + " mode " +
                                        std::to_string(h) + " is not orthogonal to K");
        }
    };
    check_perp(e_modes, "e");
    check_perp(f_modes, "f");

    if (t != s + 2) return Complex(0.0);

    Complex total = 0.0;
    for (const auto& [h, e_h] : e_modes) {
        auto itf = f_modes.find(h);
        if (itf == f_modes.end()) continue;
        const Eigen::MatrixXcd uh = rep.power(h);
        // < fbar_h (x) xi_1..xi_s (x) e_h , pi(h)eta_1 (x)..(x) pi(h)eta_t >
        Complex prod = inner(conj_vector(itf->second), HVector{rep.space, uh * b_letters.front().coeffs});
        for (size_t i = 0; i < s; ++i)
            prod *= inner(a_letters[i], HVector{rep.space, uh * b_letters[i + 1].coeffs});
        prod *= inner(e_h, HVector{rep.space, uh * b_letters.back().coeffs});
        total += prod;
    }
    return total;
}

} // namespace fockbench
