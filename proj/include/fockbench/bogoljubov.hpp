#pragma once

#include <map>

#include <Eigen/Core>

#include "fockbench/fock.hpp"
#include "fockbench/subspaces.hpp"
#include "fockbench/wick.hpp"

namespace fockbench {

/// Z-representation by unitaries compatible with the conjugation of the
/// underlying space: gen is pi(1) and pi(g) = gen^g.  Compatibility means
/// pi(g) ebar = conj(pi(g) e), i.e. pi(g) restricts to an orthogonal
/// operator on the conjugation-fixed real subspace.
struct OrthogonalRep {
    HilbertSpec space;
    Eigen::MatrixXcd gen;

    void validate(double tol = 1e-10) const;
    Eigen::MatrixXcd power(long g) const;
    HVector apply(long g, const HVector& v) const;
};

/// Second quantization F(pi(g)) = id_{C Omega} + sum_n pi(g)^(x n): fixes the
/// vacuum and acts letterwise on words.  Unitary, multiplicative in g.
FockVector second_quantize(const OrthogonalRep& rep, long g, const FockVector& psi);

/// Free Bogoljubov action sigma_g = Ad(F(pi(g))) on Wick expressions: maps
/// every letter by pi(g).  Trace-preserving; covariant with wick_apply.
WickExpression bogoljubov_act(const OrthogonalRep& rep, long g, const WickExpression& x);

struct MixingPair {
    Complex trace_form; // tau(sigma_g(W(e)) W(f))
    Complex rep_form;   // <pi(g) e, f>
};

/// Both sides of the mixing identity for conjugation-fixed letters e, f.
MixingPair mixing_coefficient(const OrthogonalRep& rep, long g, const HVector& e, const HVector& f);

/// Crossed-product element with finite Fourier support: x = sum_h x^h u_h.
/// Modes are confined to [-window, window]; products whose modes would leave
/// the window are rejected rather than wrapped.
struct CrossedProductElement {
    HilbertSpec space;
    int window = 16;
    std::map<long, WickExpression> fourier;

    static CrossedProductElement zero(const HilbertSpec& space, int window = 16);
    static CrossedProductElement unitary(const HilbertSpec& space, long g, int window = 16); // u_g
    static CrossedProductElement embed(const WickExpression& x, long g, int window = 16);    // x u_g

    void set_mode(long h, WickExpression x);
    int max_degree() const;
};

/// (a u_g)(b u_h) = a sigma_g(b) u_{g+h}, extended bilinearly.
CrossedProductElement cp_product(const CrossedProductElement& x, const CrossedProductElement& y,
                                 const OrthogonalRep& rep);

/// (a u_g)* = sigma_{-g}(a*) u_{-g}.
CrossedProductElement cp_adjoint(const CrossedProductElement& x, const OrthogonalRep& rep);

/// Canonical trace: the trace of the mode-0 Fourier coefficient.
Complex cp_trace(const CrossedProductElement& x);

/// Squared-norm masses of a crossed product element against the orthogonal
/// decomposition into the scalar line, K and K-perp single-letter sectors,
/// and the four first/last-letter sectors of degree >= 2 words (per mode h
/// the last letter is classified against pi(h)K).
struct SectorMass {
    double scalar = 0.0;
    double k_line = 0.0;      // K (x) l2
    double k_perp_line = 0.0; // K-perp (x) l2
    double x1 = 0.0;          // first in K, last in pi(h)K
    double x2 = 0.0;          // first in K, last orthogonal to pi(h)K
    double x3 = 0.0;          // first orthogonal to K, last in pi(h)K
    double y = 0.0;           // neither
    double total() const { return scalar + k_line + k_perp_line + x1 + x2 + x3 + y; }
};

SectorMass sector_decompose(const CrossedProductElement& x, const SubspaceFrame& K,
                            const OrthogonalRep& rep);

struct ClaimCheck {
    double measured = 0.0;  // || P_{K (x) F} rho(g) P_{K (x) F} || on the truncated space
    double predicted = 0.0; // r * max_{i,j} |<pi(g) zeta_i, zeta_j>|
};

/// Quantitative eps-orthogonality of rho(g)(K (x) F) against K (x) F.  The
/// compressed operator is block diagonal over word degree and factors as
/// (compressed generator block) (x) (unitary), so the truncated-space norm
/// equals the top singular value of frame^H pi(g) frame for every cutoff >= 1.
ClaimCheck claim_check(const OrthogonalRep& rep, long g, const SubspaceFrame& K, int cutoff);

/// J sigma_h(b)* J psi: the right-action image used by the pairing checks.
FockVector jbj_apply(const OrthogonalRep& rep, long h, const WickExpression& b,
                     const FockVector& psi);

/// Finite-scale pairing sum
///   A = sum_h < fbar_h (x) xi_1 (x)...(x) xi_s (x) e_h ,
///              pi(h) eta_1 (x)...(x) pi(h) eta_t >,
/// with all e_h, f_h orthogonal to the span K of the xi and eta letters.
/// Vanishes identically unless t = s + 2.
Complex step3_pairing(const std::vector<HVector>& a_letters, const std::vector<HVector>& b_letters,
                      const std::map<long, HVector>& e_modes,
                      const std::map<long, HVector>& f_modes, const OrthogonalRep& rep);

} // namespace fockbench
