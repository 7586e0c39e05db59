#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fockbench/fock.hpp"

namespace fockbench {

/// Tensor factors e_1,...,e_n of the elementary operator W(e_1 x ... x e_n).
struct WickWord {
    std::vector<HVector> letters; // nonempty; all letters share one HilbertSpec
};

struct WickTerm {
    Complex coeff;
    WickWord word;
};

/// Formal linear combination  scalar * 1 + sum_k coeff_k W(word_k).
/// Products and adjoints are exact symbolic operations; only application to
/// a truncated Fock vector loses mass.
struct WickExpression {
    HilbertSpec space;
    Complex scalar = 0.0;
    std::vector<WickTerm> terms;

    static WickExpression identity(const HilbertSpec& space, Complex c = 1.0);
    static WickExpression generator(const HVector& e);          // W(e)
    static WickExpression word(std::vector<HVector> letters);   // W(e_1 x ... x e_n)

    int degree() const; // longest word, 0 for pure scalars
};

WickExpression operator+(const WickExpression& a, const WickExpression& b);
WickExpression operator-(const WickExpression& a, const WickExpression& b);
WickExpression operator*(Complex c, const WickExpression& a);

/// Merge terms whose letter sequences agree after pulling scalar factors out
/// of the letters (each letter normalized to unit norm with real-positive
/// leading entry); drops coefficients below the prune threshold.
WickExpression simplify(const WickExpression& x, double prune = kDefaultPrune);

/// Apply x to psi through the Wick formula
///   W(e_1 x...x e_n) = sum_k l(e_1)...l(e_k) l(ebar_{k+1})*...l(ebar_n)*.
/// Truncation loss (squared norm created past the cutoff) is accumulated
/// into *dropped when given.
FockVector wick_apply(const WickExpression& x, const FockVector& psi, double* dropped = nullptr);

/// True when wick_apply(x, psi) incurs no truncation.
bool wick_apply_is_exact(const WickExpression& x, const FockVector& psi);

/// Exact symbolic product via the recursion
///   W(e_0) W(f_1 x...x f_n) = W(e_0 x f_1 x...x f_n) + <f_1, ebar_0> W(f_2 x...x f_n).
WickExpression wick_product(const WickExpression& x, const WickExpression& y);

WickExpression operator*(const WickExpression& a, const WickExpression& b);

/// W(e_1 x...x e_n)* = W(ebar_n x...x ebar_1); coefficients conjugated.
WickExpression wick_adjoint(const WickExpression& x);

/// Vacuum trace tau = <. Omega, Omega>: the scalar part of the expression.
Complex trace(const WickExpression& x);

/// tau(W(e)^k) for a conjugation-fixed letter e, computed operatorially at a
/// cutoff sufficient for exactness (defaults to ceil(k/2)).
double semicircle_moment(const HVector& e, int k, std::optional<int> cutoff = std::nullopt);

/// Trace of an alternating product of centered elements picked from distinct
/// families.  pattern entries are (family, element) pairs; consecutive
/// entries must name different families and every element must be centered.
Complex freeness_probe(const std::vector<std::vector<WickExpression>>& families,
                       const std::vector<std::pair<int, int>>& pattern,
                       int max_degree);

} // namespace fockbench
