#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fockbench/errors.hpp"

namespace fockbench {

using Complex = std::complex<double>;

inline constexpr double kDefaultPrune = 1e-14;

/// Finite-dimensional complex Hilbert space H with a conjugation e -> ebar
/// acting on the distinguished basis as an involutive index permutation
/// (coefficients are conjugated on top of the permutation).
struct HilbertSpec {
    int dim = 0;
    std::vector<int> conj_perm; // involutive permutation of {0..dim-1}
    std::string label;

    /// Real basis: the conjugation fixes every basis vector.
    static HilbertSpec real_space(int dim, std::string label = {});
    static HilbertSpec with_conjugation(std::vector<int> conj_perm, std::string label = {});

    void validate() const; // throws ParameterError

    bool compatible(const HilbertSpec& other) const {
        return dim == other.dim && conj_perm == other.conj_perm;
    }
};

void require_same_space(const HilbertSpec& a, const HilbertSpec& b, const char* where);

/// Basis word of the full Fock space: a sequence of basis indices.
/// The empty word is the vacuum.
using FockWord = std::vector<int>;

/// Single letter e in H, as a dense coefficient vector over the basis.
struct HVector {
    HilbertSpec space;
    Eigen::VectorXcd coeffs;

    static HVector basis(const HilbertSpec& space, int index);
    static HVector zero(const HilbertSpec& space);

    double norm() const { return coeffs.norm(); }
};

HVector conj_vector(const HVector& e);
Complex inner(const HVector& e, const HVector& f); // linear in e, conjugate-linear in f
bool is_conj_fixed(const HVector& e, double tol = 1e-10);

/// Sparse vector of the truncated full Fock space F(H): a complex linear
/// combination of basis words of length <= cutoff.  Words are orthonormal;
/// coefficients below the prune threshold are dropped on insertion.
struct FockVector {
    HilbertSpec space;
    int cutoff = 0;
    std::map<FockWord, Complex> coeffs;
    double prune_threshold = kDefaultPrune;

    static FockVector vacuum(const HilbertSpec& space, int cutoff);
    static FockVector zero(const HilbertSpec& space, int cutoff);
    static FockVector word(const HilbertSpec& space, int cutoff, FockWord w, Complex c = 1.0);

    void add_term(const FockWord& w, Complex c);
    void add_scaled(const FockVector& other, Complex c);

    double squared_norm() const;
    double norm() const;
    int max_degree() const; // 0 for the zero vector and the vacuum line
};

FockVector operator+(const FockVector& a, const FockVector& b);
FockVector operator-(const FockVector& a, const FockVector& b);
FockVector operator*(Complex c, const FockVector& a);

struct CreationResult {
    FockVector vec;
    double dropped = 0.0; // squared norm of the component truncated past the cutoff
};

/// Left creation l(e): prepends the letter e; components that would exceed
/// the cutoff are dropped and their squared norm reported.
CreationResult create(const HVector& e, const FockVector& psi);

/// Hilbert adjoint of create(e): kills the vacuum and pairs the first letter
/// of each word against e.  Satisfies annihilate(e, create(f, psi)).vec
/// = <f, e> psi exactly.
FockVector annihilate(const HVector& e, const FockVector& psi);

/// Fock inner product: words orthonormal, linear in the first argument,
/// conjugate-linear in the second.
Complex inner(const FockVector& psi, const FockVector& phi);

/// Modular conjugation J: reverses each word, conjugates each letter and
/// each coefficient.  Involutive and antiunitary.
FockVector modular_conjugation(const FockVector& psi);

} // namespace fockbench
