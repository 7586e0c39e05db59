#include "fockbench/fock.hpp"

#include <algorithm>
#include <cmath>

namespace fockbench {

HilbertSpec HilbertSpec::real_space(int dim, std::string label) {
    HilbertSpec s;
    s.dim = dim;
    s.conj_perm.resize(static_cast<size_t>(std::max(dim, 0)));
    for (int i = 0; i < dim; ++i) s.conj_perm[static_cast<size_t>(i)] = i;
    s.label = std::move(label);
    s.validate();
    return s;
}

HilbertSpec HilbertSpec::with_conjugation(std::vector<int> conj_perm, std::string label) {
    HilbertSpec s;
    s.dim = static_cast<int>(conj_perm.size());
    s.conj_perm = std::move(conj_perm);
    s.label = std::move(label);
    s.validate();
    return s;
}

void HilbertSpec::validate() const {
    if (dim <= 0) throw ParameterError("HilbertSpec: dim must be positive");
    if (static_cast<int>(conj_perm.size()) != dim)
        throw ParameterError("HilbertSpec: conj_perm size must equal dim");
    for (int i = 0; i < dim; ++i) {
        const int j = conj_perm[static_cast<size_t>(i)];
        if (j < 0 || j >= dim) throw ParameterError("HilbertSpec: conj_perm entry out of range");
        if (conj_perm[static_cast<size_t>(j)] != i)
            throw ParameterError("HilbertSpec: conj_perm must be involutive");
    }
}

void require_same_space(const HilbertSpec& a, const HilbertSpec& b, const char* where) {
    if (!a.compatible(b)) {
        throw DimensionError(std::string(where) + ": values live in incompatible Hilbert spaces");
    }
}

HVector HVector::basis(const HilbertSpec& space, int index) {
    if (index < 0 || index >= space.dim) throw ParameterError("HVector::basis: index out of range");
    HVector v{space, Eigen::VectorXcd::Zero(space.dim)};
    v.coeffs[index] = 1.0;
    return v;
}

HVector HVector::zero(const HilbertSpec& space) {
    return HVector{space, Eigen::VectorXcd::Zero(space.dim)};
}

HVector conj_vector(const HVector& e) {
    HVector out{e.space, Eigen::VectorXcd::Zero(e.space.dim)};
    for (int i = 0; i < e.space.dim; ++i)
        out.coeffs[e.space.conj_perm[static_cast<size_t>(i)]] = std::conj(e.coeffs[i]);
    return out;
}

Complex inner(const HVector& e, const HVector& f) {
    require_same_space(e.space, f.space, "inner(HVector)");
    return f.coeffs.dot(e.coeffs); // Eigen's dot conjugates its object: conj(f)^T e
}

bool is_conj_fixed(const HVector& e, double tol) {
    return (conj_vector(e).coeffs - e.coeffs).norm() <= tol * (1.0 + e.norm());
}

FockVector FockVector::vacuum(const HilbertSpec& space, int cutoff) {
    FockVector v = zero(space, cutoff);
    v.coeffs[FockWord{}] = 1.0;
    return v;
}

FockVector FockVector::zero(const HilbertSpec& space, int cutoff) {
    if (cutoff < 0) throw ParameterError("FockVector: cutoff must be nonnegative");
    FockVector v;
    v.space = space;
    v.cutoff = cutoff;
    return v;
}

FockVector FockVector::word(const HilbertSpec& space, int cutoff, FockWord w, Complex c) {
    FockVector v = zero(space, cutoff);
    if (static_cast<int>(w.size()) > cutoff)
        throw ParameterError("FockVector::word: word longer than cutoff");
    for (int letter : w)
        if (letter < 0 || letter >= space.dim)
            throw ParameterError("FockVector::word: letter out of range");
    v.add_term(w, c);
    return v;
}

void FockVector::add_term(const FockWord& w, Complex c) {
    auto it = coeffs.find(w);
    if (it == coeffs.end()) {
        if (std::abs(c) > prune_threshold) coeffs.emplace(w, c);
        return;
    }
    it->second += c;
    if (std::abs(it->second) <= prune_threshold) coeffs.erase(it);
}

void FockVector::add_scaled(const FockVector& other, Complex c) {
    require_same_space(space, other.space, "FockVector::add_scaled");
    for (const auto& [w, v] : other.coeffs) add_term(w, c * v);
}

double FockVector::squared_norm() const {
    double s = 0.0;
    for (const auto& [w, c] : coeffs) s += std::norm(c);
    return s;
}

double FockVector::norm() const { return std::sqrt(squared_norm()); }

int FockVector::max_degree() const {
    int d = 0;
    for (const auto& [w, c] : coeffs) d = std::max(d, static_cast<int>(w.size()));
    return d;
}

FockVector operator+(const FockVector& a, const FockVector& b) {
    FockVector out = a;
    out.cutoff = std::max(a.cutoff, b.cutoff);
    out.add_scaled(b, 1.0);
    return out;
}

FockVector operator-(const FockVector& a, const FockVector& b) {
    FockVector out = a;
    out.cutoff = std::max(a.cutoff, b.cutoff);
    out.add_scaled(b, -1.0);
    return out;
}

FockVector operator*(Complex c, const FockVector& a) {
    FockVector out = FockVector::zero(a.space, a.cutoff);
    out.prune_threshold = a.prune_threshold;
    for (const auto& [w, v] : a.coeffs) out.add_term(w, c * v);
    return out;
}

CreationResult create(const HVector& e, const FockVector& psi) {
    require_same_space(e.space, psi.space, "create");
    CreationResult res;
    res.vec = FockVector::zero(psi.space, psi.cutoff);
    res.vec.prune_threshold = psi.prune_threshold;
    const double e_sq = e.coeffs.squaredNorm();
    FockWord scratch;
    for (const auto& [w, c] : psi.coeffs) {
        if (static_cast<int>(w.size()) >= psi.cutoff) {
            res.dropped += std::norm(c) * e_sq;
            continue;
        }
        scratch.clear();
        scratch.reserve(w.size() + 1);
        scratch.push_back(0);
        scratch.insert(scratch.end(), w.begin(), w.end());
        for (int j = 0; j < e.space.dim; ++j) {
            const Complex ej = e.coeffs[j];
            if (ej == Complex(0.0)) continue;
            scratch[0] = j;
            res.vec.add_term(scratch, ej * c);
        }
    }
    return res;
}

FockVector annihilate(const HVector& e, const FockVector& psi) {
    require_same_space(e.space, psi.space, "annihilate");
    FockVector out = FockVector::zero(psi.space, psi.cutoff);
    out.prune_threshold = psi.prune_threshold;
    for (const auto& [w, c] : psi.coeffs) {
        if (w.empty()) continue; // l(e)* Omega = 0
        const Complex factor = std::conj(e.coeffs[w.front()]);
        if (factor == Complex(0.0)) continue;
        out.add_term(FockWord(w.begin() + 1, w.end()), factor * c);
    }
    return out;
}

Complex inner(const FockVector& psi, const FockVector& phi) {
    require_same_space(psi.space, phi.space, "inner(FockVector)");
    const auto *small = &psi.coeffs, *large = &phi.coeffs;
    bool swapped = false;
    if (small->size() > large->size()) {
        std::swap(small, large);
        swapped = true;
    }
    Complex s = 0.0;
    for (const auto& [w, c] : *small) {
        auto it = large->find(w);
        if (it == large->end()) continue;
        s += swapped ? it->second * std::conj(c) : c * std::conj(it->second);
    }
    return s;
}

FockVector modular_conjugation(const FockVector& psi) {
    FockVector out = FockVector::zero(psi.space, psi.cutoff);
    out.prune_threshold = psi.prune_threshold;
    const auto& perm = psi.space.conj_perm;
    FockWord rev;
    for (const auto& [w, c] : psi.coeffs) {
        rev.assign(w.rbegin(), w.rend());
        for (int& letter : rev) letter = perm[static_cast<size_t>(letter)];
        out.add_term(rev, std::conj(c));
    }
    return out;
}

} // namespace fockbench
