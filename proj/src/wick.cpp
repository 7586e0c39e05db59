#include "fockbench/wick.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>

namespace fockbench {

namespace {

void check_letters(const HilbertSpec& space, const std::vector<HVector>& letters, const char* where) {
    for (const auto& l : letters) require_same_space(space, l.space, where);
}

// <f, ebar> in the convention fixed by fock.hpp: the scalar produced when an
// annihilation letter ebar meets a creation letter f.
Complex contraction(const HVector& e_bar, const HVector& f) {
    return inner(f, e_bar);
}

} // namespace

WickExpression WickExpression::identity(const HilbertSpec& space, Complex c) {
    WickExpression x;
    x.space = space;
    x.scalar = c;
    return x;
}

WickExpression WickExpression::generator(const HVector& e) {
    WickExpression x;
    x.space = e.space;
    x.terms.push_back(WickTerm{1.0, WickWord{{e}}});
    return x;
}

WickExpression WickExpression::word(std::vector<HVector> letters) {
    if (letters.empty()) throw ParameterError("WickExpression::word: empty letter sequence");
    WickExpression x;
    x.space = letters.front().space;
    check_letters(x.space, letters, "WickExpression::word");
    x.terms.push_back(WickTerm{1.0, WickWord{std::move(letters)}});
    return x;
}

int WickExpression::degree() const {
    int d = 0;
    for (const auto& t : terms) d = std::max(d, static_cast<int>(t.word.letters.size()));
    return d;
}

WickExpression operator+(const WickExpression& a, const WickExpression& b) {
    require_same_space(a.space, b.space, "WickExpression::operator+");
    WickExpression out = a;
    out.scalar += b.scalar;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    return simplify(out);
}

WickExpression operator-(const WickExpression& a, const WickExpression& b) {
    return a + (Complex(-1.0) * b);
}

WickExpression operator*(Complex c, const WickExpression& a) {
    WickExpression out = a;
    out.scalar *= c;
    for (auto& t : out.terms) t.coeff *= c;
    return out;
}

WickExpression simplify(const WickExpression& x, double prune) {
    WickExpression out;
    out.space = x.space;
    out.scalar = x.scalar;

    std::map<std::string, std::pair<Complex, WickWord>> merged;
    for (const auto& t : x.terms) {
        Complex coeff = t.coeff;
        WickWord canon;
        canon.letters.reserve(t.word.letters.size());
        bool zero_letter = false;
        std::string key;
        key.reserve(t.word.letters.size() * 16);
        for (const auto& l : t.word.letters) {
            const double n = l.coeffs.norm();
            if (n == 0.0) {
                zero_letter = true;
                break;
            }
            Eigen::VectorXcd unit = l.coeffs / n;
            Complex phase = 1.0;
            for (int i = 0; i < unit.size(); ++i) {
                if (std::abs(unit[i]) > 1e-12) {
                    phase = unit[i] / std::abs(unit[i]);
                    break;
                }
            }
            unit /= phase;
            coeff *= n * phase;
            canon.letters.push_back(HVector{l.space, unit});
            key.append(reinterpret_cast<const char*>(unit.data()),
                       static_cast<size_t>(unit.size()) * sizeof(Complex));
            key.push_back('|');
        }
        if (zero_letter) continue;
        auto it = merged.find(key);
        if (it == merged.end())
            merged.emplace(std::move(key), std::make_pair(coeff, std::move(canon)));
        else
            it->second.first += coeff;
    }
    for (auto& [key, cw] : merged) {
        if (std::abs(cw.first) <= prune) continue;
        out.terms.push_back(WickTerm{cw.first, std::move(cw.second)});
    }
    return out;
}

FockVector wick_apply(const WickExpression& x, const FockVector& psi, double* dropped) {
    require_same_space(x.space, psi.space, "wick_apply");
    FockVector out = x.scalar * psi;
    for (const auto& t : x.terms) {
        const auto& letters = t.word.letters;
        const int n = static_cast<int>(letters.size());
        // Annihilation suffixes A_k = l(ebar_{k+1})*...l(ebar_n)* psi, then the
        // nested form R_k = A_k + l(e_{k+1}) R_{k+1} expands to the Wick sum.
        std::vector<FockVector> suffix(static_cast<size_t>(n) + 1,
                                       FockVector::zero(psi.space, psi.cutoff));
        suffix[static_cast<size_t>(n)] = psi;
        for (int k = n - 1; k >= 0; --k)
            suffix[static_cast<size_t>(k)] =
                annihilate(conj_vector(letters[static_cast<size_t>(k)]), suffix[static_cast<size_t>(k) + 1]);
        FockVector acc = suffix[static_cast<size_t>(n)];
        for (int k = n - 1; k >= 0; --k) {
            CreationResult cr = create(letters[static_cast<size_t>(k)], acc);
            if (dropped) *dropped += std::norm(t.coeff) * cr.dropped;
            acc = cr.vec + suffix[static_cast<size_t>(k)];
        }
        out.add_scaled(acc, t.coeff);
    }
    return out;
}

bool wick_apply_is_exact(const WickExpression& x, const FockVector& psi) {
    return psi.max_degree() + x.degree() <= psi.cutoff;
}

namespace {

WickExpression word_expression(const HilbertSpec& space, const std::vector<HVector>& letters,
                               Complex c) {
    if (letters.empty()) return WickExpression::identity(space, c);
    WickExpression x;
    x.space = space;
    x.terms.push_back(WickTerm{c, WickWord{letters}});
    return x;
}

// W(e) * x for a single letter e, one recursion step of the product formula.
WickExpression generator_times(const HVector& e, const WickExpression& x) {
    WickExpression out;
    out.space = x.space;
    if (x.scalar != Complex(0.0))
        out.terms.push_back(WickTerm{x.scalar, WickWord{{e}}});
    const HVector e_bar = conj_vector(e);
    for (const auto& t : x.terms) {
        std::vector<HVector> grown;
        grown.reserve(t.word.letters.size() + 1);
        grown.push_back(e);
        grown.insert(grown.end(), t.word.letters.begin(), t.word.letters.end());
        out.terms.push_back(WickTerm{t.coeff, WickWord{std::move(grown)}});

        const Complex s = contraction(e_bar, t.word.letters.front());
        if (s == Complex(0.0)) continue;
        if (t.word.letters.size() == 1) {
            out.scalar += t.coeff * s;
        } else {
            out.terms.push_back(WickTerm{
                t.coeff * s,
                WickWord{std::vector<HVector>(t.word.letters.begin() + 1, t.word.letters.end())}});
        }
    }
    return out;
}

// W(a_1 x...x a_m) * W(b_1 x...x b_n), both words possibly empty.
WickExpression word_product(const HilbertSpec& space, const std::vector<HVector>& a,
                            const std::vector<HVector>& b) {
    if (a.empty()) return word_expression(space, b, 1.0);
    if (a.size() == 1) return generator_times(a.front(), word_expression(space, b, 1.0));
    // W(a) = W(a_0) W(a_1...) - <a_1, abar_0> W(a_2...), applied to W(b).
    const std::vector<HVector> tail1(a.begin() + 1, a.end());
    const std::vector<HVector> tail2(a.begin() + 2, a.end());
    WickExpression lhs = generator_times(a.front(), word_product(space, tail1, b));
    const Complex s = contraction(conj_vector(a.front()), a[1]);
    if (s == Complex(0.0)) return lhs;
    return lhs - (s * word_product(space, tail2, b));
}

} // namespace

WickExpression wick_product(const WickExpression& x, const WickExpression& y) {
    require_same_space(x.space, y.space, "wick_product");
    WickExpression out;
    out.space = x.space;
    out.scalar = x.scalar * y.scalar;
    for (const auto& t : y.terms) out.terms.push_back(WickTerm{x.scalar * t.coeff, t.word});
    for (const auto& t : x.terms) out.terms.push_back(WickTerm{y.scalar * t.coeff, t.word});
    for (const auto& tx : x.terms)
        for (const auto& ty : y.terms) {
            WickExpression p = word_product(x.space, tx.word.letters, ty.word.letters);
            const Complex c = tx.coeff * ty.coeff;
            out.scalar += c * p.scalar;
            for (auto& t : p.terms) {
                t.coeff *= c;
                out.terms.push_back(std::move(t));
            }
        }
    return simplify(out);
}

WickExpression operator*(const WickExpression& a, const WickExpression& b) {
    return wick_product(a, b);
}

WickExpression wick_adjoint(const WickExpression& x) {
    WickExpression out;
    out.space = x.space;
    out.scalar = std::conj(x.scalar);
    out.terms.reserve(x.terms.size());
    for (const auto& t : x.terms) {
        WickWord w;
        w.letters.reserve(t.word.letters.size());
        for (auto it = t.word.letters.rbegin(); it != t.word.letters.rend(); ++it)
            w.letters.push_back(conj_vector(*it));
        out.terms.push_back(WickTerm{std::conj(t.coeff), std::move(w)});
    }
    return out;
}

Complex trace(const WickExpression& x) { return x.scalar; }

double semicircle_moment(const HVector& e, int k, std::optional<int> cutoff) {
    if (k < 0) throw ParameterError("semicircle_moment: order must be nonnegative");
    if (!is_conj_fixed(e)) throw PreconditionError("semicircle_moment: letter must be conjugation-fixed");
    const int needed = (k + 1) / 2;
    const int L = cutoff.value_or(needed);
    if (L < needed)
        throw ExactnessError("semicircle_moment: cutoff " + std::to_string(L) +
                             " below the exactness bound " + std::to_string(needed));
    const WickExpression w = WickExpression::generator(e);
    FockVector v = FockVector::vacuum(e.space, L);
    for (int i = 0; i < k; ++i) v = wick_apply(w, v);
    return std::real(inner(v, FockVector::vacuum(e.space, L)));
}

Complex freeness_probe(const std::vector<std::vector<WickExpression>>& families,
                       const std::vector<std::pair<int, int>>& pattern, int max_degree) {
    if (pattern.empty()) throw PreconditionError("freeness_probe: empty pattern");
    for (const auto& fam : families)
        for (const auto& el : fam)
            if (std::abs(trace(el)) > 1e-10)
                throw PreconditionError("freeness_probe: family element is not centered");
    int total_degree = 0;
    int prev_family = -1;
    for (const auto& [fam, el] : pattern) {
        if (fam < 0 || fam >= static_cast<int>(families.size()))
            throw PreconditionError("freeness_probe: pattern family index out of range");
        if (el < 0 || el >= static_cast<int>(families[static_cast<size_t>(fam)].size()))
            throw PreconditionError("freeness_probe: pattern element index out of range");
        if (fam == prev_family)
            throw PreconditionError("freeness_probe: consecutive pattern entries from one family");
        prev_family = fam;
        total_degree += families[static_cast<size_t>(fam)][static_cast<size_t>(el)].degree();
    }
    if (total_degree > max_degree)
        throw PreconditionError("freeness_probe: pattern exceeds the stated degree budget");
    WickExpression prod =
        families[static_cast<size_t>(pattern.front().first)][static_cast<size_t>(pattern.front().second)];
    for (size_t i = 1; i < pattern.size(); ++i)
        prod = wick_product(
            prod, families[static_cast<size_t>(pattern[i].first)][static_cast<size_t>(pattern[i].second)]);
    return trace(prod);
}

} // namespace fockbench
