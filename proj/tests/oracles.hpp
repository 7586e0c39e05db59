#pragma once

// Test-side oracles: independent computation routes used to freeze expected
// values.  Everything here is built from first principles (dense matrices
// over an explicit word basis, quadrature, combinatorial counts) and shares
// no code path with the library implementation it checks.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracles {

using Complex = std::complex<double>;

inline std::uint64_t catalan(int k) {
    // C_0 = 1, C_{n+1} = sum C_i C_{n-i}
    std::vector<std::uint64_t> c(static_cast<size_t>(k) + 1, 0);
    c[0] = 1;
    for (int n = 0; n < k; ++n) {
        std::uint64_t s = 0;
        for (int i = 0; i <= n; ++i) s += c[static_cast<size_t>(i)] * c[static_cast<size_t>(n - i)];
        c[static_cast<size_t>(n) + 1] = s;
    }
    return c[static_cast<size_t>(k)];
}

// int_{-2r}^{2r} x^k sqrt(4r^2 - x^2) / (2 pi r^2) dx via the substitution
// x = 2r cos(theta), which removes the endpoint square-root singularity:
// (2/pi) int_0^pi (2r cos theta)^k sin^2(theta) dtheta, Simpson's rule.
inline double semicircle_moment_quadrature(double r, int k, int panels = 20000) {
    const double h = std::numbers::pi / panels;
    auto f = [&](double theta) {
        const double s = std::sin(theta);
        return (2.0 / std::numbers::pi) * std::pow(2.0 * r * std::cos(theta), k) * s * s;
    };
    double s = f(0.0) + f(std::numbers::pi);
    for (int i = 1; i < panels; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Number of non-crossing pairings of a color word in which every pair joins
// equal colors; the free mixed moment of orthonormal semicircular letters.
inline std::int64_t noncrossing_colored_pairings(const std::vector<int>& colors) {
    const int n = static_cast<int>(colors.size());
    if (n % 2 != 0) return 0;
    std::map<std::pair<int, int>, std::int64_t> memo;
    auto count = [&](auto&& self, int lo, int hi) -> std::int64_t {
        if (lo > hi) return 1;
        auto key = std::make_pair(lo, hi);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::int64_t total = 0;
        for (int j = lo + 1; j <= hi; j += 2)
            if (colors[static_cast<size_t>(lo)] == colors[static_cast<size_t>(j)])
                total += self(self, lo + 1, j - 1) * self(self, j + 1, hi);
        memo.emplace(key, total);
        return total;
    };
    return count(count, 0, n - 1);
}

inline long double delta_ld(long double eps) {
    const long double root = std::sqrt(1.0L - eps);
    return 2.0L * eps / std::sqrt(1.0L - eps - std::sqrt(2.0L) * eps * root);
}

inline long double delta_iterate_ld(long double eps, int j) {
    long double v = eps;
    for (int s = 0; s < j; ++s) v = delta_ld(v);
    return v;
}

/// Dense model of the truncated Fock space: explicit word enumeration and
/// dense matrices for creation, annihilation and second quantization.
struct DenseFock {
    int dim;
    int cutoff;
    std::vector<std::vector<int>> words; // index -> word
    std::map<std::vector<int>, int> index;

    DenseFock(int dim_, int cutoff_) : dim(dim_), cutoff(cutoff_) {
        std::vector<std::vector<int>> frontier{{}};
        words.push_back({});
        for (int len = 1; len <= cutoff; ++len) {
            std::vector<std::vector<int>> next;
            for (const auto& w : frontier)
                for (int a = 0; a < dim; ++a) {
                    auto grown = w;
                    grown.push_back(a);
                    words.push_back(grown);
                    next.push_back(std::move(grown));
                }
            frontier = std::move(next);
        }
        for (int i = 0; i < static_cast<int>(words.size()); ++i)
            index.emplace(words[static_cast<size_t>(i)], i);
    }

    int size() const { return static_cast<int>(words.size()); }

    Eigen::MatrixXcd creation(const Eigen::VectorXcd& e) const {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size(), size());
        for (int col = 0; col < size(); ++col) {
            const auto& w = words[static_cast<size_t>(col)];
            if (static_cast<int>(w.size()) >= cutoff) continue;
            for (int a = 0; a < dim; ++a) {
                if (e[a] == Complex(0.0)) continue;
                std::vector<int> grown{a};
                grown.insert(grown.end(), w.begin(), w.end());
                m(index.at(grown), col) += e[a];
            }
        }
        return m;
    }

    Eigen::MatrixXcd annihilation(const Eigen::VectorXcd& e) const {
        // adjoint of creation, written directly from the word action
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size(), size());
        for (int col = 0; col < size(); ++col) {
            const auto& w = words[static_cast<size_t>(col)];
            if (w.empty()) continue;
            const std::vector<int> rest(w.begin() + 1, w.end());
            m(index.at(rest), col) += std::conj(e[w.front()]);
        }
        return m;
    }

    // W(e_1 x...x e_n) through the Wick formula, conj = basis conjugation map.
    Eigen::MatrixXcd wick_word(const std::vector<Eigen::VectorXcd>& letters,
                               const std::vector<int>& conj_perm) const {
        auto conj_letter = [&](const Eigen::VectorXcd& e) {
            Eigen::VectorXcd out = Eigen::VectorXcd::Zero(e.size());
            for (int i = 0; i < e.size(); ++i)
                out[conj_perm[static_cast<size_t>(i)]] = std::conj(e[i]);
            return out;
        };
        const int n = static_cast<int>(letters.size());
        Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(size(), size());
        for (int k = 0; k <= n; ++k) {
            Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(size(), size());
            for (int i = k - 1; i >= 0; --i) term = creation(letters[static_cast<size_t>(i)]) * term;
            Eigen::MatrixXcd ann = Eigen::MatrixXcd::Identity(size(), size());
            for (int i = k; i < n; ++i)
                ann = ann * annihilation(conj_letter(letters[static_cast<size_t>(i)]));
            total += term * ann;
        }
        return total;
    }

    Eigen::MatrixXcd second_quantization(const Eigen::MatrixXcd& u) const {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size(), size());
        for (int col = 0; col < size(); ++col) {
            const auto& w = words[static_cast<size_t>(col)];
            const int n = static_cast<int>(w.size());
            std::vector<int> target(w.begin(), w.end());
            auto expand = [&](auto&& self, int pos, Complex acc) -> void {
                if (acc == Complex(0.0)) return;
                if (pos == n) {
                    m(index.at(target), col) += acc;
                    return;
                }
                for (int row = 0; row < dim; ++row) {
                    target[static_cast<size_t>(pos)] = row;
                    self(self, pos + 1, acc * u(row, w[static_cast<size_t>(pos)]));
                }
            };
            expand(expand, 0, Complex(1.0));
        }
        return m;
    }
};

// Direct O(N^2) Fourier coefficient of a grid measure (no FFT).
inline Complex naive_grid_coeff(const Eigen::VectorXd& weights, int n) {
    const int N = static_cast<int>(weights.size());
    Complex s = 0.0;
    for (int j = 0; j < N; ++j)
        s += weights[j] * std::polar(1.0, 2.0 * std::numbers::pi * n * j / static_cast<double>(N));
    return s;
}

// Direct circular convolution of grid weights (no FFT).
inline Eigen::VectorXd naive_convolve(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const int n = static_cast<int>(a.size());
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[(i + j) % n] += a[i] * b[j];
    return out;
}

} // namespace oracles
