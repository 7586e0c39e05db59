#include "fockbench/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>

namespace fockbench {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double fold_angle(double a) {
    double f = a - std::floor(a);
    if (f >= 1.0) f = 0.0; // guard against 0.99999... rounding up
    return f;
}

void validate_atomic(const AtomicMeasure& mu) {
    if (mu.atoms.empty()) throw ParameterError("AtomicMeasure: no atoms");
    double mass = 0.0;
    for (const auto& a : mu.atoms) {
        if (a.angle < 0.0 || a.angle >= 1.0)
            throw ParameterError("AtomicMeasure: angle outside [0, 1)");
        if (!(a.mass > 0.0)) throw ParameterError("AtomicMeasure: masses must be positive");
        mass += a.mass;
    }
    if (std::abs(mass - 1.0) > 1e-12)
        throw ParameterError("AtomicMeasure: total mass " + std::to_string(mass) + " != 1");
}

void validate_grid(const GridMeasure& mu) {
    if (!power_of_two(mu.n)) throw ParameterError("GridMeasure: grid size must be a power of two");
    if (mu.weights.size() != mu.n) throw ParameterError("GridMeasure: weight count mismatch");
    if (mu.weights.minCoeff() < 0.0) throw ParameterError("GridMeasure: negative weight");
    if (std::abs(mu.weights.sum() - 1.0) > 1e-12)
        throw ParameterError("GridMeasure: total mass != 1");
}

void validate_cantor(const CantorMeasure& mu) {
    if (!(mu.ratio > 0.0 && mu.ratio < 0.5))
        throw ParameterError("CantorMeasure: ratio must lie in (0, 1/2)");
    if (!(mu.half_width > 0.0 && mu.half_width <= 0.5))
        throw ParameterError("CantorMeasure: half_width must lie in (0, 1/2]");
    if (mu.depth < 0 || mu.depth > 60) throw ParameterError("CantorMeasure: depth out of range");
    if (mu.offsets.empty()) throw ParameterError("CantorMeasure: no branch offsets");
    std::vector<double> sorted = mu.offsets;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i) {
        if (std::abs(sorted[i]) > 1.0 - mu.ratio + 1e-12)
            throw ParameterError("CantorMeasure: branch leaves the parent arc");
        if (i > 0 && sorted[i] - sorted[i - 1] < 2.0 * mu.ratio - 1e-12)
            throw ParameterError("CantorMeasure: branch arcs overlap");
    }
}

} // namespace

void validate(const TorusMeasure& mu) {
    std::visit([](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AtomicMeasure>) validate_atomic(m);
        if constexpr (std::is_same_v<T, GridMeasure>) validate_grid(m);
        if constexpr (std::is_same_v<T, CantorMeasure>) validate_cantor(m);
    }, mu);
}

TorusMeasure dirac(double angle) {
    AtomicMeasure m;
    m.atoms.push_back({fold_angle(angle), 1.0});
    return m;
}

TorusMeasure haar(int grid_n) {
    if (!power_of_two(grid_n)) throw ParameterError("haar: grid size must be a power of two");
    GridMeasure m;
    m.n = grid_n;
    m.weights = Eigen::VectorXd::Constant(grid_n, 1.0 / grid_n);
    return m;
}

TorusMeasure middle_thirds_cantor(int depth) {
    CantorMeasure m;
    m.center = 0.5;
    m.half_width = 0.5;
    m.ratio = 1.0 / 3.0;
    m.offsets = {-2.0 / 3.0, 2.0 / 3.0};
    m.depth = depth;
    m.symmetrized = false;
    return m;
}

Complex FourierWindow::coeff(int n) const {
    if (n < -window || n > window) throw RangeError("FourierWindow::coeff: index outside window");
    return coefficients[n + window];
}

namespace {

FourierWindow fourier_atomic(const AtomicMeasure& mu, int window) {
    FourierWindow fw;
    fw.window = window;
    fw.coefficients = Eigen::VectorXcd::Zero(2 * window + 1);
    for (int n = -window; n <= window; ++n) {
        Complex s = 0.0;
        for (const auto& a : mu.atoms)
            s += a.mass * std::polar(1.0, kTwoPi * n * a.angle);
        fw.coefficients[n + window] = s;
    }
    return fw;
}

FourierWindow fourier_grid(const GridMeasure& mu, int window) {
    if (2 * window > mu.n)
        throw ParameterError("fourier: window exceeds half the grid size (aliasing)");
    Eigen::FFT<double> fft;
    std::vector<Complex> in(mu.weights.data(), mu.weights.data() + mu.n);
    std::vector<Complex> out(static_cast<size_t>(mu.n));
    fft.fwd(out, in); // out[k] = sum_j w_j exp(-2 pi i j k / N)
    FourierWindow fw;
    fw.window = window;
    fw.coefficients = Eigen::VectorXcd::Zero(2 * window + 1);
    for (int n = -window; n <= window; ++n) {
        const int k = ((-n) % mu.n + mu.n) % mu.n;
        fw.coefficients[n + window] = out[static_cast<size_t>(k)];
    }
    return fw;
}

// mu_hat(n) = exp(2 pi i n c) prod_{d=1..depth} mean_b exp(2 pi i n w rho^{d-1} o_b),
// the discarded levels contribute at most 2 pi |n| w rho^depth max|o| / (1 - rho).
Complex cantor_phase_product(const CantorMeasure& mu, int n) {
    Complex prod = std::polar(1.0, kTwoPi * n * mu.center);
    double scale = mu.half_width;
    for (int d = 0; d < mu.depth; ++d) {
        Complex level = 0.0;
        for (double o : mu.offsets) level += std::polar(1.0, kTwoPi * n * scale * o);
        prod *= level / static_cast<double>(mu.offsets.size());
        scale *= mu.ratio;
    }
    return prod;
}

FourierWindow fourier_cantor(const CantorMeasure& mu, int window) {
    FourierWindow fw;
    fw.window = window;
    fw.coefficients = Eigen::VectorXcd::Zero(2 * window + 1);
    double max_off = 0.0;
    for (double o : mu.offsets) max_off = std::max(max_off, std::abs(o));
    const double reach = mu.half_width * std::pow(mu.ratio, mu.depth) * max_off / (1.0 - mu.ratio);
    fw.tail_bound = kTwoPi * window * reach;
    for (int n = 0; n <= window; ++n) {
        Complex c = cantor_phase_product(mu, n);
        if (mu.symmetrized) c = std::real(c);
        fw.coefficients[window + n] = c;
        fw.coefficients[window - n] = std::conj(c);
    }
    return fw;
}

} // namespace

FourierWindow fourier(const TorusMeasure& mu, int window) {
    if (window < 1) throw ParameterError("fourier: window must be positive");
    validate(mu);
    FourierWindow fw = std::visit([&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AtomicMeasure>) return fourier_atomic(m, window);
        else if constexpr (std::is_same_v<T, GridMeasure>) return fourier_grid(m, window);
        else return fourier_cantor(m, window);
    }, mu);
    fw.source = std::visit([](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AtomicMeasure>)
            return "atomic[" + std::to_string(m.atoms.size()) + "]";
        else if constexpr (std::is_same_v<T, GridMeasure>)
            return "grid[" + std::to_string(m.n) + "]";
        else
            return "cantor[depth=" + std::to_string(m.depth) + "]";
    }, mu);
    return fw;
}

SymmetryReport is_symmetric(const TorusMeasure& mu, int window, double tol) {
    const FourierWindow fw = fourier(mu, window);
    SymmetryReport rep;
    rep.tol = tol;
    for (int i = 0; i < fw.coefficients.size(); ++i)
        rep.max_imag = std::max(rep.max_imag, std::abs(std::imag(fw.coefficients[i])));
    rep.symmetric = rep.max_imag <= tol;
    return rep;
}

Eigen::VectorXd rajchman_profile(const TorusMeasure& mu, int window) {
    const FourierWindow fw = fourier(mu, window);
    Eigen::VectorXd profile = Eigen::VectorXd::Zero(window);
    double running = 0.0;
    for (int m = window; m >= 1; --m) {
        running = std::max({running, std::abs(fw.coeff(m)), std::abs(fw.coeff(-m))});
        profile[m - 1] = running;
    }
    return profile;
}

namespace {

// Exact dyadic cell masses of the truncated self-similar measure: construction
// cells are descended until they fit inside a single cell or the depth is
// exhausted; a straddling leaf is attributed to the cell of its midpoint.
void cantor_cells_one_sided(double center, double half_width, double ratio,
                            const std::vector<double>& offsets, int depth, double mass,
                            int cells, Eigen::VectorXd& out) {
    const double width = 1.0 / cells;
    const double lo = center - half_width;
    const double hi = center + half_width;
    const int cell_lo = static_cast<int>(std::floor(fold_angle(lo) * cells));
    const int cell_hi = static_cast<int>(std::floor(fold_angle(hi) * cells));
    const bool wraps = std::floor(lo) != std::floor(hi);
    if (!wraps && cell_lo == cell_hi) {
        out[cell_lo] += mass;
        return;
    }
    if (depth == 0 || 2.0 * half_width < width * 1e-9) {
        out[static_cast<int>(std::floor(fold_angle(center) * cells))] += mass;
        return;
    }
    const double child_mass = mass / static_cast<double>(offsets.size());
    for (double o : offsets)
        cantor_cells_one_sided(center + half_width * o, half_width * ratio, ratio, offsets,
                               depth - 1, child_mass, cells, out);
}

Eigen::VectorXd cantor_cell_masses(const CantorMeasure& mu, int level) {
    const int cells = 1 << level;
    Eigen::VectorXd out = Eigen::VectorXd::Zero(cells);
    if (mu.symmetrized) {
        std::vector<double> mirrored(mu.offsets.rbegin(), mu.offsets.rend());
        for (double& o : mirrored) o = -o;
        cantor_cells_one_sided(mu.center, mu.half_width, mu.ratio, mu.offsets, mu.depth, 0.5,
                               cells, out);
        cantor_cells_one_sided(-mu.center, mu.half_width, mu.ratio, mirrored, mu.depth, 0.5,
                               cells, out);
    } else {
        cantor_cells_one_sided(mu.center, mu.half_width, mu.ratio, mu.offsets, mu.depth, 1.0,
                               cells, out);
    }
    return out;
}

} // namespace

Eigen::VectorXd cell_masses(const TorusMeasure& mu, int level) {
    if (level < 0 || level > 24) throw ParameterError("cell_masses: level out of range");
    validate(mu);
    const int cells = 1 << level;
    return std::visit([&](const auto& m) -> Eigen::VectorXd {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AtomicMeasure>) {
            Eigen::VectorXd out = Eigen::VectorXd::Zero(cells);
            for (const auto& a : m.atoms)
                out[static_cast<int>(std::floor(a.angle * cells))] += a.mass;
            return out;
        } else if constexpr (std::is_same_v<T, GridMeasure>) {
            Eigen::VectorXd out = Eigen::VectorXd::Zero(cells);
            for (int j = 0; j < m.n; ++j) {
                if (m.weights[j] == 0.0) continue;
                const double angle = static_cast<double>(j) / m.n;
                out[static_cast<int>(std::floor(angle * cells))] += m.weights[j];
            }
            return out;
        } else {
            return cantor_cell_masses(m, level);
        }
    }, mu);
}

std::vector<int> support_cells(const TorusMeasure& mu, int level, double threshold) {
    const Eigen::VectorXd masses = cell_masses(mu, level);
    std::vector<int> out;
    for (int i = 0; i < masses.size(); ++i)
        if (masses[i] > threshold) out.push_back(i);
    return out;
}

double singularity_score(const TorusMeasure& mu, const TorusMeasure& nu, int level) {
    const Eigen::VectorXd a = cell_masses(mu, level);
    const Eigen::VectorXd b = cell_masses(nu, level);
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i)
        if (a[i] > 0.0 && b[i] > 0.0) s += std::sqrt(a[i] * b[i]);
    return s;
}

GridMeasure render(const TorusMeasure& mu, int grid_n) {
    if (!power_of_two(grid_n)) throw ParameterError("render: grid size must be a power of two");
    validate(mu);
    return std::visit([&](const auto& m) -> GridMeasure {
        using T = std::decay_t<decltype(m)>;
        GridMeasure out;
        out.n = grid_n;
        if constexpr (std::is_same_v<T, AtomicMeasure>) {
            out.weights = Eigen::VectorXd::Zero(grid_n);
            for (const auto& a : m.atoms) {
                const int j = static_cast<int>(std::llround(a.angle * grid_n)) % grid_n;
                out.weights[j] += a.mass;
            }
        } else if constexpr (std::is_same_v<T, GridMeasure>) {
            if (m.n == grid_n) {
                out.weights = m.weights;
            } else if (m.n < grid_n) {
                out.weights = Eigen::VectorXd::Zero(grid_n);
                const int stride = grid_n / m.n;
                for (int j = 0; j < m.n; ++j) out.weights[j * stride] = m.weights[j];
            } else {
                out.weights = Eigen::VectorXd::Zero(grid_n);
                const int stride = m.n / grid_n;
                for (int j = 0; j < m.n; ++j) out.weights[j / stride] += m.weights[j];
            }
        } else {
            int level = 0;
            while ((1 << level) < grid_n) ++level;
            out.weights = cantor_cell_masses(m, level);
        }
        return out;
    }, mu);
}

GridMeasure convolve(const TorusMeasure& mu, const TorusMeasure& nu, int grid_n) {
    int n = grid_n;
    if (n == 0) {
        const auto* a = std::get_if<GridMeasure>(&mu);
        const auto* b = std::get_if<GridMeasure>(&nu);
        if (!a || !b || a->n != b->n)
            throw ParameterError("convolve: grid mismatch; pass an explicit grid size");
        n = a->n;
    }
    const GridMeasure a = render(mu, n);
    const GridMeasure b = render(nu, n);
    Eigen::FFT<double> fft;
    std::vector<Complex> fa(static_cast<size_t>(n)), fb(static_cast<size_t>(n)),
        in(static_cast<size_t>(n));
    std::copy(a.weights.data(), a.weights.data() + n, in.begin());
    fft.fwd(fa, in);
    std::copy(b.weights.data(), b.weights.data() + n, in.begin());
    fft.fwd(fb, in);
    for (int k = 0; k < n; ++k) fa[static_cast<size_t>(k)] *= fb[static_cast<size_t>(k)];
    std::vector<Complex> conv(static_cast<size_t>(n));
    fft.inv(conv, fa);
    GridMeasure out;
    out.n = n;
    out.weights = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < n; ++k) out.weights[k] = std::max(0.0, std::real(conv[static_cast<size_t>(k)]));
    return out;
}

GridMeasure m_infinity(const TorusMeasure& mu, int terms, int grid_n) {
    if (terms < 1) throw ParameterError("m_infinity: need at least one term");
    const GridMeasure g = render(mu, grid_n);
    Eigen::FFT<double> fft;
    std::vector<Complex> in(g.weights.data(), g.weights.data() + g.n);
    std::vector<Complex> f(static_cast<size_t>(g.n));
    fft.fwd(f, in);
    // Horner form of sum_{m=1..M} 2^-m w^m, then the 1/(1 - 2^-M) renormalization.
    const double renorm = 1.0 / (1.0 - std::ldexp(1.0, -terms));
    std::vector<Complex> acc(static_cast<size_t>(g.n), Complex(0.0));
    for (int m = terms; m >= 1; --m)
        for (int k = 0; k < g.n; ++k) {
            auto& a = acc[static_cast<size_t>(k)];
            a = 0.5 * f[static_cast<size_t>(k)] * (1.0 + a);
        }
    for (auto& a : acc) a *= renorm;
    std::vector<Complex> w(static_cast<size_t>(g.n));
    fft.inv(w, acc);
    GridMeasure out;
    out.n = g.n;
    out.weights = Eigen::VectorXd::Zero(g.n);
    for (int k = 0; k < g.n; ++k) out.weights[k] = std::max(0.0, std::real(w[static_cast<size_t>(k)]));
    return out;
}

TorusMeasure cantor_family_member(const std::vector<bool>& bits, const CantorFamilyParams& params) {
    if (bits.empty() || bits.size() > 16)
        throw ParameterError("cantor_family_member: bit string length must lie in [1, 16]");
    if (!(params.region_lo > 0.0 && params.region_lo < params.region_hi && params.region_hi < 0.5))
        throw ParameterError("cantor_family_member: arc region must sit strictly inside (0, 1/2)");
    if (!(params.fill > 0.0 && params.fill < 1.0))
        throw ParameterError("cantor_family_member: fill must lie in (0, 1) or arcs overlap");
    const size_t m = bits.size();
    size_t index = 0;
    for (bool b : bits) index = (index << 1) | (b ? 1u : 0u);
    const size_t count = size_t{1} << m;
    const double slot = (params.region_hi - params.region_lo) / static_cast<double>(count);
    CantorMeasure out;
    out.center = params.region_lo + (static_cast<double>(index) + 0.5) * slot;
    out.half_width = 0.5 * params.fill * slot;
    // spread the contraction ratio across the family: members then differ in
    // their fine structure, not just by translation
    out.ratio = params.ratio;
    if (count > 1)
        out.ratio += params.ratio_spread *
                     (static_cast<double>(index) / static_cast<double>(count - 1) - 0.5);
    out.offsets = {-(1.0 - out.ratio), 1.0 - out.ratio};
    out.depth = params.depth;
    out.symmetrized = true;
    validate_cantor(out);
    return out;
}

HSpaceRep h_space_rep(const GridMeasure& mu, long n) {
    validate_grid(mu);
    if (mu.n > 1024)
        throw ParameterError("h_space_rep: grid too large for a dense representation (max 1024)");
    for (int j = 0; j < mu.n; ++j) {
        const int jc = (mu.n - j) % mu.n;
        if (std::abs(mu.weights[j] - mu.weights[jc]) > 1e-12)
            throw PreconditionError("h_space_rep: measure is not symmetric");
    }
    std::vector<int> perm(static_cast<size_t>(mu.n));
    for (int j = 0; j < mu.n; ++j) perm[static_cast<size_t>(j)] = (mu.n - j) % mu.n;
    HSpaceRep out;
    out.rep.space = HilbertSpec::with_conjugation(std::move(perm), "L2(T,mu) grid");
    out.rep.gen = Eigen::MatrixXcd::Zero(mu.n, mu.n);
    out.matrix = Eigen::MatrixXcd::Zero(mu.n, mu.n);
    for (int j = 0; j < mu.n; ++j) {
        const double angle = kTwoPi * j / mu.n;
        out.rep.gen(j, j) = std::polar(1.0, angle);
        out.matrix(j, j) = std::polar(1.0, angle * static_cast<double>(n));
    }
    out.rep.validate();
    return out;
}

} // namespace fockbench
