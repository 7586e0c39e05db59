#include "fockbench/spectra.hpp"

#include <cmath>

namespace fockbench {

Complex TorusSquareMeasure::coeff(int m, int n) const {
    if (m < -window || m > window || n < -window || n > window)
        throw RangeError("TorusSquareMeasure::coeff: index outside window");
    if (m != n) return Complex(0.0);
    return diag[m + window];
}

TorusSquareMeasure pushforward_psi(const TorusMeasure& minf, int window, int grid_n) {
    TorusSquareMeasure eta;
    const FourierWindow fw = fourier(minf, window);
    eta.window = window;
    eta.diag = fw.coefficients;
    eta.grid_n = grid_n;
    eta.fiber_weights = render(minf, grid_n).weights;
    return eta;
}

namespace {

Eigen::VectorXd grid_cell_masses(const Eigen::VectorXd& weights, int level) {
    GridMeasure g;
    g.n = static_cast<int>(weights.size());
    g.weights = weights;
    return cell_masses(TorusMeasure{g}, level);
}

double affinity(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i)
        if (a[i] > 0.0 && b[i] > 0.0) s += std::sqrt(a[i] * b[i]);
    return s;
}

} // namespace

MasaInvariantReport disjointness_matrix(const std::vector<TorusMeasure>& family, int level,
                                        int window, int terms, int grid_n) {
    if (family.empty()) throw ParameterError("disjointness_matrix: empty family");
    const int count = static_cast<int>(family.size());
    MasaInvariantReport rep;
    rep.resolution_level = level;
    rep.multiplicity = "not computed";
    rep.pairwise = Eigen::MatrixXd::Zero(count, count);
    rep.vs_haar = Eigen::VectorXd::Zero(count);
    rep.fiber_max_cell = Eigen::VectorXd::Zero(count);

    std::vector<TorusMeasure> fibers;
    fibers.reserve(family.size());
    for (int i = 0; i < count; ++i) {
        rep.family_ids.push_back("member_" + std::to_string(i));
        fibers.push_back(TorusMeasure{m_infinity(family[static_cast<size_t>(i)], terms, grid_n)});
    }
    const TorusMeasure uniform = haar(grid_n);
    for (int i = 0; i < count; ++i) {
        rep.pairwise(i, i) = 1.0;
        for (int j = i + 1; j < count; ++j) {
            const double s = singularity_score(fibers[static_cast<size_t>(i)],
                                               fibers[static_cast<size_t>(j)], level);
            rep.pairwise(i, j) = s;
            rep.pairwise(j, i) = s;
        }
        rep.vs_haar[i] = singularity_score(fibers[static_cast<size_t>(i)], uniform, level);
        rep.fiber_max_cell[i] = cell_masses(fibers[static_cast<size_t>(i)], level).maxCoeff();
    }
    // window kept so the report provenance matches the eta construction
    (void)window;
    return rep;
}

ExoticnessReport exoticness_probe(const TorusSquareMeasure& eta, int level, int fibers) {
    if (eta.grid_n == 0 || eta.fiber_weights.size() == 0)
        throw PreconditionError("exoticness_probe: eta carries no grid render");
    if (fibers < 1) throw ParameterError("exoticness_probe: need at least one fiber");
    ExoticnessReport rep;
    rep.fiber_count = fibers;
    rep.level = level + 1;
    rep.atom_proxy = Eigen::VectorXd::Zero(fibers);
    rep.haar_affinity = Eigen::VectorXd::Zero(fibers);

    const int n = eta.grid_n;
    const Eigen::VectorXd haar_coarse = Eigen::VectorXd::Constant(1 << level, std::ldexp(1.0, -level));
    const Eigen::VectorXd haar_fine =
        Eigen::VectorXd::Constant(1 << (level + 1), std::ldexp(1.0, -(level + 1)));

    bool all_decay = true;
    bool any_atom = false;
    for (int s = 0; s < fibers; ++s) {
        // fiber over t = exp(2 pi i j / n): source rotated by conj(t), a cyclic shift
        const int shift = static_cast<int>((static_cast<long>(s) * n) / fibers);
        Eigen::VectorXd w(n);
        for (int i = 0; i < n; ++i) w[i] = eta.fiber_weights[(i + shift) % n];
        const Eigen::VectorXd coarse = grid_cell_masses(w, level);
        const Eigen::VectorXd fine = grid_cell_masses(w, level + 1);
        rep.atom_proxy[s] = fine.maxCoeff();
        rep.haar_affinity[s] = affinity(fine, haar_fine);
        const double coarse_affinity = affinity(coarse, haar_coarse);
        if (!(rep.atom_proxy[s] < coarse.maxCoeff() && rep.haar_affinity[s] < coarse_affinity))
            all_decay = false;
        if (rep.atom_proxy[s] > 0.5) any_atom = true;
    }
    rep.atoms_flagged = any_atom;
    rep.exotic_consistent = all_decay && !any_atom;
    return rep;
}

} // namespace fockbench
