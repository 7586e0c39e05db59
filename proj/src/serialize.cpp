#include "fockbench/serialize.hpp"

namespace fockbench {

Json complex_to_json(Complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

Complex complex_from_json(const Json& j) {
    return Complex(j.at("re").get<double>(), j.at("im").get<double>());
}

Json fock_to_json(const FockVector& v) {
    Json arr = Json::array();
    for (const auto& [w, c] : v.coeffs) {
        Json entry;
        entry["word"] = w;
        entry["re"] = c.real();
        entry["im"] = c.imag();
        arr.push_back(std::move(entry));
    }
    return arr;
}

FockVector fock_from_json(const Json& j, const HilbertSpec& space, int cutoff) {
    FockVector v = FockVector::zero(space, cutoff);
    for (const auto& entry : j) {
        FockWord w = entry.at("word").get<FockWord>();
        if (static_cast<int>(w.size()) > cutoff)
            throw ParameterError("fock_from_json: word longer than cutoff");
        for (int letter : w)
            if (letter < 0 || letter >= space.dim)
                throw ParameterError("fock_from_json: letter out of range");
        v.add_term(w, Complex(entry.at("re").get<double>(), entry.at("im").get<double>()));
    }
    return v;
}

namespace {

Json letter_to_json(const HVector& l) {
    Json arr = Json::array();
    for (int i = 0; i < l.coeffs.size(); ++i) arr.push_back(complex_to_json(l.coeffs[i]));
    return arr;
}

HVector letter_from_json(const Json& j, const HilbertSpec& space) {
    if (static_cast<int>(j.size()) != space.dim)
        throw ParameterError("letter_from_json: length mismatch");
    HVector l = HVector::zero(space);
    for (int i = 0; i < space.dim; ++i) l.coeffs[i] = complex_from_json(j.at(static_cast<size_t>(i)));
    return l;
}

} // namespace

Json wick_to_json(const WickExpression& x) {
    Json j;
    j["scalar"] = complex_to_json(x.scalar);
    Json terms = Json::array();
    for (const auto& t : x.terms) {
        Json term;
        term["coeff"] = complex_to_json(t.coeff);
        Json letters = Json::array();
        for (const auto& l : t.word.letters) letters.push_back(letter_to_json(l));
        term["letters"] = std::move(letters);
        terms.push_back(std::move(term));
    }
    j["terms"] = std::move(terms);
    return j;
}

WickExpression wick_from_json(const Json& j, const HilbertSpec& space) {
    WickExpression x = WickExpression::identity(space, complex_from_json(j.at("scalar")));
    for (const auto& term : j.at("terms")) {
        WickWord w;
        for (const auto& l : term.at("letters")) w.letters.push_back(letter_from_json(l, space));
        if (w.letters.empty()) throw ParameterError("wick_from_json: empty word");
        x.terms.push_back(WickTerm{complex_from_json(term.at("coeff")), std::move(w)});
    }
    return x;
}

Json rep_to_json(const OrthogonalRep& rep) {
    Json j;
    j["dim"] = rep.space.dim;
    j["conj_perm"] = rep.space.conj_perm;
    Json rows = Json::array();
    for (int r = 0; r < rep.space.dim; ++r) {
        Json row = Json::array();
        for (int c = 0; c < rep.space.dim; ++c) row.push_back(complex_to_json(rep.gen(r, c)));
        rows.push_back(std::move(row));
    }
    j["gen"] = std::move(rows);
    return j;
}

OrthogonalRep rep_from_json(const Json& j) {
    OrthogonalRep rep;
    rep.space = HilbertSpec::with_conjugation(j.at("conj_perm").get<std::vector<int>>());
    if (j.at("dim").get<int>() != rep.space.dim)
        throw ParameterError("rep_from_json: dim and conj_perm disagree");
    rep.gen = Eigen::MatrixXcd::Zero(rep.space.dim, rep.space.dim);
    const Json& rows = j.at("gen");
    if (static_cast<int>(rows.size()) != rep.space.dim)
        throw ParameterError("rep_from_json: generator row count mismatch");
    for (int r = 0; r < rep.space.dim; ++r) {
        const Json& row = rows.at(static_cast<size_t>(r));
        if (static_cast<int>(row.size()) != rep.space.dim)
            throw ParameterError("rep_from_json: generator column count mismatch");
        for (int c = 0; c < rep.space.dim; ++c)
            rep.gen(r, c) = complex_from_json(row.at(static_cast<size_t>(c)));
    }
    rep.validate();
    return rep;
}

Json measure_to_json(const TorusMeasure& mu) {
    return std::visit([](const auto& m) -> Json {
        using T = std::decay_t<decltype(m)>;
        Json j;
        if constexpr (std::is_same_v<T, AtomicMeasure>) {
            j["type"] = "atomic";
            Json atoms = Json::array();
            for (const auto& a : m.atoms) atoms.push_back(Json{{"angle", a.angle}, {"mass", a.mass}});
            j["atoms"] = std::move(atoms);
        } else if constexpr (std::is_same_v<T, GridMeasure>) {
            j["type"] = "grid";
            j["n"] = m.n;
            j["weights"] = std::vector<double>(m.weights.data(), m.weights.data() + m.n);
        } else {
            j["type"] = "cantor";
            j["center"] = m.center;
            j["half_width"] = m.half_width;
            j["ratio"] = m.ratio;
            j["offsets"] = m.offsets;
            j["depth"] = m.depth;
            j["symmetrized"] = m.symmetrized;
        }
        return j;
    }, mu);
}

TorusMeasure measure_from_json(const Json& j) {
    const std::string type = j.at("type").get<std::string>();
    TorusMeasure mu;
    if (type == "atomic") {
        AtomicMeasure m;
        for (const auto& a : j.at("atoms"))
            m.atoms.push_back({a.at("angle").get<double>(), a.at("mass").get<double>()});
        mu = std::move(m);
    } else if (type == "grid") {
        GridMeasure m;
        m.n = j.at("n").get<int>();
        const auto w = j.at("weights").get<std::vector<double>>();
        m.weights = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<long>(w.size()));
        mu = std::move(m);
    } else if (type == "cantor") {
        CantorMeasure m;
        m.center = j.at("center").get<double>();
        m.half_width = j.at("half_width").get<double>();
        m.ratio = j.at("ratio").get<double>();
        m.offsets = j.at("offsets").get<std::vector<double>>();
        m.depth = j.at("depth").get<int>();
        m.symmetrized = j.at("symmetrized").get<bool>();
        mu = std::move(m);
    } else {
        throw ParameterError("measure_from_json: unknown type '" + type + "'");
    }
    validate(mu);
    return mu;
}

namespace {

Json vector_to_json(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

} // namespace

Json report_to_json(const MasaInvariantReport& rep) {
    Json j;
    j["family_ids"] = rep.family_ids;
    Json rows = Json::array();
    for (int r = 0; r < rep.pairwise.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < rep.pairwise.cols(); ++c) row.push_back(rep.pairwise(r, c));
        rows.push_back(std::move(row));
    }
    j["pairwise"] = std::move(rows);
    j["vs_haar"] = vector_to_json(rep.vs_haar);
    j["fiber_max_cell"] = vector_to_json(rep.fiber_max_cell);
    j["resolution_level"] = rep.resolution_level;
    j["multiplicity"] = rep.multiplicity;
    return j;
}

Json report_to_json(const ExoticnessReport& rep) {
    Json j;
    j["fiber_count"] = rep.fiber_count;
    j["level"] = rep.level;
    j["atom_proxy"] = vector_to_json(rep.atom_proxy);
    j["haar_affinity"] = vector_to_json(rep.haar_affinity);
    j["atoms_flagged"] = rep.atoms_flagged;
    j["exotic_consistent"] = rep.exotic_consistent;
    return j;
}

} // namespace fockbench
