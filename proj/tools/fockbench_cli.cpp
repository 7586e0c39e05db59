// fockbench: batch front door for the Fock/Wick/measure workbench.
// Subcommands run verification experiments from flags or a JSON config and
// emit CSV/JSON results.  Outputs are byte-stable for a fixed seed.
//
// Exit codes: 0 success, 2 config/validation error, 3 a checked mathematical
// bound failed mid-run (counterexample dumped).

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <fockbench/random.hpp>
#include <fockbench/serialize.hpp>
#include <fockbench/spectra.hpp>

namespace fs = std::filesystem;
using namespace fockbench;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr const char* kOutDirEnv = "FOCKBENCH_OUT_DIR";
constexpr std::int64_t kNoSeed = std::numeric_limits<std::int64_t>::min();

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string fmt(long x) { return std::to_string(x); }
std::string fmt(int x) { return std::to_string(x); }

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string resolve_out(const std::string& path) {
    if (path.empty() || fs::path(path).is_absolute()) return path;
    if (const char* base = std::getenv(kOutDirEnv); base && *base)
        return (fs::path(base) / path).string();
    return path;
}

// Collects the effective parameter set of a subcommand: defaults, then the
// config file, then explicit command-line flags (strongest).
class Params {
public:
    explicit Params(CLI::App* cmd) : cmd_(cmd) {
        cmd_->add_option("--config", config_path_, "JSON config file (flags override it)");
    }

    template <typename T>
    void add(const std::string& name, T& var, const std::string& desc) {
        options_[name] = cmd_->add_option("--" + name, var, desc);
        setters_[name] = [&var](const Json& j) { var = j.get<T>(); };
        getters_[name] = [&var]() { return Json(var); };
    }

    // Returns an error message, or empty on success.
    std::string load_config() {
        if (config_path_.empty()) return {};
        std::ifstream in(config_path_);
        if (!in) return "cannot open config file: " + config_path_;
        Json cfg;
        try {
            in >> cfg;
        } catch (const std::exception& e) {
            return std::string("config parse error: ") + e.what();
        }
        for (const auto& [key, value] : cfg.items()) {
            auto it = setters_.find(key);
            if (it == setters_.end()) return "config key not recognized: " + key;
            if (options_[key]->count() > 0) continue; // explicit flag wins
            try {
                it->second(value);
            } catch (const std::exception& e) {
                return "config key '" + key + "': " + e.what();
            }
        }
        return {};
    }

    Json effective() const {
        Json j = Json::object();
        for (const auto& [key, get] : getters_) j[key] = get();
        return j;
    }

private:
    CLI::App* cmd_;
    std::string config_path_;
    std::map<std::string, CLI::Option*> options_;
    std::map<std::string, std::function<void(const Json&)>> setters_;
    std::map<std::string, std::function<Json()>> getters_;
};

class CsvWriter {
public:
    explicit CsvWriter(std::string header) : header_(std::move(header)) {}

    void row(const std::vector<std::string>& cells) {
        std::string line;
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) line.push_back(',');
            line += cells[i];
        }
        rows_.push_back(std::move(line));
    }

    bool write(const std::string& path, const std::string& meta) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) return false;
        out << header_ << "\n";
        for (const auto& r : rows_) out << r << "\n";
        out << "# " << meta << "\n";
        return out.good();
    }

private:
    std::string header_;
    std::vector<std::string> rows_;
};

struct RunContext {
    std::string command;
    Json params;
    std::int64_t seed = kNoSeed;

    std::string metadata() const {
        const std::uint64_t h = fnv1a(params.dump());
        char hex[24];
        std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
        std::string meta = "fockbench version=" + std::string(kVersion) + " command=" + command;
        meta += " seed=" + (seed == kNoSeed ? std::string("-") : std::to_string(seed));
        meta += " config_hash=" + std::string(hex);
        return meta;
    }
};

int counterexample(const RunContext& ctx, const std::string& what, const Json& dump) {
    Json j;
    j["command"] = ctx.command;
    j["violation"] = what;
    j["detail"] = dump;
    std::cerr << "counterexample: " << j.dump(2) << "\n";
    const std::string path = resolve_out(ctx.command + ".counterexample.json");
    std::ofstream out(path, std::ios::binary);
    if (out) out << j.dump(2) << "\n";
    return 3;
}

bool power_of_two(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

// The pure validation pass: range checks and path writability, no side
// effects.  Returns the list of failures (empty = valid).
std::vector<std::string> validate_params(const std::string& command, const Json& p) {
    std::vector<std::string> fail;
    auto require = [&](bool ok, const std::string& msg) {
        if (!ok) fail.push_back(msg);
    };
    auto has = [&](const char* k) { return p.contains(k); };
    auto writable = [&](const std::string& raw) {
        if (raw.empty()) return false;
        const fs::path path = resolve_out(raw);
        const fs::path dir = path.parent_path().empty() ? fs::path(".") : path.parent_path();
        std::error_code ec;
        return fs::exists(dir, ec) && fs::is_directory(dir, ec);
    };

    const std::set<std::string> randomized{"wick-check", "bogoljubov-mix", "claim-scan",
                                           "eps-bounds"};
    if (randomized.count(command))
        require(p.value("seed", kNoSeed) != kNoSeed, "seed is mandatory for " + command);

    if (has("out")) require(writable(p["out"].get<std::string>()), "output path is not writable");
    if (has("grid"))
        require(power_of_two(p["grid"].get<std::int64_t>()), "grid must be a power of two");
    if (has("window")) require(p["window"].get<std::int64_t>() >= 1, "window must be positive");
    if (has("trials")) require(p["trials"].get<std::int64_t>() >= 1, "trials must be positive");
    if (has("dim")) {
        require(p["dim"].get<std::int64_t>() >= 1, "dim must be positive");
        require(p["dim"].get<std::int64_t>() <= 64, "dim too large for dense experiments");
    }

    if (command == "fock-moments") {
        require(p["norm"].get<double>() > 0.0, "norm must be positive");
        const auto k = p["max-order"].get<std::int64_t>();
        require(k >= 0 && k <= 16, "max-order must lie in [0, 16]");
        if (p.value("cutoff", std::int64_t{-1}) >= 0)
            require(2 * p["cutoff"].get<std::int64_t>() >= k,
                    "cutoff below the exactness bound ceil(max-order/2)");
    } else if (command == "wick-check") {
        const auto d = p["degree"].get<std::int64_t>();
        require(d >= 1 && d <= 4, "degree must lie in [1, 4]");
    } else if (command == "bogoljubov-mix" || command == "claim-scan") {
        require(p["gmax"].get<std::int64_t>() >= 1, "gmax must be positive");
        if (command == "claim-scan") {
            require(p["cutoff"].get<std::int64_t>() >= 1, "cutoff must be at least 1");
            require(p["rank"].get<std::int64_t>() >= 1 &&
                        p["rank"].get<std::int64_t>() <= p["dim"].get<std::int64_t>(),
                    "rank must lie in [1, dim]");
        }
    } else if (command == "eps-bounds") {
        const double eps = p["eps"].get<double>();
        require(eps >= 0.0 && eps < 0.5, "eps out of the delta domain [0, 1/2)");
        const auto k = p["k"].get<std::int64_t>();
        require(k >= 1 && k <= 4, "k must lie in [1, 4]");
        if (k >= 1 && k <= 4 && eps >= 0.0 && eps < 0.5) {
            try {
                delta_iterate(eps, static_cast<int>(k) - 1);
            } catch (const std::exception&) {
                fail.push_back("eps is inadmissible for a family of size 2^k");
            }
        }
        require(p["dim"].get<std::int64_t>() >=
                    (std::int64_t{1} << p["k"].get<std::int64_t>()) *
                        p["rank"].get<std::int64_t>(),
                "dim must be at least 2^k * rank");
    } else if (command == "measure-fourier" || command == "measure-minf") {
        require(!p["measure"].get<std::string>().empty(), "measure file is required");
        if (command == "measure-minf")
            require(p["terms"].get<std::int64_t>() >= 1, "terms must be positive");
    } else if (command == "family-build") {
        const auto bits = p["bits"].get<std::int64_t>();
        require(bits >= 1 && bits <= 16, "bits must lie in [1, 16]");
        require(!p["out-dir"].get<std::string>().empty(), "out-dir is required");
        const double ratio = p["ratio"].get<double>();
        const double spread = p["ratio-spread"].get<double>();
        require(ratio - spread / 2 > 0.0 && ratio + spread / 2 < 0.5,
                "ratio +- spread/2 must stay inside (0, 1/2)");
        require(p["fill"].get<double>() > 0.0 && p["fill"].get<double>() < 1.0,
                "fill must lie in (0, 1) or arcs overlap");
        require(p["depth"].get<std::int64_t>() >= 1 && p["depth"].get<std::int64_t>() <= 48,
                "depth must lie in [1, 48]");
    } else if (command == "spectra-report") {
        require(!p["family-dir"].get<std::string>().empty(), "family-dir is required");
        const auto level = p["level"].get<std::int64_t>();
        require(level >= 1 && level <= 20, "level must lie in [1, 20]");
        if (has("out-json"))
            require(writable(p["out-json"].get<std::string>()), "out-json path is not writable");
    }
    return fail;
}

int run_validation(const RunContext& ctx) {
    const auto failures = validate_params(ctx.command, ctx.params);
    if (failures.empty()) return 0;
    for (const auto& f : failures) std::cerr << ctx.command << ": " << f << "\n";
    return 2;
}

// ---------------------------------------------------------------- subcommands

int run_fock_moments(const RunContext& ctx) {
    const double norm = ctx.params["norm"].get<double>();
    const auto max_order = ctx.params["max-order"].get<std::int64_t>();
    const auto cutoff = ctx.params.value("cutoff", std::int64_t{-1});

    const HilbertSpec spec = HilbertSpec::real_space(1);
    HVector e = HVector::zero(spec);
    e.coeffs[0] = norm;

    CsvWriter csv("order,value,catalan");
    std::vector<double> catalan{1.0};
    for (int k = 1; k <= 8; ++k)
        catalan.push_back(catalan.back() * 2.0 * (2.0 * k - 1.0) / (k + 1.0));
    for (std::int64_t order = 0; order <= max_order; order += 2) {
        const double value =
            cutoff >= 0 ? semicircle_moment(e, static_cast<int>(order), static_cast<int>(cutoff))
                        : semicircle_moment(e, static_cast<int>(order));
        const double expected =
            catalan[static_cast<size_t>(order / 2)] * std::pow(norm, static_cast<double>(order));
        csv.row({fmt(static_cast<long>(order)), fmt(value), fmt(expected)});
    }
    if (!csv.write(resolve_out(ctx.params["out"].get<std::string>()), ctx.metadata())) {
        std::cerr << "cannot write output file\n";
        return 2;
    }
    return 0;
}

int run_wick_check(const RunContext& ctx) {
    const auto trials = ctx.params["trials"].get<std::int64_t>();
    const int dim = static_cast<int>(ctx.params["dim"].get<std::int64_t>());
    const int degree = static_cast<int>(ctx.params["degree"].get<std::int64_t>());
    const HilbertSpec spec = HilbertSpec::real_space(dim);
    const Rng master(static_cast<std::uint64_t>(ctx.seed));

    CsvWriter csv("trial,coherence_err,adjoint_err,traciality_err,positivity_err");
    const int cutoff = 2 * degree + 1;
    for (std::int64_t t = 0; t < trials; ++t) {
        Rng rng = master.fork(static_cast<std::uint64_t>(t));
        const auto x = random_expression(rng, spec, degree, 3);
        const auto y = random_expression(rng, spec, degree, 3);
        const auto xy = wick_product(x, y);

        double coherence = 0.0;
        for (int letter = -1; letter < dim; ++letter) {
            const FockVector psi = letter < 0 ? FockVector::vacuum(spec, cutoff)
                                              : FockVector::word(spec, cutoff, {letter});
            const FockVector lhs = wick_apply(xy, psi);
            const FockVector rhs = wick_apply(x, wick_apply(y, psi));
            coherence = std::max(coherence, (lhs - rhs).norm() / (1.0 + lhs.norm()));
        }

        FockVector psi = FockVector::zero(spec, cutoff);
        FockVector phi = FockVector::zero(spec, cutoff);
        for (int i = 0; i < 6; ++i) {
            FockWord w;
            const int len = static_cast<int>(rng.integer(0, degree));
            for (int k = 0; k < len; ++k) w.push_back(static_cast<int>(rng.integer(0, dim - 1)));
            psi.add_term(w, rng.cnormal());
            w.clear();
            const int len2 = static_cast<int>(rng.integer(0, degree));
            for (int k = 0; k < len2; ++k) w.push_back(static_cast<int>(rng.integer(0, dim - 1)));
            phi.add_term(w, rng.cnormal());
        }
        const double adjoint_err = std::abs(inner(wick_apply(x, psi), phi) -
                                            inner(psi, wick_apply(wick_adjoint(x), phi))) /
                                   (1.0 + psi.norm() * phi.norm());

        const double traciality_err =
            std::abs(trace(wick_product(x, y)) - trace(wick_product(y, x)));

        const Complex pos = trace(wick_product(wick_adjoint(x), x));
        const double vac_sq = wick_apply(x, FockVector::vacuum(spec, degree)).squared_norm();
        const double positivity_err = std::max(std::max(-pos.real(), std::abs(pos.imag())),
                                               std::abs(pos.real() - vac_sq) / (1.0 + vac_sq));

        csv.row({fmt(static_cast<long>(t)), fmt(coherence), fmt(adjoint_err), fmt(traciality_err),
                 fmt(positivity_err)});
        if (coherence > 1e-10 || adjoint_err > 1e-10 || traciality_err > 1e-10 ||
            positivity_err > 1e-10) {
            Json dump;
            dump["trial"] = t;
            dump["x"] = wick_to_json(x);
            dump["y"] = wick_to_json(y);
            return counterexample(ctx, "wick identity residual above 1e-10", dump);
        }
    }
    if (!csv.write(resolve_out(ctx.params["out"].get<std::string>()), ctx.metadata())) {
        std::cerr << "cannot write output file\n";
        return 2;
    }
    return 0;
}

int run_bogoljubov_mix(const RunContext& ctx) {
    const auto trials = ctx.params["trials"].get<std::int64_t>();
    const int dim = static_cast<int>(ctx.params["dim"].get<std::int64_t>());
    const auto gmax = ctx.params["gmax"].get<std::int64_t>();
    const Rng master(static_cast<std::uint64_t>(ctx.seed));

    CsvWriter csv("trial,g,inner_re,inner_im,mix_err,trace_err");
    for (std::int64_t t = 0; t < trials; ++t) {
        Rng rng = master.fork(static_cast<std::uint64_t>(t));
        const HilbertSpec spec = HilbertSpec::with_conjugation(random_involution(rng, dim));
        const auto rep = random_rep(rng, spec);
        const auto e = random_real_letter(rng, spec);
        const auto f = random_real_letter(rng, spec);
        const long g = rng.integer(-gmax, gmax);

        const auto m = mixing_coefficient(rep, g, e, f);
        const double mix_err = std::abs(m.trace_form - m.rep_form);

        const auto x = random_expression(rng, spec, 3, 2);
        const double trace_err = std::abs(trace(bogoljubov_act(rep, g, x)) - trace(x));

        csv.row({fmt(static_cast<long>(t)), fmt(g), fmt(m.rep_form.real()),
                 fmt(m.rep_form.imag()), fmt(mix_err), fmt(trace_err)});
        if (mix_err > 1e-10 || trace_err > 1e-10) {
            Json dump;
            dump["trial"] = t;
            dump["g"] = g;
            dump["rep"] = rep_to_json(rep);
            return counterexample(ctx, "mixing/trace residual above 1e-10", dump);
        }
    }
    if (!csv.write(resolve_out(ctx.params["out"].get<std::string>()), ctx.metadata())) {
        std::cerr << "cannot write output file\n";
        return 2;
    }
    return 0;
}

int run_claim_scan(const RunContext& ctx) {
    const int dim = static_cast<int>(ctx.params["dim"].get<std::int64_t>());
    const int rank = static_cast<int>(ctx.params["rank"].get<std::int64_t>());
    const int cutoff = static_cast<int>(ctx.params["cutoff"].get<std::int64_t>());
    const auto gmax = ctx.params["gmax"].get<std::int64_t>();
    Rng rng(static_cast<std::uint64_t>(ctx.seed));

    const HilbertSpec spec = HilbertSpec::with_conjugation(random_involution(rng, dim));
    const auto rep = random_rep(rng, spec);
    const auto frame = random_conj_closed_frame(rng, spec, rank);

    CsvWriter csv("g,measured,predicted");
    for (long g = -gmax; g <= gmax; ++g) {
        const auto cc = claim_check(rep, g, frame, cutoff);
        csv.row({fmt(g), fmt(cc.measured), fmt(cc.predicted)});
        if (cc.measured > cc.predicted + 1e-9) {
            Json dump;
            dump["g"] = g;
            dump["measured"] = cc.measured;
            dump["predicted"] = cc.predicted;
            dump["rep"] = rep_to_json(rep);
            return counterexample(ctx, "compression norm above the r*max bound", dump);
        }
    }
    if (!csv.write(resolve_out(ctx.params["out"].get<std::string>()), ctx.metadata())) {
        std::cerr << "cannot write output file\n";
        return 2;
    }
    return 0;
}

int run_eps_bounds(const RunContext& ctx) {
    const auto trials = ctx.params["trials"].get<std::int64_t>();
    const double eps_target = ctx.params["eps"].get<double>();
    const int dim = static_cast<int>(ctx.params["dim"].get<std::int64_t>());
    const int rank = static_cast<int>(ctx.params["rank"].get<std::int64_t>());
    const int k = static_cast<int>(ctx.params["k"].get<std::int64_t>());
    const Rng master(static_cast<std::uint64_t>(ctx.seed));

    CsvWriter csv("trial_id,k,r,dim,measured_eps,lhs,rhs,margin");
    for (std::int64_t t = 0; t < trials; ++t) {
        Rng rng = master.fork(static_cast<std::uint64_t>(t));
        auto emit = [&](int count, double eps, const BoundPair& bp) -> bool {
            csv.row({fmt(static_cast<long>(t)), fmt(count), fmt(rank), fmt(dim), fmt(eps),
                     fmt(bp.lhs), fmt(bp.rhs), fmt(bp.margin())});
            return bp.lhs <= bp.rhs + 1e-9;
        };

        // pair: two-projection inequality
        auto pair = random_eps_family(rng, dim, 2, rank, eps_target);
        const double eps2 = measured_pairwise_eps(pair);
        const Eigen::VectorXcd xi = random_cvector(rng, dim);
        if (!emit(2, eps2, two_projection_bound(pair[0], pair[1], eps2, xi))) {
            Json dump;
            dump["trial"] = t;
            dump["kind"] = "two_projection";
            return counterexample(ctx, "two-projection bound violated", dump);
        }

        // triple: the sqrt(2) eps / sqrt(1 - eps) fact
        auto triple = random_eps_family(rng, dim, 3, rank, eps_target);
        const double eps3 = measured_pairwise_eps(triple);
        if (!emit(3, eps3, three_subspace_fact(triple[0], triple[1], triple[2], eps3))) {
            Json dump;
            dump["trial"] = t;
            dump["kind"] = "three_subspace";
            return counterexample(ctx, "three-subspace bound violated", dump);
        }

        // family of 2^k: the product bound at the top level
        auto frames = random_eps_family(rng, dim, 1 << k, rank, eps_target);
        const double epsf = measured_pairwise_eps(frames);
        const auto fam = EpsFamily::validated(frames, epsf);
        const Eigen::VectorXcd v = random_cvector(rng, dim);
        if (!emit(1 << k, epsf, family_bound_check(fam, k, v))) {
            Json dump;
            dump["trial"] = t;
            dump["kind"] = "family_bound";
            return counterexample(ctx, "family product bound violated", dump);
        }
    }
    if (!csv.write(resolve_out(ctx.params["out"].get<std::string>()), ctx.metadata())) {
        std::cerr << "cannot write output file\n";
        return 2;
    }
    return 0;
}

int write_window_csv(const RunContext& ctx, const FourierWindow& fw, const std::string& out) {
    CsvWriter csv("n,re,im,abs");
    for (int n = -fw.window; n <= fw.window; ++n) {
        const Complex c = fw.coeff(n);
        csv.row({fmt(n), fmt(c.real()), fmt(c.imag()), fmt(std::abs(c))});
    }
    std::string meta = ctx.metadata();
    if (fw.tail_bound > 0.0) meta += " tail_bound=" + fmt(fw.tail_bound);
    if (!csv.write(resolve_out(out), meta)) {
        std::cerr << "cannot write output file\n";
        return 2;
    }
    return 0;
}

int run_measure_fourier(const RunContext& ctx) {
    std::ifstream in(ctx.params["measure"].get<std::string>());
    if (!in) {
        std::cerr << "cannot open measure file\n";
        return 2;
    }
    Json j;
    in >> j;
    const TorusMeasure mu = measure_from_json(j);
    const int window = static_cast<int>(ctx.params["window"].get<std::int64_t>());

    const std::string profile_out = ctx.params["profile-out"].get<std::string>();
    if (!profile_out.empty()) {
        const Eigen::VectorXd profile = rajchman_profile(mu, window);
        CsvWriter csv("m,tail_sup");
        for (int m = 1; m <= window; ++m) csv.row({fmt(m), fmt(profile[m - 1])});
        if (!csv.write(resolve_out(profile_out), ctx.metadata())) {
            std::cerr << "cannot write profile file\n";
            return 2;
        }
    }
    return write_window_csv(ctx, fourier(mu, window), ctx.params["out"].get<std::string>());
}

int run_measure_minf(const RunContext& ctx) {
    std::ifstream in(ctx.params["measure"].get<std::string>());
    if (!in) {
        std::cerr << "cannot open measure file\n";
        return 2;
    }
    Json j;
    in >> j;
    const TorusMeasure mu = measure_from_json(j);
    const int terms = static_cast<int>(ctx.params["terms"].get<std::int64_t>());
    const int grid = static_cast<int>(ctx.params["grid"].get<std::int64_t>());
    const int window = static_cast<int>(ctx.params["window"].get<std::int64_t>());

    const GridMeasure minf = m_infinity(mu, terms, grid);
    const std::string out_measure = ctx.params["out-measure"].get<std::string>();
    if (!out_measure.empty()) {
        std::ofstream om(resolve_out(out_measure), std::ios::binary);
        if (!om) {
            std::cerr << "cannot write measure output\n";
            return 2;
        }
        om << measure_to_json(TorusMeasure{minf}).dump(2) << "\n";
    }
    return write_window_csv(ctx, fourier(TorusMeasure{minf}, window),
                            ctx.params["out"].get<std::string>());
}

int run_family_build(const RunContext& ctx) {
    const int bits = static_cast<int>(ctx.params["bits"].get<std::int64_t>());
    CantorFamilyParams params;
    params.region_lo = ctx.params["region-lo"].get<double>();
    params.region_hi = ctx.params["region-hi"].get<double>();
    params.fill = ctx.params["fill"].get<double>();
    params.ratio = ctx.params["ratio"].get<double>();
    params.ratio_spread = ctx.params["ratio-spread"].get<double>();
    params.depth = static_cast<int>(ctx.params["depth"].get<std::int64_t>());

    const fs::path dir = resolve_out(ctx.params["out-dir"].get<std::string>());
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir, ec)) {
        std::cerr << "cannot create output directory\n";
        return 2;
    }

    Json manifest;
    manifest["bits"] = bits;
    manifest["members"] = Json::array();
    const size_t count = size_t{1} << bits;
    for (size_t index = 0; index < count; ++index) {
        std::vector<bool> key(static_cast<size_t>(bits));
        std::string id;
        for (int b = 0; b < bits; ++b) {
            const bool bit = (index >> (bits - 1 - b)) & 1;
            key[static_cast<size_t>(b)] = bit;
            id.push_back(bit ? '1' : '0');
        }
        const TorusMeasure member = cantor_family_member(key, params);
        const std::string filename = "member_" + id + ".json";
        std::ofstream out(dir / filename, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write member file\n";
            return 2;
        }
        out << measure_to_json(member).dump(2) << "\n";
        Json entry;
        entry["id"] = id;
        entry["file"] = filename;
        manifest["members"].push_back(std::move(entry));
    }
    manifest["metadata"] = ctx.metadata();
    std::ofstream mf(dir / "manifest.json", std::ios::binary);
    if (!mf) {
        std::cerr << "cannot write manifest\n";
        return 2;
    }
    mf << manifest.dump(2) << "\n";
    return 0;
}

int run_spectra_report(const RunContext& ctx) {
    const fs::path dir = resolve_out(ctx.params["family-dir"].get<std::string>());
    std::ifstream mf(dir / "manifest.json");
    if (!mf) {
        std::cerr << "cannot open family manifest\n";
        return 2;
    }
    Json manifest;
    mf >> manifest;

    std::vector<TorusMeasure> family;
    std::vector<std::string> ids;
    for (const auto& entry : manifest.at("members")) {
        std::ifstream in(dir / entry.at("file").get<std::string>());
        if (!in) {
            std::cerr << "cannot open member file\n";
            return 2;
        }
        Json j;
        in >> j;
        family.push_back(measure_from_json(j));
        ids.push_back(entry.at("id").get<std::string>());
    }

    const int level = static_cast<int>(ctx.params["level"].get<std::int64_t>());
    const int window = static_cast<int>(ctx.params["window"].get<std::int64_t>());
    const int terms = static_cast<int>(ctx.params["terms"].get<std::int64_t>());
    const int grid = static_cast<int>(ctx.params["grid"].get<std::int64_t>());

    auto report = disjointness_matrix(family, level, window, terms, grid);
    report.family_ids = ids;

    Json out = report_to_json(report);
    out["exoticness"] = Json::array();
    for (size_t i = 0; i < family.size(); ++i) {
        const auto minf = m_infinity(family[i], terms, grid);
        const auto eta = pushforward_psi(TorusMeasure{minf}, window, grid);
        out["exoticness"].push_back(report_to_json(exoticness_probe(eta, level, 8)));
    }
    out["metadata"] = ctx.metadata();

    const std::string out_json = ctx.params["out-json"].get<std::string>();
    std::ofstream oj(resolve_out(out_json), std::ios::binary);
    if (!oj) {
        std::cerr << "cannot write report\n";
        return 2;
    }
    oj << out.dump(2) << "\n";

    const std::string out_csv = ctx.params["out-csv"].get<std::string>();
    if (!out_csv.empty()) {
        CsvWriter csv("row,col,kind,value");
        const int n = static_cast<int>(family.size());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                csv.row({ids[static_cast<size_t>(i)], ids[static_cast<size_t>(j)], "pairwise",
                         fmt(report.pairwise(i, j))});
        for (int i = 0; i < n; ++i)
            csv.row({ids[static_cast<size_t>(i)], "haar", "vs_haar", fmt(report.vs_haar[i])});
        for (int i = 0; i < n; ++i)
            csv.row({ids[static_cast<size_t>(i)], "-", "fiber_max_cell",
                     fmt(report.fiber_max_cell[i])});
        if (!csv.write(resolve_out(out_csv), ctx.metadata())) {
            std::cerr << "cannot write csv summary\n";
            return 2;
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fockbench: Fock-space, Wick-calculus and circle-measure workbench"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    struct Sub {
        Params* params;
        std::int64_t* seed;
        std::function<int(const RunContext&)> run;
    };
    std::map<std::string, Sub> subs;
    std::vector<std::unique_ptr<Params>> owned;
    std::vector<std::unique_ptr<std::int64_t>> seeds;

    auto make = [&](const std::string& name, const std::string& desc,
                    std::function<int(const RunContext&)> run, bool randomized) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        owned.push_back(std::make_unique<Params>(cmd));
        Params* p = owned.back().get();
        seeds.push_back(std::make_unique<std::int64_t>(kNoSeed));
        std::int64_t* seed = seeds.back().get();
        if (randomized) p->add("seed", *seed, "master seed (mandatory)");
        subs[name] = Sub{p, seed, std::move(run)};
        return p;
    };

    {
        auto* p = make("fock-moments", "semicircle moments of W(e) against Catalan numbers",
                       run_fock_moments, false);
        static double norm = 1.0;
        static std::int64_t max_order = 12, cutoff = -1;
        static std::string out = "moments.csv";
        p->add("norm", norm, "letter norm ||e||");
        p->add("max-order", max_order, "largest moment order");
        p->add("cutoff", cutoff, "Fock cutoff (-1: automatic exact choice)");
        p->add("out", out, "output CSV");
    }
    {
        auto* p = make("wick-check", "product/adjoint/trace identities on random expressions",
                       run_wick_check, true);
        static std::int64_t trials = 200, dim = 4, degree = 3;
        static std::string out = "wick_check.csv";
        p->add("trials", trials, "number of random pairs");
        p->add("dim", dim, "letter space dimension");
        p->add("degree", degree, "maximal word length");
        p->add("out", out, "output CSV");
    }
    {
        auto* p = make("bogoljubov-mix", "mixing identity and trace preservation scan",
                       run_bogoljubov_mix, true);
        static std::int64_t trials = 100, dim = 6, gmax = 8;
        static std::string out = "bogoljubov_mix.csv";
        p->add("trials", trials, "number of random instances");
        p->add("dim", dim, "representation dimension");
        p->add("gmax", gmax, "group elements scanned in [-gmax, gmax]");
        p->add("out", out, "output CSV");
    }
    {
        auto* p = make("claim-scan", "compression norms of rho(g) on K (x) F vs the r*max bound",
                       run_claim_scan, true);
        static std::int64_t dim = 6, rank = 2, cutoff = 4, gmax = 8;
        static std::string out = "claim_scan.csv";
        p->add("dim", dim, "representation dimension");
        p->add("rank", rank, "rank of K");
        p->add("cutoff", cutoff, "Fock cutoff");
        p->add("gmax", gmax, "group elements scanned in [-gmax, gmax]");
        p->add("out", out, "output CSV");
    }
    {
        auto* p =
            make("eps-bounds", "randomized eps-orthogonality bound trials", run_eps_bounds, true);
        static std::int64_t trials = 200, dim = 16, rank = 2, k = 2;
        static double eps = 0.1;
        static std::string out = "eps_bounds.csv";
        p->add("trials", trials, "number of trials");
        p->add("eps", eps, "target pairwise eps (must lie in [0, 1/2))");
        p->add("dim", dim, "ambient dimension");
        p->add("rank", rank, "rank of each subspace");
        p->add("k", k, "family exponent: families of 2^k subspaces");
        p->add("out", out, "output CSV");
    }
    {
        auto* p = make("measure-fourier", "Fourier-Stieltjes window of a measure file",
                       run_measure_fourier, false);
        static std::string measure, out = "fourier.csv";
        static std::int64_t window = 256;
        p->add("measure", measure, "measure JSON file");
        p->add("window", window, "coefficient window");
        p->add("out", out, "output CSV");
    }
    {
        auto* p = make("measure-minf", "convolution-geometric average of a measure",
                       run_measure_minf, false);
        static std::string measure, out = "minf.csv", out_measure;
        static std::int64_t terms = 20, grid = 1 << 14, window = 512;
        p->add("measure", measure, "measure JSON file");
        p->add("terms", terms, "number of convolution terms");
        p->add("grid", grid, "working grid (power of two)");
        p->add("window", window, "coefficient window");
        p->add("out", out, "output CSV of the resulting coefficients");
        p->add("out-measure", out_measure, "optional grid-measure JSON output");
    }
    {
        auto* p = make("family-build", "build a family of disjoint-arc Cantor measures",
                       run_family_build, false);
        static std::int64_t bits = 2, depth = 24;
        static double region_lo = 1.0 / 16.0, region_hi = 7.0 / 16.0, fill = 0.5, ratio = 0.21,
                      spread = 0.04;
        static std::string out_dir = "family";
        p->add("bits", bits, "index length: the family has 2^bits members");
        p->add("region-lo", region_lo, "lower edge of the arc region");
        p->add("region-hi", region_hi, "upper edge of the arc region (< 1/2)");
        p->add("fill", fill, "arc fraction of each slot");
        p->add("ratio", ratio, "base contraction ratio");
        p->add("ratio-spread", spread, "per-member contraction spread");
        p->add("depth", depth, "construction depth");
        p->add("out-dir", out_dir, "output directory");
    }
    {
        auto* p = make("spectra-report", "disjointness matrix and exoticness probes of a family",
                       run_spectra_report, false);
        static std::string family_dir = "family", out_json = "spectra.json", out_csv;
        static std::int64_t level = 10, window = 64, terms = 20, grid = 1 << 13;
        p->add("family-dir", family_dir, "directory with manifest.json");
        p->add("level", level, "dyadic resolution level");
        p->add("window", window, "coefficient window for eta");
        p->add("terms", terms, "convolution terms for mu-infinity");
        p->add("grid", grid, "working grid (power of two)");
        p->add("out-json", out_json, "report JSON path");
        p->add("out-csv", out_csv, "optional CSV summary path");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0; // --help / --version
        std::cerr << e.what() << "\n";
        return 2;
    }

    for (auto& [name, sub] : subs) {
        CLI::App* cmd = app.get_subcommand(name);
        if (!cmd->parsed()) continue;
        if (auto err = sub.params->load_config(); !err.empty()) {
            std::cerr << name << ": " << err << "\n";
            return 2;
        }
        RunContext ctx;
        ctx.command = name;
        ctx.params = sub.params->effective();
        ctx.seed = *sub.seed;
        if (int rc = run_validation(ctx); rc != 0) return rc;
        try {
            return sub.run(ctx);
        } catch (const std::exception& e) {
            std::cerr << name << ": " << e.what() << "\n";
            return 2;
        }
    }
    return 2;
}
