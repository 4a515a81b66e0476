#include "greedylab/runner.hpp"

#include <chrono>
#include <sstream>

#include "greedylab/params.hpp"
#include "greedylab/reproduce.hpp"
#include "greedylab/tga.hpp"

namespace greedylab {

namespace {

using io::json;

constexpr const char* kVersion = "greedylab 0.1.0";

SearchMode mode_from_json(const json& j, const RunOptions& opts) {
    io::require_keys(j, {"exhaustive", "sampled"}, "mode");
    if (j.contains("exhaustive")) {
        const json& e = j.at("exhaustive");
        io::require_keys(e, {"budget"}, "mode.exhaustive");
        return SearchMode::exhaustive(e.contains("budget") ? e.at("budget").get<std::uint64_t>()
                                                           : enumeration_budget());
    }
    if (j.contains("sampled")) {
        const json& s = j.at("sampled");
        io::require_keys(s, {"trials", "seed"}, "mode.sampled");
        if (!s.contains("trials")) throw validation_error("mode.sampled: missing trials");
        std::uint64_t seed = s.contains("seed") ? s.at("seed").get<std::uint64_t>() : 0;
        if (opts.seed) seed = *opts.seed;
        return SearchMode::sampled(s.at("trials").get<std::uint64_t>(), seed, opts.jobs);
    }
    throw validation_error("mode: expected 'exhaustive' or 'sampled'");
}

// Optional reference-curve columns: {"psi": [p, ...], "phi_log": {"concave":
// {...}, "p": x}} evaluated at each row's m.
void attach_reference(ParamReport& report, const json& spec) {
    io::require_keys(spec, {"psi", "phi_log"}, "reference");
    std::vector<long long> ms;
    for (const auto& row : report.rows) ms.push_back(row.m);
    if (spec.contains("psi")) {
        for (const auto& pj : spec.at("psi")) {
            const double r = pj.get<double>();
            std::vector<double> curve;
            for (long long m : ms) curve.push_back(std::pow(static_cast<double>(m), 1.0 / r));
            report.reference.emplace_back("psi_" + io::format_double(r), std::move(curve));
        }
    }
    if (spec.contains("phi_log")) {
        const json& pl = spec.at("phi_log");
        io::require_keys(pl, {"concave", "p"}, "reference.phi_log");
        const ConcaveSpec concave = io::concave_from_json(pl.at("concave"));
        const double p = pl.at("p").get<double>();
        std::vector<double> curve;
        for (long long m : ms)
            curve.push_back(std::pow(concave.phi(std::log(static_cast<double>(std::max(1ll, m)))),
                                     1.0 / p));
        report.reference.emplace_back("phi_pow_1_over_p_of_log_m", std::move(curve));
    }
}

struct Emitter {
    const RunOptions& opts;
    std::vector<std::string> outputs;

    void emit(const std::string& name, const std::string& data) {
        std::filesystem::create_directories(opts.out_dir);
        io::write_file(opts.out_dir / name, data);
        outputs.push_back(name);
    }
    void emit_json(const std::string& name, const json& j) { emit(name, j.dump(2) + "\n"); }
    void emit_report(const std::string& stem, const ParamReport& report) {
        emit_json(stem + ".json", io::to_json(report));
        emit(stem + ".csv", io::report_csv(report));
    }
};

int run_op(const json& config, const RunOptions& opts, Emitter& em, std::ostringstream& summary) {
    const std::string op = config.at("op").get<std::string>();

    if (op == "norm") {
        io::require_keys(config, {"op", "space", "vector"}, "config");
        const SpaceSpec space = io::space_from_json(config.at("space"));
        const Vec f = config.at("vector").get<Vec>();
        const double value = space.norm(f);
        summary << io::format_double(value) << "\n";
        em.emit_json("norm.json", json{{"space", io::to_json(space)},
                                       {"vector", f},
                                       {"value", value}});
        return kExitOk;
    }

    if (op == "construct") {
        io::require_keys(config, {"op", "partition", "dkk"}, "config");
        json result;
        std::ostringstream dump;
        if (config.contains("partition")) {
            const OrderedPartition partition = io::partition_from_json(config.at("partition"));
            result["partition"] = io::to_json(partition);
            result["cumulative"] = partition.cumulative();
            dump << "block  range            N_n        M_n\n";
            for (int n = 1; n <= partition.blocks(); ++n) {
                const auto [lo, hi] = partition.block(n);
                dump << n << "  [" << lo << ", " << hi << "]  " << partition.size(n) << "  "
                     << partition.cum(n) << "\n";
            }
        }
        if (config.contains("dkk")) {
            const auto space = io::dkk_from_json(config.at("dkk"));
            result["dkk"] = io::to_json(*space);
            dump << "\nblock  N_n  Lambda_{N_n}  Lambda*_{N_n}\n";
            for (int n = 1; n <= space->partition().blocks(); ++n)
                dump << n << "  " << space->partition().size(n) << "  "
                     << io::format_double(space->lambda(n)) << "  "
                     << io::format_double(space->lambda_dual(n)) << "\n";
        }
        if (!config.contains("partition") && !config.contains("dkk"))
            throw validation_error("construct: expected 'partition' and/or 'dkk'");
        summary << dump.str();
        em.emit_json("construct.json", result);
        em.emit("construct.txt", dump.str());
        return kExitOk;
    }

    if (op == "tga") {
        io::require_keys(config, {"op", "normer", "coefficients", "m_max", "tie"}, "config");
        const io::Normer normer = io::normer_from_json(config.at("normer"));
        const Vec a = config.at("coefficients").get<Vec>();
        const int m_max = config.contains("m_max") ? config.at("m_max").get<int>()
                                                   : static_cast<int>(a.size());
        TieRule tie = TieRule::LowestIndex;
        if (config.contains("tie")) {
            const std::string t = config.at("tie").get<std::string>();
            if (t == "highest-index")
                tie = TieRule::HighestIndex;
            else if (t != "lowest-index")
                throw validation_error("tga: tie must be lowest-index or highest-index");
        }
        const GreedyRun run = greedy_residual_curve(normer.fn, a, m_max, tie, normer.label);
        summary << "residuals for m = 0.." << m_max << " under " << normer.label << "\n";
        em.emit_json("tga.json", io::to_json(run));
        em.emit("tga.csv", io::greedy_run_csv(run));
        return kExitOk;
    }

    if (op == "params") {
        io::require_keys(config,
                         {"op", "name", "normer", "basis", "mode", "dim", "m", "m_max", "r", "q",
                          "kind", "trials", "seed", "b", "d", "p_banach", "reference"},
                         "config");
        const std::string name = config.at("name").get<std::string>();
        const SearchMode mode = config.contains("mode")
                                    ? mode_from_json(config.at("mode"), opts)
                                    : SearchMode::sampled(10000, opts.seed.value_or(1), opts.jobs);

        auto the_normer = [&]() -> io::Normer {
            if (!config.contains("normer")) throw validation_error("params: missing normer");
            return io::normer_from_json(config.at("normer"));
        };

        std::vector<ParamReport> reports;
        if (name == "democracy") {
            const io::Normer normer = the_normer();
            const int dim = config.contains("dim") ? config.at("dim").get<int>() : normer.dim;
            const int m_max = config.at("m_max").get<int>();
            auto [upper, lower] = democracy_functions(normer.fn, dim, m_max, mode);
            reports.push_back(std::move(upper));
            reports.push_back(std::move(lower));
        } else if (name == "conditionality") {
            const io::Normer normer = the_normer();
            const int dim = config.contains("dim") ? config.at("dim").get<int>() : normer.dim;
            const int m = config.at("m").get<int>();
            const ConditionalityKind kind =
                config.contains("kind") && config.at("kind").get<std::string>() == "k"
                    ? ConditionalityKind::K
                    : ConditionalityKind::KTilde;
            const double p_banach =
                config.contains("p_banach") ? config.at("p_banach").get<double>() : 0.0;
            reports.push_back(conditionality(normer.fn, dim, m, kind, mode, p_banach));
        } else if (name == "embedding") {
            if (!config.contains("basis"))
                throw validation_error("params embedding: needs a 'basis' descriptor");
            const BasisRep basis = io::basis_from_json(config.at("basis"));
            const int r = config.at("r").get<int>();
            const double q = config.at("q").get<double>();
            const EmbeddingKind kind =
                config.contains("kind") && config.at("kind").get<std::string>() == "eta"
                    ? EmbeddingKind::Eta
                    : EmbeddingKind::Beta;
            reports.push_back(embedding_constant(basis, r, q, kind, mode));
        } else if (name == "quasi-greedy") {
            const io::Normer normer = the_normer();
            const int dim = config.contains("dim") ? config.at("dim").get<int>() : normer.dim;
            const std::uint64_t trials =
                config.contains("trials") ? config.at("trials").get<std::uint64_t>() : 10000;
            const std::uint64_t seed =
                opts.seed.value_or(config.contains("seed") ? config.at("seed").get<std::uint64_t>()
                                                           : 1);
            reports.push_back(quasi_greedy_constant(normer.fn, dim, trials, seed, opts.jobs));
        } else if (name == "suppression") {
            const io::Normer normer = the_normer();
            const int dim = config.contains("dim") ? config.at("dim").get<int>() : normer.dim;
            const int b = config.contains("b") ? config.at("b").get<int>() : 1;
            const int d = config.contains("d") ? config.at("d").get<int>() : 0;
            reports.push_back(suppression_constant(normer.fn, dim, mode, b, d));
        } else if (name == "threshold-domination") {
            const io::Normer normer = the_normer();
            const int dim = config.contains("dim") ? config.at("dim").get<int>() : normer.dim;
            const std::uint64_t trials =
                config.contains("trials") ? config.at("trials").get<std::uint64_t>() : 10000;
            const std::uint64_t seed =
                opts.seed.value_or(config.contains("seed") ? config.at("seed").get<std::uint64_t>()
                                                           : 1);
            reports.push_back(threshold_domination(normer.fn, dim, trials, seed, opts.jobs));
        } else if (name == "lebesgue") {
            const io::Normer normer = the_normer();
            const int dim = config.contains("dim") ? config.at("dim").get<int>() : normer.dim;
            const int m = config.at("m").get<int>();
            reports.push_back(lebesgue_lower(normer.fn, dim, m, mode));
        } else {
            throw validation_error("params: unknown name '" + name + "'");
        }

        for (auto& report : reports) {
            if (config.contains("reference")) attach_reference(report, config.at("reference"));
            em.emit_report(report.name, report);
            for (const auto& row : report.rows)
                summary << report.name << " m=" << row.m << " value="
                        << io::format_double(row.value) << "\n";
        }
        return kExitOk;
    }

    if (op == "verify") {
        io::require_keys(config, {"op", "seed"}, "config");
        const std::uint64_t seed =
            opts.seed.value_or(config.contains("seed") ? config.at("seed").get<std::uint64_t>()
                                                       : 31337);
        const auto results = repro::verify_invariants(seed);
        bool all = true;
        json rows = json::array();
        for (const auto& r : results) {
            all &= r.pass;
            summary << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
            rows.push_back(json{{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        }
        em.emit_json("verify.json", rows);
        return all ? kExitOk : kExitAcceptance;
    }

    if (op == "reproduce") {
        io::require_keys(config, {"op", "suite"}, "config");
        const std::string suite =
            config.contains("suite") ? config.at("suite").get<std::string>() : "acceptance";
        const repro::SuiteOutput out = repro::run_suite(suite, opts.jobs);
        json rows = json::array();
        for (const auto& r : out.results) {
            summary << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.name << ": "
                    << r.detail << "\n";
            rows.push_back(json{{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        }
        em.emit_json("reproduce_" + suite + ".json", rows);
        for (const auto& [name, data] : out.artifacts) em.emit(name, data);
        return out.all_pass() ? kExitOk : kExitAcceptance;
    }

    throw validation_error("unknown op '" + op + "'");
}

}  // namespace

RunResult run_experiment(const json& config, const RunOptions& opts) {
    RunResult result;
    std::ostringstream summary;
    Emitter em{opts, {}};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (!config.is_object() || !config.contains("op"))
            throw validation_error("config must be an object with an 'op' field");
        result.exit_code = run_op(config, opts, em, summary);
    } catch (const budget_error& e) {
        result.exit_code = kExitBudget;
        summary << "budget guard: " << e.what() << "\n";
    } catch (const validation_error& e) {
        result.exit_code = kExitValidation;
        summary << "validation error: " << e.what() << "\n";
    }
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    if (result.exit_code != kExitValidation) {
        json manifest;
        manifest["config_hash"] = io::fnv1a_hash(config.dump());
        manifest["seed"] = opts.seed ? json(*opts.seed) : json();
        manifest["tool"] = kVersion;
        manifest["wall_ms"] = wall_ms;
        manifest["outputs"] = em.outputs;
        std::filesystem::create_directories(opts.out_dir);
        io::write_file(opts.out_dir / "manifest.json", manifest.dump(2) + "\n");
    }
    result.summary = summary.str();
    result.outputs = std::move(em.outputs);
    return result;
}

}  // namespace greedylab
