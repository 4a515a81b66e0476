#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>

#include "greedylab/io.hpp"
#include "greedylab/reproduce.hpp"
#include "greedylab/rng.hpp"
#include "greedylab/runner.hpp"

using namespace greedylab;
using io::json;

TEST_CASE("space serialization round trip") {
    std::vector<SpaceSpec> specs{
        SpaceSpec::lp(0.5, 4),
        SpaceSpec::lp(kInf, 3),
        SpaceSpec::lorentz(1.5, Weight({1.0, 0.5, 0.25}), 3),
        SpaceSpec::weak_lorentz(Weight({1.0, 1.0}), 2),
        SpaceSpec::mixed_z(1.0, 2.0, 2, 6),
        SpaceSpec::mixed_b(0.5, 2.0, {1, 2, 4}, 7),
        SpaceSpec::direct_sum_d(0.5, 2.0, 6),
    };
    Rng rng(71);
    for (const auto& space : specs) {
        const SpaceSpec back = io::space_from_json(io::to_json(space));
        CHECK(io::to_json(back) == io::to_json(space));
        for (int t = 0; t < 20; ++t) {
            Vec f(space.dim());
            for (double& x : f) x = rng.gaussian();
            CHECK(back.norm(f) == space.norm(f));
        }
    }
}

TEST_CASE("basis serialization round trip") {
    const auto dkk = std::make_shared<DkkSpace>(repro::default_dkk(7));
    std::vector<BasisRep> bases{
        BasisRep::difference(0.5, 5),
        BasisRep::unit_vectors(SpaceSpec::lp(2.0, 4)),
        BasisRep::interleaved({BasisRep::difference(0.5, 3),
                               BasisRep::unit_vectors(SpaceSpec::lp(2.0, 3))}),
        BasisRep::concatenated({BasisRep::difference(0.5, 2), BasisRep::difference(0.5, 4)},
                               SpaceSpec::lp(2.0, 2)),
        BasisRep::dkk(dkk),
    };
    Rng rng(73);
    for (const auto& basis : bases) {
        const BasisRep back = io::basis_from_json(io::to_json(basis));
        CHECK(io::to_json(back) == io::to_json(basis));
        for (int t = 0; t < 20; ++t) {
            Vec a(basis.dim());
            for (double& x : a) x = rng.gaussian();
            CHECK(back.basis_norm(a) == basis.basis_norm(a));
        }
    }
}

TEST_CASE("unknown fields are rejected") {
    CHECK_THROWS_AS(io::space_from_json(json{{"kind", "lp"}, {"p", 2.0}, {"dim", 3}, {"x", 1}}),
                    validation_error);
    CHECK_THROWS_AS(io::space_from_json(json{{"kind", "lq"}, {"p", 2.0}, {"dim", 3}}),
                    validation_error);
    CHECK_THROWS_AS(io::space_from_json(json{{"kind", "lp"}, {"dim", 3}}), validation_error);
    CHECK_THROWS_AS(io::basis_from_json(json{{"kind", "difference"}, {"p", 0.5}, {"dim", 3},
                                             {"extra", true}}),
                    validation_error);
    CHECK_THROWS_AS(io::normer_from_json(json{{"spaces", json::object()}}), validation_error);
    CHECK(io::space_from_json(json{{"kind", "lp"}, {"p", "inf"}, {"dim", 3}}).norm(Vec{2.0}) ==
          2.0);
}

TEST_CASE("csv formatting") {
    CHECK(io::format_double(4.0) == "4");
    CHECK(io::format_double(0.1) == "0.10000000000000001");
    ParamReport report;
    report.name = "demo";
    report.mode = "exhaustive";
    WitnessRow row;
    row.m = 2;
    row.value = 0.5;
    report.rows.push_back(row);
    report.reference.emplace_back("psi_2", std::vector<double>{std::sqrt(2.0)});
    const std::string csv = io::report_csv(report);
    CHECK(csv == "m,value,mode,psi_2\n2,0.5,exhaustive,1.4142135623730951\n");
}

TEST_CASE("runner executes configs and writes manifests") {
    const auto dir = std::filesystem::temp_directory_path() / "greedylab_test_runner";
    std::filesystem::remove_all(dir);
    RunOptions opts;
    opts.out_dir = dir;

    // norm op from the worked example: l_{1/2} of (1, 1) is 4
    json config{{"op", "norm"},
                {"space", json{{"kind", "lp"}, {"p", 0.5}, {"dim", 2}}},
                {"vector", json::array({1.0, 1.0})}};
    const RunResult result = run_experiment(config, opts);
    CHECK(result.exit_code == kExitOk);
    CHECK(result.summary == "4\n");
    CHECK(std::filesystem::exists(dir / "norm.json"));
    CHECK(std::filesystem::exists(dir / "manifest.json"));

    // partition construct matches the closed-form cumulative sums
    json cfg2{{"op", "construct"},
              {"partition",
               json{{"concave", json{{"form", "affine"}, {"a", 1.0}, {"slope", 1.0}, {"base", 5.0}}},
                    {"r_max", 4}}}};
    const RunResult r2 = run_experiment(cfg2, opts);
    CHECK(r2.exit_code == kExitOk);
    json written;
    {
        std::ifstream in(dir / "construct.json");
        in >> written;
    }
    CHECK(written.at("cumulative") == json::array({1, 5, 25, 125}));

    // validation failures exit with code 2 and write no manifest
    std::filesystem::remove_all(dir);
    json bad{{"op", "norm"}, {"space", json{{"kind", "lp"}, {"p", 0.5}, {"dim", 2}}},
             {"vector", json::array({1.0, 1.0})}, {"typo", 1}};
    CHECK(run_experiment(bad, opts).exit_code == kExitValidation);
    CHECK_FALSE(std::filesystem::exists(dir / "manifest.json"));

    // budget guard exits with code 3
    json over{{"op", "params"},
              {"name", "democracy"},
              {"normer", json{{"space", json{{"kind", "lp"}, {"p", 2.0}, {"dim", 40}}}}},
              {"m_max", 3},
              {"mode", json{{"exhaustive", json{{"budget", 1000}}}}}};
    CHECK(run_experiment(over, opts).exit_code == kExitBudget);
    std::filesystem::remove_all(dir);
}

TEST_CASE("identical config and seed give byte-identical outputs") {
    const auto base = std::filesystem::temp_directory_path() / "greedylab_test_det";
    std::filesystem::remove_all(base);
    json config{{"op", "params"},
                {"name", "quasi-greedy"},
                {"normer", json{{"basis", json{{"kind", "difference"}, {"p", 0.5}, {"dim", 10}}}}},
                {"trials", 500},
                {"seed", 99}};
    std::vector<std::string> blobs;
    for (int jobs : {1, 3}) {
        RunOptions opts;
        opts.out_dir = base / ("jobs" + std::to_string(jobs));
        opts.jobs = jobs;
        const RunResult result = run_experiment(config, opts);
        REQUIRE(result.exit_code == kExitOk);
        std::ifstream in(opts.out_dir / "quasi_greedy_constant.json");
        std::stringstream ss;
        ss << in.rdbuf();
        blobs.push_back(ss.str());
    }
    CHECK(blobs[0] == blobs[1]);
    std::filesystem::remove_all(base);
}

TEST_CASE("report round trip re-evaluates witnesses on load") {
    BasisRep d = BasisRep::difference(0.5, 8);
    const ParamReport rep = suppression_constant(d.norm_fn(), 8, SearchMode::sampled(200, 19));
    const ParamReport back = io::report_from_json(io::to_json(rep));
    CHECK(io::to_json(back) == io::to_json(rep));
    CHECK(verify_witnesses(back, d.norm_fn()));
    // a tampered value must fail re-evaluation
    ParamReport bad = back;
    bad.rows.at(0).value *= 1.5;
    CHECK_FALSE(verify_witnesses(bad, d.norm_fn()));
}

TEST_CASE("witness rows in written reports re-evaluate") {
    BasisRep d = BasisRep::difference(0.5, 6);
    const ParamReport rep = quasi_greedy_constant(d.norm_fn(), 6, 300, 21);
    const json j = io::to_json(rep);
    // re-evaluate from the serialized witness data
    const Vec f = j.at("rows").at(0).at("f").get<Vec>();
    const std::vector<int> set = j.at("rows").at(0).at("set").get<std::vector<int>>();
    Vec sa(f.size(), 0.0);
    for (int idx : set) sa[idx - 1] = f[idx - 1];
    const double value = j.at("rows").at(0).at("value").get<double>();
    CHECK(d.basis_norm(sa) / d.basis_norm(f) == doctest::Approx(value).epsilon(1e-9));
}
