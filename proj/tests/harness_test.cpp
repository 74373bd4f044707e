#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "subdiff/harness.hpp"

using namespace subdiff;
using namespace subdiff::harness;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.alpha = 0.7;
    cfg.schemes = {solver::SchemeKind::ID2BDF2};
    cfg.steps = {16, 32};
    cfg.resolution = 12;
    cfg.mu = -0.8;
    cfg.beta = 0.0;
    return cfg;
}

std::string write_temp(const std::string& body) {
    const std::string path = "harness_test_config.json";
    std::ofstream out(path);
    out << body;
    return path;
}

}  // namespace

TEST_CASE("empirical_rate") {
    CHECK(empirical_rate(4e-4, 1e-4) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(empirical_rate(5.2769e-04, 1.3018e-04) == doctest::Approx(2.0192).epsilon(1e-4));
    CHECK(std::isnan(empirical_rate(std::nan(""), 1e-4)));
    CHECK(std::isnan(empirical_rate(1e-4, std::nan(""))));
}

TEST_CASE("self_difference") {
    const auto A = space::SpatialOperator::finite_difference(3);
    const GridFunction a{1.0, 2.0, 3.0}, b{0.0, 1.0, 2.0};
    CHECK(self_difference(A, a, a) == 0.0);
    CHECK(self_difference(A, a, b, NormKind::Weighted) ==
          doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));
    CHECK(self_difference(A, a, b, NormKind::Nodal) ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK_THROWS_AS(self_difference(A, a, {1.0}), std::invalid_argument);
}

TEST_CASE("experiment table shape and determinism") {
    const ExperimentConfig cfg = small_config();
    const ConvergenceTable t = run_experiment(cfg);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].scheme == "ID2-BDF2");
    CHECK(t.rows[0].steps == 16);
    CHECK_FALSE(t.rows[0].has_rate);
    CHECK(t.rows[1].has_rate);
    CHECK(t.rows[0].error > 0.0);
    CHECK(std::isfinite(t.rows[1].rate));

    const std::string csv1 = to_csv(run_experiment(cfg));
    const std::string csv2 = to_csv(run_experiment(cfg));
    CHECK(csv1 == csv2);
    CHECK(csv1.substr(0, 20) == "scheme,N,error,rate\n");
}

TEST_CASE("NaN containment across scheme columns") {
    ExperimentConfig cfg = small_config();
    cfg.schemes = {solver::SchemeKind::CorrBDF2, solver::SchemeKind::ID1BDF2};
    const ConvergenceTable t = run_experiment(cfg);
    REQUIRE(t.rows.size() == 4);
    CHECK(std::isnan(t.rows[0].error));  // Corr-BDF2 on a singular product source
    CHECK(std::isnan(t.rows[1].error));
    CHECK(std::isfinite(t.rows[2].error));  // ID1 untouched
    CHECK(std::isfinite(t.rows[3].error));
    CHECK_FALSE(has_unexpected_nan(t, cfg));

    const std::string csv = to_csv(t);
    CHECK(csv.find("NaN") != std::string::npos);
    CHECK(csv.find("nan") == std::string::npos);
}

TEST_CASE("incompatible scheme handling") {
    ExperimentConfig cfg = small_config();
    cfg.mu = -1.8;
    cfg.schemes = {solver::SchemeKind::ID1BDF2, solver::SchemeKind::ID2BDF2};
    CHECK_THROWS_AS(run_experiment(cfg), IncompatibleScheme);

    cfg.force_incompatible = true;
    const ConvergenceTable t = run_experiment(cfg);
    REQUIRE(t.rows.size() == 4);
    CHECK(t.rows[0].incompatible);
    CHECK(t.rows[1].incompatible);
    CHECK_FALSE(t.rows[2].incompatible);
    CHECK(std::isfinite(t.rows[2].error));
    CHECK_FALSE(has_unexpected_nan(t, cfg));
    CHECK(to_csv(t).find("incompatible") != std::string::npos);
}

TEST_CASE("oracle check converges at second order for ID2") {
    ExperimentConfig cfg;
    cfg.alpha = 0.5;
    cfg.mu = 0.5;
    cfg.schemes = {solver::SchemeKind::ID2BDF2};
    cfg.steps = {32, 64, 128};
    cfg.resolution = 16;
    cfg.mode_k = 1;
    cfg.v_coeff = 0.0;
    cfg.q_coeff = 1.0;
    const ConvergenceTable t = run_oracle_check(cfg);
    REQUIRE(t.rows.size() == 3);
    for (const TableRow& row : t.rows) CHECK(std::isfinite(row.error));
    CHECK(t.rows[2].rate == doctest::Approx(2.0).epsilon(0.15));

    // pure initial data: v = phi_1, q = 0
    cfg.v_coeff = 1.0;
    cfg.q_coeff = 0.0;
    const ConvergenceTable ti = run_oracle_check(cfg);
    CHECK(ti.rows[2].rate == doctest::Approx(2.0).epsilon(0.15));

    // singular monomial source under the once-integrated scheme: rate mu + 2
    cfg.v_coeff = 0.0;
    cfg.q_coeff = 1.0;
    cfg.mu = -0.8;
    cfg.schemes = {solver::SchemeKind::ID1BDF2};
    cfg.steps = {128, 256, 512};
    const ConvergenceTable ts = run_oracle_check(cfg);
    CHECK(ts.rows[2].rate == doctest::Approx(1.2).epsilon(0.1));

    // ID1 at mu = 0.5: second order
    cfg.mu = 0.5;
    cfg.steps = {32, 64, 128};
    const ConvergenceTable tp = run_oracle_check(cfg);
    CHECK(tp.rows[2].rate == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("config loading and validation") {
    const std::string good = R"({
        "schema": 1, "alpha": 0.7, "T": 1.0,
        "schemes": ["bdf2", "id1-bdf2"],
        "N": [50, 100, 200],
        "space": "cheb", "resolution": 32, "quad_nodes": 64,
        "source_op": "product", "mu": -0.8, "beta": 0.0,
        "initial": "example", "format": "both"
    })";
    const ExperimentConfig cfg = load_config(write_temp(good));
    CHECK(cfg.alpha == 0.7);
    CHECK(cfg.schemes.size() == 2);
    CHECK(cfg.steps == std::vector<int>{50, 100, 200});
    CHECK(cfg.op == SourceOp::Product);
    CHECK(cfg.norm == NormKind::Nodal);

    auto expect_error = [&](const std::string& body, const char* needle) {
        try {
            load_config(write_temp(body));
            FAIL_CHECK("expected ConfigError for ", needle);
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_error(R"({"schema": 2, "alpha": 0.5, "schemes": ["bdf2"], "N": [8,16], "mu": 0.5})",
                 "schema");
    expect_error(R"({"schema": 1, "alpha": 1.5, "schemes": ["bdf2"], "N": [8,16], "mu": 0.5})",
                 "alpha");
    expect_error(R"({"schema": 1, "alpha": 0.5, "schemes": ["bdf9"], "N": [8,16], "mu": 0.5})",
                 "schemes");
    expect_error(R"({"schema": 1, "alpha": 0.5, "schemes": ["bdf2"], "N": [8,24], "mu": 0.5})",
                 "N");
    expect_error(R"({"schema": 1, "alpha": 0.5, "schemes": ["bdf2"], "N": [8,16]})", "mu");
    std::remove("harness_test_config.json");
}

TEST_CASE("text rendering") {
    ConvergenceTable t;
    t.rows.push_back({"BDF2", 50, 2.4743e-03, 0.0, false, false});
    t.rows.push_back({"BDF2", 100, 1.1981e-03, 1.0462, true, false});
    const std::string text = to_text(t);
    CHECK(text.find("BDF2") != std::string::npos);
    CHECK(text.find("2.4743e-03") != std::string::npos);
    CHECK(text.find("1.0462") != std::string::npos);
    const std::string csv = to_csv(t);
    CHECK(csv.find("BDF2,50,2.4743e-03,\n") != std::string::npos);
    CHECK(csv.find("BDF2,100,1.1981e-03,1.0462\n") != std::string::npos);
}
