#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subdiff/cq.hpp"
#include "subdiff/gamma.hpp"
#include "subdiff/harness.hpp"
#include "subdiff/mittag_leffler.hpp"
#include "subdiff/oracle.hpp"
#include "subdiff/solver.hpp"
#include "subdiff/source.hpp"
#include "subdiff/space.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericalFailure = 3;

struct CommonFlags {
    std::string out_dir = ".";
    std::string format;
    std::string space;
    int resolution = 0;
    int nodes = 0;
    bool corr_every_step = false;
    bool force_incompatible = false;
};

void apply_overrides(subdiff::harness::ExperimentConfig& cfg, const CommonFlags& flags) {
    using subdiff::harness::OutputFormat;
    if (!flags.format.empty()) {
        if (flags.format == "csv")
            cfg.format = OutputFormat::Csv;
        else if (flags.format == "table")
            cfg.format = OutputFormat::Table;
        else
            cfg.format = OutputFormat::Both;
    }
    if (!flags.space.empty()) cfg.space_mode = flags.space;
    if (flags.resolution > 0) cfg.resolution = flags.resolution;
    if (flags.nodes > 0) cfg.quad_nodes = flags.nodes;
    if (flags.corr_every_step) cfg.corr_every_step = true;
    if (flags.force_incompatible) cfg.force_incompatible = true;
}

int emit(const subdiff::harness::ConvergenceTable& table,
         const subdiff::harness::ExperimentConfig& cfg, const CommonFlags& flags,
         const std::string& config_path) {
    using subdiff::harness::OutputFormat;
    const bool want_csv =
        cfg.format == OutputFormat::Csv || cfg.format == OutputFormat::Both;
    const bool want_text =
        cfg.format == OutputFormat::Table || cfg.format == OutputFormat::Both;

    if (want_text) std::cout << subdiff::harness::to_text(table);
    if (want_csv) {
        const std::string stem = std::filesystem::path(config_path).stem().string();
        const std::filesystem::path csv_path =
            std::filesystem::path(flags.out_dir) / (stem + ".csv");
        std::filesystem::create_directories(flags.out_dir);
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << csv_path << "\n";
            return kExitNumericalFailure;
        }
        out << subdiff::harness::to_csv(table);
        std::cout << "wrote " << csv_path.string() << "\n";
    }
    if (subdiff::harness::has_unexpected_nan(table, cfg)) {
        std::cerr << "error: non-finite solution where none was expected\n";
        return kExitNumericalFailure;
    }
    return 0;
}

bool report(const char* name, bool ok) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name);
    return ok;
}

int run_selftest() {
    using namespace subdiff;
    bool all = true;

    {  // weight inverse property
        bool ok = true;
        for (double alpha : {0.3, 0.5, 0.7, 0.99}) {
            const auto w = cq::cq_weights(alpha, 64);
            const auto wi = cq::cq_weights(-alpha, 64);
            for (int j = 0; j <= 64; ++j) {
                double s = 0.0;
                for (int i = 0; i <= j; ++i) s += w[i] * wi[j - i];
                if (std::abs(s - (j == 0 ? 1.0 : 0.0)) > 1e-12) ok = false;
            }
        }
        all &= report("cq weight inverse convolution", ok);
    }
    {  // integer consistency
        const auto w1 = cq::cq_weights(1.0, 8);
        const auto p1 = cq::bdf2_power_weights(1, 8);
        all &= report("cq integer-order consistency", w1.weights == p1.weights);
    }
    {  // Jacobi rule moment
        bool ok = true;
        for (auto [a, b] : {std::pair{-0.8, 1.2}, {0.0, 0.0}, {-0.5, 2.0}}) {
            const auto rule = quadrature::jacobi_rule(a, b, 24);
            double sum = 0.0;
            for (double w : rule.weights) sum += w;
            const double exact = special::beta_fn(a + 1.0, b + 1.0);
            if (std::abs(sum - exact) > 1e-12 * exact) ok = false;
        }
        all &= report("gauss-jacobi beta moments", ok);
    }
    {  // Mittag-Leffler checks
        bool ok = std::abs(ml::ml(1.0, 1.0, 1.0) - std::exp(1.0)) < 1e-13 * std::exp(1.0);
        for (double z : {-3.0, -1.0, 0.5, 2.0}) {
            const double lhs = ml::ml(0.7, 1.0, z);
            const double rhs = 1.0 / special::gamma_fn(1.0) + z * ml::ml(0.7, 1.7, z);
            if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, std::abs(lhs))) ok = false;
        }
        all &= report("mittag-leffler series identities", ok);
    }
    {  // spatial operators
        const auto cheb = space::SpatialOperator::chebyshev(32);
        const auto phi = cheb.sample([](double x) { return space::eigenfunction(1, x); });
        const auto aphi = cheb.apply(phi);
        double res = 0.0;
        for (std::size_t i = 0; i < phi.size(); ++i)
            res = std::max(res, std::abs(aphi[i] + space::eigenvalue(1) * phi[i]));
        all &= report("chebyshev eigenfunction identity", res < 1e-10);
    }
    {  // determinism
        harness::ExperimentConfig cfg;
        cfg.alpha = 0.7;
        cfg.schemes = {solver::SchemeKind::ID2BDF2};
        cfg.steps = {16, 32};
        cfg.resolution = 12;
        cfg.mu = -0.8;
        const std::string once = harness::to_csv(harness::run_experiment(cfg));
        const std::string twice = harness::to_csv(harness::run_experiment(cfg));
        all &= report("deterministic rerun", once == twice);
    }
    return all ? 0 : kExitNumericalFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"subdiffusion time-stepping benchmark (IDk-BDF2 scheme family)"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string config_path;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("config", config_path, "experiment config (JSON)")->required();
        cmd->add_option("--out", flags.out_dir, "output directory for CSV files");
        cmd->add_option("--format", flags.format, "csv|table|both")
            ->check(CLI::IsMember({"csv", "table", "both"}));
        cmd->add_option("--space", flags.space, "spatial discretization: fd|cheb")
            ->check(CLI::IsMember({"fd", "cheb"}));
        cmd->add_option("--res", flags.resolution, "spatial resolution override");
        cmd->add_option("--nodes", flags.nodes, "quadrature node count override");
        cmd->add_flag("--corr-every-step", flags.corr_every_step,
                      "apply the Corr-BDF2 correction at every step");
        cmd->add_flag("--force-incompatible", flags.force_incompatible,
                      "run incompatible schemes as marked table cells");
    };

    CLI::App* run_cmd = app.add_subcommand("run", "run a convergence experiment");
    add_common(run_cmd);
    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "direct-error check against the separable reference");
    add_common(oracle_cmd);

    double w_alpha = 0.5;
    int w_count = 8;
    CLI::App* weights_cmd = app.add_subcommand("weights", "dump convolution weights");
    weights_cmd->add_option("alpha", w_alpha, "fractional order")->required();
    weights_cmd->add_option("n", w_count, "last weight index")->required();

    CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the invariant suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(weights_cmd)) {
            const auto w = subdiff::cq::cq_weights(w_alpha, w_count);
            std::printf("j,weight\n");
            for (std::size_t j = 0; j < w.size(); ++j)
                std::printf("%zu,%.17g\n", j, w[j]);
            return 0;
        }
        if (app.got_subcommand(selftest_cmd)) return run_selftest();

        subdiff::harness::ExperimentConfig cfg = subdiff::harness::load_config(config_path);
        apply_overrides(cfg, flags);
        const subdiff::harness::ConvergenceTable table =
            app.got_subcommand(run_cmd) ? subdiff::harness::run_experiment(cfg)
                                        : subdiff::harness::run_oracle_check(cfg);
        return emit(table, cfg, flags, config_path);
    } catch (const subdiff::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const subdiff::IncompatibleScheme& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericalFailure;
    }
}
