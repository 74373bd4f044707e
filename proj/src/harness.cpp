#include "subdiff/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "subdiff/oracle.hpp"

namespace subdiff::harness {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

space::SpatialOperator build_space(const ExperimentConfig& cfg) {
    if (cfg.space_mode == "cheb") return space::SpatialOperator::chebyshev(cfg.resolution);
    if (cfg.space_mode == "fd")
        return space::SpatialOperator::finite_difference(cfg.resolution);
    throw ConfigError("config: field 'space' must be \"cheb\" or \"fd\"");
}

double spatial_profile(double x) {
    const double chi = (x > 0.0 && x < 1.0) ? 1.0 : 0.0;
    return std::exp(x) * (1.0 + chi);
}

double initial_profile(double x) { return std::sin(x) * std::sqrt(1.0 - x * x); }

/// The benchmark source split into the three additive time factors
/// t^0, t^mu, t^{alpha mu}.  A zero beta with the product pairing collapses
/// to monomial terms, which keeps the finite-part range mu <= -1 reachable.
source::SourceSpec build_source(const ExperimentConfig& cfg,
                                const space::SpatialOperator& A) {
    const GridFunction profile = A.sample(spatial_profile);
    const std::vector<double> exponents = {0.0, cfg.mu, cfg.alpha * cfg.mu};
    std::vector<source::SourceTerm> terms;
    terms.reserve(exponents.size());

    if (cfg.op == SourceOp::Product && cfg.beta == 0.0) {
        for (double mu : exponents) terms.push_back(source::SourceSpec::monomial(mu, profile));
    } else {
        const double beta = cfg.beta;
        source::TimeCallable f = [profile, beta](double t, std::span<double> out) {
            const double decay = std::pow(1.0 - t, beta);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = decay * profile[i];
        };
        for (double mu : exponents)
            terms.push_back(cfg.op == SourceOp::Product
                                ? source::SourceSpec::product(mu, f)
                                : source::SourceSpec::convolution(mu, f));
    }
    return source::SourceSpec::of(A.size(), std::move(terms));
}

std::string format_error(double e) {
    char buf[32];
    if (std::isnan(e)) return "NaN";
    std::snprintf(buf, sizeof(buf), "%.4e", e);
    return buf;
}

std::string format_rate(double r) {
    char buf[32];
    if (std::isnan(r)) return "NaN";
    std::snprintf(buf, sizeof(buf), "%.4f", r);
    return buf;
}

/// Runs every (scheme, N) solve of the sweep; N covers the configured list
/// plus the doubled finest grid needed by the last self-difference.
std::map<std::pair<int, int>, GridFunction>
run_sweep(const ExperimentConfig& cfg, const space::SpatialOperator& A,
          const GridFunction& v, const source::SourceSpec& g,
          const std::vector<bool>& incompatible) {
    std::vector<int> all_steps = cfg.steps;
    all_steps.push_back(2 * cfg.steps.back());

    struct Task {
        int scheme_idx;
        int steps;
    };
    std::vector<Task> tasks;
    for (std::size_t s = 0; s < cfg.schemes.size(); ++s) {
        if (incompatible[s]) continue;
        for (int N : all_steps) tasks.push_back({static_cast<int>(s), N});
    }

    solver::SolveOptions opt;
    opt.quad_nodes = cfg.quad_nodes;
    opt.corr_every_step = cfg.corr_every_step;
    opt.keep_history = false;

    std::vector<std::future<GridFunction>> futures;
    futures.reserve(tasks.size());
    for (const Task& task : tasks) {
        futures.push_back(std::async(std::launch::deferred | std::launch::async, [&, task] {
            const TimeGrid grid = TimeGrid::make(cfg.T, task.steps);
            return solver::solve(cfg.schemes[task.scheme_idx], cfg.alpha, grid, A, v, g, opt)
                .u_final;
        }));
    }
    std::map<std::pair<int, int>, GridFunction> out;
    for (std::size_t i = 0; i < tasks.size(); ++i)
        out[{tasks[i].scheme_idx, tasks[i].steps}] = futures[i].get();
    return out;
}

ConvergenceTable assemble_table(const ExperimentConfig& cfg,
                                const space::SpatialOperator& A,
                                const std::vector<bool>& incompatible,
                                const std::map<std::pair<int, int>, GridFunction>& sols) {
    ConvergenceTable table;
    for (std::size_t s = 0; s < cfg.schemes.size(); ++s) {
        const std::string name = solver::scheme_name(cfg.schemes[s]);
        double prev_error = kNaN;
        for (std::size_t i = 0; i < cfg.steps.size(); ++i) {
            TableRow row;
            row.scheme = name;
            row.steps = cfg.steps[i];
            if (incompatible[s]) {
                row.error = kNaN;
                row.incompatible = true;
            } else {
                const int fine = 2 * cfg.steps[i];
                row.error = self_difference(A, sols.at({static_cast<int>(s), cfg.steps[i]}),
                                            sols.at({static_cast<int>(s), fine}), cfg.norm);
                if (i > 0) {
                    row.rate = empirical_rate(prev_error, row.error);
                    row.has_rate = true;
                }
                prev_error = row.error;
            }
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

}  // namespace

double self_difference(const space::SpatialOperator& A, const GridFunction& uA,
                       const GridFunction& uB, NormKind norm) {
    if (uA.size() != uB.size() || uA.size() != A.size())
        throw std::invalid_argument("self_difference: grid mismatch");
    GridFunction d(uA.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = uA[i] - uB[i];
    return norm == NormKind::Weighted ? A.l2_norm(d) : A.nodal_norm(d);
}

double empirical_rate(double coarse, double fine) {
    return std::log2(coarse / fine);
}

ConvergenceTable run_experiment(const ExperimentConfig& cfg) {
    const space::SpatialOperator A = build_space(cfg);
    const GridFunction v = cfg.initial == "zero" ? GridFunction(A.size(), 0.0)
                                                 : A.sample(initial_profile);
    const source::SourceSpec g = build_source(cfg, A);

    const int need = source::minimal_id_order(g);
    std::vector<bool> incompatible(cfg.schemes.size(), false);
    for (std::size_t s = 0; s < cfg.schemes.size(); ++s) {
        const int k = solver::regularization_order(cfg.schemes[s]);
        if (k >= 1 && k < need) {
            if (!cfg.force_incompatible)
                throw IncompatibleScheme(
                    std::string(solver::scheme_name(cfg.schemes[s])) +
                        " cannot regularize this source; minimal admissible scheme: ID" +
                        std::to_string(need) + "-BDF2",
                    need);
            incompatible[s] = true;
        }
    }

    const auto sols = run_sweep(cfg, A, v, g, incompatible);
    return assemble_table(cfg, A, incompatible, sols);
}

ConvergenceTable run_oracle_check(const ExperimentConfig& cfg) {
    if (!(cfg.mu > -1.0))
        throw ConfigError("config: oracle check requires mu > -1 (monomial source)");
    if (cfg.mode_k < 1) throw ConfigError("config: field 'mode_k' must be >= 1");

    const space::SpatialOperator A = build_space(cfg);
    GridFunction v(A.size()), q(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) {
        const double phi = space::eigenfunction(cfg.mode_k, A.nodes()[i]);
        v[i] = cfg.v_coeff * phi;
        q[i] = cfg.q_coeff * phi;
    }
    const source::SourceSpec g =
        source::SourceSpec::of(A.size(), {source::SourceSpec::monomial(cfg.mu, q)});

    oracle::SeparableProblem problem;
    problem.alpha = cfg.alpha;
    problem.mu = cfg.mu;
    problem.modes = {{cfg.mode_k, cfg.v_coeff, cfg.q_coeff}};
    const GridFunction u_exact = oracle::exact_solution(problem, cfg.T, A.nodes());

    solver::SolveOptions opt;
    opt.quad_nodes = cfg.quad_nodes;
    opt.keep_history = false;

    ConvergenceTable table;
    for (solver::SchemeKind scheme : cfg.schemes) {
        double prev = kNaN;
        for (std::size_t i = 0; i < cfg.steps.size(); ++i) {
            const TimeGrid grid = TimeGrid::make(cfg.T, cfg.steps[i]);
            const GridFunction u =
                solver::solve(scheme, cfg.alpha, grid, A, v, g, opt).u_final;
            TableRow row;
            row.scheme = solver::scheme_name(scheme);
            row.steps = cfg.steps[i];
            row.error = self_difference(A, u, u_exact, cfg.norm);
            if (i > 0) {
                row.rate = empirical_rate(prev, row.error);
                row.has_rate = true;
            }
            prev = row.error;
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

std::string to_csv(const ConvergenceTable& t) {
    std::string out = "scheme,N,error,rate\n";
    for (const TableRow& row : t.rows) {
        out += row.scheme;
        out += ',';
        out += std::to_string(row.steps);
        out += ',';
        out += row.incompatible ? "incompatible" : format_error(row.error);
        out += ',';
        if (row.has_rate) out += format_rate(row.rate);
        out += '\n';
    }
    return out;
}

std::string to_text(const ConvergenceTable& t) {
    std::ostringstream os;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%-12s %6s  %-12s %-8s\n", "scheme", "N", "error",
                  "rate");
    os << buf;
    for (const TableRow& row : t.rows) {
        const std::string err = row.incompatible ? "incompatible" : format_error(row.error);
        const std::string rate = row.has_rate ? format_rate(row.rate) : "-";
        std::snprintf(buf, sizeof(buf), "%-12s %6d  %-12s %-8s\n", row.scheme.c_str(),
                      row.steps, err.c_str(), rate.c_str());
        os << buf;
    }
    return os.str();
}

bool has_unexpected_nan(const ConvergenceTable& t, const ExperimentConfig& cfg) {
    const bool corr_nan_expected = cfg.op == SourceOp::Product && cfg.mu < 0.0;
    for (const TableRow& row : t.rows) {
        if (row.incompatible) continue;
        const bool nan_cell = std::isnan(row.error);
        if (nan_cell && !(corr_nan_expected && row.scheme == "Corr-BDF2")) return true;
    }
    return false;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }

    auto require = [&](const char* key) -> const nlohmann::json& {
        if (!j.contains(key))
            throw ConfigError(std::string("config: missing field '") + key + "'");
        return j.at(key);
    };

    ExperimentConfig cfg;
    if (require("schema").get<int>() != 1)
        throw ConfigError("config: field 'schema' must be 1");
    cfg.alpha = require("alpha").get<double>();
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw ConfigError("config: field 'alpha' must lie in (0,1)");
    cfg.T = j.value("T", 1.0);
    if (!(cfg.T > 0.0)) throw ConfigError("config: field 'T' must be positive");

    for (const auto& name : require("schemes")) {
        try {
            cfg.schemes.push_back(solver::scheme_from_name(name.get<std::string>()));
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("config: field 'schemes': ") + e.what());
        }
    }
    if (cfg.schemes.empty()) throw ConfigError("config: field 'schemes' must be non-empty");

    for (const auto& n : require("N")) cfg.steps.push_back(n.get<int>());
    if (cfg.steps.empty()) throw ConfigError("config: field 'N' must be non-empty");
    if (cfg.steps.front() < 2) throw ConfigError("config: field 'N' entries must be >= 2");
    for (std::size_t i = 1; i < cfg.steps.size(); ++i)
        if (cfg.steps[i] != 2 * cfg.steps[i - 1])
            throw ConfigError("config: field 'N' must double at each entry");

    cfg.space_mode = j.value("space", std::string("cheb"));
    if (cfg.space_mode != "cheb" && cfg.space_mode != "fd")
        throw ConfigError("config: field 'space' must be \"cheb\" or \"fd\"");
    cfg.resolution = j.value("resolution", 32);
    if (cfg.resolution < 2) throw ConfigError("config: field 'resolution' must be >= 2");
    cfg.quad_nodes = j.value("quad_nodes", 64);
    if (cfg.quad_nodes < 1) throw ConfigError("config: field 'quad_nodes' must be >= 1");

    const std::string op = j.value("source_op", std::string("product"));
    if (op == "product")
        cfg.op = SourceOp::Product;
    else if (op == "convolution")
        cfg.op = SourceOp::Convolution;
    else
        throw ConfigError("config: field 'source_op' must be \"product\" or \"convolution\"");

    cfg.mu = require("mu").get<double>();
    cfg.beta = j.value("beta", 0.0);
    cfg.initial = j.value("initial", std::string("example"));
    if (cfg.initial != "example" && cfg.initial != "zero")
        throw ConfigError("config: field 'initial' must be \"example\" or \"zero\"");

    const std::string norm = j.value("norm", std::string("nodal"));
    if (norm == "nodal")
        cfg.norm = NormKind::Nodal;
    else if (norm == "weighted")
        cfg.norm = NormKind::Weighted;
    else
        throw ConfigError("config: field 'norm' must be \"nodal\" or \"weighted\"");

    const std::string format = j.value("format", std::string("both"));
    if (format == "csv")
        cfg.format = OutputFormat::Csv;
    else if (format == "table")
        cfg.format = OutputFormat::Table;
    else if (format == "both")
        cfg.format = OutputFormat::Both;
    else
        throw ConfigError("config: field 'format' must be \"csv\", \"table\" or \"both\"");

    cfg.corr_every_step = j.value("corr_every_step", false);
    cfg.force_incompatible = j.value("force_incompatible", false);
    cfg.mode_k = j.value("mode_k", 1);
    cfg.v_coeff = j.value("v_coeff", 0.0);
    cfg.q_coeff = j.value("q_coeff", 1.0);
    return cfg;
}

}  // namespace subdiff::harness
