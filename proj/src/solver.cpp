#include "subdiff/solver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace subdiff::solver {

namespace {

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// RHS of an IDk scheme: the discrete k-th derivative of the combined history
// W^j = t_j^k / k!  Av + G^j, truncated to the entries that exist.
GridFunction idk_rhs(int n, int k, const TimeGrid& grid, const GridFunction& av,
                     const source::RegularizedSource& reg, const cq::WeightSequence& dk) {
    const std::size_t dim = av.size();
    GridFunction acc(dim, 0.0);
    const double inv_fact = 1.0 / factorial(k);
    const int jmax = std::min(n, 2 * k);
    for (int j = 0; j <= jmax; ++j) {
        const double d = dk[j];
        const double t = grid.t(n - j);
        const double tk = inv_fact * std::pow(t, k);
        const GridFunction& G = reg.values[n - j];
        for (std::size_t i = 0; i < dim; ++i) acc[i] += d * (tk * av[i] + G[i]);
    }
    const double scale = std::pow(grid.tau, -k);
    for (double& v : acc) v *= scale;
    return acc;
}

GridFunction scheme_rhs(SchemeKind scheme, int n, const TimeGrid& grid,
                        const GridFunction& av, const source::RegularizedSource& reg,
                        const cq::WeightSequence& dk, bool corr_every_step) {
    const std::size_t dim = av.size();
    const int k = regularization_order(scheme);
    if (k == 0) {
        GridFunction rhs(dim);
        const GridFunction& gn = reg.values[n];
        if (scheme == SchemeKind::CorrBDF2 && (n == 1 || corr_every_step)) {
            const GridFunction& g0 = reg.values[0];
            for (std::size_t i = 0; i < dim; ++i)
                rhs[i] = 1.5 * av[i] + 0.5 * g0[i] + gn[i];
        } else {
            for (std::size_t i = 0; i < dim; ++i) rhs[i] = av[i] + gn[i];
        }
        return rhs;
    }
    return idk_rhs(n, k, grid, av, reg, dk);
}

}  // namespace

int regularization_order(SchemeKind s) {
    switch (s) {
        case SchemeKind::BDF2:
        case SchemeKind::CorrBDF2:
            return 0;
        case SchemeKind::ID1BDF2:
            return 1;
        case SchemeKind::ID2BDF2:
            return 2;
        case SchemeKind::ID3BDF2:
            return 3;
    }
    return 0;
}

const char* scheme_name(SchemeKind s) {
    switch (s) {
        case SchemeKind::BDF2:
            return "BDF2";
        case SchemeKind::CorrBDF2:
            return "Corr-BDF2";
        case SchemeKind::ID1BDF2:
            return "ID1-BDF2";
        case SchemeKind::ID2BDF2:
            return "ID2-BDF2";
        case SchemeKind::ID3BDF2:
            return "ID3-BDF2";
    }
    return "?";
}

SchemeKind scheme_from_name(const std::string& name) {
    std::string s;
    s.reserve(name.size());
    for (char c : name) s.push_back(static_cast<char>(std::tolower(c)));
    if (s == "bdf2") return SchemeKind::BDF2;
    if (s == "corr-bdf2") return SchemeKind::CorrBDF2;
    if (s == "id1-bdf2") return SchemeKind::ID1BDF2;
    if (s == "id2-bdf2") return SchemeKind::ID2BDF2;
    if (s == "id3-bdf2") return SchemeKind::ID3BDF2;
    throw ConfigError("unknown scheme name: '" + name + "'");
}

GridFunction rhs_at_step(SchemeKind scheme, int n, const TimeGrid& grid,
                         const space::SpatialOperator& A, const GridFunction& v,
                         const source::RegularizedSource& reg, bool corr_every_step) {
    if (n < 1) throw std::invalid_argument("rhs_at_step: n must be >= 1");
    if (regularization_order(scheme) != reg.k)
        throw std::invalid_argument("rhs_at_step: regularization order mismatch");
    const GridFunction av = A.apply(v);
    const int k = regularization_order(scheme);
    const cq::WeightSequence dk =
        k >= 1 ? cq::bdf2_power_weights(k, 2 * k) : cq::WeightSequence{};
    return scheme_rhs(scheme, n, grid, av, reg, dk, corr_every_step);
}

GridFunction step(const TimeGrid& grid, double alpha, const space::SpatialOperator& A,
                  const cq::WeightSequence& w, std::span<const GridFunction> history,
                  const GridFunction& rhs) {
    const int n = static_cast<int>(history.size());
    if (n < 1) throw std::invalid_argument("step: history must hold V^0");
    if (w.size() < static_cast<std::size_t>(n) + 1)
        throw std::invalid_argument("step: weight table too short");
    const std::size_t dim = rhs.size();
    const double tau_pow = std::pow(grid.tau, -alpha);

    GridFunction b = rhs;
    for (int j = 1; j <= n; ++j) {
        const double wj = w[j] * tau_pow;
        const GridFunction& vj = history[n - j];
        for (std::size_t i = 0; i < dim; ++i) b[i] -= wj * vj[i];
    }
    return A.solve_shifted(w[0] * tau_pow, b);
}

SolveResult solve(SchemeKind scheme, double alpha, const TimeGrid& grid,
                  const space::SpatialOperator& A, const GridFunction& v,
                  const source::SourceSpec& g, const SolveOptions& opt) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("solve: alpha must lie in (0,1)");
    if (v.size() != A.size() || g.dim != A.size())
        throw std::invalid_argument("solve: dimension mismatch between v, g and A");

    const int k = regularization_order(scheme);
    if (k >= 1) {
        const int need = source::minimal_id_order(g);
        if (k < need) {
            const std::string minimal =
                need <= 3 ? std::string("ID") + std::to_string(need) + "-BDF2"
                          : std::string("none in the family");
            throw IncompatibleScheme(
                std::string(scheme_name(scheme)) +
                    " cannot regularize this source; minimal admissible scheme: " + minimal,
                need);
        }
    }

    const auto t0 = std::chrono::steady_clock::now();
    const source::RegularizedSource reg =
        source::tabulate_regularized(g, k, grid, opt.quad_nodes);
    const cq::WeightSequence w = cq::cq_weights(alpha, grid.N);
    const cq::WeightSequence dk =
        k >= 1 ? cq::bdf2_power_weights(k, 2 * k) : cq::WeightSequence{};
    const GridFunction av = A.apply(v);
    const std::size_t dim = A.size();
    const double tau_pow = std::pow(grid.tau, -alpha);
    const double shift = w[0] * tau_pow;

    std::vector<GridFunction> history;
    history.reserve(grid.N + 1);
    history.emplace_back(dim, 0.0);  // V^0 = 0

    SolveResult result;
    for (int n = 1; n <= grid.N; ++n) {
        GridFunction b = scheme_rhs(scheme, n, grid, av, reg, dk, opt.corr_every_step);
        for (int j = 1; j <= n; ++j) {
            const double wj = w[j] * tau_pow;
            const GridFunction& vj = history[n - j];
            for (std::size_t i = 0; i < dim; ++i) b[i] -= wj * vj[i];
        }
        GridFunction vn = A.solve_shifted(shift, b);

        // residual of the shifted solve (diagnostic)
        GridFunction avn = A.apply(vn);
        double res = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            res = std::max(res, std::abs(shift * vn[i] - avn[i] - b[i]));
        if (std::isfinite(res)) result.max_step_residual = std::max(result.max_step_residual, res);

        history.push_back(std::move(vn));
    }

    result.u_final.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) result.u_final[i] = history[grid.N][i] + v[i];
    result.singular_source_poisoned =
        scheme == SchemeKind::CorrBDF2 && reg.singular_at_zero;
    if (opt.keep_history) result.v_history = std::move(history);
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace subdiff::solver
