#include "subdiff/source.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "subdiff/gamma.hpp"

namespace subdiff::source {

namespace {

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// t^mu with the t = 0 limit convention: 1 for mu = 0, 0 for mu > 0,
// singular for mu < 0.
double power_at(double t, double mu) {
    if (t > 0.0) return mu == 0.0 ? 1.0 : std::pow(t, mu);
    if (mu == 0.0) return 1.0;
    if (mu > 0.0) return 0.0;
    throw SingularAtZero("source: t^mu is unbounded at t = 0 for mu < 0");
}

void axpy(GridFunction& y, double a, const GridFunction& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

}  // namespace

SourceTerm SourceSpec::monomial(double mu, GridFunction q) {
    return SourceTerm{SourceKind::Monomial, mu, std::move(q), nullptr};
}

SourceTerm SourceSpec::product(double mu, TimeCallable f) {
    return SourceTerm{SourceKind::Product, mu, {}, std::move(f)};
}

SourceTerm SourceSpec::convolution(double mu, TimeCallable f) {
    return SourceTerm{SourceKind::Convolution, mu, {}, std::move(f)};
}

SourceSpec SourceSpec::of(std::size_t dim, std::vector<SourceTerm> terms) {
    if (dim == 0) throw std::invalid_argument("SourceSpec: dimension must be positive");
    for (const SourceTerm& term : terms) {
        switch (term.kind) {
            case SourceKind::Monomial:
                if (term.q.size() != dim)
                    throw std::invalid_argument("SourceSpec: monomial factor size mismatch");
                if (!(term.mu > -2.0) || term.mu == -1.0)
                    throw std::domain_error(
                        "SourceSpec: monomial exponent must lie in (-2,-1) or (-1,inf)");
                break;
            case SourceKind::Product:
                if (!term.f)
                    throw std::invalid_argument("SourceSpec: product term needs a callable");
                if (!(term.mu > -2.0) || term.mu == -1.0)
                    throw std::domain_error(
                        "SourceSpec: product exponent must lie in (-2,-1) or (-1,inf)");
                break;
            case SourceKind::Convolution:
                if (!term.f)
                    throw std::invalid_argument("SourceSpec: convolution term needs a callable");
                if (!(term.mu > -1.0))
                    throw std::domain_error("SourceSpec: convolution exponent must exceed -1");
                break;
        }
    }
    return SourceSpec{std::move(terms), dim};
}

double jk_monomial(double mu, int k, double t) {
    if (k < 1) throw std::invalid_argument("jk_monomial: k must be >= 1");
    if (!(mu + k > 0.0))
        throw std::domain_error("jk_monomial: mu + k must be positive for a finite integral");
    double denom = 1.0;
    for (int i = 1; i <= k; ++i) {
        const double factor = mu + i;
        if (factor == 0.0)
            throw std::domain_error("jk_monomial: integer pole in the exponent ladder");
        denom *= factor;
    }
    if (t == 0.0) return 0.0;
    return std::pow(t, mu + k) / denom;
}

GridFunction jk_product(double mu, const TimeCallable& f, int k, double t,
                        std::size_t dim, int rule_size) {
    if (k < 1) throw std::invalid_argument("jk_product: k must be >= 1");
    if (!(mu + k > 0.0)) throw std::domain_error("jk_product: mu + k must be positive");
    if (t == 0.0) return GridFunction(dim, 0.0);
    if (!(t > 0.0)) throw std::domain_error("jk_product: t must be nonnegative");
    const quadrature::JacobiRule rule = quadrature::jacobi_rule(mu, k - 1, rule_size);
    GridFunction acc = quadrature::integrate(
        rule, dim, [&](double sigma, std::span<double> out) { f(t * sigma, out); });
    const double scale = std::pow(t, k + mu) / factorial(k - 1);
    for (double& v : acc) v *= scale;
    return acc;
}

GridFunction jk_convolution(double mu, const TimeCallable& f, int k, double t,
                            std::size_t dim, int rule_size) {
    if (k < 1) throw std::invalid_argument("jk_convolution: k must be >= 1");
    if (!(mu > -1.0)) throw std::domain_error("jk_convolution: mu must exceed -1");
    if (t == 0.0) return GridFunction(dim, 0.0);
    if (!(t > 0.0)) throw std::domain_error("jk_convolution: t must be nonnegative");
    const quadrature::JacobiRule rule = quadrature::jacobi_rule(0.0, mu + k, rule_size);
    GridFunction acc = quadrature::integrate(
        rule, dim, [&](double sigma, std::span<double> out) { f(t * sigma, out); });
    const double scale =
        std::exp(special::log_abs_gamma(mu + 1.0) - special::log_abs_gamma(mu + k + 1.0)) *
        std::pow(t, mu + k + 1.0);
    for (double& v : acc) v *= scale;
    return acc;
}

GridFunction eval_source(const SourceSpec& g, double t, int rule_size) {
    GridFunction out(g.dim, 0.0);
    GridFunction buf(g.dim);
    for (const SourceTerm& term : g.terms) {
        switch (term.kind) {
            case SourceKind::Monomial:
                axpy(out, power_at(t, term.mu), term.q);
                break;
            case SourceKind::Product: {
                const double factor = power_at(t, term.mu);
                if (factor != 0.0) {
                    term.f(t, buf);
                    axpy(out, factor, buf);
                }
                break;
            }
            case SourceKind::Convolution: {
                if (t == 0.0) break;  // (t^mu * f)(0) = 0 for mu > -1
                const quadrature::JacobiRule rule =
                    quadrature::jacobi_rule(0.0, term.mu, rule_size);
                GridFunction conv = quadrature::integrate(
                    rule, g.dim,
                    [&](double sigma, std::span<double> o) { term.f(t * sigma, o); });
                axpy(out, std::pow(t, term.mu + 1.0), conv);
                break;
            }
        }
    }
    return out;
}

RegularizedSource tabulate_regularized(const SourceSpec& g, int k, const TimeGrid& grid,
                                       int rule_size) {
    if (k < 0 || k > 3)
        throw std::invalid_argument("tabulate_regularized: k must lie in {0,1,2,3}");
    RegularizedSource reg;
    reg.k = k;
    reg.values.assign(grid.N + 1, GridFunction(g.dim, 0.0));

    if (k == 0) {
        for (int n = 1; n <= grid.N; ++n) reg.values[n] = eval_source(g, grid.t(n), rule_size);
        try {
            reg.values[0] = eval_source(g, 0.0, rule_size);
        } catch (const SingularAtZero&) {
            reg.singular_at_zero = true;
            reg.values[0].assign(g.dim, std::numeric_limits<double>::quiet_NaN());
        }
        return reg;
    }

    // J^k g(0) = 0 whenever the integral is finite; values[0] stays zero.
    for (const SourceTerm& term : g.terms) {
        switch (term.kind) {
            case SourceKind::Monomial:
                for (int n = 1; n <= grid.N; ++n)
                    axpy(reg.values[n], jk_monomial(term.mu, k, grid.t(n)), term.q);
                break;
            case SourceKind::Product: {
                const quadrature::JacobiRule rule =
                    quadrature::jacobi_rule(term.mu, k - 1, rule_size);
                const double inv_fact = 1.0 / factorial(k - 1);
                for (int n = 1; n <= grid.N; ++n) {
                    const double t = grid.t(n);
                    GridFunction val = quadrature::integrate(
                        rule, g.dim,
                        [&](double sigma, std::span<double> o) { term.f(t * sigma, o); });
                    axpy(reg.values[n], std::pow(t, k + term.mu) * inv_fact, val);
                }
                break;
            }
            case SourceKind::Convolution: {
                const quadrature::JacobiRule rule =
                    quadrature::jacobi_rule(0.0, term.mu + k, rule_size);
                const double coeff = std::exp(special::log_abs_gamma(term.mu + 1.0) -
                                              special::log_abs_gamma(term.mu + k + 1.0));
                for (int n = 1; n <= grid.N; ++n) {
                    const double t = grid.t(n);
                    GridFunction val = quadrature::integrate(
                        rule, g.dim,
                        [&](double sigma, std::span<double> o) { term.f(t * sigma, o); });
                    axpy(reg.values[n], coeff * std::pow(t, term.mu + k + 1.0), val);
                }
                break;
            }
        }
    }
    return reg;
}

int minimal_id_order(const SourceSpec& g) {
    int k_min = 1;
    for (const SourceTerm& term : g.terms) {
        if (term.kind == SourceKind::Convolution) continue;  // mu > -1 by construction
        if (term.mu >= 0.0) continue;
        const int need = static_cast<int>(std::floor(-term.mu)) + 1;  // smallest k > -mu
        k_min = std::max(k_min, need);
    }
    return std::min(k_min, 4);
}

}  // namespace subdiff::source
