#pragma once

#include <functional>
#include <span>
#include <vector>

#include "subdiff/quadrature.hpp"
#include "subdiff/types.hpp"

namespace subdiff::source {

/// Time-dependent spatial field: fills `out` with f(x_i, t) over the grid.
using TimeCallable = std::function<void(double t, std::span<double> out)>;

enum class SourceKind { Monomial, Product, Convolution };

/// One additive term of the source g(x,t) = t^mu o f(x,t).
struct SourceTerm {
    SourceKind kind = SourceKind::Monomial;
    double mu = 0.0;
    GridFunction q;  // Monomial spatial factor
    TimeCallable f;  // Product / Convolution integrand
};

/// Additive source description.  Admissible exponents:
///   Monomial / Product: mu > -2 and mu != -1 (mu <= -1 is the finite-part
///   range, reachable only through the k >= 2 integral regularizations),
///   Convolution: mu > -1.
struct SourceSpec {
    std::vector<SourceTerm> terms;
    std::size_t dim = 0;

    static SourceTerm monomial(double mu, GridFunction q);
    static SourceTerm product(double mu, TimeCallable f);
    static SourceTerm convolution(double mu, TimeCallable f);

    /// Validates exponent domains and spatial sizes.
    static SourceSpec of(std::size_t dim, std::vector<SourceTerm> terms);
};

/// Time factor of J^k(t^mu q): t^{mu+k} / ((mu+1)(mu+2)...(mu+k)).  For
/// mu in (-2,-1) the first integration is the Hadamard finite part, which the
/// product formula yields directly.  Requires k >= 1 and mu + k > 0.
double jk_monomial(double mu, int k, double t);

/// J^k(s^mu f(s))(t) evaluated as
///   t^{k+mu}/(k-1)! * integral_0^1 (1-s)^{k-1} s^mu f(ts) ds
/// with a JacobiRule(a = mu, b = k-1, rule_size) absorbing both endpoint
/// factors.  Exact for polynomial f of degree <= 2m-1.  Returns zeros at t=0.
GridFunction jk_product(double mu, const TimeCallable& f, int k, double t,
                        std::size_t dim, int rule_size);

/// J^k(t^mu * f) = Gamma(mu+1)/Gamma(mu+k+1) * (t^{mu+k} * f)(t), evaluated
/// with a JacobiRule(a = 0, b = mu+k).  Requires mu > -1.
GridFunction jk_convolution(double mu, const TimeCallable& f, int k, double t,
                            std::size_t dim, int rule_size);

/// Pointwise g(., t), summed over terms.  Throws SingularAtZero at t = 0 when
/// a monomial/product term has mu < 0.
GridFunction eval_source(const SourceSpec& g, double t, int rule_size = 64);

/// Table of G^n = J^k g(t_n) for n = 0..N.  k = 0 tabulates the raw source;
/// a singular t = 0 value is stored as a NaN-poisoned entry (and flagged)
/// rather than thrown, since only the corrected scheme ever reads it.
struct RegularizedSource {
    int k = 0;
    bool singular_at_zero = false;
    std::vector<GridFunction> values;  // size N+1; values[0] = 0 for k >= 1
};

RegularizedSource tabulate_regularized(const SourceSpec& g, int k, const TimeGrid& grid,
                                       int rule_size = 64);

/// Smallest k in {1,2,3} whose k-fold integral is finite for every term
/// (mu + k > 0); returns 4 when no scheme in the family qualifies.
int minimal_id_order(const SourceSpec& g);

}  // namespace subdiff::source
