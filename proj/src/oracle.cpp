#include "subdiff/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "subdiff/gamma.hpp"
#include "subdiff/mittag_leffler.hpp"
#include "subdiff/space.hpp"

namespace subdiff::oracle {

double scalar_reference(double alpha, double lambda, double mu, double v, double q,
                        double t) {
    if (!(alpha > 0.0)) throw std::domain_error("scalar_reference: alpha must be positive");
    if (!(mu > -1.0)) throw std::domain_error("scalar_reference: mu must exceed -1");
    if (t < 0.0) throw std::domain_error("scalar_reference: t must be nonnegative");

    const double z = t > 0.0 ? -lambda * std::pow(t, alpha) : 0.0;
    double u = v * ml::ml(alpha, 1.0, z);
    if (q != 0.0) {
        const double p = alpha + mu;
        double tp;
        if (t > 0.0)
            tp = std::pow(t, p);
        else if (p > 0.0)
            tp = 0.0;
        else if (p == 0.0)
            tp = 1.0;
        else
            throw std::domain_error("scalar_reference: solution unbounded at t = 0");
        if (tp != 0.0)
            u += special::gamma_fn(mu + 1.0) * tp * ml::ml(alpha, alpha + mu + 1.0, z) * q;
    }
    return u;
}

GridFunction exact_solution(const SeparableProblem& p, double t,
                            std::span<const double> x_nodes) {
    GridFunction u(x_nodes.size(), 0.0);
    for (const Mode& mode : p.modes) {
        const double coeff = scalar_reference(p.alpha, space::eigenvalue(mode.k), p.mu,
                                              mode.v_coeff, mode.q_coeff, t);
        for (std::size_t i = 0; i < x_nodes.size(); ++i)
            u[i] += coeff * space::eigenfunction(mode.k, x_nodes[i]);
    }
    return u;
}

}  // namespace subdiff::oracle
