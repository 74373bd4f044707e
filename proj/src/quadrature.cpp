#include "subdiff/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "subdiff/gamma.hpp"
#include "subdiff/linalg.hpp"

namespace subdiff::quadrature {

JacobiRule jacobi_rule(double a, double b, int m) {
    if (!(a > -1.0) || !(b > -1.0))
        throw std::domain_error("jacobi_rule: exponents must exceed -1");
    if (m < 1) throw std::invalid_argument("jacobi_rule: need at least one node");

    // On [-1,1] the weight is (1-x)^A (1+x)^B with A = b, B = a under the
    // map sigma = (1+x)/2.
    const double A = b, B = a;
    std::vector<double> diag(m), off(m > 1 ? m - 1 : 0);
    diag[0] = (B - A) / (A + B + 2.0);
    for (int k = 1; k < m; ++k) {
        const double two = 2.0 * k + A + B;
        diag[k] = (B * B - A * A) / (two * (two + 2.0));
        double bk;
        if (k == 1) {
            // the generic formula has a removable 0/0 at A+B = -1
            bk = 4.0 * (1.0 + A) * (1.0 + B) /
                 ((2.0 + A + B) * (2.0 + A + B) * (3.0 + A + B));
        } else {
            bk = 4.0 * k * (k + A) * (k + B) * (k + A + B) /
                 (two * two * (two + 1.0) * (two - 1.0));
        }
        off[k - 1] = std::sqrt(bk);
    }

    // zeroth moment on [-1,1]: 2^{A+B+1} Gamma(A+1) Gamma(B+1) / Gamma(A+B+2)
    const double mu0 =
        std::exp((A + B + 1.0) * std::log(2.0) + special::log_abs_gamma(A + 1.0) +
                 special::log_abs_gamma(B + 1.0) - special::log_abs_gamma(A + B + 2.0));

    std::vector<double> first;
    linalg::sym_tridiag_eigen(diag, off, first);

    JacobiRule rule;
    rule.a = a;
    rule.b = b;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    const double scale = mu0 * std::pow(2.0, -(a + b + 1.0));
    for (int i = 0; i < m; ++i) {
        rule.nodes[i] = 0.5 * (1.0 + diag[i]);
        rule.weights[i] = scale * first[i] * first[i];
    }
    return rule;
}

double integrate(const JacobiRule& rule, const std::function<double(double)>& f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double v = f(rule.nodes[i]);
        if (!std::isfinite(v))
            throw std::runtime_error("integrate: non-finite integrand value");
        acc += rule.weights[i] * v;
    }
    return acc;
}

std::vector<double> integrate(const JacobiRule& rule, std::size_t dim,
                              const std::function<void(double, std::span<double>)>& f) {
    std::vector<double> acc(dim, 0.0), buf(dim);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        f(rule.nodes[i], buf);
        const double w = rule.weights[i];
        for (std::size_t j = 0; j < dim; ++j) {
            if (!std::isfinite(buf[j]))
                throw std::runtime_error("integrate: non-finite integrand value");
            acc[j] += w * buf[j];
        }
    }
    return acc;
}

}  // namespace subdiff::quadrature
