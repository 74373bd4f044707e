#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace subdiff::quadrature {

/// Gauss-Jacobi rule on [0,1] for the weight sigma^a (1-sigma)^b.
struct JacobiRule {
    double a = 0.0;
    double b = 0.0;
    std::vector<double> nodes;    // strictly increasing, inside (0,1)
    std::vector<double> weights;  // positive; sum equals B(a+1, b+1)

    std::size_t size() const noexcept { return nodes.size(); }
};

/// m-point rule exact for integral_0^1 sigma^a (1-sigma)^b P(sigma) dsigma for
/// every polynomial P of degree <= 2m-1.  Built by Golub-Welsch: eigenvalues
/// of the symmetric Jacobi matrix give the nodes, the first eigenvector
/// components give the weights; the [-1,1] rule is then mapped to [0,1].
/// Rejects a <= -1 or b <= -1 (non-integrable weight).
JacobiRule jacobi_rule(double a, double b, int m);

/// sum_i w_i f(node_i).  Non-finite integrand values raise std::runtime_error.
double integrate(const JacobiRule& rule, const std::function<double(double)>& f);

/// Vector-valued integrand: f fills a dim-sized span at each node.
std::vector<double> integrate(const JacobiRule& rule, std::size_t dim,
                              const std::function<void(double, std::span<double>)>& f);

}  // namespace subdiff::quadrature
