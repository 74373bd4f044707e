#pragma once

#include <span>
#include <vector>

#include "subdiff/types.hpp"

namespace subdiff::oracle {

/// One Dirichlet eigenmode with its initial-data and source coefficients.
struct Mode {
    int k = 1;             // lambda_k = (k pi / 2)^2
    double v_coeff = 0.0;  // coefficient of phi_k in u(., 0)
    double q_coeff = 0.0;  // coefficient of phi_k in q(x)
};

/// Separable problem d_t^alpha u - Lap u = t^mu q(x), u(.,0) = v, expanded in
/// the Dirichlet eigenbasis of (-1,1).
struct SeparableProblem {
    double alpha = 0.5;
    double mu = 0.0;  // must exceed -1
    std::vector<Mode> modes;
};

/// Exact solution by separation of variables:
///   u(x,t) = sum_k [ E_{a,1}(-l_k t^a) v_k
///                    + Gamma(mu+1) t^{a+mu} E_{a,a+mu+1}(-l_k t^a) q_k ] phi_k(x).
GridFunction exact_solution(const SeparableProblem& p, double t,
                            std::span<const double> x_nodes);

/// Single-mode scalar solution of d^alpha c + lambda c = t^mu q, c(0) = v.
double scalar_reference(double alpha, double lambda, double mu, double v, double q,
                        double t);

}  // namespace subdiff::oracle
