#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "subdiff/types.hpp"

namespace subdiff::cq {

/// Convolution-quadrature weight table: the Taylor coefficients of
/// ((3/2) - 2 xi + (1/2) xi^2)^alpha.  The tau^{-alpha} scaling is applied by
/// the caller, so one table serves every step size.
struct WeightSequence {
    double alpha = 0.0;
    std::vector<double> weights;  // w_0 .. w_n

    std::size_t size() const noexcept { return weights.size(); }
    double operator[](std::size_t j) const { return weights[j]; }
};

/// Fractional BDF2 weights w_0..w_n.  Uses the factorization
/// (3/2)(1 - xi)(1 - xi/3): the coefficients are the convolution of two
/// generalized binomial series, each generated by the stable recursion
/// c_m = c_{m-1} (m - 1 - alpha) / m, with the 3^{-m} factor folded into the
/// second series.  Nonnegative integer alpha reduces to the exact polynomial
/// power.  Accepts any real alpha.
WeightSequence cq_weights(double alpha, std::size_t n);

/// Coefficients of the integer power ((3/2) - 2 xi + (1/2) xi^2)^p, truncated
/// or zero-padded to length n+1.  These define the discrete derivative
/// d^p_tau f^n = tau^{-p} sum_{j=0}^{n} w_j f^{n-j}.
WeightSequence bdf2_power_weights(int p, std::size_t n);

/// sum_{j=0}^{n} w_j phi^{n-j} over a stored history phi^0..phi^n.
/// No tau scaling; the caller scales.
GridFunction discrete_convolve(const WeightSequence& w,
                               std::span<const GridFunction> history, std::size_t n);

}  // namespace subdiff::cq
