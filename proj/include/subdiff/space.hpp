#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "subdiff/linalg.hpp"
#include "subdiff/types.hpp"

namespace subdiff::space {

enum class SpaceMode { Scalar, FiniteDifference, Chebyshev };

/// Discrete Laplacian A on (-1,1) with homogeneous Dirichlet data, behind a
/// uniform interface in three modes:
///   Scalar(lambda)        A = -lambda on 1-vectors,
///   FiniteDifference(M)   3-point stencil on M interior points,
///   Chebyshev(M)          CGL collocation, degree M, boundary rows removed.
///
/// Shifted solves (c I - A) x = rhs factor the Chebyshev matrix once per c and
/// cache it; the cache is shared across copies and guarded for concurrent use.
class SpatialOperator {
public:
    static SpatialOperator scalar(double lambda);
    static SpatialOperator finite_difference(int interior_points);
    static SpatialOperator chebyshev(int degree);

    SpaceMode mode() const noexcept { return mode_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    double spacing() const noexcept { return h_; }  // FD mode only

    GridFunction apply(const GridFunction& w) const;
    GridFunction solve_shifted(double c, const GridFunction& rhs) const;

    /// Quadrature-weighted discrete L2 norm: sqrt(sum_i omega_i w_i^2) with
    /// omega_i = h (FD), Clenshaw-Curtis weights (Chebyshev), 1 (Scalar).
    double l2_norm(const GridFunction& w) const;

    /// Plain euclidean norm of the nodal vector.
    double nodal_norm(const GridFunction& w) const;

    /// f sampled at the interior nodes.
    GridFunction sample(const std::function<double(double)>& f) const;

private:
    SpatialOperator() = default;
    void check_dim(const GridFunction& w, const char* who) const;

    SpaceMode mode_ = SpaceMode::Scalar;
    double lambda_ = 1.0;             // Scalar
    double h_ = 0.0;                  // FD spacing
    std::vector<double> nodes_;       // ascending interior nodes
    std::vector<double> norm_weights_;
    std::vector<double> matrix_;      // Chebyshev: row-major interior D^2

    struct LuCache {
        std::mutex mutex;
        std::map<double, std::shared_ptr<const linalg::DenseLu>> by_shift;
    };
    std::shared_ptr<LuCache> cache_;
};

/// Continuous Dirichlet eigenvalue on (-1,1): lambda_k = (k pi / 2)^2.
double eigenvalue(int k);

/// Continuous Dirichlet eigenfunction: phi_k(x) = sin(k pi (x + 1) / 2).
double eigenfunction(int k, double x);

/// First k_max eigenpairs (lambda_k, phi_k).
std::vector<std::pair<double, std::function<double(double)>>> eigenpairs(int k_max);

}  // namespace subdiff::space
