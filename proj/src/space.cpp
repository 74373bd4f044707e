#include "subdiff/space.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace subdiff::space {

namespace {

// Chebyshev differentiation matrix on the CGL points x_j = cos(j pi / M),
// j = 0..M (descending).  Diagonal entries are the negative row sums, which
// cancels the dominant rounding error of the off-diagonal formula.
std::vector<double> cheb_diff_matrix(int M, std::vector<double>& x_desc) {
    const int n = M + 1;
    x_desc.resize(n);
    for (int j = 0; j < n; ++j) x_desc[j] = std::cos(std::numbers::pi * j / M);
    std::vector<double> c(n, 1.0);
    c[0] = c[M] = 2.0;
    std::vector<double> D(n * n, 0.0);
    for (int i = 0; i < n; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double sgn = ((i + j) & 1) ? -1.0 : 1.0;
            const double v = (c[i] / c[j]) * sgn / (x_desc[i] - x_desc[j]);
            D[i * n + j] = v;
            rowsum += v;
        }
        D[i * n + i] = -rowsum;
    }
    return D;
}

// Clenshaw-Curtis weights on the CGL points (descending order to match).
std::vector<double> clenshaw_curtis(int M) {
    const int n = M + 1;
    std::vector<double> w(n, 0.0), theta(n);
    for (int j = 0; j < n; ++j) theta[j] = std::numbers::pi * j / M;
    std::vector<double> v(M - 1, 1.0);
    if (M % 2 == 0) {
        w[0] = w[M] = 1.0 / (M * M - 1.0);
        for (int k = 1; k <= M / 2 - 1; ++k)
            for (int i = 1; i < M; ++i)
                v[i - 1] -= 2.0 * std::cos(2.0 * k * theta[i]) / (4.0 * k * k - 1.0);
        for (int i = 1; i < M; ++i) v[i - 1] -= std::cos(M * theta[i]) / (M * M - 1.0);
    } else {
        w[0] = w[M] = 1.0 / (M * M);
        for (int k = 1; k <= (M - 1) / 2; ++k)
            for (int i = 1; i < M; ++i)
                v[i - 1] -= 2.0 * std::cos(2.0 * k * theta[i]) / (4.0 * k * k - 1.0);
    }
    for (int i = 1; i < M; ++i) w[i] = 2.0 * v[i - 1] / M;
    return w;
}

}  // namespace

SpatialOperator SpatialOperator::scalar(double lambda) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("SpatialOperator::scalar: lambda must be positive");
    SpatialOperator op;
    op.mode_ = SpaceMode::Scalar;
    op.lambda_ = lambda;
    op.nodes_ = {0.0};
    op.norm_weights_ = {1.0};
    op.cache_ = std::make_shared<LuCache>();
    return op;
}

SpatialOperator SpatialOperator::finite_difference(int interior_points) {
    if (interior_points < 1)
        throw std::invalid_argument("SpatialOperator::finite_difference: need >= 1 point");
    SpatialOperator op;
    op.mode_ = SpaceMode::FiniteDifference;
    op.h_ = 2.0 / (interior_points + 1);
    op.nodes_.resize(interior_points);
    for (int i = 0; i < interior_points; ++i) op.nodes_[i] = -1.0 + (i + 1) * op.h_;
    op.norm_weights_.assign(interior_points, op.h_);
    op.cache_ = std::make_shared<LuCache>();
    return op;
}

SpatialOperator SpatialOperator::chebyshev(int degree) {
    if (degree < 2)
        throw std::invalid_argument("SpatialOperator::chebyshev: degree must be >= 2");
    SpatialOperator op;
    op.mode_ = SpaceMode::Chebyshev;
    const int M = degree;
    const int n = M + 1;
    std::vector<double> x_desc;
    const std::vector<double> D = cheb_diff_matrix(M, x_desc);

    // D^2, then strip boundary rows/columns and reorder to ascending x.
    std::vector<double> D2(n * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double d = D[i * n + k];
            if (d == 0.0) continue;
            for (int j = 0; j < n; ++j) D2[i * n + j] += d * D[k * n + j];
        }

    const int m = M - 1;  // interior count
    op.nodes_.resize(m);
    op.matrix_.resize(m * m);
    const std::vector<double> cc = clenshaw_curtis(M);
    op.norm_weights_.resize(m);
    for (int i = 0; i < m; ++i) {
        const int src_i = M - 1 - i;  // ascending x
        op.nodes_[i] = x_desc[src_i];
        op.norm_weights_[i] = cc[src_i];
        for (int j = 0; j < m; ++j) op.matrix_[i * m + j] = D2[src_i * n + (M - 1 - j)];
    }
    op.cache_ = std::make_shared<LuCache>();
    return op;
}

void SpatialOperator::check_dim(const GridFunction& w, const char* who) const {
    if (w.size() != nodes_.size())
        throw std::invalid_argument(std::string(who) + ": grid function size mismatch");
}

GridFunction SpatialOperator::apply(const GridFunction& w) const {
    check_dim(w, "SpatialOperator::apply");
    const std::size_t m = w.size();
    GridFunction out(m, 0.0);
    switch (mode_) {
        case SpaceMode::Scalar:
            out[0] = -lambda_ * w[0];
            break;
        case SpaceMode::FiniteDifference: {
            const double inv_h2 = 1.0 / (h_ * h_);
            for (std::size_t i = 0; i < m; ++i) {
                const double left = i > 0 ? w[i - 1] : 0.0;
                const double right = i + 1 < m ? w[i + 1] : 0.0;
                out[i] = (left - 2.0 * w[i] + right) * inv_h2;
            }
            break;
        }
        case SpaceMode::Chebyshev:
            for (std::size_t i = 0; i < m; ++i) {
                double acc = 0.0;
                const double* row = matrix_.data() + i * m;
                for (std::size_t j = 0; j < m; ++j) acc += row[j] * w[j];
                out[i] = acc;
            }
            break;
    }
    return out;
}

GridFunction SpatialOperator::solve_shifted(double c, const GridFunction& rhs) const {
    if (!(c > 0.0))
        throw std::invalid_argument("SpatialOperator::solve_shifted: shift must be positive");
    check_dim(rhs, "SpatialOperator::solve_shifted");
    switch (mode_) {
        case SpaceMode::Scalar:
            return GridFunction{rhs[0] / (c + lambda_)};
        case SpaceMode::FiniteDifference: {
            const double inv_h2 = 1.0 / (h_ * h_);
            return linalg::solve_tridiag_const(c + 2.0 * inv_h2, -inv_h2, rhs);
        }
        case SpaceMode::Chebyshev: {
            std::shared_ptr<const linalg::DenseLu> lu;
            {
                std::lock_guard<std::mutex> lock(cache_->mutex);
                auto it = cache_->by_shift.find(c);
                if (it != cache_->by_shift.end()) {
                    lu = it->second;
                } else {
                    const std::size_t m = nodes_.size();
                    std::vector<double> a(m * m);
                    for (std::size_t i = 0; i < m; ++i)
                        for (std::size_t j = 0; j < m; ++j)
                            a[i * m + j] = (i == j ? c : 0.0) - matrix_[i * m + j];
                    lu = std::make_shared<linalg::DenseLu>(std::move(a),
                                                           static_cast<int>(m));
                    cache_->by_shift.emplace(c, lu);
                }
            }
            return lu->solve(rhs);
        }
    }
    throw std::logic_error("SpatialOperator::solve_shifted: unreachable");
}

double SpatialOperator::l2_norm(const GridFunction& w) const {
    check_dim(w, "SpatialOperator::l2_norm");
    if (mode_ == SpaceMode::Scalar) return std::abs(w[0]);
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) acc += norm_weights_[i] * w[i] * w[i];
    return std::sqrt(acc);
}

double SpatialOperator::nodal_norm(const GridFunction& w) const {
    check_dim(w, "SpatialOperator::nodal_norm");
    double acc = 0.0;
    for (const double v : w) acc += v * v;
    return std::sqrt(acc);
}

GridFunction SpatialOperator::sample(const std::function<double(double)>& f) const {
    GridFunction out(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) out[i] = f(nodes_[i]);
    return out;
}

double eigenvalue(int k) {
    const double w = k * std::numbers::pi / 2.0;
    return w * w;
}

double eigenfunction(int k, double x) {
    return std::sin(k * std::numbers::pi * (x + 1.0) / 2.0);
}

std::vector<std::pair<double, std::function<double(double)>>> eigenpairs(int k_max) {
    std::vector<std::pair<double, std::function<double(double)>>> out;
    out.reserve(k_max);
    for (int k = 1; k <= k_max; ++k)
        out.emplace_back(eigenvalue(k), [k](double x) { return eigenfunction(k, x); });
    return out;
}

}  // namespace subdiff::space
