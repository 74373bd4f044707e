#include "subdiff/cq.hpp"

#include <cmath>
#include <stdexcept>

namespace subdiff::cq {

namespace {

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace

WeightSequence bdf2_power_weights(int p, std::size_t n) {
    if (p <= 0) throw std::invalid_argument("bdf2_power_weights: p must be positive");
    std::vector<double> w{1.5, -2.0, 0.5};
    const std::vector<double> base = w;
    for (int i = 1; i < p; ++i) w = convolve(w, base);
    w.resize(n + 1, 0.0);
    return WeightSequence{static_cast<double>(p), std::move(w)};
}

WeightSequence cq_weights(double alpha, std::size_t n) {
    // Integer powers have finitely many exact coefficients; route them through
    // the polynomial path so cq_weights(p, n) == bdf2_power_weights(p, n).
    if (alpha >= 0.0 && alpha <= 8.0 && alpha == std::floor(alpha)) {
        const int p = static_cast<int>(alpha);
        if (p == 0) {
            std::vector<double> w(n + 1, 0.0);
            w[0] = 1.0;
            return WeightSequence{alpha, std::move(w)};
        }
        WeightSequence ws = bdf2_power_weights(p, n);
        ws.alpha = alpha;
        return ws;
    }

    // (1 - xi)^alpha and (1 - xi/3)^alpha series; the (3/2)^alpha scale is
    // folded into the first factor.
    std::vector<double> b(n + 1), c(n + 1);
    b[0] = std::pow(1.5, alpha);
    c[0] = 1.0;
    for (std::size_t m = 1; m <= n; ++m) {
        const double f = (static_cast<double>(m) - 1.0 - alpha) / static_cast<double>(m);
        b[m] = b[m - 1] * f;
        c[m] = c[m - 1] * f / 3.0;
    }
    std::vector<double> w(n + 1, 0.0);
    for (std::size_t j = 0; j <= n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i <= j; ++i) s += b[i] * c[j - i];
        w[j] = s;
    }
    return WeightSequence{alpha, std::move(w)};
}

GridFunction discrete_convolve(const WeightSequence& w,
                               std::span<const GridFunction> history, std::size_t n) {
    if (history.size() < n + 1)
        throw std::invalid_argument("discrete_convolve: history shorter than n+1");
    if (w.size() < n + 1)
        throw std::invalid_argument("discrete_convolve: weight table shorter than n+1");
    const std::size_t dim = history[0].size();
    GridFunction acc(dim, 0.0);
    for (std::size_t j = 0; j <= n; ++j) {
        const GridFunction& phi = history[n - j];
        if (phi.size() != dim)
            throw std::invalid_argument("discrete_convolve: history entries differ in size");
        const double wj = w[j];
        for (std::size_t i = 0; i < dim; ++i) acc[i] += wj * phi[i];
    }
    return acc;
}

}  // namespace subdiff::cq
