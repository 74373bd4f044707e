#pragma once

// Test-only numerical oracles, kept independent of the library paths they
// check: a double-exponential (tanh-sinh) rule for integrals with endpoint
// singularities, a graded refined-trapezoid integrator, and a small
// deterministic generator for property-style sweeps.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace testsupport {

/// integral_0^1 f(s, 1-s) ds where f may blow up (integrably) at either end.
/// Both s and 1-s are supplied with full relative precision so integrands
/// like s^mu (1-s)^beta stay accurate near the endpoints.
inline double de_integrate_01(const std::function<double(double, double)>& f) {
    double previous = 0.0;
    for (int level = 2; level <= 10; ++level) {
        const double h = 1.0 / static_cast<double>(1 << level);
        const int kmax = static_cast<int>(std::ceil(6.5 / h));
        double sum = 0.0;
        for (int k = -kmax; k <= kmax; ++k) {
            const double t = k * h;
            const double u = 1.5707963267948966 * std::sinh(t);
            const double s = 1.0 / (1.0 + std::exp(-2.0 * u));
            const double sc = 1.0 / (1.0 + std::exp(2.0 * u));  // 1 - s
            if (s <= 0.0 || sc <= 0.0) continue;                // underflow: weight ~ 0
            const double w = 3.141592653589793 * s * sc * std::cosh(t);
            if (w == 0.0) continue;
            const double v = f(s, sc);
            if (!std::isfinite(v))
                throw std::runtime_error("de_integrate_01: non-finite integrand");
            sum += w * v;
        }
        sum *= h;
        if (level > 3 && std::abs(sum - previous) <= 1e-14 * (std::abs(sum) + 1e-300))
            return sum;
        previous = sum;
    }
    return previous;
}

/// integral_0^t F(s) ds via the graded substitution s = t sigma^3 and
/// Richardson-extrapolated trapezoid refinement; tolerates an integrable
/// singularity of F at 0.
inline double graded_trapezoid(const std::function<double(double)>& F, double t,
                               double tol = 1e-9) {
    const auto g = [&](double sigma) {
        const double s = t * sigma * sigma * sigma;
        return 3.0 * t * sigma * sigma * (s > 0.0 ? F(s) : 0.0);
    };
    constexpr int kMaxLevels = 16;
    double table[kMaxLevels][kMaxLevels];
    int n = 8;
    double h = 1.0 / n;
    double sum = 0.5 * g(1.0);  // g(0) = 0 by the sigma^2 factor
    for (int i = 1; i < n; ++i) sum += g(i * h);
    table[0][0] = sum * h;
    for (int j = 1; j < kMaxLevels; ++j) {
        double extra = 0.0;
        for (int i = 0; i < n; ++i) extra += g((i + 0.5) * h);
        table[j][0] = 0.5 * table[j - 1][0] + 0.5 * h * extra;
        n *= 2;
        h *= 0.5;
        double factor = 4.0;
        for (int k = 1; k <= j; ++k) {
            table[j][k] = table[j][k - 1] + (table[j][k - 1] - table[j - 1][k - 1]) / (factor - 1.0);
            factor *= 4.0;
        }
        if (j >= 3 && std::abs(table[j][j] - table[j - 1][j - 1]) <= tol)
            return table[j][j];
    }
    return table[kMaxLevels - 1][kMaxLevels - 1];
}

/// Deterministic 64-bit LCG for property sweeps (no global state).
class Lcg {
public:
    explicit Lcg(std::uint64_t seed) : state_(seed * 2862933555777941757ULL + 1442695040888963407ULL) {}
    double uniform(double lo, double hi) {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        const double u = static_cast<double>(state_ >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(uniform(0.0, 1.0) * (hi - lo + 1)) % (hi - lo + 1);
    }

private:
    std::uint64_t state_;
};

/// log2(errors[i]/errors[i+1]) for a halving ladder.
inline std::vector<double> observed_rates(const std::vector<double>& errors) {
    std::vector<double> rates;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i)
        rates.push_back(std::log2(errors[i] / errors[i + 1]));
    return rates;
}

}  // namespace testsupport
