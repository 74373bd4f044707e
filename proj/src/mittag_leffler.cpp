#include "subdiff/mittag_leffler.hpp"

#include <cmath>
#include <stdexcept>

#include "subdiff/gamma.hpp"

namespace subdiff::ml {

namespace {
constexpr int kMaxTerms = 400;
constexpr double kDomainRadius = 30.0;
constexpr double kRelCutoff = 1e-16;
}  // namespace

double ml(const MLParams& p, double z) {
    if (!(p.alpha > 0.0)) throw std::domain_error("ml: alpha must be positive");
    if (std::abs(z) > kDomainRadius)
        throw std::domain_error("ml: |z| exceeds the direct-series domain (30)");

    int sign = 0;
    double lg = special::log_abs_gamma(p.beta, &sign);
    double sum = sign == 0 ? 0.0 : sign * std::exp(-lg);
    double comp = 0.0;  // Kahan compensation
    if (z == 0.0) return sum;

    const double log_abs_z = std::log(std::abs(z));
    const bool negative = z < 0.0;
    for (int k = 1; k <= kMaxTerms; ++k) {
        lg = special::log_abs_gamma(p.alpha * k + p.beta, &sign);
        double term = 0.0;
        if (sign != 0) {
            term = sign * std::exp(k * log_abs_z - lg);
            if (negative && (k & 1)) term = -term;
            if (!std::isfinite(term))
                throw std::runtime_error("ml: series term overflow");
            const double y = term - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        if (sum != 0.0 && std::abs(term) <= kRelCutoff * std::abs(sum)) return sum;
    }
    throw std::runtime_error("ml: series did not converge within 400 terms");
}

double ml(double alpha, double beta, double z) { return ml(MLParams{alpha, beta}, z); }

}  // namespace subdiff::ml
