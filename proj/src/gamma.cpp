#include "subdiff/gamma.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace subdiff::special {

namespace {

// Lanczos coefficients for g = 7, 9 terms.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double lanczos_sum(double x) {
    double a = kLanczos[0];
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x - 1.0 + i);
    return a;
}

// Valid for x >= 0.5.
double gamma_core(double x) {
    const double t = x + kLanczosG - 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x - 0.5) * std::exp(-t) *
           lanczos_sum(x);
}

double log_gamma_core(double x) {
    const double t = x + kLanczosG - 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (x - 0.5) * std::log(t) - t +
           std::log(lanczos_sum(x));
}

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

}  // namespace

double gamma_fn(double x) {
    if (is_nonpositive_integer(x))
        throw std::domain_error("gamma_fn: pole at non-positive integer argument");
    if (x >= 0.5) return gamma_core(x);
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_core(1.0 - x));
}

double log_abs_gamma(double x, int* sign) {
    if (is_nonpositive_integer(x)) {
        if (sign) *sign = 0;
        return std::numeric_limits<double>::infinity();
    }
    if (x >= 0.5) {
        if (sign) *sign = 1;
        return log_gamma_core(x);
    }
    const double s = std::sin(std::numbers::pi * x);
    if (sign) *sign = s > 0.0 ? 1 : -1;
    return std::log(std::numbers::pi) - std::log(std::abs(s)) - log_gamma_core(1.0 - x);
}

double beta_fn(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0))
        throw std::domain_error("beta_fn: arguments must be positive");
    return std::exp(log_abs_gamma(x) + log_abs_gamma(y) - log_abs_gamma(x + y));
}

}  // namespace subdiff::special
