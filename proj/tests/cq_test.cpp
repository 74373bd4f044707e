#include <doctest.h>

#include <cmath>
#include <vector>

#include "subdiff/cq.hpp"
#include "subdiff/gamma.hpp"
#include "support.hpp"

using subdiff::GridFunction;
using namespace subdiff::cq;

TEST_CASE("cq_weights constant term and integer reductions") {
    const WeightSequence w1 = cq_weights(1.0, 4);
    const std::vector<double> bdf2{1.5, -2.0, 0.5, 0.0, 0.0};
    CHECK(w1.weights == bdf2);

    const WeightSequence w0 = cq_weights(0.0, 3);
    CHECK(w0.weights == std::vector<double>{1.0, 0.0, 0.0, 0.0});

    for (double alpha : {0.3, 0.5, 0.7, -0.4}) {
        const WeightSequence w = cq_weights(alpha, 2);
        CHECK(w[0] == std::pow(1.5, alpha));
    }

    CHECK(cq_weights(0.5, 0).weights[0] == doctest::Approx(1.22474487139158905).epsilon(1e-15));
    // w_1 = -(3/2)^0.5 * 4*0.5/3, frozen from the generating-function derivative
    CHECK(cq_weights(0.5, 1).weights[1] ==
          doctest::Approx(-0.81649658092772603).epsilon(1e-14));
}

TEST_CASE("bdf2_power_weights") {
    CHECK(bdf2_power_weights(1, 3).weights == std::vector<double>{1.5, -2.0, 0.5, 0.0});
    CHECK(bdf2_power_weights(3, 0).weights == std::vector<double>{27.0 / 8.0});
    CHECK_THROWS_AS(bdf2_power_weights(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(bdf2_power_weights(-2, 4), std::invalid_argument);

    // p = 2 equals the self-convolution of the p = 1 list
    const std::vector<double> base{1.5, -2.0, 0.5};
    std::vector<double> expect(6, 0.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) expect[i + j] += base[i] * base[j];
    CHECK(bdf2_power_weights(2, 5).weights == expect);

    // integer-order consistency with the fractional generator
    CHECK(cq_weights(1.0, 10).weights == bdf2_power_weights(1, 10).weights);
    CHECK(cq_weights(2.0, 10).weights == bdf2_power_weights(2, 10).weights);
}

TEST_CASE("inverse-weight convolution is the unit impulse") {
    for (double alpha : {0.3, 0.5, 0.7, 0.99}) {
        const WeightSequence w = cq_weights(alpha, 64);
        const WeightSequence winv = cq_weights(-alpha, 64);
        for (int j = 0; j <= 64; ++j) {
            double s = 0.0;
            for (int i = 0; i <= j; ++i) s += w[i] * winv[j - i];
            CHECK(std::abs(s - (j == 0 ? 1.0 : 0.0)) < 1e-12);
        }
    }
}

TEST_CASE("discrete_convolve") {
    const WeightSequence unit{0.0, {1.0, 0.0, 0.0}};
    std::vector<GridFunction> hist{{1.0}, {2.0}, {3.0}};
    CHECK(discrete_convolve(unit, hist, 2)[0] == 3.0);

    const double tau = 0.25;
    const WeightSequence d1 = bdf2_power_weights(1, 2);
    std::vector<GridFunction> lin{{0.0}, {tau}, {2.0 * tau}};
    CHECK(discrete_convolve(d1, lin, 2)[0] == doctest::Approx(tau).epsilon(1e-14));
    CHECK(discrete_convolve(d1, lin, 1)[0] == doctest::Approx(1.5 * tau).epsilon(1e-14));

    std::vector<GridFunction> bad{{1.0}, {1.0, 2.0}, {3.0}};
    CHECK_THROWS_AS(discrete_convolve(d1, bad, 2), std::invalid_argument);
}

TEST_CASE("composition: two first derivatives equal one second derivative") {
    testsupport::Lcg rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = testsupport::Lcg(trial + 1).uniform_int(3, 32);
        std::vector<GridFunction> hist(n + 1, GridFunction(1));
        double scale = 0.0;
        for (auto& h : hist) {
            h[0] = rng.uniform(-1.0, 1.0);
            scale = std::max(scale, std::abs(h[0]));
        }
        const WeightSequence d1 = bdf2_power_weights(1, n);
        const WeightSequence d2 = bdf2_power_weights(2, n);
        std::vector<GridFunction> once(n + 1, GridFunction(1));
        for (int m = 0; m <= n; ++m) once[m] = discrete_convolve(d1, hist, m);
        const double twice = discrete_convolve(d1, once, n)[0];
        const double second = discrete_convolve(d2, hist, n)[0];
        CHECK(std::abs(twice - second) < 1e-12 * std::max(1.0, scale));
    }
}

TEST_CASE("fractional derivative accuracy on t^3 and order reduction on t") {
    // exact Riemann-Liouville derivative of t^p: Gamma(p+1)/Gamma(p+1-a) t^{p-a}
    const double alpha = 0.5;
    auto run = [&](int power) {
        std::vector<double> max_err;
        for (int N : {16, 32, 64, 128, 256}) {
            const double tau = 1.0 / N;
            const WeightSequence w = cq_weights(alpha, N);
            double worst = 0.0;
            std::vector<double> phi(N + 1);
            for (int n = 0; n <= N; ++n) phi[n] = std::pow(n * tau, power);
            for (int n = 1; n <= N; ++n) {
                double acc = 0.0;
                for (int j = 0; j <= n; ++j) acc += w[j] * phi[n - j];
                acc *= std::pow(tau, -alpha);
                const double t = n * tau;
                const double exact =
                    subdiff::special::gamma_fn(power + 1.0) /
                    subdiff::special::gamma_fn(power + 1.0 - alpha) *
                    std::pow(t, power - alpha);
                worst = std::max(worst, std::abs(acc - exact));
            }
            max_err.push_back(worst);
        }
        return testsupport::observed_rates(max_err);
    };

    // smooth history with phi(0) = phi'(0) = 0: full second order
    for (double r : run(3)) CHECK(r >= 1.9);

    // phi(t) = t: the uncorrected quadrature drops to first-step-limited
    // order 1 - alpha in the max norm, the reason the schemes regularize
    const std::vector<double> reduced = run(1);
    CHECK(reduced.back() == doctest::Approx(1.0 - alpha).epsilon(0.1));
}
