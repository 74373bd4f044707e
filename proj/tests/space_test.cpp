#include <doctest.h>

#include <cmath>
#include <numbers>

#include "subdiff/space.hpp"
#include "support.hpp"

using namespace subdiff;
using space::SpatialOperator;

TEST_CASE("scalar mode") {
    const SpatialOperator A = SpatialOperator::scalar(2.0);
    CHECK(A.apply({1.0}) == GridFunction{-2.0});
    CHECK(A.l2_norm({-2.0}) == 2.0);
    const SpatialOperator B = SpatialOperator::scalar(1.0);
    CHECK(B.solve_shifted(3.0, {4.0})[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(SpatialOperator::scalar(-1.0), std::invalid_argument);
}

TEST_CASE("finite differences: stencil, norm, round trip") {
    const SpatialOperator A = SpatialOperator::finite_difference(3);
    CHECK(A.spacing() == doctest::Approx(0.5));
    const GridFunction aw = A.apply({0.0, 1.0, 0.0});
    CHECK(aw[0] == doctest::Approx(4.0));
    CHECK(aw[1] == doctest::Approx(-8.0));
    CHECK(aw[2] == doctest::Approx(4.0));

    CHECK(A.l2_norm({1.0, 1.0, 1.0}) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));
    CHECK(SpatialOperator::finite_difference(2).nodal_norm({3.0, 4.0}) ==
          doctest::Approx(5.0));
    CHECK_THROWS_AS(A.apply({1.0, 2.0}), std::invalid_argument);

    // (I - A) w recovered by the shifted solve
    const SpatialOperator B = SpatialOperator::finite_difference(17);
    testsupport::Lcg rng(3);
    GridFunction w(B.size());
    for (double& v : w) v = rng.uniform(-1.0, 1.0);
    GridFunction rhs = B.apply(w);
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = w[i] - rhs[i];
    const GridFunction back = B.solve_shifted(1.0, rhs);
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(back[i] == doctest::Approx(w[i]).epsilon(1e-12));
}

TEST_CASE("finite differences: second-order convergence and symmetry") {
    std::vector<double> errs;
    for (int M : {15, 31, 63, 127}) {
        const SpatialOperator A = SpatialOperator::finite_difference(M);
        const GridFunction f = A.sample([](double x) { return space::eigenfunction(1, x); });
        const GridFunction af = A.apply(f);
        double worst = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            worst = std::max(worst, std::abs(af[i] + space::eigenvalue(1) * f[i]));
        errs.push_back(worst);
    }
    for (double r : testsupport::observed_rates(errs)) CHECK(r == doctest::Approx(2.0).epsilon(0.025));

    const SpatialOperator A = SpatialOperator::finite_difference(21);
    testsupport::Lcg rng(11);
    GridFunction w(A.size()), v(A.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = rng.uniform(-1.0, 1.0);
        v[i] = rng.uniform(-1.0, 1.0);
    }
    const GridFunction aw = A.apply(w), av = A.apply(v);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        lhs += A.spacing() * aw[i] * v[i];
        rhs += A.spacing() * w[i] * av[i];
    }
    CHECK(std::abs(lhs - rhs) < 1e-13 * std::max(1.0, std::abs(lhs)));
}

TEST_CASE("chebyshev: eigenfunction identity and spectral decay") {
    std::vector<double> residuals;
    for (int M : {8, 16, 32}) {
        const SpatialOperator A = SpatialOperator::chebyshev(M);
        const GridFunction f = A.sample([](double x) { return space::eigenfunction(1, x); });
        const GridFunction af = A.apply(f);
        double worst = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            worst = std::max(worst, std::abs(af[i] + space::eigenvalue(1) * f[i]));
        residuals.push_back(worst);
    }
    CHECK(residuals[1] < 1e-10);
    CHECK(residuals[2] < 1e-10);
    // faster-than-algebraic decay down to the rounding floor
    for (std::size_t i = 0; i + 1 < residuals.size(); ++i) {
        if (residuals[i] > 1e-12) CHECK(residuals[i + 1] < residuals[i] / 10.0);
    }
}

TEST_CASE("chebyshev: shifted solve against the eigenfunction") {
    const SpatialOperator A = SpatialOperator::chebyshev(16);
    const double lam = space::eigenvalue(1);
    const GridFunction phi = A.sample([](double x) { return space::eigenfunction(1, x); });
    GridFunction rhs(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) rhs[i] = (1.0 + lam) * phi[i];
    const GridFunction sol = A.solve_shifted(1.0, rhs);
    for (std::size_t i = 0; i < phi.size(); ++i)
        CHECK(std::abs(sol[i] - phi[i]) < 1e-9);
}

TEST_CASE("chebyshev: interior Clenshaw-Curtis norm") {
    const SpatialOperator A = SpatialOperator::chebyshev(32);
    const GridFunction one(A.size(), 1.0);
    CHECK(A.l2_norm(one) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
    CHECK(A.nodal_norm(one) == doctest::Approx(std::sqrt(static_cast<double>(A.size()))));
    // nodes ascending and interior
    for (std::size_t i = 0; i < A.size(); ++i) {
        CHECK(A.nodes()[i] > -1.0);
        CHECK(A.nodes()[i] < 1.0);
        if (i > 0) CHECK(A.nodes()[i] > A.nodes()[i - 1]);
    }
}

TEST_CASE("eigenpairs") {
    CHECK(space::eigenvalue(1) == doctest::Approx(2.4674011002723395).epsilon(1e-15));
    CHECK(space::eigenvalue(2) == doctest::Approx(std::numbers::pi * std::numbers::pi));
    const auto pairs = space::eigenpairs(4);
    REQUIRE(pairs.size() == 4);
    for (int k = 1; k <= 4; ++k) {
        CHECK(pairs[k - 1].first == space::eigenvalue(k));
        CHECK(std::abs(pairs[k - 1].second(-1.0)) < 1e-13);
        CHECK(std::abs(pairs[k - 1].second(1.0)) < 1e-13);
    }
}
