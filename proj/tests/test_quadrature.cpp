#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "b1lab/funcexpr.hpp"
#include "b1lab/quadrature.hpp"

using namespace b1lab;

TEST_CASE("gauss-legendre nodes integrate monomials on [0,1]") {
    std::vector<double> x, w;
    gauss_legendre_unit(16, x, w);
    for (int k = 0; k <= 20; ++k) {  // degree 20 < 2*16 exactness
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], k);
        CHECK(std::abs(s - 1.0 / (k + 1)) < 1e-14);
    }
}

TEST_CASE("normalized area measure oracles") {
    const DiskRule rule(128, 256);
    for (const cplx& z : rule.nodes(false)) CHECK(std::abs(z) < 1.0);

    const QuadResult one = disk_integral([](cplx) { return 1.0; }, rule);
    CHECK(std::abs(one.value - 1.0) < 1e-14);

    // closed-form polar oracles: (1/pi) int int r^k * r dr dtheta = 2/(k+2)
    const QuadResult absz = disk_integral([](cplx z) { return std::abs(z); }, rule);
    CHECK(std::abs(absz.value - 2.0 / 3.0) < 1e-10);
    const QuadResult absz2 = disk_integral([](cplx z) { return std::norm(z); }, rule);
    CHECK(std::abs(absz2.value - 0.5) < 1e-10);
}

TEST_CASE("circle means") {
    const QuadResult c = circle_mean([](cplx) { return 2.5; }, 0.7, 64);
    CHECK(c.value == doctest::Approx(2.5).epsilon(1e-15));

    const QuadResult r = circle_mean([](cplx z) { return std::abs(z); }, 0.37, 64);
    CHECK(std::abs(r.value - 0.37) < 1e-14);

    const cplx a{0.3, 0.4};
    auto sigma = [a](cplx z) { return std::abs((a - z) / (1.0 - std::conj(a) * z)); };
    CHECK(std::abs(circle_mean(sigma, 1.0, 256).value - 1.0) < 1e-12);

    CHECK_THROWS_AS(circle_mean([](cplx) { return 1.0; }, 0.0, 8), DomainError);
}

TEST_CASE("angular rule annihilates z^n for 1 <= n < M") {
    const std::size_t M = 256;
    for (std::size_t n : {std::size_t{1}, std::size_t{5}, std::size_t{100}, std::size_t{255}}) {
        const QuadResultC m = circle_mean_c(
            [n](cplx z) { return std::pow(z, static_cast<double>(n)); }, 0.9, M);
        CHECK(std::abs(m.value) < 1e-14);
    }
}

TEST_CASE("monotone weight inequality") {
    CHECK(monotone_weight_check([](double) { return 1.0; }));        // both sides 1/2
    CHECK(monotone_weight_check([](double x) { return x; }));        // 1/3 >= 1/4
    CHECK(monotone_weight_check([](double x) { return x * x; }));    // 1/4 >= 1/6
    CHECK(monotone_weight_check([](double x) { return std::exp(x); }));
    CHECK(monotone_weight_check([](double x) { return std::log1p(x); }));
}

TEST_CASE("radial rule integrates |z|^2k moments exactly") {
    const DiskRule rule(64, 128);
    for (int k = 0; k <= 30; ++k) {
        const QuadResult q = disk_integral(
            [k](cplx z) { return std::pow(std::norm(z), k); }, rule);
        CHECK(std::abs(q.value - 1.0 / (k + 1)) < 1e-13);
    }
}

TEST_CASE("doubling stability on corpus integrands") {
    const DiskRule rule(128, 256);
    // moduli of zero-free analytic integrands are smooth: near machine accuracy
    for (cplx a : {cplx{0.5, 0.2}, cplx{-0.3, 0.6}, cplx{0.0, 0.85}}) {
        const FuncExpr sigma = FuncExpr::moebius(a);
        const QuadResult smooth =
            disk_integral([&](cplx z) { return std::abs(eval_closed(sigma, z, 2)); }, rule);
        CHECK(smooth.err_est <= 1e-8 * std::max(1.0, smooth.value));
    }
    // an interior zero of f'' puts a conical kink under the absolute value;
    // convergence drops to algebraic and err_est reports it
    Rng rng(61);
    for (int it = 0; it < 6; ++it) {
        std::vector<cplx> c(3 + rng.index(10));
        for (cplx& x : c) x = rng.unit_box();
        const FuncExpr poly = FuncExpr::poly(std::move(c));
        const QuadResult kinked =
            disk_integral([&](cplx z) { return std::abs(eval_closed(poly, z, 2)); }, rule);
        CHECK(kinked.err_est <= 2e-6 * std::max(1.0, kinked.value));
    }
}

TEST_CASE("circle means of |f'| are nondecreasing in r (Hardy convexity)") {
    const FuncExpr f = FuncExpr::sum(FuncExpr::moebius(cplx{0.4, 0.3}),
                                     FuncExpr::poly({0.0, 1.0, cplx{0, 0.5}}));
    double prev = -1.0, prev_err = 0.0;
    for (double r = 0.1; r < 0.95; r += 0.1) {
        const QuadResult m =
            circle_mean([&](cplx z) { return std::abs(eval_closed(f, z, 1)); }, r, 256);
        CHECK(m.value >= prev - (m.err_est + prev_err) - 1e-12);
        prev = m.value;
        prev_err = m.err_est;
    }
}

TEST_CASE("non-finite integrands are rejected with the node named") {
    const DiskRule rule(8, 16);
    CHECK_THROWS_AS(disk_integral([](cplx z) { return 1.0 / (std::abs(z) - std::abs(z)); }, rule),
                    CorpusViolation);
}
