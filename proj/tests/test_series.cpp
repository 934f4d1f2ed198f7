#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "b1lab/taylor.hpp"

using namespace b1lab;

namespace {

TaylorSeries make(std::initializer_list<cplx> cs) { return TaylorSeries(std::vector<cplx>(cs)); }

void check_coeffs(const TaylorSeries& s, std::initializer_list<cplx> expect, double tol = 1e-14) {
    std::size_t n = 0;
    for (cplx e : expect) {
        CAPTURE(n);
        CHECK(std::abs(s.coeff(n) - e) <= tol);
        ++n;
    }
    for (; n <= s.degree(); ++n) CHECK(std::abs(s.coeff(n)) <= tol);
}

// oracle: coefficients of (a - z) * sum_k conj(a)^k z^k by direct convolution
std::vector<cplx> moebius_oracle(cplx a, std::size_t N) {
    std::vector<cplx> geo(N + 1);
    cplx pw{1.0, 0.0};
    for (std::size_t k = 0; k <= N; ++k) {
        geo[k] = pw;
        pw *= std::conj(a);
    }
    std::vector<cplx> out(N + 1, cplx{0.0, 0.0});
    for (std::size_t k = 0; k <= N; ++k) {
        out[k] += a * geo[k];
        if (k + 1 <= N) out[k + 1] -= geo[k];
    }
    return out;
}

// oracle: exact polynomial composition s(t(z)), no truncation, no origin rule
TaylorSeries compose_poly_oracle(const TaylorSeries& s, const TaylorSeries& t) {
    TaylorSeries acc({s.coeff(s.degree())});
    for (std::size_t n = s.degree(); n-- > 0;) {
        acc = product_full(acc, t);
        std::vector<cplx> c = acc.coeffs();
        c[0] += s.coeff(n);
        acc = TaylorSeries(std::move(c));
    }
    return acc;
}

}  // namespace

TEST_CASE("eval uses Horner and stays on the closed disk") {
    CHECK(std::abs(eval(make({1, 2, 1}), 1.0) - 4.0) < 1e-15);
    CHECK(std::abs(eval(make({0, 1}), cplx{0, 1}) - cplx{0, 1}) < 1e-15);
    CHECK_THROWS_AS(eval(make({1}), cplx{1.5, 0}), DomainError);

    // sigma_{1/2}(0.3) = (0.5-0.3)/(1-0.15)
    const TaylorSeries s = moebius_series(0.5, 40);
    CHECK(std::abs(eval(s, 0.3) - 0.2 / 0.85) < 1e-12);
}

TEST_CASE("derivative and antiderivative coefficient rules") {
    check_coeffs(derivative(make({1, 2, 1})), {2, 2});
    check_coeffs(derivative(make({cplx{3, 1}})), {0});
    check_coeffs(derivative(make({0, 0, 0, 1})), {0, 0, 3});

    check_coeffs(antiderivative(make({1})), {0, 1});
    check_coeffs(antiderivative(make({0, 2})), {0, 0, 1});

    const TaylorSeries s = make({3, 1, 4});
    CHECK(max_coeff_diff(derivative(antiderivative(s)), s) < 1e-15);
}

TEST_CASE("cauchy product with truncation flag") {
    check_coeffs(product(make({1, 1}), make({1, 1}), 4), {1, 2, 1});
    const TaylorSeries s = make({2, cplx{0, 1}, 5});
    CHECK(max_coeff_diff(product(s, make({1}), 7), s) == 0.0);
    check_coeffs(product(make({1, 1, 1}), make({1, -1}), 4), {1, 0, 0, -1});

    bool truncated = false;
    product(make({1, 1, 1}), make({1, 1, 1}), 2, &truncated);
    CHECK(truncated);
    product(make({1, 1, 1}), make({1, 1, 1}), 4, &truncated);
    CHECK(!truncated);
}

TEST_CASE("composition fixes the origin") {
    const TaylorSeries t = make({0, 0.5, 0.25});
    CHECK(max_coeff_diff(compose(make({0, 1}), t, 4), t) < 1e-15);
    check_coeffs(compose(make({0, 0, 1}), make({0, 0, 1}), 4), {0, 0, 0, 0, 1});
    check_coeffs(compose(make({1, 1}), make({0, 0.5}), 2), {1, 0.5});
    CHECK_THROWS_AS(compose(make({0, 1}), make({0.1, 1}), 4), DomainError);
}

TEST_CASE("moebius series coefficients") {
    check_coeffs(moebius_series(0.0, 3), {0, -1, 0, 0});
    check_coeffs(moebius_series(0.5, 3), {0.5, -0.75, -0.375, -0.1875});

    for (cplx a : {cplx{0.5, 0.0}, cplx{0.3, 0.4}, cplx{-0.2, 0.7}}) {
        const auto oracle = moebius_oracle(a, 24);
        const TaylorSeries s = moebius_series(a, 24);
        for (std::size_t n = 0; n <= 24; ++n) CHECK(std::abs(s.coeff(n) - oracle[n]) < 1e-14);
    }

    CHECK(std::abs(eval(moebius_series(cplx{0.3, 0.4}, 64), cplx{0.3, 0.4})) < 1e-12);
    CHECK_THROWS_AS(moebius_series(cplx{1.0, 0.0}, 4), DomainError);
}

TEST_CASE("dilation scales coefficients geometrically") {
    const TaylorSeries s = make({1, 2, 4});
    CHECK(max_coeff_diff(dilate(s, 1.0), s) == 0.0);
    check_coeffs(dilate(s, 0.0), {1, 0, 0});
    check_coeffs(dilate(s, 0.5), {1, 1, 1});
    CHECK_THROWS_AS(dilate(s, 1.5), DomainError);
    CHECK_THROWS_AS(dilate(s, -0.1), DomainError);
}

TEST_CASE("linearity and calculus identities on random series") {
    Rng rng(42);
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<cplx> ac(1 + rng.index(16)), bc(1 + rng.index(16));
        for (cplx& c : ac) c = rng.unit_box();
        for (cplx& c : bc) c = rng.unit_box();
        const TaylorSeries a(ac), b(bc);
        const cplx w = rng.unit_box();

        CHECK(max_coeff_diff(derivative(add(scale(a, w), b)),
                             add(scale(derivative(a), w), derivative(b))) < 1e-13);
        CHECK(max_coeff_diff(antiderivative(add(a, b)), add(antiderivative(a), antiderivative(b))) <
              1e-13);

        // antiderivative then derivative restores; the reverse drops a_0
        CHECK(max_coeff_diff(derivative(antiderivative(a)), a) < 1e-13);
        TaylorSeries headless = sub(a, TaylorSeries({a.coeff(0)}));
        CHECK(max_coeff_diff(antiderivative(derivative(a)), headless) < 1e-13);

        // commutative/associative within the shared truncation budget
        const std::size_t N = a.degree() + b.degree();
        CHECK(max_coeff_diff(product(a, b, N), product(b, a, N)) < 1e-13);
        std::vector<cplx> cc(1 + rng.index(8));
        for (cplx& c : cc) c = rng.unit_box();
        const TaylorSeries c(cc);
        const std::size_t N3 = N + c.degree();
        CHECK(max_coeff_diff(product(product(a, b, N3), c, N3), product(a, product(b, c, N3), N3)) <
              1e-12);
    }
}

TEST_CASE("composition associativity within truncation budget") {
    Rng rng(7);
    for (int iter = 0; iter < 20; ++iter) {
        std::vector<cplx> sc(1 + rng.index(4)), tc(1 + rng.index(4)), uc(1 + rng.index(4));
        for (cplx& c : sc) c = rng.unit_box();
        for (cplx& c : tc) c = rng.unit_box();
        for (cplx& c : uc) c = rng.unit_box();
        tc[0] = 0.0;
        uc[0] = 0.0;
        const TaylorSeries s(sc), t(tc), u(uc);
        const std::size_t N = 32;  // generous for degrees <= 3 composed twice
        CHECK(max_coeff_diff(compose(compose(s, t, N), u, N), compose(s, compose(t, u, N), N)) <
              1e-10);
    }
}

TEST_CASE("moebius involution: sigma_a o sigma_a is the identity up to geometric tails") {
    const std::size_t N = 64;
    for (cplx a : {cplx{0.5, 0.0}, cplx{0.3, 0.4}, cplx{0.0, 0.7}}) {
        const TaylorSeries s = moebius_series(a, N);
        // the origin-fixing composition cannot take sigma_a as inner part, so
        // the check runs through an exact polynomial-composition oracle
        const TaylorSeries comp = compose_poly_oracle(s, s);
        const double bound = 10.0 * std::pow(std::abs(a), static_cast<double>(N) / 2.0);
        for (std::size_t n = 0; n <= N / 2; ++n) {
            const cplx expect = n == 1 ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
            CAPTURE(a); CAPTURE(n);
            CHECK(std::abs(comp.coeff(n) - expect) <= bound);
        }
    }
}
