#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "b1lab/funcexpr.hpp"

using namespace b1lab;

namespace {

std::vector<FuncExpr> sample_expressions() {
    std::vector<FuncExpr> out;
    out.push_back(FuncExpr::constant(cplx{2.0, -1.0}));
    out.push_back(FuncExpr::poly({1.0, 0.0, 2.0}));
    out.push_back(FuncExpr::moebius(cplx{0.5, 0.0}));
    out.push_back(FuncExpr::moebius(cplx{0.3, 0.4}));
    out.push_back(FuncExpr::atoms({{cplx{1.0, 0.0}, cplx{0.3, 0.4}}, {cplx{-2.0, 0.0}, cplx{0.1, 0.0}}}));
    out.push_back(FuncExpr::sum(FuncExpr::poly({1.0}), FuncExpr::poly({0.0, 1.0})));
    out.push_back(FuncExpr::prod(FuncExpr::moebius(cplx{0.5, 0.0}), FuncExpr::poly({0.0, 1.0, 1.0})));
    out.push_back(FuncExpr::dilate(0.5, FuncExpr::moebius(cplx{0.0, 0.6})));
    // origin-fixing composition: series path
    out.push_back(FuncExpr::compose(FuncExpr::moebius(cplx{0.4, 0.1}),
                                    FuncExpr::poly({0.0, 0.7, 0.3})));
    // inner part not fixing the origin: circle-projection path
    out.push_back(FuncExpr::compose(FuncExpr::moebius(cplx{0.5, 0.0}),
                                    FuncExpr::moebius(cplx{0.3, 0.0})));
    out.push_back(FuncExpr::compose(FuncExpr::poly({1.0, 1.0, 0.5}),
                                    FuncExpr::dilate(0.9, FuncExpr::moebius(cplx{0.2, 0.3}))));
    return out;
}

}  // namespace

TEST_CASE("parser handles the literal grammar") {
    CHECK(parse("poly:1,0,2") == FuncExpr::poly({1.0, 0.0, 2.0}));
    CHECK(parse("moebius:0.5+0i") == FuncExpr::moebius(cplx{0.5, 0.0}));
    // unicode minus, as emitted by text processors
    CHECK(parse("atoms:1*0.3+0.4i;\xE2\x88\x92" "2*0.1") ==
          FuncExpr::atoms({{cplx{1.0, 0.0}, cplx{0.3, 0.4}}, {cplx{-2.0, 0.0}, cplx{0.1, 0.0}}}));
    CHECK(parse("const:3-2i") == FuncExpr::constant(cplx{3.0, -2.0}));
    CHECK(parse("const:1.5i") == FuncExpr::constant(cplx{0.0, 1.5}));
    CHECK(parse("dilate:0.5:moebius:0.1") == FuncExpr::dilate(0.5, FuncExpr::moebius(0.1)));
    CHECK(parse("poly:1 + poly:0,1") ==
          FuncExpr::sum(FuncExpr::poly({1.0}), FuncExpr::poly({0.0, 1.0})));
    CHECK(parse("poly:1,1 * moebius:0.2") ==
          FuncExpr::prod(FuncExpr::poly({1.0, 1.0}), FuncExpr::moebius(0.2)));
    CHECK(parse("prod(poly:1,1,moebius:0.2)") ==
          FuncExpr::prod(FuncExpr::poly({1.0, 1.0}), FuncExpr::moebius(0.2)));
    CHECK(parse("compose(moebius:0.5,poly:0,1)") ==
          FuncExpr::compose(FuncExpr::moebius(0.5), FuncExpr::poly({0.0, 1.0})));
    CHECK(parse("moebius:0.5 \xE2\x88\x98 poly:0,0,1") ==
          FuncExpr::compose(FuncExpr::moebius(0.5), FuncExpr::poly({0.0, 0.0, 1.0})));
    CHECK(parse("(poly:1)") == FuncExpr::poly({1.0}));
    CHECK(parse("poly:1,2 - const:1") ==
          FuncExpr::sum(FuncExpr::poly({1.0, 2.0}),
                        FuncExpr::prod(FuncExpr::constant(-1.0), FuncExpr::constant(1.0))));
}

TEST_CASE("parser reports byte offsets and domain violations") {
    try {
        parse("poly:1,,2");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 6);  // the comma that cannot start anything
    }
    CHECK_THROWS_AS(parse("moebius:1.2"), DomainError);
    CHECK_THROWS_AS(parse("dilate:1.5:poly:1"), DomainError);
    CHECK_THROWS_AS(parse("compose(poly:0,1,poly:0,2)"), DomainError);  // inner not a self-map
    CHECK_THROWS_AS(parse("garbage"), ParseError);
    CHECK_THROWS_AS(parse("poly:1 poly:2"), ParseError);  // trailing input
}

TEST_CASE("closed-form evaluation matches hand values") {
    CHECK(std::abs(eval_closed(FuncExpr::moebius(0.6), 0.0, 1) - (-0.64)) < 1e-15);
    CHECK(std::abs(eval_closed(FuncExpr::poly({0, 0, 1}), 0.5, 2) - 2.0) < 1e-15);
    CHECK(std::abs(eval_closed(FuncExpr::atoms({{1.0, 0.5}}), 0.5, 0)) < 1e-15);
    CHECK_THROWS_AS(eval_closed(FuncExpr::poly({1}), 0.0, 3), DomainError);
    CHECK_THROWS_AS(eval_closed(FuncExpr::poly({1}), cplx{1.1, 0}, 0), DomainError);
}

TEST_CASE("to_series matches known expansions") {
    const SeriesApprox p = to_series(FuncExpr::poly({1.0, 2.0}), 5);
    CHECK(p.series.degree() == 5);
    CHECK(std::abs(p.series.coeff(0) - 1.0) < 1e-15);
    CHECK(std::abs(p.series.coeff(1) - 2.0) < 1e-15);
    CHECK(p.tail_bound < 1e-9);

    const SeriesApprox m = to_series(FuncExpr::moebius(0.5), 3);
    const double expect[] = {0.5, -0.75, -0.375, -0.1875};
    for (std::size_t n = 0; n <= 3; ++n) CHECK(std::abs(m.series.coeff(n) - expect[n]) < 1e-14);

    const SeriesApprox s =
        to_series(FuncExpr::sum(FuncExpr::poly({1.0}), FuncExpr::poly({0.0, 1.0})), 4);
    CHECK(std::abs(s.series.coeff(0) - 1.0) < 1e-15);
    CHECK(std::abs(s.series.coeff(1) - 1.0) < 1e-15);
}

TEST_CASE("closed-form and series evaluation agree within the reported tail") {
    for (const FuncExpr& e : sample_expressions()) {
        const SeriesApprox ap = to_series(e, 64);
        double worst = 0.0;
        for (std::size_t j = 0; j < 512; ++j) {
            const cplx z = std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / 512.0);
            worst = std::max(worst, std::abs(eval_closed(e, z, 0) - eval(ap.series, z)));
        }
        CAPTURE(render(e)); CAPTURE(worst); CAPTURE(ap.tail_bound);
        CHECK(worst <= ap.tail_bound);
    }
}

TEST_CASE("derivatives agree with central finite differences") {
    const double h = 1e-5;
    for (const FuncExpr& e : sample_expressions()) {
        for (unsigned order : {1u, 2u}) {
            for (double rad : {0.0, 0.3, 0.6}) {
                for (double th : {0.1, 2.0, 4.5}) {
                    const cplx z = std::polar(rad, th);
                    const cplx fd = (eval_closed(e, z + h, order - 1) -
                                     eval_closed(e, z - h, order - 1)) /
                                    (2.0 * h);
                    const cplx ex = eval_closed(e, z, order);
                    const double scale = std::max(1.0, std::abs(ex));
                    CAPTURE(render(e)); CAPTURE(order);
                    CHECK(std::abs(fd - ex) <= 1e-6 * scale);
                }
            }
        }
    }
}

TEST_CASE("parse o render is the identity") {
    for (const FuncExpr& e : sample_expressions()) {
        CAPTURE(render(e));
        CHECK(parse(render(e)) == e);
    }
}

namespace {

// random trees; composition inner parts are drawn from shapes that certainly
// map the disk into itself
FuncExpr random_expr(Rng& rng, int depth) {
    if (depth == 0) {
        switch (rng.index(4)) {
            case 0: {
                std::vector<cplx> c(1 + rng.index(8));
                for (cplx& x : c) x = rng.unit_box();
                return FuncExpr::poly(std::move(c));
            }
            case 1:
                return FuncExpr::moebius(rng.disk(0.8));
            case 2: {
                std::vector<std::pair<cplx, cplx>> at(1 + rng.index(3));
                for (auto& [w, a] : at) {
                    w = rng.unit_box();
                    a = rng.disk(0.8);
                }
                return FuncExpr::atoms(std::move(at));
            }
            default:
                return FuncExpr::constant(rng.unit_box());
        }
    }
    switch (rng.index(4)) {
        case 0:
            return FuncExpr::sum(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 1:
            return FuncExpr::prod(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 2:
            return FuncExpr::dilate(rng.uniform(0.0, 1.0), random_expr(rng, depth - 1));
        default: {
            FuncExpr inner = rng.index(2) == 0
                                 ? FuncExpr::dilate(rng.uniform(0.3, 0.95),
                                                    FuncExpr::moebius(rng.disk(0.7)))
                                 : FuncExpr::poly({0.0, 0.5, rng.uniform(0.0, 0.5)});
            return FuncExpr::compose(random_expr(rng, depth - 1), std::move(inner));
        }
    }
}

}  // namespace

TEST_CASE("random trees: roundtrip, series tails and derivative rules") {
    Rng rng(505);
    for (int it = 0; it < 40; ++it) {
        const FuncExpr e = random_expr(rng, 1 + static_cast<int>(rng.index(2)));
        CAPTURE(render(e));
        CHECK(parse(render(e)) == e);

        const SeriesApprox ap = to_series(e, 64);
        double worst = 0.0;
        for (std::size_t j = 0; j < 128; ++j) {
            const cplx z = std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / 128.0);
            worst = std::max(worst, std::abs(eval_closed(e, z, 0) - eval(ap.series, z)));
        }
        CAPTURE(worst);
        CAPTURE(ap.tail_bound);
        CHECK(worst <= ap.tail_bound);

        const cplx z = rng.disk(0.6);
        const double h = 1e-5;
        const cplx fd =
            (eval_closed(e, z + h, 0) - eval_closed(e, z - h, 0)) / (2.0 * h);
        const cplx ex = eval_closed(e, z, 1);
        CHECK(std::abs(fd - ex) <= 1e-5 * std::max(1.0, std::abs(ex)));
    }
}

TEST_CASE("polynomial degree detection") {
    CHECK(polynomial_degree(FuncExpr::poly({1, 2, 3})) == 2);
    CHECK(polynomial_degree(FuncExpr::prod(FuncExpr::poly({0, 1}), FuncExpr::poly({0, 1, 1}))) ==
          3);
    CHECK(!polynomial_degree(FuncExpr::moebius(0.5)).has_value());
    CHECK(polynomial_degree(FuncExpr::compose(FuncExpr::poly({0, 0, 1}),
                                              FuncExpr::poly({0, 0, 1}))) == 4);
}
