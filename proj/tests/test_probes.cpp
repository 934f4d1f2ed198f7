#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "b1lab/probes.hpp"

using namespace b1lab;

namespace {
const FuncExpr kZ = FuncExpr::poly({0.0, 1.0});
const FuncExpr kZ2 = FuncExpr::poly({0.0, 0.0, 1.0});
}  // namespace

TEST_CASE("corpus generation is deterministic in the seed") {
    const Corpus a = Corpus::standard(7);
    const Corpus b = Corpus::standard(7);
    REQUIRE(a.funcs.size() == b.funcs.size());
    for (std::size_t k = 0; k < a.funcs.size(); ++k) CHECK(a.funcs[k] == b.funcs[k]);
    const Corpus c = Corpus::standard(8);
    bool any_diff = false;
    for (std::size_t k = 0; k < std::min(a.funcs.size(), c.funcs.size()); ++k)
        if (!(a.funcs[k] == c.funcs[k])) any_diff = true;
    CHECK(any_diff);
}

TEST_CASE("operator norm lower bounds") {
    const DiskRule rule(64, 128);
    const AGrid agrid = AGrid::defaults();
    Corpus corpus;
    corpus.funcs = {FuncExpr::poly({1.0}), kZ, kZ2, FuncExpr::moebius(0.5)};

    // constant multiplication symbol: every ratio equals |c|
    const BoundReport mc = opnorm_lower(OperatorSpec::mg(FuncExpr::constant(cplx{0, -2})), corpus,
                                        64, rule, agrid);
    CHECK(std::abs(mc.lower - 2.0) < 1e-10);
    CHECK(*mc.upper >= mc.lower);

    // T_z applied to 1 gives z, so the lower bound reaches ||z||_B1 = 1
    const BoundReport tz = opnorm_lower(OperatorSpec::tg(kZ), corpus, 64, rule, agrid);
    CHECK(tz.lower >= 1.0 - 1e-10);
    CHECK(tz.lower <= *tz.upper * (1.0 + 1e-6));
    CHECK(tz.constants.at("symbol_shifted_b1") == doctest::Approx(1.0).epsilon(1e-9));

    // the differentiation operator has no theorem constant and its ratios grow
    Corpus lo, hi;
    lo.funcs = {FuncExpr::poly({0, 0, 0, 0, 1.0})};                          // z^4
    hi.funcs = {FuncExpr::poly(std::vector<cplx>(17, cplx{0.0, 0.0}))};      // placeholder
    {
        std::vector<cplx> c(17, cplx{0.0, 0.0});
        c[16] = 1.0;
        hi.funcs = {FuncExpr::poly(std::move(c))};
    }
    const BoundReport dlo = opnorm_lower(OperatorSpec::diff(), lo, 64, rule, agrid);
    const BoundReport dhi = opnorm_lower(OperatorSpec::diff(), hi, 64, rule, agrid);
    CHECK(!dlo.upper.has_value());
    CHECK(dhi.lower > dlo.lower);
    // hand values: ||D z^k|| / ||z^k|| = k (k-2)/(k-1) for k >= 3
    CHECK(dlo.lower == doctest::Approx(4.0 * 2.0 / 3.0).epsilon(1e-8));
    CHECK(dhi.lower == doctest::Approx(16.0 * 14.0 / 15.0).epsilon(1e-8));
}

TEST_CASE("dilation decay table") {
    const DiskRule rule(64, 128);
    const auto exact = tg_essnorm_decay(FuncExpr::poly({1.0, 2.0, 3.0}), {1.0}, rule);
    CHECK(exact.front().value == doctest::Approx(0.0).epsilon(1e-14));

    // g = z^2, r = 1/2: ||(1 - 1/4) z^2||_B1 = 0.75 * 2
    const auto half = tg_essnorm_decay(kZ2, {0.5}, rule);
    CHECK(half.front().value == doctest::Approx(1.5).epsilon(1e-10));

    const auto sig = tg_essnorm_decay(FuncExpr::moebius(0.7), {0.9, 0.99, 0.999}, rule);
    CHECK(sig[0].value > sig[1].value);
    CHECK(sig[1].value > sig[2].value);
    CHECK(sig[2].value < 0.1 * sig[0].value);
}

TEST_CASE("essential-norm witnesses for the companion operator") {
    const DiskRule rule(64, 128);
    const IgEssReport c = ig_essnorm_lower(FuncExpr::constant(cplx{0.3, -0.4}),
                                           {cplx{0.5, 0.0}, cplx{0.0, 0.9}}, rule);
    CHECK(c.value == doctest::Approx(0.5).epsilon(1e-12));

    std::vector<cplx> a_seq;
    for (int n = 1; n <= 8; ++n) a_seq.emplace_back(1.0 - std::pow(2.0, -n), 0.0);
    const IgEssReport zrep = ig_essnorm_lower(kZ, a_seq, rule);
    CHECK(zrep.value == doctest::Approx(1.0 - std::pow(2.0, -8)).epsilon(1e-12));

    std::vector<cplx> diag;
    for (double rad : {0.9, 0.99, 0.999}) diag.push_back(std::polar(rad, kPi / 4.0));
    const IgEssReport z2rep = ig_essnorm_lower(kZ2, diag, rule);
    CHECK(z2rep.value == doctest::Approx(0.999 * 0.999).epsilon(1e-12));
    // witness norms approach 8/pi, the normalization caveat of the report
    CHECK(z2rep.rows.back().witness_norm > 2.0);
    CHECK(z2rep.rows.back().witness_norm < 3.0);
}

TEST_CASE("analytic witness norm matches quadrature away from the boundary") {
    const DiskRule rule(128, 256);
    for (double a : {0.3, 0.5, 0.7}) {
        const FuncExpr fn = FuncExpr::sum(FuncExpr::moebius(a), FuncExpr::constant(-a));
        const double quad = norm_b1(fn, rule).value;
        CHECK(shifted_atom_b1_norm(a) == doctest::Approx(quad).epsilon(1e-7));
    }
    // f_{0.999} concentrates past the rule's resolution; the series value
    // stays finite near 8/pi
    CHECK(shifted_atom_b1_norm(0.999) > 2.4);
    CHECK(shifted_atom_b1_norm(0.999) < 2.7);
}

TEST_CASE("winding numbers count preimages") {
    CHECK(winding_number(kZ, cplx{0.5, 0.0}, 256) == 1);
    CHECK(winding_number(kZ, cplx{2.0, 0.0}, 256) == 0);
    CHECK(winding_number(kZ2, cplx{0.25, 0.0}, 256) == 2);
    CHECK_THROWS_AS(winding_number(kZ, cplx{1.0, 0.0}, 256), DomainError);
}

TEST_CASE("reciprocal series against the geometric oracle") {
    // 1/(z - 2) = -(1/2) (1 + z/2 + z^2/4 + ...)
    const ReciprocalSeries rec = reciprocal_series(kZ, cplx{2.0, 0.0}, 32);
    CHECK(!rec.grew);
    CHECK(std::abs(rec.series.coeff(0) - cplx{-0.5, 0.0}) < 1e-12);
    CHECK(std::abs(rec.series.coeff(1) - cplx{-0.25, 0.0}) < 1e-12);
    CHECK(std::abs(rec.series.coeff(2) - cplx{-0.125, 0.0}) < 1e-12);
}

TEST_CASE("resolvent portraits match the winding dichotomy for g = z") {
    const DiskRule rule(16, 32);
    Corpus corpus;
    corpus.funcs = {FuncExpr::poly({1.0}), kZ, FuncExpr::moebius(0.5)};
    PortraitOptions opt;
    opt.N = 32;
    opt.winding_M = 512;

    const Portrait inside =
        resolvent_portrait(OpKind::Mg, kZ, 0.0, 0.5, 0.0, 0.5, 0.5, corpus, rule, opt);
    for (const PortraitCell& c : inside.cells) {
        CHECK(c.winding == 1);
        CHECK(c.flag == CellFlag::Blowup);
    }

    const Portrait outside =
        resolvent_portrait(OpKind::Mg, kZ, 1.5, 2.0, 0.0, 0.0, 0.5, corpus, rule, opt);
    for (const PortraitCell& c : outside.cells) {
        CHECK(c.winding == 0);
        CHECK(c.flag == CellFlag::Finite);
        CHECK(c.resolvent_lb < 1e3);
    }

    const Portrait origin =
        resolvent_portrait(OpKind::Ig, kZ, 0.0, 0.0, 0.0, 0.0, 0.1, corpus, rule, opt);
    REQUIRE(origin.cells.size() == 1);
    CHECK(origin.cells.front().flag == CellFlag::Blowup);
}

TEST_CASE("resolvent formula solves f - I_g f / lambda = h") {
    // R_lambda h = I_{(1 - g/lambda)^{-1}} h + h(0); feeding the result back
    // through the defining equation must reproduce h up to truncation noise
    const std::size_t N = 48;
    const cplx lambda{2.0, 0.5};
    const TaylorSeries gs = to_series(kZ, N).series;
    const ReciprocalSeries rec = reciprocal_series(kZ, lambda, N);
    const TaylorSeries hsym = scale(rec.series, -lambda);  // (1 - g/lambda)^{-1}

    for (const TaylorSeries& h : {TaylorSeries({1.0, 0.5, cplx{0, 1}}), moebius_series(0.4, N)}) {
        TaylorSeries f = apply_series(OpKind::Ig, &hsym, h, N);
        std::vector<cplx> c = f.coeffs();
        c[0] += h.coeff(0);
        f = TaylorSeries(std::move(c));

        const TaylorSeries igf = apply_series(OpKind::Ig, &gs, f, N);
        const TaylorSeries back = sub(f, scale(igf, 1.0 / lambda));
        CHECK(max_coeff_diff(back, h.truncated(N)) < 1e-10);
    }
}

TEST_CASE("product-constant search stays under the ceiling and finds the monomial pair") {
    const DiskRule search_rule(16, 32);
    const DiskRule final_rule(64, 128);
    const SearchReport oracle = product_constant_poly2_oracle(search_rule, final_rule);
    CHECK(oracle.best_ratio >= 2.0 - 1e-6);   // attained at f = g = z
    CHECK(oracle.best_ratio <= oracle.ceiling);

    const SearchReport search =
        product_constant_search(31, 4, SearchFamily::Poly2, search_rule, final_rule);
    CHECK(search.best_ratio <= search.ceiling);
    CHECK(search.best_ratio >= 1.5);

    const SearchReport atoms =
        product_constant_search(32, 2, SearchFamily::Atoms3, search_rule, final_rule);
    CHECK(atoms.best_ratio <= atoms.ceiling);
    CHECK(atoms.best_ratio > 0.5);
}

TEST_CASE("composition boundedness probe") {
    const DiskRule rule(48, 96);
    const AGrid agrid = AGrid::defaults();

    // phi = z: the probe reduces to sup_a ||sigma_a||_B1 over the grid
    const BoundReport idp = cphi_bounded_probe(kZ, agrid, rule);
    CHECK(idp.lower > 1.0);
    CHECK(idp.lower < 10.0);
    CHECK(idp.upper.has_value());
    CHECK(idp.lower <= *idp.upper);

    // phi = 0: sigma_a o phi is the constant a
    const BoundReport zp = cphi_bounded_probe(FuncExpr::constant(cplx{0.0, 0.0}), agrid, rule);
    CHECK(zp.lower == doctest::Approx(0.99).epsilon(1e-9));

    const BoundReport sq = cphi_bounded_probe(kZ2, agrid, rule);
    CHECK(sq.lower < 20.0);
}

TEST_CASE("neumann resolvent tails vanish by K = 64") {
    const DiskRule rule(32, 64);
    for (cplx lam : {cplx{0.5, 0.0}, cplx{1.0, 1.0}, cplx{-2.0, 0.0}}) {
        const double tail = neumann_tail(kZ2, lam, TaylorSeries({1.0}), 64, 64, rule);
        CHECK(tail < 1e-10);
    }
}
