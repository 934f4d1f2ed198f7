#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "b1lab/operators.hpp"

using namespace b1lab;

namespace {

TaylorSeries make(std::initializer_list<cplx> cs) { return TaylorSeries(std::vector<cplx>(cs)); }

const FuncExpr kZ = FuncExpr::poly({0.0, 1.0});
const FuncExpr kZ2 = FuncExpr::poly({0.0, 0.0, 1.0});

}  // namespace

TEST_CASE("apply matches the defining integrals on monomials") {
    const TaylorSeries one = make({1});

    const TaylorSeries tz1 = apply(OperatorSpec::tg(kZ), one, 8);
    CHECK(std::abs(tz1.coeff(1) - 1.0) < 1e-15);
    CHECK(std::abs(tz1.coeff(0)) + std::abs(tz1.coeff(2)) < 1e-15);

    const TaylorSeries tz2 = apply(OperatorSpec::tg(kZ2), one, 8);
    CHECK(std::abs(tz2.coeff(2) - 1.0) < 1e-15);

    const TaylorSeries p1 = apply(OperatorSpec::p(), one, 8);
    CHECK(std::abs(p1.coeff(1) - 2.0) < 1e-15);

    const TaylorSeries ig = apply(OperatorSpec::ig(kZ), make({0, 1}), 8);
    CHECK(std::abs(ig.coeff(2) - 0.5) < 1e-15);

    const TaylorSeries diffed = apply(OperatorSpec::diff(), make({1, 2, 3}), 8);
    CHECK(max_coeff_diff(diffed, make({2, 6})) < 1e-15);
}

TEST_CASE("apply is linear in f") {
    Rng rng(5);
    const OperatorSpec ops[] = {OperatorSpec::tg(kZ2), OperatorSpec::ig(kZ),
                                OperatorSpec::mg(FuncExpr::moebius(0.5)), OperatorSpec::diff(),
                                OperatorSpec::tz(), OperatorSpec::p()};
    for (const OperatorSpec& op : ops) {
        std::vector<cplx> ac(5), bc(7);
        for (cplx& c : ac) c = rng.unit_box();
        for (cplx& c : bc) c = rng.unit_box();
        const TaylorSeries a(ac), b(bc);
        const cplx w = rng.unit_box();
        const TaylorSeries lhs = apply(op, add(scale(a, w), b), 16);
        const TaylorSeries rhs = add(scale(apply(op, a, 16), w), apply(op, b, 16));
        CHECK(max_coeff_diff(lhs, rhs) < 1e-13);
    }
}

TEST_CASE("Tg and Ig produce primitives vanishing at 0") {
    Rng rng(6);
    for (int it = 0; it < 10; ++it) {
        std::vector<cplx> fc(1 + rng.index(10));
        for (cplx& c : fc) c = rng.unit_box();
        const TaylorSeries f(fc);
        CHECK(std::abs(apply(OperatorSpec::tg(kZ2), f, 16).coeff(0)) == 0.0);
        CHECK(std::abs(apply(OperatorSpec::ig(kZ2), f, 16).coeff(0)) == 0.0);
    }
}

TEST_CASE("volterra inverse: D T_z = id, T_z D = id - evaluation at 0") {
    Rng rng(7);
    for (int it = 0; it < 20; ++it) {
        std::vector<cplx> fc(1 + rng.index(20));
        for (cplx& c : fc) c = rng.unit_box();
        const TaylorSeries f(fc);
        const std::size_t N = f.degree() + 2;
        CHECK(max_coeff_diff(apply(OperatorSpec::diff(), apply(OperatorSpec::tz(), f, N), N), f) <
              1e-13);
        const TaylorSeries tzd = apply(OperatorSpec::tz(), apply(OperatorSpec::diff(), f, N), N);
        CHECK(max_coeff_diff(tzd, sub(f, TaylorSeries({f.coeff(0)}))) < 1e-13);
    }
}

TEST_CASE("P equals the conjugated multiplication D M_z T_z") {
    Rng rng(8);
    for (int it = 0; it < 20; ++it) {
        std::vector<cplx> fc(1 + rng.index(20));
        for (cplx& c : fc) c = rng.unit_box();
        const TaylorSeries f(fc);
        const std::size_t N = f.degree() + 3;
        const TaylorSeries lhs = apply(OperatorSpec::p(), f, N);
        const TaylorSeries zF = product(make({0, 1}), antiderivative(f), N + 1);
        CHECK(max_coeff_diff(lhs, derivative(zF).truncated(N)) < 1e-13);
    }
}

TEST_CASE("finite sections carry the expected structure") {
    Rng rng(9);
    std::vector<cplx> gc(6);
    for (cplx& c : gc) c = rng.unit_box();
    const FuncExpr g = FuncExpr::poly(gc);

    const OperatorMatrix tg = operator_matrix(OperatorSpec::tg(g), 16);
    for (std::size_t row = 0; row < 16; ++row)
        for (std::size_t col = row; col < 16; ++col) CHECK(std::abs(tg.at(row, col)) <= 1e-14);

    const OperatorMatrix mg = operator_matrix(OperatorSpec::mg(g), 12);
    for (std::size_t k = 0; k < 12; ++k) CHECK(std::abs(mg.at(k, k) - gc[0]) < 1e-13);
    // lower-triangular Toeplitz: entry (r, c) = g_{r-c}
    for (std::size_t r = 0; r < 12; ++r)
        for (std::size_t c = 0; c < 12; ++c) {
            const cplx expect = r >= c && r - c < gc.size() ? gc[r - c] : cplx{0.0, 0.0};
            CHECK(std::abs(mg.at(r, c) - expect) < 1e-13);
        }

    const OperatorMatrix d = operator_matrix(OperatorSpec::diff(), 10);
    for (std::size_t k = 0; k + 1 < 10; ++k)
        CHECK(std::abs(d.at(k, k + 1) - static_cast<double>(k + 1)) < 1e-14);
}

TEST_CASE("finite sections act like the operator on coefficient vectors") {
    Rng rng(17);
    const std::size_t N = 12;
    const OperatorSpec ops[] = {OperatorSpec::tg(FuncExpr::poly({0.1, 1.0, cplx{0, -0.5}})),
                                OperatorSpec::mg(FuncExpr::moebius(0.4)), OperatorSpec::p()};
    for (const OperatorSpec& op : ops) {
        const OperatorMatrix m = operator_matrix(op, N);
        std::vector<cplx> fc(N, cplx{0.0, 0.0});
        for (cplx& c : fc) c = rng.unit_box();
        const TaylorSeries applied = apply(op, TaylorSeries(fc), N - 1);
        for (std::size_t row = 0; row < N; ++row) {
            cplx acc{0.0, 0.0};
            for (std::size_t col = 0; col < N; ++col) acc += m.at(row, col) * fc[col];
            CHECK(std::abs(acc - applied.coeff(row)) < 1e-12);
        }
    }
}

TEST_CASE("phi iterates") {
    const FuncExpr half = FuncExpr::poly({0.0, 0.5});
    const TaylorSeries it3 = to_series(iterate_phi(half, 3), 4).series;
    CHECK(std::abs(it3.coeff(1) - 0.125) < 1e-15);

    const TaylorSeries sq2 = to_series(iterate_phi(kZ2, 2), 6).series;
    CHECK(std::abs(sq2.coeff(4) - 1.0) < 1e-15);

    const FuncExpr mixed = FuncExpr::poly({0.0, 0.7, 0.3});
    for (std::size_t n = 1; n <= 8; ++n)
        CHECK(std::abs(value_at_zero(iterate_phi(mixed, n))) == 0.0);
}

TEST_CASE("deddens ratio hand values") {
    const DiskRule rule(64, 128);
    const FuncExpr half = FuncExpr::poly({0.0, 0.5});

    // constant multiplication symbol scales by |c| for every n
    const OperatorSpec mc = OperatorSpec::mg(FuncExpr::constant(cplx{0.0, -0.3}));
    for (std::size_t n = 1; n <= 4; ++n)
        CHECK(std::abs(deddens_ratio(half, mc, kZ, n, 32, rule) - 0.3) < 1e-10);

    // C_phi T_z 1 = z/2, C_phi 1 = 1
    const double r = deddens_ratio(half, OperatorSpec::tg(kZ), FuncExpr::poly({1.0}), 1, 32, rule);
    CHECK(std::abs(r - 0.5) < 1e-10);

    CHECK_THROWS_AS(deddens_ratio(half, OperatorSpec::tg(kZ), FuncExpr::constant(cplx{0.0, 0.0}),
                                  1, 32, rule),
                    DomainError);
    CHECK_THROWS_AS(deddens_ratio(half, OperatorSpec::diff(), kZ, 1, 32, rule), DomainError);
}

TEST_CASE("intertwining identities are exact for polynomial data") {
    const FuncExpr phis[] = {FuncExpr::poly({0.0, 0.5}), kZ2, FuncExpr::poly({0.0, 0.7, 0.3})};
    const FuncExpr gs[] = {kZ, FuncExpr::poly({0.2, 0.0, cplx{0, 1}})};
    const FuncExpr fs[] = {FuncExpr::poly({1.0}), FuncExpr::poly({0.5, 1.0})};

    CHECK(intertwine_residual(kZ2, OperatorSpec::tg(kZ), FuncExpr::poly({1.0}), 2, 16) <= 1e-13);
    CHECK(intertwine_residual(kZ2, OperatorSpec::mg(kZ), FuncExpr::poly({1.0}), 2, 16) <= 1e-13);

    for (const FuncExpr& phi : phis)
        for (const FuncExpr& g : gs)
            for (const FuncExpr& f : fs)
                for (std::size_t n = 1; n <= 3; ++n)
                    for (OpKind kind : {OpKind::Tg, OpKind::Ig, OpKind::Mg}) {
                        const OperatorSpec inner{kind, g};
                        CAPTURE(op_name(kind)); CAPTURE(n);
                        CHECK(intertwine_residual(phi, inner, f, n, 128) <= 1e-12);
                    }
}
