#include "b1lab/operators.hpp"

#include <cmath>

namespace b1lab {

const char* op_name(OpKind k) {
    switch (k) {
        case OpKind::Tg: return "Tg";
        case OpKind::Ig: return "Ig";
        case OpKind::Mg: return "Mg";
        case OpKind::Cphi: return "Cphi";
        case OpKind::D: return "D";
        case OpKind::Tz: return "Tz";
        case OpKind::P: return "P";
    }
    return "?";
}

std::optional<OpKind> op_from_name(const std::string& name) {
    for (OpKind k : {OpKind::Tg, OpKind::Ig, OpKind::Mg, OpKind::Cphi, OpKind::D, OpKind::Tz,
                     OpKind::P})
        if (name == op_name(k)) return k;
    return std::nullopt;
}

OperatorSpec OperatorSpec::cphi(FuncExpr phi) {
    // the self-map requirement is what FuncExpr::compose checks; probing with
    // the identity runs exactly that check
    FuncExpr::compose(FuncExpr::poly({cplx{0.0, 0.0}, cplx{1.0, 0.0}}), phi);
    return {OpKind::Cphi, std::move(phi)};
}

TaylorSeries apply_series(OpKind kind, const TaylorSeries* symbol, const TaylorSeries& f,
                          std::size_t N) {
    switch (kind) {
        case OpKind::Tg: {
            if (!symbol) throw DomainError("apply: Tg needs a symbol");
            const std::size_t inner = N > 0 ? N - 1 : 0;
            return antiderivative(product(f, derivative(*symbol), inner)).truncated(N);
        }
        case OpKind::Ig: {
            if (!symbol) throw DomainError("apply: Ig needs a symbol");
            const std::size_t inner = N > 0 ? N - 1 : 0;
            return antiderivative(product(derivative(f), *symbol, inner)).truncated(N);
        }
        case OpKind::Mg:
            if (!symbol) throw DomainError("apply: Mg needs a symbol");
            return product(f, *symbol, N);
        case OpKind::Cphi:
            if (!symbol) throw DomainError("apply: Cphi needs a symbol");
            return compose(f, *symbol, N);
        case OpKind::D:
            return derivative(f).truncated(N);
        case OpKind::Tz:
            return antiderivative(f).truncated(N);
        case OpKind::P: {
            std::vector<cplx> c(std::min(f.degree() + 1, N) + 1, cplx{0.0, 0.0});
            for (std::size_t n = 1; n < c.size(); ++n)
                c[n] = f.coeff(n - 1) * static_cast<double>(n + 1) / static_cast<double>(n);
            return TaylorSeries(std::move(c));
        }
    }
    throw std::logic_error("apply_series: unreachable");
}

TaylorSeries apply(const OperatorSpec& op, const TaylorSeries& f, std::size_t N) {
    if (op.symbol) {
        const TaylorSeries gs = to_series(*op.symbol, N).series;
        return apply_series(op.kind, &gs, f, N);
    }
    return apply_series(op.kind, nullptr, f, N);
}

double OperatorMatrix::above_diagonal_max() const {
    double m = 0.0;
    for (std::size_t row = 0; row < n; ++row)
        for (std::size_t col = row; col < n; ++col) m = std::max(m, std::abs(at(row, col)));
    return m;
}

std::vector<cplx> OperatorMatrix::diagonal() const {
    std::vector<cplx> d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = at(k, k);
    return d;
}

OperatorMatrix operator_matrix(const OperatorSpec& op, std::size_t N) {
    OperatorMatrix m;
    m.n = N;
    m.entries.assign(N * N, cplx{0.0, 0.0});
    for (std::size_t k = 0; k < N; ++k) {
        std::vector<cplx> unit(k + 1, cplx{0.0, 0.0});
        unit[k] = 1.0;
        const TaylorSeries col = apply(op, TaylorSeries(std::move(unit)), N - 1);
        for (std::size_t row = 0; row < N; ++row) m.entries[row * N + k] = col.coeff(row);
    }
    return m;
}

FuncExpr iterate_phi(const FuncExpr& phi, std::size_t n) {
    if (n == 0) throw DomainError("iterate_phi: requires n >= 1");
    FuncExpr out = phi;
    for (std::size_t k = 1; k < n; ++k) out = FuncExpr::compose(out, phi);
    return out;
}

namespace {

TaylorSeries phi_iterate_series(const TaylorSeries& phis, std::size_t n, std::size_t N) {
    TaylorSeries out = phis.truncated(N);
    for (std::size_t k = 1; k < n; ++k) out = compose(out, phis, N);
    return out;
}

// degree headroom so polynomial data stays exact under composition
std::size_t working_degree(const FuncExpr& phi, const OperatorSpec& inner, const FuncExpr& f,
                           std::size_t n, std::size_t N) {
    const auto dphi = polynomial_degree(phi);
    const auto df = polynomial_degree(f);
    const auto dg = inner.symbol ? polynomial_degree(*inner.symbol) : std::optional<std::size_t>(0);
    if (!dphi || !df || !dg) return N;
    double dn = 1.0;
    for (std::size_t k = 0; k < n; ++k) dn *= static_cast<double>(std::max<std::size_t>(*dphi, 1));
    const double need = (static_cast<double>(*df + *dg) + 1.0) * dn;
    return std::max<std::size_t>(N, static_cast<std::size_t>(std::min(need, 4096.0)));
}

}  // namespace

double deddens_ratio(const FuncExpr& phi, const OperatorSpec& inner, const FuncExpr& f,
                     std::size_t n, std::size_t N, const DiskRule& rule) {
    if (inner.kind != OpKind::Tg && inner.kind != OpKind::Ig && inner.kind != OpKind::Mg)
        throw DomainError("deddens_ratio: inner operator must be Tg, Ig or Mg");
    const std::size_t W = working_degree(phi, inner, f, n, N);
    const TaylorSeries phis = to_series(phi, W).series;
    if (phis.coeff(0) != cplx{0.0, 0.0})
        throw DomainError("deddens_ratio: phi must fix the origin");
    const TaylorSeries phin = phi_iterate_series(phis, n, W);
    const TaylorSeries fs = to_series(f, W).series;
    const TaylorSeries num = compose(apply(inner, fs, W), phin, W);
    const TaylorSeries den = compose(fs, phin, W);
    const double dnorm = norm_b1(den, rule).value;
    if (dnorm <= 1e-12) throw DomainError("deddens_ratio: degenerate input, ||C_phi^n f|| ~ 0");
    return norm_b1(num, rule).value / dnorm;
}

double intertwine_residual(const FuncExpr& phi, const OperatorSpec& inner, const FuncExpr& f,
                           std::size_t n, std::size_t N) {
    if (!inner.symbol) throw DomainError("intertwine_residual: inner operator needs a symbol");
    const TaylorSeries phis = to_series(phi, N).series;
    if (phis.coeff(0) != cplx{0.0, 0.0})
        throw DomainError("intertwine_residual: phi must fix the origin");
    const TaylorSeries phin = phi_iterate_series(phis, n, N);
    const TaylorSeries fs = to_series(f, N).series;
    const TaylorSeries gs = to_series(*inner.symbol, N).series;

    const TaylorSeries lhs = compose(apply_series(inner.kind, &gs, fs, N), phin, N);
    const TaylorSeries g_phin = compose(gs, phin, N);
    const TaylorSeries rhs = apply_series(inner.kind, &g_phin, compose(fs, phin, N), N);
    return max_coeff_diff(lhs, rhs);
}

}  // namespace b1lab
