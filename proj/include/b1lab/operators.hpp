#pragma once

#include <optional>

#include "b1lab/spaces.hpp"

namespace b1lab {

enum class OpKind { Tg, Ig, Mg, Cphi, D, Tz, P };

const char* op_name(OpKind k);
std::optional<OpKind> op_from_name(const std::string& name);

/// Descriptor of one operator together with its symbol function (g for
/// Tg/Ig/Mg, phi for Cphi; none for D, Tz, P). Factory functions enforce the
/// symbol requirements; the composition symbol must be a self-map and, for
/// series-path application, must fix the origin.
struct OperatorSpec {
    OpKind kind;
    std::optional<FuncExpr> symbol;

    static OperatorSpec tg(FuncExpr g) { return {OpKind::Tg, std::move(g)}; }
    static OperatorSpec ig(FuncExpr g) { return {OpKind::Ig, std::move(g)}; }
    static OperatorSpec mg(FuncExpr g) { return {OpKind::Mg, std::move(g)}; }
    static OperatorSpec cphi(FuncExpr phi);
    static OperatorSpec diff() { return {OpKind::D, std::nullopt}; }
    static OperatorSpec tz() { return {OpKind::Tz, std::nullopt}; }
    static OperatorSpec p() { return {OpKind::P, std::nullopt}; }
};

/// Coefficient-level application truncated at degree N:
///   Tg: primitive of f g', Ig: primitive of f' g, Mg: f g, Cphi: f o phi,
///   D: f', Tz: primitive of f, P: (Pf)_0 = 0, (Pf)_n = a_{n-1} (n+1)/n.
TaylorSeries apply(const OperatorSpec& op, const TaylorSeries& f, std::size_t N);

/// Same, with the symbol already expanded to a series (used where the symbol
/// only exists as a truncated expansion, e.g. resolvent reciprocals).
TaylorSeries apply_series(OpKind kind, const TaylorSeries* symbol, const TaylorSeries& f,
                          std::size_t N);

/// Finite section in the monomial basis: column k holds the coefficients of
/// Op(z^k) truncated to degree N-1.
struct OperatorMatrix {
    std::size_t n = 0;
    std::vector<cplx> entries;  // row-major
    cplx at(std::size_t row, std::size_t col) const { return entries[row * n + col]; }

    /// Largest |entry| on or above the diagonal; zero iff strictly lower
    /// triangular, in which case the diagonal read-off below gives the
    /// eigenvalues of the section.
    double above_diagonal_max() const;
    std::vector<cplx> diagonal() const;
};
OperatorMatrix operator_matrix(const OperatorSpec& op, std::size_t N);

/// n-fold composition phi o ... o phi as an expression tree, n >= 1.
FuncExpr iterate_phi(const FuncExpr& phi, std::size_t n);

/// ||C_phi^n (T f)||_B1 / ||C_phi^n f||_B1 for T in {Tg, Ig, Mg}; the
/// membership ratio of the Deddens algebra of C_phi. Requires phi(0) = 0 and a
/// denominator above 1e-12.
double deddens_ratio(const FuncExpr& phi, const OperatorSpec& inner, const FuncExpr& f,
                     std::size_t n, std::size_t N, const DiskRule& rule);

/// Max absolute coefficient difference between C_phi^n (T f) and
/// T[symbol o phi_n] (C_phi^n f) truncated at N; zero in exact arithmetic.
double intertwine_residual(const FuncExpr& phi, const OperatorSpec& inner, const FuncExpr& f,
                           std::size_t n, std::size_t N);

}  // namespace b1lab
