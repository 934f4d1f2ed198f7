#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "b1lab/taylor.hpp"

namespace b1lab {

/// Closed-form expression tree for test functions on the unit disk.
/// Leaves are constants, polynomials, single Moebius transforms
/// sigma_a(z) = (a-z)/(1 - conj(a) z) and finite atomic combinations
/// sum c_k sigma_{a_k}; interior nodes are sums, products, compositions and
/// radial dilations f(rz). Trees are immutable and cheap to copy.
///
/// Every constructor validates its parameters: |a| < 1 for Moebius centers,
/// r in [0,1] for dilations, and composition inner parts must map the disk
/// into itself (checked on a 1024-point boundary grid).
class FuncExpr {
public:
    enum class Kind { Const, Poly, Moebius, Atoms, Sum, Prod, Compose, Dilate };

    static FuncExpr constant(cplx c);
    static FuncExpr poly(std::vector<cplx> coeffs);
    static FuncExpr moebius(cplx a);
    static FuncExpr atoms(std::vector<std::pair<cplx, cplx>> weighted_centers);
    static FuncExpr sum(FuncExpr l, FuncExpr r);
    static FuncExpr prod(FuncExpr l, FuncExpr r);
    static FuncExpr compose(FuncExpr outer, FuncExpr inner);
    static FuncExpr dilate(double r, FuncExpr inner);

    Kind kind() const;

    friend bool operator==(const FuncExpr& a, const FuncExpr& b);

    struct Node;
    const Node& node() const { return *node_; }

private:
    explicit FuncExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct FuncExpr::Node {
    Kind kind;
    cplx c{};                                          // Const, Moebius center
    std::vector<cplx> coeffs;                          // Poly
    std::vector<std::pair<cplx, cplx>> atoms;          // (weight, center)
    double r = 0.0;                                    // Dilate
    std::shared_ptr<const Node> left, right;           // Sum/Prod/Compose; Dilate uses left
};

/// Parses the function-literal grammar:
///   expr := term (('+'|'-') term)*
///   term := atom (('∘'|'*') atom)*
///   atom := "poly:" clist | "moebius:" c | "atoms:" pair (';' pair)*
///         | "dilate:" r ":" expr | "const:" c
///         | "compose(" expr "," expr ")" | "prod(" expr "," expr ")"
///         | '(' expr ')'
///   pair := c '*' c ;  clist := c (',' c)* ;  c := complex literal a+bi
/// Unicode minus signs are accepted. Errors carry a byte offset.
FuncExpr parse(const std::string& text);

/// Canonical rendering; parse(render(e)) == e structurally.
std::string render(const FuncExpr& e);

/// f(z), f'(z) or f''(z) by exact differentiation on the tree. order <= 2.
/// Requires |z| <= 1.
cplx eval_closed(const FuncExpr& e, cplx z, unsigned order = 0);

/// f(0), handy shorthand.
cplx value_at_zero(const FuncExpr& e);

/// Taylor coefficients at the origin up to degree N plus a bound on the sup of
/// the truncation error over the closed disk. Compositions whose inner part
/// does not fix the origin are expanded by circle projection instead of series
/// composition; for those the bound is an estimate from a two-radius
/// comparison rather than a hard bound.
struct SeriesApprox {
    TaylorSeries series;
    double tail_bound;
};
SeriesApprox to_series(const FuncExpr& e, std::size_t N);

/// Coefficients of an analytic callback via trapezoid projection with 4N
/// samples at radius rho, compared against radius rho_check.
SeriesApprox project_series(const std::function<cplx(cplx)>& f, std::size_t N,
                            double rho = 0.9, double rho_check = 0.95);

/// Degree when the tree is a polynomial, nullopt otherwise.
std::optional<std::size_t> polynomial_degree(const FuncExpr& e);

}  // namespace b1lab
