#pragma once

#include "b1lab/funcexpr.hpp"
#include "b1lab/quadrature.hpp"

namespace b1lab {

/// Grid of Moebius centers used to approximate sup_a over the disk. All
/// sup-type norms computed on it are certified lower bounds of the true sup.
struct AGrid {
    std::vector<double> radii;
    std::size_t angles = 16;

    static AGrid defaults() { return {{0.0, 0.3, 0.6, 0.8, 0.9, 0.95, 0.99}, 16}; }
    std::vector<cplx> points() const;
};

/// Value of a sup_a-type norm together with the maximizing grid point.
struct SupNorm {
    double value = 0.0;
    double err_est = 0.0;
    cplx argmax_a{0.0, 0.0};
};

/// Boundary supremum of |f^(order)| with its argument angle.
struct BoundarySup {
    double value = 0.0;
    double theta = 0.0;
};

/// Hardy norm ||f||_{H^p} = (sup_r circle mean of |f|^p)^(1/p), evaluated at
/// r = 1 (corpus functions are analytic past the closed disk, so the circle
/// means are nondecreasing in r). A mean at r = 0.999 exceeding the boundary
/// mean by more than cross_tol signals a non-corpus function.
QuadResult norm_hardy(const FuncExpr& f, double p, std::size_t M = 256, double cross_tol = 1e-4);

/// sup over a boundary grid of |f^(order)|, refined by 3-point parabolic
/// interpolation in the angle.
BoundarySup sup_boundary(const FuncExpr& f, unsigned order, std::size_t grid = 2048);

/// ||f||_infty via the maximum-modulus principle.
double norm_sup(const FuncExpr& f, std::size_t grid = 2048);

QuadResult norm_bergman(const FuncExpr& f, double p, const DiskRule& rule);
QuadResult norm_dirichlet_type(const FuncExpr& f, double p, const DiskRule& rule);

/// Besov norm |f(0)| + (int (1-|z|^2)^{p-2} |f'|^p dA)^{1/p}, 1 < p < infinity.
QuadResult norm_besov(const FuncExpr& f, double p, const DiskRule& rule);

/// Bloch norm |f(0)| + sup (1-|z|^2)|f'(z)|, sup over the rule's node set plus
/// the boundary-approach radii 0.99 and 0.999.
QuadResult norm_bloch(const FuncExpr& f, const DiskRule& rule);

/// |f(0)| + |f'(0)| + int |f''| dA.
QuadResult norm_b1(const FuncExpr& f, const DiskRule& rule);

/// Same norm for a truncated series, evaluated on the rule's circles by FFT.
QuadResult norm_b1(const TaylorSeries& s, const DiskRule& rule);

/// |f(0)| + ||f'||_{H^1}.
QuadResult norm_s1(const FuncExpr& f, std::size_t M = 256, double cross_tol = 1e-4);

/// |f(0)| + sup_a int |(f o sigma_a)'(z)| (1-|z|^2)^{p-1} dA(z), p > 0.
SupNorm norm_zp(const FuncExpr& f, double p, const DiskRule& rule, const AGrid& grid);

/// Second-derivative form of the Z_1 norm:
/// |f(0)| + sup_a int |f''(z)| (1-|sigma_a(z)|^2) dA(z).
SupNorm norm_z1_alt(const FuncExpr& f, const DiskRule& rule, const AGrid& grid);
SupNorm norm_z1_alt(const TaylorSeries& s, const DiskRule& rule, const AGrid& grid);

/// n-th derivative form of the F(p,q,s) norm:
/// sum_{k<n} |f^(k)(0)| + sup_a int |f^(n)|^p (1-|z|^2)^{np-p+q} (1-|sigma_a|^2)^s dA.
/// Requires p > 0, q > -2, s >= 0, n <= 2, and q+s > -1 for n >= 1
/// (q+s-p > -1 for n = 0).
SupNorm norm_fpqs(const FuncExpr& f, double p, double q, double s, unsigned n,
                  const DiskRule& rule, const AGrid& grid);

/// Original log-kernel form |f(0)| + sup_a int |f'|^p (1-|z|^2)^q log^s(1/|sigma_a|) dA,
/// with nodes inside |sigma_a(z)| < 1e-6 excluded. Cross-check path, s <= 2.
SupNorm norm_fpqs_logkernel(const FuncExpr& f, double p, double q, double s,
                            const DiskRule& rule, const AGrid& grid);

}  // namespace b1lab
