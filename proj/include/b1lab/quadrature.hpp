#pragma once

#include <functional>

#include "b1lab/common.hpp"

namespace b1lab {

/// Result of a quadrature: the value at the base rule and a self-reported
/// error estimate from doubling both rule orders.
struct QuadResult {
    double value = 0.0;
    double err_est = 0.0;
};

struct QuadResultC {
    cplx value{0.0, 0.0};
    double err_est = 0.0;
};

/// Gauss-Legendre nodes/weights on [0, 1].
void gauss_legendre_unit(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights);

/// Product rule for the normalized area measure on the unit disk:
/// R Gauss-Legendre radii on (0,1) with Jacobian 2r folded into the weights,
/// M uniform angles with weight 1/M. Holds the doubled rule (2R, 2M) as well
/// so that every integral reports an order-doubling error estimate.
class DiskRule {
public:
    DiskRule(std::size_t radial, std::size_t angles);

    std::size_t radial() const { return radial_; }
    std::size_t angles() const { return angles_; }

    const std::vector<double>& radii(bool doubled) const { return doubled ? radii2_ : radii1_; }
    const std::vector<double>& radial_weights(bool doubled) const {
        return doubled ? weights2_ : weights1_;
    }
    std::size_t angle_count(bool doubled) const { return doubled ? 2 * angles_ : angles_; }

    /// Flat list of nodes r_i e^{i theta_j} for one order of the rule.
    const std::vector<cplx>& nodes(bool doubled) const { return doubled ? nodes2_ : nodes1_; }

    /// Integral at a single order; following the (i, j) layout of nodes().
    double integrate_once(const std::function<double(cplx)>& h, bool doubled) const;

private:
    std::size_t radial_, angles_;
    std::vector<double> radii1_, weights1_, radii2_, weights2_;
    std::vector<cplx> nodes1_, nodes2_;
};

/// sum_{i,j} u_i (1/M) h(r_i e^{i theta_j}) with err_est = |value(R,M) - value(2R,2M)|.
/// Throws CorpusViolation naming the node if h is non-finite anywhere.
QuadResult disk_integral(const std::function<double(cplx)>& h, const DiskRule& rule);

/// (1/M) sum_j h(r e^{i theta_j}); err_est from doubling M. Requires 0 < r <= 1.
QuadResult circle_mean(const std::function<double(cplx)>& h, double r, std::size_t M);
QuadResultC circle_mean_c(const std::function<cplx(cplx)>& h, double r, std::size_t M);

/// Checks int_0^1 x F(x) dx >= (1/2) int_0^1 F(x) dx for nonnegative F, the
/// weighted-mean inequality satisfied by any increasing weight. True iff the
/// inequality holds within the combined doubling error of both sides.
bool monotone_weight_check(const std::function<double(double)>& F,
                           std::size_t radial_order = 128);

}  // namespace b1lab
