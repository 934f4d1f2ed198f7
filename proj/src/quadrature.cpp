#include "b1lab/quadrature.hpp"

#include <cmath>

namespace b1lab {

void gauss_legendre_unit(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights) {
    // Newton iteration on P_n over [-1,1], then affine map to [0,1].
    nodes.resize(n);
    weights.resize(n);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * static_cast<double>(k) + 1.0) * x * p1 -
                      static_cast<double>(k) * p2) /
                     (static_cast<double>(k) + 1.0);
            }
            pp = static_cast<double>(n) * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        nodes[i] = 0.5 * (1.0 - x);  // descending roots -> ascending nodes
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        weights[i] = 0.5 * w;
        weights[n - 1 - i] = 0.5 * w;
    }
}

DiskRule::DiskRule(std::size_t radial, std::size_t angles) : radial_(radial), angles_(angles) {
    if (radial == 0 || angles == 0) throw DomainError("DiskRule: orders must be positive");
    auto build = [](std::size_t R, std::size_t M, std::vector<double>& r, std::vector<double>& w,
                    std::vector<cplx>& nodes) {
        gauss_legendre_unit(R, r, w);
        for (std::size_t i = 0; i < R; ++i) w[i] *= 2.0 * r[i];  // Jacobian of dA = 2r dr dtheta/(2pi)
        nodes.resize(R * M);
        for (std::size_t i = 0; i < R; ++i)
            for (std::size_t j = 0; j < M; ++j)
                nodes[i * M + j] =
                    std::polar(r[i], 2.0 * kPi * static_cast<double>(j) / static_cast<double>(M));
    };
    build(radial, angles, radii1_, weights1_, nodes1_);
    build(2 * radial, 2 * angles, radii2_, weights2_, nodes2_);
}

double DiskRule::integrate_once(const std::function<double(cplx)>& h, bool doubled) const {
    const auto& r = radii(doubled);
    const auto& w = radial_weights(doubled);
    const auto& zs = nodes(doubled);
    const std::size_t M = angle_count(doubled);
    std::vector<double> per_radius(r.size());
    std::vector<double> ring(M);
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = 0; j < M; ++j) {
            const cplx z = zs[i * M + j];
            const double v = h(z);
            if (!std::isfinite(v))
                throw CorpusViolation("disk_integral: non-finite integrand at node " +
                                      format_complex(z));
            ring[j] = v;
        }
        per_radius[i] = w[i] * pairwise_sum(std::span<const double>(ring)) /
                        static_cast<double>(M);
    }
    return pairwise_sum(std::span<const double>(per_radius));
}

QuadResult disk_integral(const std::function<double(cplx)>& h, const DiskRule& rule) {
    const double v1 = rule.integrate_once(h, false);
    const double v2 = rule.integrate_once(h, true);
    return {v1, std::abs(v1 - v2)};
}

namespace {

template <typename T, typename Fn>
T mean_once(const Fn& h, double r, std::size_t M) {
    std::vector<T> vals(M);
    for (std::size_t j = 0; j < M; ++j) {
        const cplx z = std::polar(r, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(M));
        vals[j] = h(z);
        if constexpr (std::is_same_v<T, double>) {
            if (!std::isfinite(vals[j]))
                throw CorpusViolation("circle_mean: non-finite integrand at node " +
                                      format_complex(z));
        } else {
            if (!is_finite(vals[j]))
                throw CorpusViolation("circle_mean: non-finite integrand at node " +
                                      format_complex(z));
        }
    }
    return pairwise_sum(std::span<const T>(vals)) / static_cast<double>(M);
}

}  // namespace

QuadResult circle_mean(const std::function<double(cplx)>& h, double r, std::size_t M) {
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("circle_mean: requires 0 < r <= 1");
    const double v1 = mean_once<double>(h, r, M);
    const double v2 = mean_once<double>(h, r, 2 * M);
    return {v1, std::abs(v1 - v2)};
}

QuadResultC circle_mean_c(const std::function<cplx(cplx)>& h, double r, std::size_t M) {
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("circle_mean: requires 0 < r <= 1");
    const cplx v1 = mean_once<cplx>(h, r, M);
    const cplx v2 = mean_once<cplx>(h, r, 2 * M);
    return {v1, std::abs(v1 - v2)};
}

bool monotone_weight_check(const std::function<double(double)>& F, std::size_t radial_order) {
    auto integrate = [&](std::size_t R, bool weighted) {
        std::vector<double> x, w;
        gauss_legendre_unit(R, x, w);
        std::vector<double> terms(R);
        for (std::size_t i = 0; i < R; ++i) {
            const double f = F(x[i]);
            terms[i] = w[i] * (weighted ? x[i] * f : f);
        }
        return pairwise_sum(std::span<const double>(terms));
    };
    const double lhs1 = integrate(radial_order, true);
    const double lhs2 = integrate(2 * radial_order, true);
    const double rhs1 = 0.5 * integrate(radial_order, false);
    const double rhs2 = 0.5 * integrate(2 * radial_order, false);
    const double err = std::abs(lhs1 - lhs2) + std::abs(rhs1 - rhs2);
    return lhs1 >= rhs1 - err - 1e-14;
}

}  // namespace b1lab
