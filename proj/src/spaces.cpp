#include "b1lab/spaces.hpp"

#include <algorithm>
#include <cmath>

namespace b1lab {

std::vector<cplx> AGrid::points() const {
    std::vector<cplx> pts;
    for (double r : radii) {
        if (r == 0.0) {
            pts.emplace_back(0.0, 0.0);
            continue;
        }
        for (std::size_t j = 0; j < angles; ++j)
            pts.push_back(std::polar(r, 2.0 * kPi * static_cast<double>(j) /
                                            static_cast<double>(angles)));
    }
    return pts;
}

namespace {

double pth_root(double v, double p) { return std::pow(v, 1.0 / p); }

// error of v^{1/p} given an error on v
double root_err(double v, double err, double p) {
    if (v <= 0.0) return pth_root(err, p);
    return std::abs(pth_root(v + err, p) - pth_root(v, p));
}

QuadResult hardy_mean(const std::function<double(cplx)>& absval, double p, std::size_t M,
                      double cross_tol, const char* what) {
    auto integrand = [&](cplx z) { return std::pow(absval(z), p); };
    const QuadResult at1 = circle_mean(integrand, 1.0, M);
    const QuadResult near1 = circle_mean(integrand, 0.999, M);
    // Circle means of corpus functions are nondecreasing in the radius, so the
    // boundary value must dominate; a dip signals a singularity sneaking in.
    if (near1.value > at1.value + cross_tol * std::max(1.0, at1.value))
        throw CorpusViolation(std::string(what) +
                              ": boundary cross-check failed (mean at r=0.999 exceeds r=1)");
    return at1;
}

}  // namespace

QuadResult norm_hardy(const FuncExpr& f, double p, std::size_t M, double cross_tol) {
    if (!(p > 0.0)) throw DomainError("norm_hardy: requires p > 0");
    auto absf = [&f](cplx z) { return std::abs(eval_closed(f, z, 0)); };
    const QuadResult mean = hardy_mean(absf, p, M, cross_tol, "norm_hardy");
    return {pth_root(mean.value, p), root_err(mean.value, mean.err_est, p)};
}

BoundarySup sup_boundary(const FuncExpr& f, unsigned order, std::size_t grid) {
    std::vector<double> vals(grid);
    double best = -1.0;
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < grid; ++j) {
        const double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid);
        vals[j] = std::abs(eval_closed(f, std::polar(1.0, th), order));
        if (vals[j] > best) {
            best = vals[j];
            best_j = j;
        }
    }
    const double h = 2.0 * kPi / static_cast<double>(grid);
    const double vm = vals[(best_j + grid - 1) % grid];
    const double vp = vals[(best_j + 1) % grid];
    const double denom = vm - 2.0 * vals[best_j] + vp;
    double theta = h * static_cast<double>(best_j);
    if (denom < -1e-300) {
        const double delta = std::clamp(0.5 * (vm - vp) / denom, -0.5, 0.5);
        theta += delta * h;
    }
    const double refined = std::abs(eval_closed(f, std::polar(1.0, theta), order));
    return {std::max(best, refined), theta};
}

double norm_sup(const FuncExpr& f, std::size_t grid) { return sup_boundary(f, 0, grid).value; }

QuadResult norm_bergman(const FuncExpr& f, double p, const DiskRule& rule) {
    if (!(p > 0.0)) throw DomainError("norm_bergman: requires p > 0");
    auto h = [&](cplx z) { return std::pow(std::abs(eval_closed(f, z, 0)), p); };
    const QuadResult q = disk_integral(h, rule);
    return {pth_root(q.value, p), root_err(q.value, q.err_est, p)};
}

QuadResult norm_dirichlet_type(const FuncExpr& f, double p, const DiskRule& rule) {
    if (!(p > 0.0)) throw DomainError("norm_dirichlet_type: requires p > 0");
    auto h = [&](cplx z) { return std::pow(std::abs(eval_closed(f, z, 1)), p); };
    const QuadResult q = disk_integral(h, rule);
    const double v0 = std::pow(std::abs(value_at_zero(f)), p);
    return {pth_root(v0 + q.value, p), root_err(v0 + q.value, q.err_est, p)};
}

QuadResult norm_besov(const FuncExpr& f, double p, const DiskRule& rule) {
    if (!(p > 1.0)) throw DomainError("norm_besov: requires p > 1");
    auto h = [&](cplx z) {
        return std::pow(1.0 - std::norm(z), p - 2.0) * std::pow(std::abs(eval_closed(f, z, 1)), p);
    };
    const QuadResult q = disk_integral(h, rule);
    return {std::abs(value_at_zero(f)) + pth_root(q.value, p), root_err(q.value, q.err_est, p)};
}

QuadResult norm_bloch(const FuncExpr& f, const DiskRule& rule) {
    auto weight = [&](cplx z) { return (1.0 - std::norm(z)) * std::abs(eval_closed(f, z, 1)); };
    auto sup_over = [&](bool doubled) {
        double m = weight(cplx{0.0, 0.0});
        for (const cplx& z : rule.nodes(doubled)) m = std::max(m, weight(z));
        const std::size_t M = rule.angle_count(doubled);
        for (double r : {0.99, 0.999})
            for (std::size_t j = 0; j < M; ++j)
                m = std::max(m, weight(std::polar(
                                    r, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(M))));
        return m;
    };
    const double s1 = sup_over(false);
    const double s2 = sup_over(true);
    return {std::abs(value_at_zero(f)) + std::max(s1, s2), std::abs(s2 - s1)};
}

QuadResult norm_b1(const FuncExpr& f, const DiskRule& rule) {
    auto h = [&](cplx z) { return std::abs(eval_closed(f, z, 2)); };
    const QuadResult q = disk_integral(h, rule);
    const double head = std::abs(value_at_zero(f)) + std::abs(eval_closed(f, cplx{0, 0}, 1));
    return {head + q.value, q.err_est};
}

namespace {

// int |s(z)| dA via per-circle FFT evaluation; one order of the rule.
double series_abs_integral(const TaylorSeries& s, const DiskRule& rule, bool doubled) {
    const auto& radii = rule.radii(doubled);
    const auto& w = rule.radial_weights(doubled);
    const std::size_t M = rule.angle_count(doubled);
    std::vector<double> per_radius(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const auto vals = eval_on_circle(s.coeffs(), radii[i], M);
        std::vector<double> mags(M);
        for (std::size_t j = 0; j < M; ++j) mags[j] = std::abs(vals[j]);
        per_radius[i] = w[i] * pairwise_sum(std::span<const double>(mags)) /
                        static_cast<double>(M);
    }
    return pairwise_sum(std::span<const double>(per_radius));
}

}  // namespace

QuadResult norm_b1(const TaylorSeries& s, const DiskRule& rule) {
    const TaylorSeries dd = derivative(derivative(s));
    const double v1 = series_abs_integral(dd, rule, false);
    const double v2 = series_abs_integral(dd, rule, true);
    return {std::abs(s.coeff(0)) + std::abs(s.coeff(1)) + v1, std::abs(v1 - v2)};
}

QuadResult norm_s1(const FuncExpr& f, std::size_t M, double cross_tol) {
    auto absdf = [&f](cplx z) { return std::abs(eval_closed(f, z, 1)); };
    const QuadResult mean = hardy_mean(absdf, 1.0, M, cross_tol, "norm_s1");
    return {std::abs(value_at_zero(f)) + mean.value, mean.err_est};
}

SupNorm norm_zp(const FuncExpr& f, double p, const DiskRule& rule, const AGrid& grid) {
    if (!(p > 0.0)) throw DomainError("norm_zp: requires p > 0");
    SupNorm out;
    for (const cplx& a : grid.points()) {
        auto h = [&](cplx z) {
            const cplx d = 1.0 - std::conj(a) * z;
            const double dsigma = (1.0 - std::norm(a)) / std::norm(d);  // |sigma_a'(z)|
            const double df = std::abs(eval_closed(f, (a - z) / d, 1));
            const double w = p == 1.0 ? 1.0 : std::pow(1.0 - std::norm(z), p - 1.0);
            return df * dsigma * w;
        };
        const QuadResult q = disk_integral(h, rule);
        if (q.value > out.value) out = {q.value, q.err_est, a};
    }
    out.value += std::abs(value_at_zero(f));
    return out;
}

namespace {

// shared sup_a loop for integrals of F(z) * (1-|sigma_a(z)|^2); F is
// precomputed on the rule nodes so the a-grid sweep costs a few flops per node
SupNorm sup_moebius_weighted(const DiskRule& rule, const AGrid& grid,
                             const std::vector<double>& F1, const std::vector<double>& F2) {
    SupNorm out;
    auto weighted = [&](const cplx& a, bool doubled, const std::vector<double>& F) {
        const auto& radii = rule.radii(doubled);
        const auto& w = rule.radial_weights(doubled);
        const auto& nodes = rule.nodes(doubled);
        const std::size_t M = rule.angle_count(doubled);
        const double oma = 1.0 - std::norm(a);
        std::vector<double> per_radius(radii.size());
        for (std::size_t i = 0; i < radii.size(); ++i) {
            const double omz = 1.0 - radii[i] * radii[i];
            double ring = 0.0;
            for (std::size_t j = 0; j < M; ++j) {
                const cplx z = nodes[i * M + j];
                // 1 - |sigma_a(z)|^2 = (1-|a|^2)(1-|z|^2)/|1 - conj(a) z|^2
                ring += F[i * M + j] * oma * omz / std::norm(1.0 - std::conj(a) * z);
            }
            per_radius[i] = w[i] * ring / static_cast<double>(M);
        }
        return pairwise_sum(std::span<const double>(per_radius));
    };
    for (const cplx& a : grid.points()) {
        const double v1 = weighted(a, false, F1);
        const double v2 = weighted(a, true, F2);
        if (v1 > out.value) out = {v1, std::abs(v1 - v2), a};
    }
    return out;
}

std::vector<double> abs_deriv2_on_nodes(const FuncExpr& f, const DiskRule& rule, bool doubled) {
    const auto& nodes = rule.nodes(doubled);
    std::vector<double> F(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) F[k] = std::abs(eval_closed(f, nodes[k], 2));
    return F;
}

std::vector<double> abs_series_on_nodes(const TaylorSeries& s, const DiskRule& rule,
                                        bool doubled) {
    const auto& radii = rule.radii(doubled);
    const std::size_t M = rule.angle_count(doubled);
    std::vector<double> F(radii.size() * M);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const auto vals = eval_on_circle(s.coeffs(), radii[i], M);
        for (std::size_t j = 0; j < M; ++j) F[i * M + j] = std::abs(vals[j]);
    }
    return F;
}

}  // namespace

SupNorm norm_z1_alt(const FuncExpr& f, const DiskRule& rule, const AGrid& grid) {
    SupNorm out = sup_moebius_weighted(rule, grid, abs_deriv2_on_nodes(f, rule, false),
                                       abs_deriv2_on_nodes(f, rule, true));
    out.value += std::abs(value_at_zero(f));
    return out;
}

SupNorm norm_z1_alt(const TaylorSeries& s, const DiskRule& rule, const AGrid& grid) {
    const TaylorSeries dd = derivative(derivative(s));
    SupNorm out = sup_moebius_weighted(rule, grid, abs_series_on_nodes(dd, rule, false),
                                       abs_series_on_nodes(dd, rule, true));
    out.value += std::abs(s.coeff(0));
    return out;
}

SupNorm norm_fpqs(const FuncExpr& f, double p, double q, double s, unsigned n,
                  const DiskRule& rule, const AGrid& grid) {
    if (!(p > 0.0) || !(q > -2.0) || s < 0.0)
        throw DomainError("norm_fpqs: requires p > 0, q > -2, s >= 0");
    if (n > 2) throw DomainError("norm_fpqs: derivative order capped at 2");
    if (n >= 1 && !(q + s > -1.0))
        throw DomainError("norm_fpqs: derivative form needs q + s > -1");
    if (n == 0 && !(q + s - p > -1.0))
        throw DomainError("norm_fpqs: n = 0 needs q + s - p > -1");

    const double expo = static_cast<double>(n) * p - p + q;
    auto base = [&](bool doubled) {
        const auto& nodes = rule.nodes(doubled);
        std::vector<double> F(nodes.size());
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const double omz = 1.0 - std::norm(nodes[k]);
            F[k] = std::pow(std::abs(eval_closed(f, nodes[k], n)), p) * std::pow(omz, expo);
        }
        return F;
    };
    const std::vector<double> F1 = base(false), F2 = base(true);

    SupNorm out;
    if (s == 0.0) {
        auto plain = [&](bool doubled, const std::vector<double>& F) {
            const auto& radii = rule.radii(doubled);
            const auto& w = rule.radial_weights(doubled);
            const std::size_t M = rule.angle_count(doubled);
            std::vector<double> per_radius(radii.size());
            for (std::size_t i = 0; i < radii.size(); ++i) {
                double ring = 0.0;
                for (std::size_t j = 0; j < M; ++j) ring += F[i * M + j];
                per_radius[i] = w[i] * ring / static_cast<double>(M);
            }
            return pairwise_sum(std::span<const double>(per_radius));
        };
        const double v1 = plain(false, F1), v2 = plain(true, F2);
        out = {v1, std::abs(v1 - v2), cplx{0.0, 0.0}};
    } else if (s == 1.0) {
        out = sup_moebius_weighted(rule, grid, F1, F2);
    } else {
        for (const cplx& a : grid.points()) {
            auto weighted = [&](bool doubled, const std::vector<double>& F) {
                const auto& radii = rule.radii(doubled);
                const auto& w = rule.radial_weights(doubled);
                const auto& nodes = rule.nodes(doubled);
                const std::size_t M = rule.angle_count(doubled);
                const double oma = 1.0 - std::norm(a);
                std::vector<double> per_radius(radii.size());
                for (std::size_t i = 0; i < radii.size(); ++i) {
                    const double omz = 1.0 - radii[i] * radii[i];
                    double ring = 0.0;
                    for (std::size_t j = 0; j < M; ++j) {
                        const double u =
                            oma * omz / std::norm(1.0 - std::conj(a) * nodes[i * M + j]);
                        ring += F[i * M + j] * std::pow(u, s);
                    }
                    per_radius[i] = w[i] * ring / static_cast<double>(M);
                }
                return pairwise_sum(std::span<const double>(per_radius));
            };
            const double v1 = weighted(false, F1), v2 = weighted(true, F2);
            if (v1 > out.value) out = {v1, std::abs(v1 - v2), a};
        }
    }
    double head = 0.0;
    for (unsigned k = 0; k < n; ++k) head += std::abs(eval_closed(f, cplx{0.0, 0.0}, k));
    out.value += head;
    return out;
}

SupNorm norm_fpqs_logkernel(const FuncExpr& f, double p, double q, double s,
                            const DiskRule& rule, const AGrid& grid) {
    if (s > 2.0) throw DomainError("norm_fpqs_logkernel: cross-check path limited to s <= 2");
    SupNorm out;
    for (const cplx& a : grid.points()) {
        auto h = [&](cplx z) {
            const double sig = std::abs((a - z) / (1.0 - std::conj(a) * z));
            if (sig < 1e-6) return 0.0;  // integrable log singularity, excluded mass o(1e-10)
            const double kern = s == 0.0 ? 1.0 : std::pow(std::log(1.0 / sig), s);
            return std::pow(std::abs(eval_closed(f, z, 1)), p) *
                   std::pow(1.0 - std::norm(z), q) * kern;
        };
        const QuadResult r = disk_integral(h, rule);
        if (r.value > out.value) out = {r.value, r.err_est, a};
    }
    out.value += std::abs(value_at_zero(f));
    return out;
}

}  // namespace b1lab
