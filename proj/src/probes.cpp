#include "b1lab/probes.hpp"

#include <algorithm>
#include <cmath>

namespace b1lab {

Corpus Corpus::standard(std::uint64_t seed, const Spec& spec) {
    Corpus out;
    out.seed = seed;
    Rng rng(seed);
    for (std::size_t k = 0; k <= spec.monomial_max; ++k) {
        std::vector<cplx> c(k + 1, cplx{0.0, 0.0});
        c[k] = 1.0;
        out.funcs.push_back(FuncExpr::poly(std::move(c)));
    }
    for (double r : spec.atom_radii) {
        for (std::size_t j = 0; j < spec.atom_angles; ++j) {
            const cplx a = std::polar(r, 2.0 * kPi * static_cast<double>(j) /
                                             static_cast<double>(spec.atom_angles));
            out.funcs.push_back(FuncExpr::moebius(a));
            if (spec.shifted_atoms)
                out.funcs.push_back(FuncExpr::sum(FuncExpr::moebius(a), FuncExpr::constant(-a)));
        }
    }
    for (std::size_t k = 0; k < spec.atom_combos; ++k) {
        std::vector<std::pair<cplx, cplx>> atoms(spec.combo_atoms);
        for (auto& [w, a] : atoms) {
            w = rng.unit_box();
            a = rng.disk(spec.atom_radius_cap);
        }
        out.funcs.push_back(FuncExpr::atoms(std::move(atoms)));
    }
    for (std::size_t k = 0; k < spec.random_polys; ++k) {
        std::vector<cplx> c(2 + rng.index(spec.poly_degree > 0 ? spec.poly_degree : 1));
        for (cplx& x : c) x = rng.unit_box();
        out.funcs.push_back(FuncExpr::poly(std::move(c)));
    }
    return out;
}

BoundReport opnorm_lower(const OperatorSpec& op, const Corpus& corpus, std::size_t N,
                         const DiskRule& rule, const AGrid& agrid, double c_ig) {
    BoundReport rep;
    for (const FuncExpr& f : corpus.funcs) {
        const TaylorSeries fs = to_series(f, N).series;
        const QuadResult den = norm_b1(fs, rule);
        if (den.value <= 1e-12) continue;
        const QuadResult num = norm_b1(apply(op, fs, N), rule);
        const double ratio = num.value / den.value;
        if (ratio > rep.lower) {
            rep.lower = ratio;
            rep.witness = render(f);
            rep.err_est = num.err_est / den.value + ratio * den.err_est / den.value;
        }
    }
    if (op.symbol) {
        const TaylorSeries gs = to_series(*op.symbol, N).series;
        switch (op.kind) {
            case OpKind::Tg: {
                const double shifted =
                    norm_b1(sub(gs, TaylorSeries({gs.coeff(0)})), rule).value;
                rep.constants["symbol_shifted_b1"] = shifted;
                rep.upper = (1.0 + kPi) * shifted;
                break;
            }
            case OpKind::Mg: {
                const double b1 = norm_b1(gs, rule).value;
                rep.constants["symbol_b1"] = b1;
                rep.upper = (2.0 * kPi + 2.0) * b1;
                break;
            }
            case OpKind::Ig: {
                const double sup = norm_sup(*op.symbol);
                const double z1 = norm_z1_alt(*op.symbol, rule, agrid).value;
                rep.constants["symbol_sup"] = sup;
                rep.constants["symbol_z1"] = z1;
                rep.constants["c_ig"] = c_ig;
                rep.upper = c_ig * (sup + z1);
                break;
            }
            default:
                break;
        }
    }
    return rep;
}

std::vector<DecayRow> tg_essnorm_decay(const FuncExpr& g, const std::vector<double>& radii,
                                       const DiskRule& rule) {
    std::vector<DecayRow> rows;
    for (double r : radii) {
        const FuncExpr diff =
            FuncExpr::sum(g, FuncExpr::prod(FuncExpr::constant(-1.0), FuncExpr::dilate(r, g)));
        const QuadResult q = norm_b1(diff, rule);
        rows.push_back({r, q.value, q.err_est});
    }
    return rows;
}

double shifted_atom_b1_norm(double abs_a) {
    // ||sigma_a - a||_B1 = (1-|a|^2) + 2|a|(1-|a|^2) int |1 - conj(a) z|^{-3} dA,
    // and the area integral expands as sum_m C_m^2 |a|^{2m}/(m+1) with C_m the
    // binomial coefficients of (1-w)^{-3/2}. The series form stays accurate
    // arbitrarily close to the boundary, where the integrand concentrates
    // beyond any fixed quadrature rule.
    if (!(abs_a >= 0.0 && abs_a < 1.0))
        throw DomainError("shifted_atom_b1_norm: requires |a| < 1");
    const double a2 = abs_a * abs_a;
    double sum = 0.0, C = 1.0, pw = 1.0;
    for (int m = 0; m < 200000; ++m) {
        const double term = C * C * pw / (m + 1);
        sum += term;
        if (term < 1e-16 * sum && m > 8) break;
        C *= (m + 1.5) / (m + 1.0);
        pw *= a2;
    }
    const double om = 1.0 - a2;
    return om + 2.0 * abs_a * om * sum;
}

IgEssReport ig_essnorm_lower(const FuncExpr& g, const std::vector<cplx>& a_seq,
                             const DiskRule& rule) {
    (void)rule;
    IgEssReport rep;
    for (const cplx& a : a_seq) {
        IgEssReport::Row row;
        row.a = a;
        row.g_abs = std::abs(eval_closed(g, a, 0));
        row.witness_norm = shifted_atom_b1_norm(std::abs(a));
        if (row.g_abs > rep.value) {
            rep.value = row.g_abs;
            rep.argmax_a = a;
        }
        rep.rows.push_back(row);
    }
    return rep;
}

int winding_number(const FuncExpr& g, cplx lambda, std::size_t M) {
    std::vector<cplx> w(M);
    for (std::size_t j = 0; j < M; ++j) {
        const cplx z = std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(M));
        w[j] = eval_closed(g, z, 0) - lambda;
        if (std::abs(w[j]) < 1e-9)
            throw DomainError("winding_number: lambda lies on the sampled boundary curve");
    }
    double total = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
        const double inc = std::arg(w[(j + 1) % M] / w[j]);
        if (std::abs(inc) > 0.9 * kPi)
            throw DomainError("winding_number: phase step too large, refine the sampling");
        total += inc;
    }
    const double turns = total / (2.0 * kPi);
    const int n = static_cast<int>(std::lround(turns));
    if (std::abs(turns - static_cast<double>(n)) > 0.1)
        throw DomainError("winding_number: phase increments failed to close up");
    return n;
}

ReciprocalSeries reciprocal_series(const FuncExpr& g, cplx lambda, std::size_t N,
                                   double growth_threshold) {
    auto f = [&](cplx z) {
        const cplx d = eval_closed(g, z, 0) - lambda;
        if (std::abs(d) < 1e-12)
            throw CorpusViolation("reciprocal_series: symbol vanishes at a sample point");
        return 1.0 / d;
    };
    ReciprocalSeries out{project_series(f, N).series, 0.0, false};
    for (std::size_t n = 0; n <= N; ++n)
        out.max_coeff = std::max(out.max_coeff, std::abs(out.series.coeff(n)));
    out.grew = out.max_coeff > growth_threshold;
    return out;
}

const char* cell_flag_name(CellFlag f) {
    switch (f) {
        case CellFlag::Finite: return "FINITE";
        case CellFlag::Blowup: return "BLOWUP";
        case CellFlag::Indeterminate: return "INDETERMINATE";
    }
    return "?";
}

Portrait resolvent_portrait(OpKind kind, const FuncExpr& g, double x0, double x1, double y0,
                            double y1, double step, const Corpus& corpus, const DiskRule& rule,
                            const PortraitOptions& opt) {
    if (kind != OpKind::Mg && kind != OpKind::Ig)
        throw DomainError("resolvent_portrait: kind must be Mg or Ig");
    Portrait out{x0, x1, y0, y1, step, {}};

    std::vector<TaylorSeries> fs;
    std::vector<double> den;
    for (const FuncExpr& f : corpus.funcs) {
        TaylorSeries s = to_series(f, opt.N).series;
        const double d = norm_b1(s, rule).value;
        if (d <= 1e-12) continue;
        fs.push_back(std::move(s));
        den.push_back(d);
    }

    const auto nx = static_cast<std::size_t>(std::lround((x1 - x0) / step));
    const auto ny = static_cast<std::size_t>(std::lround((y1 - y0) / step));
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t iy = 0; iy <= ny; ++iy) {
        for (std::size_t ix = 0; ix <= nx; ++ix) {
            const cplx lambda{x0 + step * static_cast<double>(ix),
                              y0 + step * static_cast<double>(iy)};
            const double mod = std::abs(lambda);
            if (mod > opt.annulus_lo && mod < opt.annulus_hi) continue;

            PortraitCell cell;
            cell.lambda = lambda;
            try {
                cell.winding = winding_number(g, lambda, opt.winding_M);
            } catch (const DomainError&) {
                cell.flag = CellFlag::Indeterminate;
                out.cells.push_back(cell);
                continue;
            }
            if (kind == OpKind::Ig && mod < 1e-15) {
                // constants are annihilated, so 0 always sits in the spectrum
                cell.flag = CellFlag::Blowup;
                cell.resolvent_lb = inf;
                out.cells.push_back(cell);
                continue;
            }
            if (cell.winding >= 1) {
                cell.flag = CellFlag::Blowup;
                cell.resolvent_lb = inf;
                out.cells.push_back(cell);
                continue;
            }
            std::optional<ReciprocalSeries> rec;
            try {
                rec = reciprocal_series(g, lambda, opt.N, opt.coeff_growth);
            } catch (const CorpusViolation&) {
                cell.flag = CellFlag::Indeterminate;
                out.cells.push_back(cell);
                continue;
            }
            if (rec->grew) {
                cell.flag = CellFlag::Blowup;
                cell.resolvent_lb = inf;
                out.cells.push_back(cell);
                continue;
            }
            double lb = 0.0;
            if (kind == OpKind::Mg) {
                for (std::size_t k = 0; k < fs.size(); ++k)
                    lb = std::max(lb,
                                  norm_b1(product(rec->series, fs[k], opt.N), rule).value / den[k]);
            } else {
                const TaylorSeries h = scale(rec->series, -lambda);  // (1 - g/lambda)^{-1}
                for (std::size_t k = 0; k < fs.size(); ++k) {
                    TaylorSeries rf = apply_series(OpKind::Ig, &h, fs[k], opt.N);
                    std::vector<cplx> c = rf.coeffs();
                    c[0] += fs[k].coeff(0);
                    lb = std::max(lb, norm_b1(TaylorSeries(std::move(c)), rule).value / den[k]);
                }
            }
            cell.resolvent_lb = lb;
            cell.flag = lb > opt.blowup_lb ? CellFlag::Blowup : CellFlag::Finite;
            out.cells.push_back(cell);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// product-constant search
// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kParamsPerSide = 12;

FuncExpr decode_atoms(std::span<const double> x) {
    std::vector<std::pair<cplx, cplx>> atoms;
    for (std::size_t k = 0; k < 3; ++k) {
        const cplx w{x[4 * k], x[4 * k + 1]};
        cplx a{x[4 * k + 2], x[4 * k + 3]};
        if (std::abs(a) > 0.95) a *= 0.95 / std::abs(a);
        atoms.emplace_back(w, a);
    }
    return FuncExpr::atoms(std::move(atoms));
}

FuncExpr decode_poly2(std::span<const double> x) {
    return FuncExpr::poly({cplx{x[0], x[1]}, cplx{x[2], x[3]}, cplx{x[4], x[5]}});
}

FuncExpr decode_side(SearchFamily family, std::span<const double> x) {
    return family == SearchFamily::Atoms3 ? decode_atoms(x) : decode_poly2(x);
}

struct RatioEval {
    double ratio = -1.0;
    double err = 0.0;
};

RatioEval product_ratio(const FuncExpr& f, const FuncExpr& g, const DiskRule& rule) {
    const QuadResult nf = norm_b1(f, rule);
    const QuadResult ng = norm_b1(g, rule);
    if (nf.value < 1e-9 || ng.value < 1e-9) return {};
    const QuadResult nfg = norm_b1(FuncExpr::prod(f, g), rule);
    RatioEval out;
    out.ratio = nfg.value / (nf.value * ng.value);
    out.err = (nfg.err_est + out.ratio * (nf.err_est * ng.value + ng.err_est * nf.value)) /
              (nf.value * ng.value);
    return out;
}

struct PatternResult {
    double best = -1.0;
    std::vector<double> params;
    std::size_t evals = 0;
};

PatternResult pattern_search(SearchFamily family, std::vector<double> x, const DiskRule& rule,
                             std::size_t eval_budget) {
    const std::size_t dim = 2 * kParamsPerSide;
    auto objective = [&](const std::vector<double>& p) {
        const FuncExpr f = decode_side(family, std::span<const double>(p).subspan(0, kParamsPerSide));
        const FuncExpr g = decode_side(family, std::span<const double>(p).subspan(kParamsPerSide));
        return product_ratio(f, g, rule).ratio;
    };
    PatternResult res;
    res.params = x;
    res.best = objective(x);
    ++res.evals;
    double step = 0.2;
    while (step >= 1e-4 && res.evals < eval_budget) {
        bool improved = false;
        for (std::size_t i = 0; i < dim && res.evals < eval_budget; ++i) {
            for (double dir : {+1.0, -1.0}) {
                std::vector<double> trial = res.params;
                trial[i] += dir * step;
                const double v = objective(trial);
                ++res.evals;
                if (v > res.best) {
                    res.best = v;
                    res.params = std::move(trial);
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return res;
}

std::vector<double> random_start(SearchFamily family, Rng& rng) {
    std::vector<double> x(2 * kParamsPerSide);
    for (std::size_t side = 0; side < 2; ++side) {
        double* p = x.data() + side * kParamsPerSide;
        if (family == SearchFamily::Atoms3) {
            for (std::size_t k = 0; k < 3; ++k) {
                const cplx w = rng.unit_box();
                const cplx a = rng.disk(0.8);
                p[4 * k] = w.real();
                p[4 * k + 1] = w.imag();
                p[4 * k + 2] = a.real();
                p[4 * k + 3] = a.imag();
            }
        } else {
            for (std::size_t k = 0; k < kParamsPerSide; ++k) p[k] = rng.uniform(-1.0, 1.0);
        }
    }
    return x;
}

// restarts begin from corpus-derived points before falling back to random
// draws; -sigma_0 is exactly z, so the monomial pairs are reachable in both
// families
std::optional<std::vector<double>> structured_start(SearchFamily family, std::size_t k) {
    std::vector<double> x(2 * kParamsPerSide, 0.0);
    if (family == SearchFamily::Atoms3) {
        switch (k) {
            case 0: x[0] = -1.0; x[12] = -1.0; return x;                    // (z, z)
            case 1: x[0] = 1.0; x[2] = 0.5; x[12] = 1.0; x[14] = 0.5; return x;
            case 2: x[0] = -1.0; x[12] = 1.0; x[14] = 0.5; return x;
            default: return std::nullopt;
        }
    }
    switch (k) {
        case 0: x[2] = 1.0; x[14] = 1.0; return x;                          // (z, z)
        case 1: x[2] = 1.0; x[16] = 1.0; return x;                          // (z, z^2)
        case 2: x[4] = 1.0; x[16] = 1.0; return x;                          // (z^2, z^2)
        case 3: x[0] = 1.0; x[2] = 1.0; x[14] = 1.0; return x;              // (1+z, z)
        default: return std::nullopt;
    }
}

SearchReport finish_report(SearchFamily family, const std::vector<double>& params,
                           const DiskRule& final_rule, std::size_t evals) {
    const FuncExpr f =
        decode_side(family, std::span<const double>(params).subspan(0, kParamsPerSide));
    const FuncExpr g = decode_side(family, std::span<const double>(params).subspan(kParamsPerSide));
    const RatioEval fin = product_ratio(f, g, final_rule);
    SearchReport rep;
    rep.best_ratio = fin.ratio;
    rep.err_est = fin.err;
    rep.witness_f = render(f);
    rep.witness_g = render(g);
    rep.ceiling = 2.0 * kPi + 2.0;
    rep.evaluations = evals;
    return rep;
}

}  // namespace

SearchReport product_constant_search(std::uint64_t seed, std::size_t restarts,
                                     SearchFamily family, const DiskRule& search_rule,
                                     const DiskRule& final_rule) {
    if (restarts == 0) throw DomainError("product_constant_search: needs at least one restart");
    const std::size_t budget = family == SearchFamily::Poly2 ? 3000 : 1200;
    std::size_t total_evals = 0;
    // the coarse search rule steers the walk; every visited start and endpoint
    // is re-ranked on the final rule so rule bias cannot pick the winner
    double best_final = -1.0;
    std::vector<double> best_params;
    auto consider = [&](const std::vector<double>& p) {
        const FuncExpr f =
            decode_side(family, std::span<const double>(p).subspan(0, kParamsPerSide));
        const FuncExpr g = decode_side(family, std::span<const double>(p).subspan(kParamsPerSide));
        const double v = product_ratio(f, g, final_rule).ratio;
        if (v > best_final) {
            best_final = v;
            best_params = p;
        }
    };
    for (std::size_t k = 0; k < restarts; ++k) {
        Rng rng(derive_seed(seed, "restart-" + std::to_string(k)));
        std::vector<double> start;
        if (auto s = structured_start(family, k))
            start = std::move(*s);
        else
            start = random_start(family, rng);
        consider(start);
        PatternResult r = pattern_search(family, std::move(start), search_rule, budget);
        total_evals += r.evals;
        consider(r.params);
    }
    return finish_report(family, best_params, final_rule, total_evals);
}

SearchReport product_constant_poly2_oracle(const DiskRule& search_rule,
                                           const DiskRule& final_rule) {
    // stage 1: coarse real grid; stage 2/3: denser local sweeps around the
    // best; the top candidates of every stage are re-ranked on the final rule
    const std::vector<double> coarse = {-1.0, -0.5, 0.0, 0.5, 1.0};
    std::size_t evals = 0;
    std::vector<std::pair<double, std::vector<double>>> top;  // coarse value, params

    auto offer = [&top](double v, const std::vector<double>& p) {
        constexpr std::size_t kKeep = 32;
        if (top.size() == kKeep && v <= top.back().first) return;
        top.emplace_back(v, p);
        std::sort(top.begin(), top.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        if (top.size() > kKeep) top.pop_back();
    };

    auto sweep = [&](const std::vector<std::vector<double>>& axes_f,
                     const std::vector<std::vector<double>>& axes_g) {
        std::vector<double> best_p;
        double best = -1.0;
        std::vector<double> p(24, 0.0);
        // real coefficients only: p[0], p[2], p[4] for f; likewise for g
        for (double f0 : axes_f[0])
            for (double f1 : axes_f[1])
                for (double f2 : axes_f[2])
                    for (double g0 : axes_g[0])
                        for (double g1 : axes_g[1])
                            for (double g2 : axes_g[2]) {
                                p[0] = f0;
                                p[2] = f1;
                                p[4] = f2;
                                p[12] = g0;
                                p[14] = g1;
                                p[16] = g2;
                                const FuncExpr f =
                                    decode_poly2(std::span<const double>(p).subspan(0, 12));
                                const FuncExpr g =
                                    decode_poly2(std::span<const double>(p).subspan(12));
                                const double v = product_ratio(f, g, search_rule).ratio;
                                ++evals;
                                offer(v, p);
                                if (v > best) {
                                    best = v;
                                    best_p = p;
                                }
                            }
        return std::pair{best, best_p};
    };

    auto [best, params] = sweep({coarse, coarse, coarse}, {coarse, coarse, coarse});
    for (double width : {0.25, 0.0625}) {
        std::vector<std::vector<double>> axes_f, axes_g;
        for (std::size_t k = 0; k < 3; ++k) {
            std::vector<double> af, ag;
            for (int d = -2; d <= 2; ++d) {
                af.push_back(params[2 * k] + width * d / 2.0);
                ag.push_back(params[12 + 2 * k] + width * d / 2.0);
            }
            axes_f.push_back(af);
            axes_g.push_back(ag);
        }
        auto [b2, p2] = sweep(axes_f, axes_g);
        if (b2 > best) {
            best = b2;
            params = p2;
        }
    }

    double best_final = -1.0;
    std::vector<double> best_params;
    for (const auto& [coarse_value, p] : top) {
        const FuncExpr f = decode_poly2(std::span<const double>(p).subspan(0, 12));
        const FuncExpr g = decode_poly2(std::span<const double>(p).subspan(12));
        const double v = product_ratio(f, g, final_rule).ratio;
        if (v > best_final) {
            best_final = v;
            best_params = p;
        }
    }
    return finish_report(SearchFamily::Poly2, best_params, final_rule, evals);
}

BoundReport cphi_bounded_probe(const FuncExpr& phi, const AGrid& agrid, const DiskRule& rule,
                               double c_cphi) {
    BoundReport rep;
    for (const cplx& a : agrid.points()) {
        const FuncExpr comp = FuncExpr::compose(FuncExpr::moebius(a), phi);
        const QuadResult q = norm_b1(comp, rule);
        if (q.value > rep.lower) {
            rep.lower = q.value;
            rep.witness = format_complex(a);
            rep.err_est = q.err_est;
        }
    }
    if (std::abs(value_at_zero(phi)) < 1e-14) {
        const double dsup = sup_boundary(phi, 1).value;
        const double z1 = norm_z1_alt(phi, rule, agrid).value;
        rep.constants["phi_deriv_sup"] = dsup;
        rep.constants["phi_z1"] = z1;
        rep.constants["c_cphi"] = c_cphi;
        rep.upper = c_cphi * (dsup * dsup + z1 * dsup + dsup + 1.0);
    }
    return rep;
}

double neumann_tail(const FuncExpr& g, cplx lambda, const TaylorSeries& f, std::size_t K,
                    std::size_t N, const DiskRule& rule) {
    if (std::abs(lambda) < 1e-14) throw DomainError("neumann_tail: lambda must be nonzero");
    const TaylorSeries gs = to_series(g, N).series;
    TaylorSeries u = scale(f.truncated(N), 1.0 / lambda);
    for (std::size_t k = 0; k < K; ++k)
        u = scale(apply_series(OpKind::Tg, &gs, u, N), 1.0 / lambda);
    return norm_b1(u, rule).value;
}

}  // namespace b1lab
