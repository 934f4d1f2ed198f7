// Command-line front end: norms, operator application, norm/essential-norm
// probes, resolvent portraits, the product-constant search and the
// verification suite.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "b1lab/harness.hpp"

using namespace b1lab;

namespace {

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

FuncExpr parse_or_die(const std::string& text) {
    try {
        return parse(text);
    } catch (const std::exception& e) {
        std::cerr << "error: cannot parse function literal: " << e.what() << "\n";
        std::exit(2);
    }
}

int cmd_norm(const Config& cfg, const std::string& space, double p, double q, double s,
             unsigned n, const std::string& literal) {
    const FuncExpr f = parse_or_die(literal);
    const DiskRule rule(cfg.R, cfg.M);
    const AGrid agrid{cfg.agrid_radii, cfg.agrid_angles};
    double value = 0.0, err = 0.0;
    if (space == "Hp") {
        const QuadResult r = norm_hardy(f, p, cfg.M, cfg.hardy_cross);
        value = r.value;
        err = r.err_est;
    } else if (space == "Hinf") {
        value = norm_sup(f);
    } else if (space == "Ap") {
        const QuadResult r = norm_bergman(f, p, rule);
        value = r.value;
        err = r.err_est;
    } else if (space == "Dp") {
        const QuadResult r = norm_dirichlet_type(f, p, rule);
        value = r.value;
        err = r.err_est;
    } else if (space == "Bp") {
        const QuadResult r = norm_besov(f, p, rule);
        value = r.value;
        err = r.err_est;
    } else if (space == "B1") {
        const QuadResult r = norm_b1(f, rule);
        value = r.value;
        err = r.err_est;
    } else if (space == "Bloch") {
        const QuadResult r = norm_bloch(f, rule);
        value = r.value;
        err = r.err_est;
    } else if (space == "S1") {
        const QuadResult r = norm_s1(f, cfg.M, cfg.hardy_cross);
        value = r.value;
        err = r.err_est;
    } else if (space == "Zp") {
        const SupNorm r = norm_zp(f, p, rule, agrid);
        value = r.value;
        err = r.err_est;
    } else if (space == "Z1alt") {
        const SupNorm r = norm_z1_alt(f, rule, agrid);
        value = r.value;
        err = r.err_est;
    } else if (space == "Fpqs") {
        const SupNorm r = norm_fpqs(f, p, q, s, n, rule, agrid);
        value = r.value;
        err = r.err_est;
    } else {
        std::cerr << "error: unknown space tag '" << space << "'\n";
        return 2;
    }
    std::printf("%.15g %.3g\n", value, err);
    return 0;
}

int cmd_apply(const Config& cfg, const std::string& opname, const std::string& symbol,
              const std::string& literal, std::size_t N) {
    const auto kind = op_from_name(opname);
    if (!kind) {
        std::cerr << "error: unknown operator '" << opname << "'\n";
        return 2;
    }
    OperatorSpec op{*kind, std::nullopt};
    if (*kind == OpKind::Tg || *kind == OpKind::Ig || *kind == OpKind::Mg ||
        *kind == OpKind::Cphi) {
        if (symbol.empty()) {
            std::cerr << "error: operator " << opname << " needs --symbol\n";
            return 2;
        }
        op = *kind == OpKind::Cphi ? OperatorSpec::cphi(parse_or_die(symbol))
                                   : OperatorSpec{*kind, parse_or_die(symbol)};
    }
    const TaylorSeries fs = to_series(parse_or_die(literal), N).series;
    const TaylorSeries out = apply(op, fs, N);
    (void)cfg;
    for (std::size_t k = 0; k <= out.degree(); ++k)
        std::printf("%zu %s\n", k, format_complex(out.coeff(k)).c_str());
    return 0;
}

int cmd_opnorm(const Config& cfg, const std::string& opname, const std::string& symbol) {
    const auto kind = op_from_name(opname);
    if (!kind) {
        std::cerr << "error: unknown operator '" << opname << "'\n";
        return 2;
    }
    OperatorSpec op{*kind, std::nullopt};
    if (!symbol.empty()) op = OperatorSpec{*kind, parse_or_die(symbol)};
    const DiskRule rule(cfg.R, cfg.M);
    const AGrid agrid{cfg.agrid_radii, cfg.agrid_angles};
    Corpus::Spec spec;
    spec.monomial_max = 8;
    spec.atom_radii = {0.5, 0.7};
    spec.atom_angles = 4;
    spec.atom_combos = 4;
    spec.random_polys = 4;
    spec.poly_degree = 12;
    const Corpus corpus = Corpus::standard(cfg.seed, spec);
    const BoundReport rep = opnorm_lower(op, corpus, cfg.N, rule, agrid, cfg.c_ig);

    nlohmann::ordered_json j;
    j["op"] = opname;
    if (!symbol.empty()) j["symbol"] = symbol;
    j["lower"] = rep.lower;
    if (rep.upper) j["upper"] = *rep.upper;
    j["witness"] = rep.witness;
    j["err_est"] = rep.err_est;
    for (const auto& [k, v] : rep.constants) j["constants"][k] = v;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_essnorm(const Config& cfg, const std::string& opname, const std::string& symbol,
                const std::string& radii_csv) {
    const FuncExpr g = parse_or_die(symbol);
    const DiskRule rule(cfg.R, cfg.M);
    const std::vector<double> radii = parse_double_list(radii_csv);
    if (opname == "Tg") {
        for (const DecayRow& row : tg_essnorm_decay(g, radii, rule))
            std::printf("%.6g %.15g %.3g\n", row.r, row.value, row.err_est);
        return 0;
    }
    if (opname == "Ig") {
        const BoundarySup sup = sup_boundary(g, 0);
        std::vector<cplx> a_seq;
        for (double rr : radii) a_seq.push_back(std::polar(rr, sup.theta));
        const IgEssReport rep = ig_essnorm_lower(g, a_seq, rule);
        for (const auto& row : rep.rows)
            std::printf("%s %.15g %.15g\n", format_complex(row.a).c_str(), row.g_abs,
                        row.witness_norm);
        std::printf("lower %.15g\n", rep.value);
        return 0;
    }
    std::cerr << "error: essnorm supports Tg and Ig\n";
    return 2;
}

int cmd_portrait(const Config& cfg, const std::string& opname, const std::string& symbol,
                 const std::string& rect_csv, double step, const std::string& out_path,
                 const std::string& annulus_csv) {
    const auto kind = op_from_name(opname);
    if (!kind || (*kind != OpKind::Mg && *kind != OpKind::Ig)) {
        std::cerr << "error: portrait supports Mg and Ig\n";
        return 2;
    }
    const std::vector<double> rect = parse_double_list(rect_csv);
    if (rect.size() != 4) {
        std::cerr << "error: --rect expects x0,x1,y0,y1\n";
        return 2;
    }
    PortraitOptions opt;
    opt.N = cfg.N;
    opt.winding_M = cfg.winding_M;
    opt.blowup_lb = cfg.blowup_lb;
    opt.coeff_growth = cfg.coeff_growth;
    if (!annulus_csv.empty()) {
        const auto ann = parse_double_list(annulus_csv);
        if (ann.size() != 2) {
            std::cerr << "error: --exclude-annulus expects lo,hi\n";
            return 2;
        }
        opt.annulus_lo = ann[0];
        opt.annulus_hi = ann[1];
    }
    const DiskRule rule(cfg.portrait_R, cfg.portrait_M);
    Corpus::Spec spec;
    spec.monomial_max = 2;
    spec.atom_radii = {0.5};
    spec.atom_angles = 1;
    spec.shifted_atoms = false;
    spec.atom_combos = 1;
    spec.combo_atoms = 2;
    spec.random_polys = 1;
    spec.poly_degree = 6;
    const Corpus corpus = Corpus::standard(cfg.seed, spec);
    const Portrait p = resolvent_portrait(*kind, parse_or_die(symbol), rect[0], rect[1], rect[2],
                                          rect[3], step, corpus, rule, opt);
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 2;
    }
    out << portrait_csv(p);
    std::cout << "wrote " << p.cells.size() << " cells to " << out_path << "\n";
    return 0;
}

int cmd_search(const Config& cfg, const std::string& target, std::size_t iters,
               std::uint64_t seed, const std::string& family) {
    if (target != "product-constant") {
        std::cerr << "error: unknown search target '" << target << "'\n";
        return 2;
    }
    const SearchFamily fam = family == "poly2" ? SearchFamily::Poly2 : SearchFamily::Atoms3;
    const DiskRule search_rule(cfg.search_R, cfg.search_M);
    const DiskRule final_rule(cfg.R, cfg.M);
    const SearchReport rep = product_constant_search(seed, iters, fam, search_rule, final_rule);
    nlohmann::ordered_json j;
    j["best_ratio"] = rep.best_ratio;
    j["ceiling"] = rep.ceiling;
    j["witness_f"] = rep.witness_f;
    j["witness_g"] = rep.witness_g;
    j["err_est"] = rep.err_est;
    j["evaluations"] = rep.evaluations;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_verify(const Config& cfg, const std::string& suite, const std::string& out_path) {
    std::vector<std::string> ids;
    if (suite == "all") {
        ids = all_check_ids();
    } else {
        std::stringstream ss(suite);
        std::string item;
        while (std::getline(ss, item, ',')) ids.push_back(item);
        for (const std::string& id : ids)
            if (!is_known_check(id)) {
                std::cerr << "error: unknown check id '" << id << "'\n";
                return 2;
            }
    }
    const Report rep = run_suite(ids, cfg);
    for (const CheckResult& c : rep.checks)
        std::printf("%-8s %s  measured=%.6g bound=%.6g (%.0f ms)%s%s\n", c.id.c_str(),
                    c.pass ? "PASS" : "FAIL", c.measured, c.bound, c.runtime_ms,
                    c.note.empty() ? "" : "  -- ", c.note.c_str());
    std::printf("%zu/%zu checks passed\n", rep.passed, rep.checks.size());
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 2;
        }
        out << (out_path.size() > 4 && out_path.substr(out_path.size() - 4) == ".csv"
                    ? emit_csv(rep)
                    : emit_json(rep));
    }
    return rep.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for integral operators on the minimal Moebius invariant "
                 "space"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "key=value configuration file");

    std::string space = "B1", literal, opname, symbol;
    double p = 1.0, q = -1.0, s = 1.0;
    unsigned n = 1;
    std::size_t N = 64;

    CLI::App* norm = app.add_subcommand("norm", "evaluate a function-space norm");
    norm->add_option("--space", space, "Hp|Hinf|Ap|Dp|Bp|B1|Bloch|S1|Zp|Z1alt|Fpqs");
    norm->add_option("--p", p);
    norm->add_option("--q", q);
    norm->add_option("--s", s);
    norm->add_option("--n", n);
    norm->add_option("--f", literal, "function literal")->required();

    CLI::App* apply_cmd = app.add_subcommand("apply", "apply an operator to a series");
    apply_cmd->add_option("--op", opname, "Tg|Ig|Mg|Cphi|D|Tz|P")->required();
    apply_cmd->add_option("--symbol", symbol, "symbol literal (Tg/Ig/Mg/Cphi)");
    apply_cmd->add_option("--f", literal)->required();
    apply_cmd->add_option("--N", N, "truncation degree");

    CLI::App* opnorm_cmd = app.add_subcommand("opnorm", "operator-norm bound report");
    opnorm_cmd->add_option("--op", opname)->required();
    opnorm_cmd->add_option("--symbol", symbol);

    std::string radii = "0.9,0.99,0.999";
    CLI::App* essnorm_cmd = app.add_subcommand("essnorm", "essential-norm probes");
    essnorm_cmd->add_option("--op", opname, "Tg|Ig")->required();
    essnorm_cmd->add_option("--symbol", symbol)->required();
    essnorm_cmd->add_option("--radii", radii);

    std::string rect = "-2,2,-2,2", out_path, annulus;
    double step = 0.1;
    CLI::App* portrait_cmd = app.add_subcommand("portrait", "resolvent-norm portrait CSV");
    portrait_cmd->add_option("--op", opname, "Mg|Ig")->required();
    portrait_cmd->add_option("--symbol", symbol)->required();
    portrait_cmd->add_option("--rect", rect, "x0,x1,y0,y1");
    portrait_cmd->add_option("--step", step);
    portrait_cmd->add_option("--out", out_path)->required();
    portrait_cmd->add_option("--exclude-annulus", annulus, "lo,hi moduli to skip");

    std::string target = "product-constant", family = "atoms";
    std::size_t iters = 20;
    std::uint64_t seed = 1905;
    CLI::App* search_cmd = app.add_subcommand("search", "maximize the product-norm ratio");
    search_cmd->add_option("--target", target);
    search_cmd->add_option("--iters", iters);
    search_cmd->add_option("--seed", seed);
    search_cmd->add_option("--family", family, "atoms|poly2");

    std::string suite = "all", report_path;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the verification suite");
    verify_cmd->add_option("--suite", suite, "all or comma-separated check ids");
    verify_cmd->add_option("--out", report_path, "report file (.json or .csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Config cfg;
    if (!config_path.empty()) {
        try {
            cfg = Config::load(config_path);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }

    try {
        if (norm->parsed()) return cmd_norm(cfg, space, p, q, s, n, literal);
        if (apply_cmd->parsed()) return cmd_apply(cfg, opname, symbol, literal, N);
        if (opnorm_cmd->parsed()) return cmd_opnorm(cfg, opname, symbol);
        if (essnorm_cmd->parsed()) return cmd_essnorm(cfg, opname, symbol, radii);
        if (portrait_cmd->parsed())
            return cmd_portrait(cfg, opname, symbol, rect, step, out_path, annulus);
        if (search_cmd->parsed()) return cmd_search(cfg, target, iters, seed, family);
        if (verify_cmd->parsed()) return cmd_verify(cfg, suite, report_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
