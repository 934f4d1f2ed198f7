#include "b1lab/funcexpr.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace b1lab {

namespace {

using Node = FuncExpr::Node;
using Kind = FuncExpr::Kind;

constexpr double kSelfMapTol = 1e-9;

std::shared_ptr<const Node> make_node(Node n) {
    return std::make_shared<const Node>(std::move(n));
}

std::array<cplx, 3> eval_all(const Node& n, cplx z);

double boundary_max_modulus(const Node& n, std::size_t grid) {
    double m = 0.0;
    for (std::size_t j = 0; j < grid; ++j) {
        const cplx z = std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid));
        m = std::max(m, std::abs(eval_all(n, z)[0]));
    }
    return m;
}

}  // namespace

FuncExpr FuncExpr::constant(cplx c) {
    if (!is_finite(c)) throw DomainError("FuncExpr: non-finite constant");
    Node n;
    n.kind = Kind::Const;
    n.c = c;
    return FuncExpr(make_node(std::move(n)));
}

FuncExpr FuncExpr::poly(std::vector<cplx> coeffs) {
    if (coeffs.empty()) throw DomainError("FuncExpr: empty polynomial");
    for (cplx c : coeffs)
        if (!is_finite(c)) throw DomainError("FuncExpr: non-finite polynomial coefficient");
    Node n;
    n.kind = Kind::Poly;
    n.coeffs = std::move(coeffs);
    return FuncExpr(make_node(std::move(n)));
}

FuncExpr FuncExpr::moebius(cplx a) {
    if (std::abs(a) >= 1.0) throw DomainError("FuncExpr: Moebius center must satisfy |a| < 1");
    Node n;
    n.kind = Kind::Moebius;
    n.c = a;
    return FuncExpr(make_node(std::move(n)));
}

FuncExpr FuncExpr::atoms(std::vector<std::pair<cplx, cplx>> weighted_centers) {
    if (weighted_centers.empty()) throw DomainError("FuncExpr: empty atom list");
    for (const auto& [w, a] : weighted_centers) {
        if (!is_finite(w) || !is_finite(a)) throw DomainError("FuncExpr: non-finite atom");
        if (std::abs(a) >= 1.0) throw DomainError("FuncExpr: atom center must satisfy |a| < 1");
    }
    Node n;
    n.kind = Kind::Atoms;
    n.atoms = std::move(weighted_centers);
    return FuncExpr(make_node(std::move(n)));
}

FuncExpr FuncExpr::sum(FuncExpr l, FuncExpr r) {
    Node n;
    n.kind = Kind::Sum;
    n.left = l.node_;
    n.right = r.node_;
    return FuncExpr(make_node(std::move(n)));
}

FuncExpr FuncExpr::prod(FuncExpr l, FuncExpr r) {
    Node n;
    n.kind = Kind::Prod;
    n.left = l.node_;
    n.right = r.node_;
    return FuncExpr(make_node(std::move(n)));
}

FuncExpr FuncExpr::compose(FuncExpr outer, FuncExpr inner) {
    if (boundary_max_modulus(*inner.node_, 1024) > 1.0 + kSelfMapTol)
        throw DomainError("FuncExpr: composition inner part is not a self-map of the disk");
    Node n;
    n.kind = Kind::Compose;
    n.left = outer.node_;
    n.right = inner.node_;
    return FuncExpr(make_node(std::move(n)));
}

FuncExpr FuncExpr::dilate(double r, FuncExpr inner) {
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("FuncExpr: dilation factor must be in [0, 1]");
    Node n;
    n.kind = Kind::Dilate;
    n.r = r;
    n.left = inner.node_;
    return FuncExpr(make_node(std::move(n)));
}

FuncExpr::Kind FuncExpr::kind() const { return node_->kind; }

bool operator==(const FuncExpr& a, const FuncExpr& b) {
    std::function<bool(const Node&, const Node&)> eq = [&](const Node& x, const Node& y) {
        if (x.kind != y.kind) return false;
        switch (x.kind) {
            case Kind::Const:
            case Kind::Moebius:
                return x.c == y.c;
            case Kind::Poly:
                return x.coeffs == y.coeffs;
            case Kind::Atoms:
                return x.atoms == y.atoms;
            case Kind::Dilate:
                return x.r == y.r && eq(*x.left, *y.left);
            case Kind::Sum:
            case Kind::Prod:
            case Kind::Compose:
                return eq(*x.left, *y.left) && eq(*x.right, *y.right);
        }
        return false;
    };
    return eq(*a.node_, *b.node_);
}

// ---------------------------------------------------------------------------
// closed-form evaluation
// ---------------------------------------------------------------------------

namespace {

std::array<cplx, 3> moebius_all(cplx a, cplx z) {
    const cplx d = 1.0 - std::conj(a) * z;
    const double om = 1.0 - std::norm(a);
    const cplx d2 = d * d;
    return {(a - z) / d, -om / d2, -2.0 * std::conj(a) * om / (d2 * d)};
}

std::array<cplx, 3> eval_all(const Node& n, cplx z) {
    switch (n.kind) {
        case Kind::Const:
            return {n.c, 0.0, 0.0};
        case Kind::Poly: {
            const auto& p = n.coeffs;
            cplx b = p.back(), c1 = 0.0, c2 = 0.0;
            for (std::size_t k = p.size() - 1; k-- > 0;) {
                c2 = c2 * z + c1;
                c1 = c1 * z + b;
                b = b * z + p[k];
            }
            return {b, c1, 2.0 * c2};
        }
        case Kind::Moebius:
            return moebius_all(n.c, z);
        case Kind::Atoms: {
            std::array<cplx, 3> acc{0.0, 0.0, 0.0};
            for (const auto& [w, a] : n.atoms) {
                const auto m = moebius_all(a, z);
                for (int k = 0; k < 3; ++k) acc[k] += w * m[k];
            }
            return acc;
        }
        case Kind::Sum: {
            const auto l = eval_all(*n.left, z), r = eval_all(*n.right, z);
            return {l[0] + r[0], l[1] + r[1], l[2] + r[2]};
        }
        case Kind::Prod: {
            const auto l = eval_all(*n.left, z), r = eval_all(*n.right, z);
            return {l[0] * r[0], l[1] * r[0] + l[0] * r[1],
                    l[2] * r[0] + 2.0 * l[1] * r[1] + l[0] * r[2]};
        }
        case Kind::Compose: {
            const auto i = eval_all(*n.right, z);
            const auto o = eval_all(*n.left, i[0]);
            return {o[0], o[1] * i[1], o[2] * i[1] * i[1] + o[1] * i[2]};
        }
        case Kind::Dilate: {
            const auto v = eval_all(*n.left, n.r * z);
            return {v[0], n.r * v[1], n.r * n.r * v[2]};
        }
    }
    throw std::logic_error("eval_all: unreachable");
}

}  // namespace

cplx eval_closed(const FuncExpr& e, cplx z, unsigned order) {
    if (order > 2) throw DomainError("eval_closed: order must be 0, 1 or 2");
    if (std::abs(z) > 1.0 + 1e-12)
        throw DomainError("eval_closed: point outside the closed unit disk");
    return eval_all(e.node(), z)[order];
}

cplx value_at_zero(const FuncExpr& e) { return eval_closed(e, cplx{0.0, 0.0}, 0); }

// ---------------------------------------------------------------------------
// series conversion with tail bounds
// ---------------------------------------------------------------------------

namespace {

// sup bound S >= sup_{|z|<=1} |f|, Lipschitz bound L >= sup |f'|, and tail
// bound T >= sup |f - series| over the closed disk.
struct Expansion {
    TaylorSeries series;
    double S, L, T;
};

double abs_sum(const std::vector<cplx>& v, std::size_t from = 0) {
    double s = 0.0;
    for (std::size_t n = from; n < v.size(); ++n) s += std::abs(v[n]);
    return s;
}

Expansion expand(const Node& n, std::size_t N);

Expansion expand(const Node& n, std::size_t N) {
    switch (n.kind) {
        case Kind::Const: {
            std::vector<cplx> c(N + 1, cplx{0.0, 0.0});
            c[0] = n.c;
            return {TaylorSeries(std::move(c)), std::abs(n.c), 0.0, 0.0};
        }
        case Kind::Poly: {
            std::vector<cplx> c(N + 1, cplx{0.0, 0.0});
            for (std::size_t k = 0; k < n.coeffs.size() && k <= N; ++k) c[k] = n.coeffs[k];
            double L = 0.0;
            for (std::size_t k = 1; k < n.coeffs.size(); ++k)
                L += static_cast<double>(k) * std::abs(n.coeffs[k]);
            return {TaylorSeries(std::move(c)), abs_sum(n.coeffs), L,
                    n.coeffs.size() > N + 1 ? abs_sum(n.coeffs, N + 1) : 0.0};
        }
        case Kind::Moebius: {
            const double aa = std::abs(n.c);
            return {moebius_series(n.c, N), 1.0, (1.0 + aa) / (1.0 - aa),
                    (1.0 + aa) * std::pow(aa, static_cast<double>(N))};
        }
        case Kind::Atoms: {
            TaylorSeries acc = TaylorSeries::zero(N);
            double S = 0.0, L = 0.0, T = 0.0;
            for (const auto& [w, a] : n.atoms) {
                acc = add(acc, scale(moebius_series(a, N), w));
                const double aw = std::abs(w), aa = std::abs(a);
                S += aw;
                L += aw * (1.0 + aa) / (1.0 - aa);
                T += aw * (1.0 + aa) * std::pow(aa, static_cast<double>(N));
            }
            return {acc.truncated(N), S, L, T};
        }
        case Kind::Sum: {
            auto l = expand(*n.left, N), r = expand(*n.right, N);
            return {add(l.series, r.series), l.S + r.S, l.L + r.L, l.T + r.T};
        }
        case Kind::Prod: {
            auto l = expand(*n.left, N), r = expand(*n.right, N);
            TaylorSeries full = product_full(l.series, r.series);
            double dropped = 0.0;
            for (std::size_t k = N + 1; k <= full.degree(); ++k) dropped += std::abs(full.coeff(k));
            return {full.truncated(N), l.S * r.S, l.L * r.S + l.S * r.L,
                    l.T * r.S + l.S * r.T + l.T * r.T + dropped};
        }
        case Kind::Compose: {
            auto i = expand(*n.right, N);
            auto o = expand(*n.left, N);
            if (i.series.coeff(0) != cplx{0.0, 0.0}) {
                // inner part moves the origin: series composition would need
                // every outer coefficient, so sample and project instead
                SeriesApprox pr = project_series([&n](cplx z) { return eval_all(n, z)[0]; }, N);
                return {std::move(pr.series), o.S, o.L * i.L, pr.tail_bound};
            }
            // Horner composition, tracking the mass dropped at each truncation.
            // An error introduced with k multiplications by the inner series
            // still ahead inflates by at most max(1, sum|inner coeffs|)^k.
            const double grow = std::max(1.0, abs_sum(i.series.coeffs()) + i.T);
            const auto& oc = o.series.coeffs();
            TaylorSeries acc({oc.back()});
            double drop = 0.0;
            for (std::size_t k = oc.size() - 1; k-- > 0;) {
                TaylorSeries full = product_full(acc, i.series);
                double d = 0.0;
                for (std::size_t m = N + 1; m <= full.degree(); ++m) d += std::abs(full.coeff(m));
                drop += d * std::pow(grow, static_cast<double>(k));
                std::vector<cplx> c = full.truncated(N).coeffs();
                c[0] += oc[k];
                acc = TaylorSeries(std::move(c));
            }
            std::vector<cplx> c = acc.coeffs();
            c.resize(N + 1, cplx{0.0, 0.0});
            return {TaylorSeries(std::move(c)), o.S, o.L * i.L, o.T + o.L * i.T + drop};
        }
        case Kind::Dilate: {
            auto in = expand(*n.left, N);
            return {dilate(in.series, n.r), in.S, n.r * in.L, in.T};
        }
    }
    throw std::logic_error("expand: unreachable");
}

}  // namespace

SeriesApprox to_series(const FuncExpr& e, std::size_t N) {
    Expansion ex = expand(e.node(), N);
    // allowance for double-precision roundoff in assembling the coefficients
    const double slack = 1e-12 * std::max(1.0, ex.S) * static_cast<double>(N + 1);
    return {std::move(ex.series), ex.T + slack};
}

SeriesApprox project_series(const std::function<cplx(cplx)>& f, std::size_t N, double rho,
                            double rho_check) {
    const std::size_t M = 4 * (N > 0 ? N : 1);
    auto coeffs_at = [&](double r) {
        std::vector<cplx> samples(M);
        for (std::size_t j = 0; j < M; ++j) {
            const cplx z =
                std::polar(r, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(M));
            samples[j] = f(z);
            if (!is_finite(samples[j]))
                throw CorpusViolation("project_series: non-finite sample at " + format_complex(z));
        }
        std::vector<cplx> c(N + 1);
        for (std::size_t n = 0; n <= N; ++n) {
            std::vector<cplx> terms(M);
            for (std::size_t j = 0; j < M; ++j) {
                const double ang =
                    -2.0 * kPi * static_cast<double>(n * j % M) / static_cast<double>(M);
                terms[j] = samples[j] * cplx{std::cos(ang), std::sin(ang)};
            }
            c[n] = pairwise_sum(std::span<const cplx>(terms)) /
                   (static_cast<double>(M) * std::pow(r, static_cast<double>(n)));
        }
        return c;
    };
    std::vector<cplx> main = coeffs_at(rho);
    std::vector<cplx> check = coeffs_at(rho_check);
    double diff = 0.0;
    for (std::size_t n = 0; n <= N; ++n) diff += std::abs(main[n] - check[n]);
    // geometric extrapolation of the untruncated tail from the last coefficients
    double head = 0.0, tip = std::abs(main[N]);
    for (std::size_t n = N >= 8 ? N - 8 : 0; n <= N; ++n) head = std::max(head, std::abs(main[n]));
    double q = head > 0.0 ? std::pow(tip / head, 1.0 / 8.0) : 0.0;
    q = std::clamp(q, 0.0, 0.97);
    const double tail_geo = tip * q / (1.0 - q);
    return {TaylorSeries(std::move(main)), diff + 10.0 * tail_geo + 1e-12};
}

std::optional<std::size_t> polynomial_degree(const FuncExpr& e) {
    std::function<std::optional<std::size_t>(const Node&)> deg =
        [&](const Node& n) -> std::optional<std::size_t> {
        switch (n.kind) {
            case Kind::Const:
                return 0;
            case Kind::Poly: {
                std::size_t d = n.coeffs.size() - 1;
                while (d > 0 && n.coeffs[d] == cplx{0.0, 0.0}) --d;
                return d;
            }
            case Kind::Moebius:
            case Kind::Atoms:
                return std::nullopt;
            case Kind::Sum: {
                auto l = deg(*n.left), r = deg(*n.right);
                if (!l || !r) return std::nullopt;
                return std::max(*l, *r);
            }
            case Kind::Prod: {
                auto l = deg(*n.left), r = deg(*n.right);
                if (!l || !r) return std::nullopt;
                return *l + *r;
            }
            case Kind::Compose: {
                auto l = deg(*n.left), r = deg(*n.right);
                if (!l || !r) return std::nullopt;
                return *l * *r;
            }
            case Kind::Dilate:
                return deg(*n.left);
        }
        return std::nullopt;
    };
    return deg(e.node());
}

// ---------------------------------------------------------------------------
// parser / renderer
// ---------------------------------------------------------------------------

namespace {

class Parser {
public:
    explicit Parser(std::string text) : text_(std::move(text)) {}

    FuncExpr run() {
        FuncExpr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool try_eat(std::string_view kw) {
        skip_ws();
        if (text_.compare(pos_, kw.size(), kw) == 0) {
            pos_ += kw.size();
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    // Numbers within complex literals are compact (no interior whitespace).
    std::optional<double> try_number() {
        std::size_t p = pos_;
        if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
        double v = 0.0;
        auto [end, ec] = std::from_chars(text_.data() + p, text_.data() + text_.size(), v);
        if (ec != std::errc{} || end == text_.data() + p) return std::nullopt;
        if (text_[pos_] == '-') v = -v;
        pos_ = static_cast<std::size_t>(end - text_.data());
        return v;
    }

    double parse_real() {
        skip_ws();
        auto v = try_number();
        if (!v) fail("expected a number");
        return *v;
    }

    std::optional<cplx> try_parse_complex() {
        const std::size_t mark = pos_;
        skip_ws();
        if (!try_number()) {
            pos_ = mark;
            return std::nullopt;
        }
        pos_ = mark;
        return parse_complex();
    }

    cplx parse_complex() {
        skip_ws();
        auto first = try_number();
        if (!first) fail("expected a complex literal");
        if (pos_ < text_.size() && text_[pos_] == 'i') {
            ++pos_;
            return {0.0, *first};
        }
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
            const std::size_t mark = pos_;
            auto second = try_number();
            if (second && pos_ < text_.size() && text_[pos_] == 'i') {
                ++pos_;
                return {*first, *second};
            }
            pos_ = mark;  // the sign belongs to the enclosing expression
        }
        return {*first, 0.0};
    }

    FuncExpr parse_expr() {
        FuncExpr e = parse_term();
        for (;;) {
            if (try_eat("+")) {
                e = FuncExpr::sum(std::move(e), parse_term());
            } else if (peek() == '-') {
                ++pos_;
                e = FuncExpr::sum(std::move(e),
                                  FuncExpr::prod(FuncExpr::constant(-1.0), parse_term()));
            } else {
                break;
            }
        }
        return e;
    }

    FuncExpr parse_term() {
        FuncExpr e = parse_atom();
        for (;;) {
            if (try_eat("\xE2\x88\x98")) {  // compose sign
                e = FuncExpr::compose(std::move(e), parse_atom());
            } else if (try_eat("*")) {
                e = FuncExpr::prod(std::move(e), parse_atom());
            } else {
                break;
            }
        }
        return e;
    }

    FuncExpr parse_atom() {
        skip_ws();
        if (try_eat("poly:")) {
            std::vector<cplx> cs;
            cs.push_back(parse_complex());
            // a comma may belong to an enclosing compose(...) or prod(...);
            // it only continues the list when a literal follows
            for (;;) {
                const std::size_t mark = pos_;
                if (!try_eat(",")) break;
                auto v = try_parse_complex();
                if (!v) {
                    pos_ = mark;
                    break;
                }
                cs.push_back(*v);
            }
            return FuncExpr::poly(std::move(cs));
        }
        if (try_eat("moebius:")) return FuncExpr::moebius(parse_complex());
        if (try_eat("atoms:")) {
            std::vector<std::pair<cplx, cplx>> pairs;
            do {
                cplx w = parse_complex();
                expect('*');
                cplx a = parse_complex();
                pairs.emplace_back(w, a);
            } while (try_eat(";"));
            return FuncExpr::atoms(std::move(pairs));
        }
        if (try_eat("dilate:")) {
            double r = parse_real();
            expect(':');
            return FuncExpr::dilate(r, parse_expr());
        }
        if (try_eat("const:")) return FuncExpr::constant(parse_complex());
        if (try_eat("compose(")) {
            FuncExpr outer = parse_expr();
            expect(',');
            FuncExpr inner = parse_expr();
            expect(')');
            return FuncExpr::compose(std::move(outer), std::move(inner));
        }
        if (try_eat("prod(")) {
            FuncExpr l = parse_expr();
            expect(',');
            FuncExpr r = parse_expr();
            expect(')');
            return FuncExpr::prod(std::move(l), std::move(r));
        }
        if (try_eat("(")) {
            FuncExpr e = parse_expr();
            expect(')');
            return e;
        }
        fail("expected an atom");
    }

    std::string text_;
    std::size_t pos_ = 0;
};

std::string normalize_minus(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size();) {
        if (raw.compare(i, 3, "\xE2\x88\x92") == 0) {  // U+2212 minus sign
            out.push_back('-');
            i += 3;
        } else {
            out.push_back(raw[i]);
            ++i;
        }
    }
    return out;
}

std::string fmt_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

FuncExpr parse(const std::string& text) { return Parser(normalize_minus(text)).run(); }

std::string render(const FuncExpr& e) {
    std::function<std::string(const Node&)> go = [&](const Node& x) -> std::string {
        switch (x.kind) {
            case Kind::Const:
                return "const:" + format_complex(x.c);
            case Kind::Poly: {
                std::string s = "poly:";
                for (std::size_t k = 0; k < x.coeffs.size(); ++k) {
                    if (k) s += ',';
                    s += format_complex(x.coeffs[k]);
                }
                return s;
            }
            case Kind::Moebius:
                return "moebius:" + format_complex(x.c);
            case Kind::Atoms: {
                std::string s = "atoms:";
                for (std::size_t k = 0; k < x.atoms.size(); ++k) {
                    if (k) s += ';';
                    s += format_complex(x.atoms[k].first) + "*" + format_complex(x.atoms[k].second);
                }
                return s;
            }
            case Kind::Sum:
                return "(" + go(*x.left) + "+" + go(*x.right) + ")";
            case Kind::Prod:
                return "prod(" + go(*x.left) + "," + go(*x.right) + ")";
            case Kind::Compose:
                return "compose(" + go(*x.left) + "," + go(*x.right) + ")";
            case Kind::Dilate:
                // dilate's trailing expr is greedy, so the whole atom gets
                // parenthesized to survive embedding in sums and products
                return "(dilate:" + fmt_real(x.r) + ":" + go(*x.left) + ")";
        }
        throw std::logic_error("render: unreachable");
    };
    return go(e.node());
}

}  // namespace b1lab
