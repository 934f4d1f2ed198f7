#include "b1lab/taylor.hpp"

#include <algorithm>

namespace b1lab {

TaylorSeries::TaylorSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw DomainError("TaylorSeries: needs at least one coefficient");
    for (const cplx& c : coeffs_)
        if (!is_finite(c)) throw DomainError("TaylorSeries: non-finite coefficient");
}

TaylorSeries TaylorSeries::truncated(std::size_t max_degree) const {
    if (degree() <= max_degree) return *this;
    return TaylorSeries(std::vector<cplx>(coeffs_.begin(), coeffs_.begin() + max_degree + 1));
}

TaylorSeries TaylorSeries::trimmed() const {
    std::size_t n = coeffs_.size();
    while (n > 1 && coeffs_[n - 1] == cplx{0.0, 0.0}) --n;
    return TaylorSeries(std::vector<cplx>(coeffs_.begin(), coeffs_.begin() + n));
}

cplx eval(const TaylorSeries& s, cplx z) {
    if (std::abs(z) > 1.0 + 1e-12)
        throw DomainError("eval: point outside the closed unit disk");
    const auto& a = s.coeffs();
    cplx acc = a.back();
    for (std::size_t n = a.size() - 1; n-- > 0;) acc = acc * z + a[n];
    return acc;
}

TaylorSeries derivative(const TaylorSeries& s) {
    if (s.degree() == 0) return TaylorSeries::zero();
    std::vector<cplx> b(s.degree());
    for (std::size_t n = 0; n < b.size(); ++n)
        b[n] = static_cast<double>(n + 1) * s.coeff(n + 1);
    return TaylorSeries(std::move(b));
}

TaylorSeries antiderivative(const TaylorSeries& s) {
    std::vector<cplx> b(s.degree() + 2, cplx{0.0, 0.0});
    for (std::size_t n = 0; n <= s.degree(); ++n)
        b[n + 1] = s.coeff(n) / static_cast<double>(n + 1);
    return TaylorSeries(std::move(b));
}

TaylorSeries product(const TaylorSeries& s, const TaylorSeries& t, std::size_t max_degree,
                     bool* truncated) {
    if (truncated) *truncated = s.degree() + t.degree() > max_degree;
    const std::size_t out_deg = std::min(max_degree, s.degree() + t.degree());
    std::vector<cplx> c(out_deg + 1, cplx{0.0, 0.0});
    for (std::size_t j = 0; j <= s.degree(); ++j) {
        if (j > out_deg) break;
        const cplx sj = s.coeff(j);
        if (sj == cplx{0.0, 0.0}) continue;
        const std::size_t kmax = std::min(t.degree(), out_deg - j);
        for (std::size_t k = 0; k <= kmax; ++k) c[j + k] += sj * t.coeff(k);
    }
    return TaylorSeries(std::move(c));
}

TaylorSeries product_full(const TaylorSeries& s, const TaylorSeries& t) {
    return product(s, t, s.degree() + t.degree());
}

TaylorSeries compose(const TaylorSeries& s, const TaylorSeries& t, std::size_t max_degree) {
    if (t.coeff(0) != cplx{0.0, 0.0})
        throw DomainError("compose: inner series must fix the origin (constant term 0)");
    std::size_t top = s.degree();  // trailing zeros only pad the Horner loop
    while (top > 0 && s.coeff(top) == cplx{0.0, 0.0}) --top;
    TaylorSeries acc({s.coeff(top)});
    for (std::size_t n = top; n-- > 0;) {
        acc = product(acc, t, max_degree);
        std::vector<cplx> c = acc.coeffs();
        c[0] += s.coeff(n);
        acc = TaylorSeries(std::move(c));
    }
    // pad so the result always carries max_degree+1 entries
    std::vector<cplx> c = acc.coeffs();
    c.resize(max_degree + 1, cplx{0.0, 0.0});
    return TaylorSeries(std::move(c));
}

TaylorSeries moebius_series(cplx a, std::size_t N) {
    if (std::abs(a) >= 1.0) throw DomainError("moebius_series: requires |a| < 1");
    std::vector<cplx> c(N + 1);
    c[0] = a;
    const cplx abar = std::conj(a);
    const double one_minus = 1.0 - std::norm(a);
    cplx pw{1.0, 0.0};
    for (std::size_t n = 1; n <= N; ++n) {
        c[n] = -one_minus * pw;
        pw *= abar;
    }
    return TaylorSeries(std::move(c));
}

TaylorSeries dilate(const TaylorSeries& s, double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("dilate: requires r in [0, 1]");
    std::vector<cplx> c(s.degree() + 1);
    double rn = 1.0;
    for (std::size_t n = 0; n <= s.degree(); ++n) {
        c[n] = s.coeff(n) * rn;
        rn *= r;
    }
    return TaylorSeries(std::move(c));
}

TaylorSeries add(const TaylorSeries& s, const TaylorSeries& t) {
    std::vector<cplx> c(std::max(s.degree(), t.degree()) + 1);
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = s.coeff(n) + t.coeff(n);
    return TaylorSeries(std::move(c));
}

TaylorSeries sub(const TaylorSeries& s, const TaylorSeries& t) {
    std::vector<cplx> c(std::max(s.degree(), t.degree()) + 1);
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = s.coeff(n) - t.coeff(n);
    return TaylorSeries(std::move(c));
}

TaylorSeries scale(const TaylorSeries& s, cplx c) {
    std::vector<cplx> v = s.coeffs();
    for (cplx& x : v) x *= c;
    return TaylorSeries(std::move(v));
}

double max_coeff_diff(const TaylorSeries& s, const TaylorSeries& t) {
    double m = 0.0;
    const std::size_t top = std::max(s.degree(), t.degree());
    for (std::size_t n = 0; n <= top; ++n) m = std::max(m, std::abs(s.coeff(n) - t.coeff(n)));
    return m;
}

}  // namespace b1lab
