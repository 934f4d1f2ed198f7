#pragma once

#include <vector>

#include "b1lab/common.hpp"

namespace b1lab {

/// Truncated complex power series sum_{n<=N} a_n z^n. coeff(n) is the
/// coefficient of z^n; degree() is N (so a constant has degree 0). All
/// coefficients are required to be finite. Immutable after construction.
class TaylorSeries {
public:
    explicit TaylorSeries(std::vector<cplx> coeffs);

    static TaylorSeries zero(std::size_t degree = 0) {
        return TaylorSeries(std::vector<cplx>(degree + 1, cplx{0.0, 0.0}));
    }

    std::size_t degree() const { return coeffs_.size() - 1; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }

    /// Coefficient of z^n; zero beyond the stored degree.
    cplx coeff(std::size_t n) const {
        return n < coeffs_.size() ? coeffs_[n] : cplx{0.0, 0.0};
    }

    TaylorSeries truncated(std::size_t max_degree) const;

    /// Drops trailing zero coefficients (keeps at least one entry).
    TaylorSeries trimmed() const;

private:
    std::vector<cplx> coeffs_;
};

/// Horner evaluation at |z| <= 1; rejects points outside the closed disk.
cplx eval(const TaylorSeries& s, cplx z);

/// Coefficient rule b_n = (n+1) a_{n+1}; degree drops by one.
TaylorSeries derivative(const TaylorSeries& s);

/// Primitive vanishing at 0: b_0 = 0, b_{n+1} = a_n/(n+1); degree grows by one.
TaylorSeries antiderivative(const TaylorSeries& s);

/// Cauchy product truncated at max_degree. When the inputs' degrees sum past
/// max_degree the optional flag reports that coefficients were discarded.
TaylorSeries product(const TaylorSeries& s, const TaylorSeries& t, std::size_t max_degree,
                     bool* truncated = nullptr);

/// Full Cauchy product, no truncation (degree = deg s + deg t).
TaylorSeries product_full(const TaylorSeries& s, const TaylorSeries& t);

/// Coefficients of s(t(z)) up to max_degree by Horner-style composition,
/// truncating at each step. Requires t's constant term to be exactly zero.
TaylorSeries compose(const TaylorSeries& s, const TaylorSeries& t, std::size_t max_degree);

/// Taylor coefficients of sigma_a(z) = (a - z)/(1 - conj(a) z) up to degree N:
/// c_0 = a, c_n = -(1-|a|^2) conj(a)^{n-1}. Requires |a| < 1.
TaylorSeries moebius_series(cplx a, std::size_t N);

/// a_n -> a_n r^n for r in [0, 1].
TaylorSeries dilate(const TaylorSeries& s, double r);

TaylorSeries add(const TaylorSeries& s, const TaylorSeries& t);
TaylorSeries sub(const TaylorSeries& s, const TaylorSeries& t);
TaylorSeries scale(const TaylorSeries& s, cplx c);

/// max_n |s_n - t_n| over the union of index ranges.
double max_coeff_diff(const TaylorSeries& s, const TaylorSeries& t);

}  // namespace b1lab
