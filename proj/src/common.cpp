#include "b1lab/common.hpp"

#include <algorithm>
#include <cstdio>

namespace b1lab {

std::uint64_t derive_seed(std::uint64_t base, const std::string& label) {
    // FNV-1a over the label, folded into the base seed.
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return base ^ h;
}

namespace {

template <typename T>
T pairwise_sum_impl(std::span<const T> v) {
    if (v.empty()) return T{};
    if (v.size() <= 8) {
        T s{};
        for (const T& x : v) s += x;
        return s;
    }
    std::size_t half = v.size() / 2;
    return pairwise_sum_impl(v.subspan(0, half)) + pairwise_sum_impl(v.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> v) { return pairwise_sum_impl(v); }
cplx pairwise_sum(std::span<const cplx> v) { return pairwise_sum_impl(v); }

void fft_pow2(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_pow2: size must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * kPi / static_cast<double>(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

std::vector<cplx> eval_on_circle(std::span<const cplx> coeffs, double r, std::size_t M) {
    const bool pow2 = M > 0 && (M & (M - 1)) == 0;
    if (pow2) {
        // Scale by r^m and fold indices mod M: z^(m) and z^(m mod M) coincide
        // on the M-th roots of unity, so folding gives exact values.
        std::vector<cplx> buf(M, cplx{0.0, 0.0});
        double rm = 1.0;
        for (std::size_t m = 0; m < coeffs.size(); ++m) {
            buf[m % M] += coeffs[m] * rm;
            rm *= r;
        }
        fft_pow2(buf, +1);
        return buf;
    }
    std::vector<cplx> out(M);
    for (std::size_t j = 0; j < M; ++j) {
        const cplx z = std::polar(r, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(M));
        cplx acc{0.0, 0.0};
        for (std::size_t m = coeffs.size(); m-- > 0;) acc = acc * z + coeffs[m];
        out[j] = acc;
    }
    return out;
}

std::string format_complex(cplx z) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

}  // namespace b1lab
