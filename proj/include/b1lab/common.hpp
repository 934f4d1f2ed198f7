#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace b1lab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Thrown when an input lies outside the domain an operation is defined on
/// (|a| >= 1 for a Moebius parameter, |z| > 1 for evaluation, and so on).
class DomainError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown by the function-literal parser; carries the byte offset of the
/// first offending character.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Thrown when a test function turns out not to be analytic past the closed
/// disk (boundary cross-checks disagree, integrand blows up at a node, ...).
class CorpusViolation : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_finite(cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Deterministic 64-bit generator (splitmix64). Distribution code is written
/// out explicitly so streams are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

    /// Uniform in the square [-1,1] x [-1,1]i.
    cplx unit_box() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

    /// Uniform on the disk of radius r (rejection-free polar with sqrt law).
    cplx disk(double r) {
        double rad = r * std::sqrt(uniform());
        double th = uniform(0.0, 2.0 * kPi);
        return std::polar(rad, th);
    }

private:
    std::uint64_t state_;
};

/// Stable stream seed derived from a base seed and a label.
std::uint64_t derive_seed(std::uint64_t base, const std::string& label);

/// Cascade (pairwise) summation; fixed order, resilient to cancellation.
double pairwise_sum(std::span<const double> v);
cplx pairwise_sum(std::span<const cplx> v);

/// In-place radix-2 FFT, sign = +1 evaluates sum a_m e^{+i m theta_j}.
/// Requires a.size() to be a power of two.
void fft_pow2(std::vector<cplx>& a, int sign);

/// Values of the polynomial sum_m coeffs[m] z^m at the M points r e^{2 pi i j/M},
/// j = 0..M-1. Uses the FFT when M is a power of two, Horner otherwise.
std::vector<cplx> eval_on_circle(std::span<const cplx> coeffs, double r, std::size_t M);

std::string format_complex(cplx z);

}  // namespace b1lab
