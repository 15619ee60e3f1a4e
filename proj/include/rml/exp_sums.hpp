#pragma once

#include <complex>
#include <cstdint>
#include <vector>

// Evaluators for the quadratic exponential sums
//
//   R_{x0}(t)  = sum_{0<|n|<=N} e^{2 pi i (n^2 t + n x0)} / n^2        (period 1 in t)
//   Rt_{x0}(t) = i t + sum_{0<|n|<=N} (e^{i n^2 t} - 1)/n^2 e^{i n x0} (period 2 pi, drift i t)
//   W(t)       = sum_{n=1..N} cos(4^n t) / 2^n
//   G(p,b,q)   = sum_{r=0..q-1} e^{2 pi i (p r^2 + b r)/q}
//   S_M(t,x)   = sum_{|n|<=M} e^{i(n^2 t + n x)}
//
// Phases are reduced with double-double splitting (see dd.hpp) so that the
// fractional part of n^2 t is accurate even at n ~ 10^6. Terms are summed in
// symmetric +-n pairs with compensated accumulation.

namespace rml {

enum class SeriesKind { R, RTilde, Weierstrass };

struct SeriesParams {
    SeriesKind kind = SeriesKind::R;
    double x0 = 0.0;
    int truncation = 1;      // N >= 1
    double tolerance = 1e-6; // eps > 0

    // Smallest N with guaranteed tail |sum_{|n|>N} 1/n^2| <= 2/N <= eps.
    static int required_terms(double eps);
    void validate() const; // throws std::invalid_argument
};

struct GaussSumResult {
    std::int64_t p = 0, b = 0, q = 1;
    std::complex<double> value;
    double modulus = 0.0;
    bool zero_class = false; // q even and q/2, b of different parity
};

struct CurveTrace {
    std::vector<double> t_grid;
    std::vector<std::complex<double>> points;
};

std::complex<double> eval_R(double x0, double t, int N);
std::complex<double> eval_R_tilde(double x0, double t, int N);
double eval_weierstrass(double t, int N);

// Exact-phase evaluation of R_{P/Q}(a/c + h). All rational parts are reduced
// in integer arithmetic against precomputed root-of-unity tables; h only
// enters through frac(n^2 h), which is exact for dyadic h.
std::complex<double> eval_R_rational(std::int64_t a, std::int64_t c,
                                     std::int64_t P, std::int64_t Q,
                                     double h, int N);

GaussSumResult gauss_sum(std::int64_t p, std::int64_t b, std::int64_t q);

std::complex<double> nls_truncated(int M, double t, double x);

struct NlsSample {
    std::complex<double> value;
    std::complex<double> x_derivative;
};
NlsSample nls_truncated_with_derivative(int M, double t, double x);

CurveTrace curve_trace(double x0, double t_start, double t_end, int samples, int N);

// R_{x0} sampled at t = k/T, k = 0..T-1, T a power of two, with modes
// |n| <= N. Sampling the sparse spectrum (frequencies n^2 mod T) and one
// inverse FFT reproduce the exact grid values of the truncated sum.
std::vector<std::complex<double>> sample_R_grid(double x0, std::int64_t T, int N);

// W(2 pi k / T) for k = 0..T-1 (T a power of two), streamed in chunks.
std::vector<double> sample_weierstrass_grid(std::int64_t T, int N);

} // namespace rml
