#include "rml/exp_sums.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "rml/dd.hpp"
#include "rml/fft.hpp"
#include "rml/fit.hpp"
#include "rml/parallel.hpp"

namespace rml {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline std::complex<double> unit(double frac) {
    const double th = kTwoPi * frac;
    return {std::cos(th), std::sin(th)};
}

inline double frac1(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f -= 1.0;
    return f;
}

void check_finite(double t, double x0) {
    if (!std::isfinite(t) || !std::isfinite(x0))
        throw std::invalid_argument("non-finite t or x0");
}

void check_N(int N) {
    if (N < 1) throw std::invalid_argument("truncation N must be >= 1");
}

} // namespace

int SeriesParams::required_terms(double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("tolerance must be positive");
    return static_cast<int>(std::ceil(2.0 / eps));
}

void SeriesParams::validate() const {
    check_N(truncation);
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (!std::isfinite(x0)) throw std::invalid_argument("non-finite x0");
}

std::complex<double> eval_R(double x0, double t, int N) {
    check_finite(t, x0);
    check_N(N);
    const DD ut = dd_frac(dd_from(t));  // period 1 in t
    const DD ux = dd_frac(dd_from(x0)); // and in x0
    Kahan re, im;
    for (int n = 1; n <= N; ++n) {
        const double nd = static_cast<double>(n);
        const double f1 = frac_mul(nd * nd, ut);
        const double f2 = frac_mul(nd, ux);
        const std::complex<double> ep = unit(frac1(f1 + f2));
        const std::complex<double> em = unit(frac1(f1 - f2));
        const double w = 1.0 / (nd * nd);
        re.add(w * (ep.real() + em.real()));
        im.add(w * (ep.imag() + em.imag()));
    }
    return {re.sum, im.sum};
}

std::complex<double> eval_R_tilde(double x0, double t, int N) {
    check_finite(t, x0);
    check_N(N);
    const DD u = dd_frac(dd_div(dd_from(t), dd_two_pi()));  // period 2 pi
    const DD v = dd_frac(dd_div(dd_from(x0), dd_two_pi()));
    Kahan re, im;
    for (int n = 1; n <= N; ++n) {
        const double nd = static_cast<double>(n);
        const double f1 = frac_mul(nd * nd, u);
        const double c2 = 2.0 * std::cos(kTwoPi * frac_mul(nd, v)); // e^{inx0}+e^{-inx0}
        const double th = kTwoPi * f1;
        const double w = c2 / (nd * nd);
        re.add(w * (std::cos(th) - 1.0));
        im.add(w * std::sin(th));
    }
    return {re.sum, im.sum + t}; // n = 0 term contributes i t
}

double eval_weierstrass(double t, int N) {
    check_finite(t, 0.0);
    check_N(N);
    DD u = dd_frac(dd_div(dd_from(t), dd_two_pi()));
    Kahan acc;
    double w = 1.0;
    for (int n = 1; n <= N; ++n) {
        u = dd_frac(DD{u.hi * 4.0, u.lo * 4.0});  // frac(4^n t / 2pi), exact in dd
        w *= 0.5;
        acc.add(w * std::cos(kTwoPi * dd_value(u)));
        if (w == 0.0) break; // below double resolution, remaining terms vanish
    }
    return acc.sum;
}

std::complex<double> eval_R_rational(std::int64_t a, std::int64_t c,
                                     std::int64_t P, std::int64_t Q,
                                     double h, int N) {
    if (c < 1 || Q < 1) throw std::invalid_argument("denominators must be >= 1");
    if (c > 2'000'000 || Q > 2'000'000)
        throw std::invalid_argument("root-of-unity table too large");
    if (!std::isfinite(h)) throw std::invalid_argument("non-finite offset");
    check_N(N);
    a = ((a % c) + c) % c;
    P = ((P % Q) + Q) % Q;

    std::vector<std::complex<double>> roots_c(static_cast<std::size_t>(c));
    for (std::int64_t k = 0; k < c; ++k)
        roots_c[static_cast<std::size_t>(k)] = unit(static_cast<double>(k) / static_cast<double>(c));
    std::vector<double> cos_Q(static_cast<std::size_t>(Q));
    for (std::int64_t k = 0; k < Q; ++k)
        cos_Q[static_cast<std::size_t>(k)] = std::cos(kTwoPi * static_cast<double>(k) / static_cast<double>(Q));

    Kahan re, im;
    for (int n = 1; n <= N; ++n) {
        const std::int64_t nm = n % c;
        const std::int64_t i1 = (((nm * nm) % c) * a) % c;
        const std::int64_t i2 = ((n % Q) * P) % Q;
        const double nd = static_cast<double>(n);
        const double ph = frac1(nd * nd * h); // exact for dyadic h
        const std::complex<double> term =
            roots_c[static_cast<std::size_t>(i1)] * unit(ph) *
            (2.0 * cos_Q[static_cast<std::size_t>(i2)] / (nd * nd));
        re.add(term.real());
        im.add(term.imag());
    }
    return {re.sum, im.sum};
}

GaussSumResult gauss_sum(std::int64_t p, std::int64_t b, std::int64_t q) {
    if (q < 1) throw std::invalid_argument("gauss_sum: q must be >= 1");
    if (q > 10'000'000) throw std::invalid_argument("gauss_sum: q too large for direct summation");
    const std::int64_t pr = ((p % q) + q) % q;
    const std::int64_t br = ((b % q) + q) % q;
    if (std::gcd(pr == 0 ? q : pr, q) != 1)
        throw std::invalid_argument("gauss_sum: gcd(p, q) must be 1");

    std::vector<std::complex<double>> roots(static_cast<std::size_t>(q));
    for (std::int64_t k = 0; k < q; ++k)
        roots[static_cast<std::size_t>(k)] = unit(static_cast<double>(k) / static_cast<double>(q));

    Kahan re, im;
    for (std::int64_t r = 0; r < q; ++r) {
        const std::int64_t k = ((pr * ((r * r) % q)) % q + (br * r) % q) % q;
        const auto z = roots[static_cast<std::size_t>(k)];
        re.add(z.real());
        im.add(z.imag());
    }
    GaussSumResult out;
    out.p = p;
    out.b = b;
    out.q = q;
    out.value = {re.sum, im.sum};
    out.modulus = std::abs(out.value);
    const bool q_even = (q % 2 == 0);
    out.zero_class = q_even && (((q / 2) % 2) != (((b % 2) + 2) % 2));
    return out;
}

std::complex<double> nls_truncated(int M, double t, double x) {
    return nls_truncated_with_derivative(M, t, x).value;
}

NlsSample nls_truncated_with_derivative(int M, double t, double x) {
    check_finite(t, x);
    if (M < 0) throw std::invalid_argument("nls_truncated: M must be >= 0");
    const DD u = dd_frac(dd_div(dd_from(t), dd_two_pi()));
    const DD v = dd_frac(dd_div(dd_from(x), dd_two_pi()));
    std::complex<double> value{1.0, 0.0}; // n = 0
    std::complex<double> deriv{0.0, 0.0};
    for (int n = 1; n <= M; ++n) {
        const double nd = static_cast<double>(n);
        const double f1 = frac_mul(nd * nd, u);
        const double f2 = frac_mul(nd, v);
        const std::complex<double> ep = unit(frac1(f1 + f2));
        const std::complex<double> em = unit(frac1(f1 - f2));
        value += ep + em;
        deriv += std::complex<double>(0.0, nd) * (ep - em);
    }
    return {value, deriv};
}

CurveTrace curve_trace(double x0, double t_start, double t_end, int samples, int N) {
    if (samples < 2) throw std::invalid_argument("curve_trace: samples must be >= 2");
    if (!(t_start < t_end)) throw std::invalid_argument("curve_trace: t_start < t_end required");
    check_N(N);
    CurveTrace trace;
    trace.t_grid.resize(static_cast<std::size_t>(samples));
    trace.points.resize(static_cast<std::size_t>(samples));
    const double dt = (t_end - t_start) / static_cast<double>(samples - 1);
    parallel_chunks(static_cast<std::size_t>(samples), 64,
                    [&](std::size_t, std::size_t lo, std::size_t hi) {
                        for (std::size_t i = lo; i < hi; ++i) {
                            const double t = t_start + dt * static_cast<double>(i);
                            trace.t_grid[i] = t;
                            trace.points[i] = eval_R_tilde(x0, t, N);
                        }
                    });
    return trace;
}

std::vector<std::complex<double>> sample_R_grid(double x0, std::int64_t T, int N) {
    if (T < 2 || !is_pow2(static_cast<std::size_t>(T)))
        throw std::invalid_argument("sample_R_grid: T must be a power of two >= 2");
    check_N(N);
    check_finite(0.0, x0);
    if (static_cast<std::int64_t>(N) > (std::int64_t{1} << 26))
        throw std::invalid_argument("sample_R_grid: N too large");
    std::vector<std::complex<double>> spec(static_cast<std::size_t>(T));
    const DD ux = dd_frac(dd_from(x0));
    for (std::int64_t n = 1; n <= N; ++n) {
        const double nd = static_cast<double>(n);
        const std::int64_t f = (n * n) & (T - 1); // n^2 mod T, T a power of two
        const double coef = 2.0 * std::cos(kTwoPi * frac_mul(nd, ux)) / (nd * nd);
        spec[static_cast<std::size_t>(f)] += coef;
    }
    fft_pow2(spec, +1);
    return spec;
}

std::vector<double> sample_weierstrass_grid(std::int64_t T, int N) {
    if (T < 2 || !is_pow2(static_cast<std::size_t>(T)))
        throw std::invalid_argument("sample_weierstrass_grid: T must be a power of two >= 2");
    check_N(N);
    const int terms = std::min(N, 62); // coefficients below 2^-62 vanish in double
    std::vector<std::int64_t> mult(static_cast<std::size_t>(terms) + 1, 0);
    std::int64_t a = 1;
    for (int n = 1; n <= terms; ++n) {
        a = (a << 2) & (T - 1); // 4^n mod T
        mult[static_cast<std::size_t>(n)] = a;
    }
    std::vector<double> w(static_cast<std::size_t>(T), 0.0);
    const double inv_T = 1.0 / static_cast<double>(T);
    parallel_chunks(static_cast<std::size_t>(T), 1u << 16,
                    [&](std::size_t, std::size_t lo, std::size_t hi) {
                        for (int n = 1; n <= terms; ++n) {
                            const std::int64_t an = mult[static_cast<std::size_t>(n)];
                            const double coef = std::ldexp(1.0, -n);
                            std::int64_t idx = (an * static_cast<std::int64_t>(lo)) & (T - 1);
                            for (std::size_t k = lo; k < hi; ++k) {
                                w[k] += coef * std::cos(kTwoPi * static_cast<double>(idx) * inv_T);
                                idx = (idx + an) & (T - 1);
                            }
                        }
                    });
    return w;
}

} // namespace rml
