#include "rml/turbulence.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "rml/dd.hpp"
#include "rml/exp_sums.hpp"
#include "rml/fft.hpp"
#include "rml/fit.hpp"
#include "rml/parallel.hpp"

namespace rml {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// band coefficients of P_{>=N} R_{x0} truncated at M on the n^2 frequency
// lattice; +-n collapse onto n^2 with coefficient 2 cos(2 pi n x0)/n^2
std::vector<std::pair<std::int64_t, double>> band_coefficients(double x0,
                                                               std::int64_t n_cut,
                                                               std::int64_t m_max) {
    std::vector<std::pair<std::int64_t, double>> coeffs;
    coeffs.reserve(static_cast<std::size_t>(m_max - n_cut + 1));
    const DD ux = dd_frac(dd_from(x0));
    for (std::int64_t n = n_cut; n <= m_max; ++n) {
        const double nd = static_cast<double>(n);
        coeffs.emplace_back(n * n, 2.0 * std::cos(kTwoPi * frac_mul(nd, ux)) / (nd * nd));
    }
    return coeffs;
}

// || f ||_4^4 by exact self-convolution: sum_k |(a * a)_k|^2 over the
// frequency lattice (f^2 has coefficients (a*a)_k at k = f_i + f_j).
double l4_by_convolution(const std::vector<std::pair<std::int64_t, double>>& coeffs) {
    std::vector<std::pair<std::int64_t, double>> pairs;
    pairs.reserve(coeffs.size() * coeffs.size());
    for (const auto& [fi, ai] : coeffs)
        for (const auto& [fj, aj] : coeffs)
            pairs.emplace_back(fi + fj, ai * aj);
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Kahan total;
    std::size_t i = 0;
    while (i < pairs.size()) {
        const std::int64_t k = pairs[i].first;
        Kahan bk;
        while (i < pairs.size() && pairs[i].first == k) {
            bk.add(pairs[i].second);
            ++i;
        }
        total.add(bk.sum * bk.sum);
    }
    return total.sum;
}

// || f ||_4^4 by trapezoidal quadrature over one period; exact once
// grid > 2 * max frequency of f (then |f|^4 has no alias onto frequency 0).
double l4_by_quadrature(const std::vector<std::pair<std::int64_t, double>>& coeffs,
                        std::int64_t grid) {
    std::vector<std::complex<double>> spec(static_cast<std::size_t>(grid));
    for (const auto& [f, a] : coeffs)
        spec[static_cast<std::size_t>(f & (grid - 1))] += a;
    fft_pow2(spec, +1);
    // fixed-size chunk partials combined in chunk order: deterministic
    const std::size_t chunk = 1u << 16;
    const std::size_t n_chunks = (spec.size() + chunk - 1) / chunk;
    std::vector<double> partial(n_chunks, 0.0);
    parallel_chunks(spec.size(), chunk, [&](std::size_t c, std::size_t lo, std::size_t hi) {
        Kahan acc;
        for (std::size_t k = lo; k < hi; ++k) {
            const double m2 = std::norm(spec[k]);
            acc.add(m2 * m2);
        }
        partial[c] = acc.sum;
    });
    Kahan total;
    for (const double v : partial) total.add(v);
    return total.sum / static_cast<double>(grid);
}

double l2_of_coefficients(const std::vector<std::pair<std::int64_t, double>>& coeffs) {
    Kahan acc;
    for (const auto& [f, a] : coeffs) acc.add(a * a);
    return acc.sum;
}

} // namespace

double highpass_l2(std::int64_t n_cut) {
    if (n_cut < 1) throw std::invalid_argument("highpass_l2: N must be >= 1");
    // direct summation to 10^6 past the cut, then the integral remainder
    Kahan acc;
    const std::int64_t far = n_cut + 1'000'000;
    for (std::int64_t n = far - 1; n >= n_cut; --n) { // ascending magnitude
        const double nd = static_cast<double>(n);
        acc.add(1.0 / (nd * nd * nd * nd));
    }
    const double f = static_cast<double>(far);
    // sum_{n>=far} n^-4 = 1/(3 far^3) + 1/(2 far^4) + O(far^-5)
    acc.add(1.0 / (3.0 * f * f * f) + 1.0 / (2.0 * f * f * f * f));
    return 2.0 * acc.sum;
}

FlatnessPoint flatness(double x0, std::int64_t n_cut, std::int64_t m_max,
                       std::int64_t grid, FlatnessMethod method) {
    if (n_cut < 1) throw std::invalid_argument("flatness: N_cut must be >= 1");
    if (m_max < 4 * n_cut) throw std::invalid_argument("flatness: M_max must be >= 4*N_cut");
    const std::int64_t min_exact = 2 * m_max * m_max + 1;
    if (grid == 0) {
        grid = 1;
        while (grid < min_exact) grid <<= 1;
    }
    if (!is_pow2(static_cast<std::size_t>(grid)))
        throw std::invalid_argument("flatness: grid must be a power of two");
    if (grid < 16 * m_max) throw std::invalid_argument("flatness: grid too small (aliasing)");

    const auto coeffs = band_coefficients(x0, n_cut, m_max);
    const double l2 = highpass_l2(n_cut);
    const double denom = l2 * l2;

    FlatnessPoint pt;
    pt.n_cut = n_cut;
    pt.m_max = m_max;
    // band truncation tail: sum_{n>m_max} 2/n^2 in L2
    pt.tail_bound = 2.0 / static_cast<double>(m_max);

    if (method != FlatnessMethod::Quadrature) {
        pt.value_convolution = l4_by_convolution(coeffs) / denom;
        pt.value = pt.value_convolution;
    }
    if (method != FlatnessMethod::Convolution) {
        pt.value_quadrature = l4_by_quadrature(coeffs, grid) / denom;
        if (method == FlatnessMethod::Quadrature) pt.value = pt.value_quadrature;
    }
    if (method == FlatnessMethod::Both)
        pt.method_gap = std::abs(pt.value_quadrature - pt.value_convolution);
    return pt;
}

FlatnessCurve flatness_curve(double x0, int k_min, int k_max) {
    if (k_min < 1 || k_max < k_min) throw std::invalid_argument("flatness_curve: bad k range");
    FlatnessCurve curve;
    std::vector<double> ks, fs;
    for (int k = k_min; k <= k_max; ++k) {
        const std::int64_t n = std::int64_t{1} << k;
        curve.points.push_back(flatness(x0, n, 4 * n, 0, FlatnessMethod::Both));
        ks.push_back(static_cast<double>(k));
        fs.push_back(curve.points.back().value);
    }
    if (ks.size() >= 3) curve.log_growth_slope = least_squares(ks, fs).slope;
    return curve;
}

double flatness_of_coefficients(const std::vector<std::pair<std::int64_t, double>>& coeffs) {
    const double l2 = l2_of_coefficients(coeffs);
    if (l2 == 0.0) throw std::invalid_argument("flatness_of_coefficients: empty signal");
    return l4_by_convolution(coeffs) / (l2 * l2);
}

StructureFunctionTable structure_function_exponents(double x0,
                                                    const std::vector<double>& p_list,
                                                    int j_min, int j_max,
                                                    int grid_log2, int N) {
    for (const double p : p_list)
        if (!(p > 0.0) || p > 8.0)
            throw std::invalid_argument("structure_function_exponents: p must be in (0, 8]");
    if (grid_log2 < 16) throw std::invalid_argument("structure_function_exponents: grid >= 2^16");
    if (j_min >= j_max || j_max >= grid_log2)
        throw std::invalid_argument("structure_function_exponents: bad j range");

    const std::int64_t T = std::int64_t{1} << grid_log2;
    const auto R = sample_R_grid(x0, T, N);

    StructureFunctionTable table;
    table.p_values = p_list;
    table.j_min = j_min;
    table.j_max = j_max;

    const std::size_t n_j = static_cast<std::size_t>(j_max - j_min + 1);
    std::vector<std::vector<double>> log_s(p_list.size(), std::vector<double>(n_j));

    std::vector<double> logd(static_cast<std::size_t>(T));
    for (std::size_t ji = 0; ji < n_j; ++ji) {
        const int j = j_min + static_cast<int>(ji);
        const std::int64_t m = T >> j;
        parallel_chunks(static_cast<std::size_t>(T), 1u << 16,
                        [&](std::size_t, std::size_t lo, std::size_t hi) {
                            for (std::size_t k = lo; k < hi; ++k) {
                                const double d = std::abs(
                                    R[(k + static_cast<std::size_t>(m)) & (static_cast<std::size_t>(T) - 1)] -
                                    R[k]);
                                logd[k] = std::log(std::max(d, 1e-300));
                            }
                        });
        for (std::size_t pi = 0; pi < p_list.size(); ++pi) {
            const double p = p_list[pi];
            const std::size_t chunk = 1u << 16;
            const std::size_t n_chunks = (static_cast<std::size_t>(T) + chunk - 1) / chunk;
            std::vector<double> partial(n_chunks, 0.0);
            parallel_chunks(static_cast<std::size_t>(T), chunk,
                            [&](std::size_t c, std::size_t lo, std::size_t hi) {
                                Kahan acc;
                                for (std::size_t k = lo; k < hi; ++k)
                                    acc.add(std::exp(p * logd[k]));
                                partial[c] = acc.sum;
                            });
            Kahan acc;
            for (const double v : partial) acc.add(v);
            log_s[pi][ji] = std::log(acc.sum / static_cast<double>(T));
        }
    }

    const double ln2 = std::numbers::ln2;
    std::vector<double> xs(n_j);
    for (std::size_t ji = 0; ji < n_j; ++ji)
        xs[ji] = -static_cast<double>(j_min + static_cast<int>(ji)) * ln2; // log h
    for (std::size_t pi = 0; pi < p_list.size(); ++pi) {
        const LineFit lf = least_squares(xs, log_s[pi]);
        table.zeta.push_back(lf.slope);
        table.residuals.push_back(lf.rms_residual);
    }
    return table;
}

double legendre_infimum(double alpha, const std::vector<double>& p_values,
                        const std::vector<double>& zeta, bool* boundary) {
    if (p_values.size() != zeta.size() || p_values.size() < 2)
        throw std::invalid_argument("legendre_infimum: mismatched tables");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p_values.size(); ++i)
        best = std::min(best, alpha * p_values[i] - zeta[i] + 1.0);
    if (boundary) {
        // flag only when the minimum lives exclusively at an end of p_list
        bool interior = false;
        const double tol = 1e-12 * std::max(1.0, std::abs(best));
        for (std::size_t i = 1; i + 1 < p_values.size(); ++i)
            if (alpha * p_values[i] - zeta[i] + 1.0 <= best + tol) interior = true;
        *boundary = !interior;
    }
    return best;
}

FrischParisiReport frisch_parisi_check(const SpectrumTable& spectrum,
                                       const StructureFunctionTable& sf,
                                       double alpha_lo, double alpha_hi) {
    if (sf.p_values.size() < 3)
        throw std::invalid_argument("frisch_parisi_check: need >= 3 structure exponents");
    FrischParisiReport rep;
    bool any = false;
    for (int i = 0; i < spectrum.bins.count(); ++i) {
        const double a = spectrum.bins.center(i);
        if (a < alpha_lo - 1e-12 || a > alpha_hi + 1e-12) continue;
        any = true;
        bool at_edge = false;
        const double leg = legendre_infimum(a, sf.p_values, sf.zeta, &at_edge);
        rep.alpha.push_back(a);
        rep.legendre.push_back(leg);
        rep.d_hat.push_back(spectrum.d_estimates[static_cast<std::size_t>(i)]);
        rep.at_boundary.push_back(at_edge);
        if (std::isfinite(rep.d_hat.back()))
            rep.max_dev_measured = std::max(rep.max_dev_measured,
                                            std::abs(leg - rep.d_hat.back()));
        rep.max_dev_theory = std::max(rep.max_dev_theory, std::abs(leg - (4.0 * a - 2.0)));
    }
    if (!any) throw std::invalid_argument("frisch_parisi_check: no bins in the alpha window");
    return rep;
}

} // namespace rml
