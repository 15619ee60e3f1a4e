#pragma once

#include <cstdint>
#include <vector>

#include "rml/holder.hpp"

// Intermittency diagnostics: high-pass flatness
//
//   F(N) = ||P_{>=N} R_{x0}||_4^4 / ||P_{>=N} R_{x0}||_2^4,
//
// structure-function scaling exponents zeta(p), and the Frisch-Parisi
// Legendre consistency check d(alpha) = inf_p { alpha p - zeta(p) + 1 }.

namespace rml {

// 2 sum_{n>=N} n^-4 (the normalization the flatness ratio uses).
double highpass_l2(std::int64_t n_cut);

enum class FlatnessMethod { Quadrature, Convolution, Both };

struct FlatnessPoint {
    std::int64_t n_cut = 1;
    std::int64_t m_max = 4;
    double value = 0.0;             // convolution value when both computed
    double value_quadrature = 0.0;
    double value_convolution = 0.0;
    double method_gap = 0.0;        // |quadrature - convolution| on the L4 norm
    double tail_bound = 0.0;        // coefficient tail beyond m_max, L2 bound
};

// Flatness of the band N_cut <= |n| <= M_max. The L4 norm is computed by
// trapezoidal quadrature over one period (exact once grid > 2*M_max^2) and
// by exact self-convolution of the coefficient sequence on the n^2 lattice;
// the two serve as mutual oracles. grid = 0 picks the smallest exact grid.
FlatnessPoint flatness(double x0, std::int64_t n_cut, std::int64_t m_max,
                       std::int64_t grid = 0,
                       FlatnessMethod method = FlatnessMethod::Both);

struct FlatnessCurve {
    std::vector<FlatnessPoint> points;
    double log_growth_slope = 0.0; // fit of F against log2 N (diagnostic only)
};

FlatnessCurve flatness_curve(double x0, int k_min, int k_max); // N = 2^k, M = 4N

// L4^4 / L2^4 of an arbitrary coefficient sequence on integer frequencies
// (test fixture hook; single unimodular mode gives exactly 1).
double flatness_of_coefficients(const std::vector<std::pair<std::int64_t, double>>& coeffs);

struct StructureFunctionTable {
    std::vector<double> p_values;
    std::vector<double> zeta;       // fitted slopes, zeta(0) = 0 by convention
    std::vector<double> residuals;
    int j_min = 0, j_max = 0;
};

// S_p(h) = grid mean of |R(t+h) - R(t)|^p at h = 2^-j; zeta(p) is the
// log-log slope over j in [j_min, j_max].
StructureFunctionTable structure_function_exponents(double x0,
                                                    const std::vector<double>& p_list,
                                                    int j_min, int j_max,
                                                    int grid_log2, int N);

struct FrischParisiReport {
    std::vector<double> alpha;        // bin centers in [alpha_lo, alpha_hi]
    std::vector<double> legendre;     // inf_p { alpha p - zeta(p) + 1 }
    std::vector<double> d_hat;        // measured spectrum at those bins
    std::vector<bool> at_boundary;    // infimum attained at an end of p_list
    double max_dev_measured = 0.0;    // vs d_hat (bins with finite d_hat)
    double max_dev_theory = 0.0;      // vs 4 alpha - 2
};

FrischParisiReport frisch_parisi_check(const SpectrumTable& spectrum,
                                       const StructureFunctionTable& sf,
                                       double alpha_lo = 0.55, double alpha_hi = 0.70);

// Legendre transform on an explicit (p, zeta) table; exposed for the
// synthetic round-trip fixtures.
double legendre_infimum(double alpha, const std::vector<double>& p_values,
                        const std::vector<double>& zeta, bool* boundary = nullptr);

} // namespace rml
