#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

// Empirical local regularity: oscillation-based Holder exponent fits,
// variation scaling at rationals, exponent predictions from Diophantine
// data, and the coarse-grained spectrum of singularities.

namespace rml {

// Universal prefactor of the quadratic-phase increment law,
// |int (e^{2 pi i xi^2} - 1)/xi^2 dxi| = 2*sqrt(2)*pi. Single-scale box
// exponents are calibrated against it so the log-ratio at scale 2^-j is
// centered on the true exponent instead of shifted by log2(C)/j.
inline constexpr double kQuadraticPhasePrefactor = 8.885765876316732; // 2*sqrt(2)*pi

// Same role for the lacunary cosine family; measured dyadic oscillation
// prefactor, scale-invariant by W(4t) = 2 W(t) - cos(4t).
inline constexpr double kLacunaryOscPrefactor = 3.908;

struct HolderEstimate {
    double t = 0.0;
    double alpha_fit = 0.0; // clipped to [0, 1.6]
    double residual = 0.0;  // regression RMS in log2 oscillation
    int j_min = 0, j_max = 0;
    std::vector<std::pair<double, double>> oscillation_table; // (h_j, osc_j)
    bool degenerate = false;
};

struct AlphaBins {
    double lo = 0.45;
    double hi = 1.60;
    double width = 0.05;

    int count() const;
    double center(int i) const;
    // bin of alpha, or -1 if outside [lo - width/2, hi + width/2)
    int index(double alpha) const;
};

struct SpectrumTable {
    AlphaBins bins;
    int j = 0;
    std::vector<std::int64_t> counts;  // N_j(alpha) per bin
    std::vector<double> d_estimates;   // log2 N / j, -inf on empty bins
    std::int64_t boxes = 0;
};

// sup over dyadic offsets +-h*2^-k, k = 0..samples-1, of |R(t+h') - R(t)|.
double oscillation(double x0, double t, double h, int N, int samples);

struct ScalingFit {
    double exponent = 0.0;
    double prefactor = 0.0; // exp(intercept) of the log-log fit
    double residual = 0.0;
    bool classified = false;      // q in 4QN: exponent 1/2, prefactor ~ q^{-1/2}
    double theory_exponent = 0.5; // meaningful when classified
    // derived quantities of the increment law at x0 = P/Q:
    std::int64_t m_x0q = 0;       // nearest-integer numerator of x0 against Z/q
    double dist_x0 = 0.0;         // x0 - m_x0q / q
    double gauss_modulus = 0.0;   // |G(p, m_x0q, q)|
    std::vector<std::pair<double, double>> table; // (h, |R(p/q+h)-R(p/q)|)
};

// Fit of log|R_{P/Q}(p/q+h) - R_{P/Q}(p/q)| against log h over dyadic
// h = 2^-j, j in [j_min, j_max]; requires h <= q^-3 and >= 4 scales.
ScalingFit rational_scaling_fit(std::int64_t P, std::int64_t Q,
                                std::int64_t p, std::int64_t q,
                                int j_min, int j_max, int N);

// Regression of log2 oscillation(2^-j) on j over j in [j_min, j_max].
// Oscillations share one dyadic offset ladder and are cumulative in h, so
// the table is monotone by construction.
HolderEstimate holder_exponent_estimate(double x0, double t, int j_min, int j_max,
                                        int N, int samples = 8);

// Same pipeline against the Weierstrass evaluator (real-valued), with
// offsets_per_octave sub-dyadic offsets to average the 4-adic wobble.
HolderEstimate weierstrass_holder_estimate(double t, int j_min, int j_max,
                                           int N, int samples = 16,
                                           int offsets_per_octave = 2);

enum class PredictionKind {
    IrrationalConstrained, // 1/2 + 1/(2 mu_hat), mu_hat from 4QN denominators
    IrrationalLowerOnly,   // no 4QN convergents; unconstrained mu_hat, bound only
    RationalHalf,          // t = p/q with q in 4QN
    RationalUnclassified   // other rationals; candidate exponent 3/2
};

struct ExponentPrediction {
    PredictionKind kind;
    double value = 0.0; // NaN for RationalUnclassified
    double mu_hat = 0.0;
    std::string note;
};

ExponentPrediction predicted_exponent(std::int64_t P, std::int64_t Q, double t, int depth);

// Coarse-grained spectrum: per-box oscillation exponents
// alpha_i = log(osc_i / calibration) / log 2^-j on 2^j boxes at scale 2^-j,
// sampled on a grid of 2^grid_log2 points (grid_log2 >= j); then
// d(alpha) = log2 N_j(alpha) / j per bin.
SpectrumTable spectrum_estimate(double x0, int grid_log2, int j,
                                const AlphaBins& bins, int N);

SpectrumTable weierstrass_spectrum(int grid_log2, int j, const AlphaBins& bins, int N);

// Shared core: histogram of per-box exponents from oscillation values.
SpectrumTable spectrum_from_oscillations(const std::vector<double>& osc, int j,
                                         const AlphaBins& bins, double calibration);

} // namespace rml
