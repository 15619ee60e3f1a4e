#include "rml/holder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rml/diophantine.hpp"
#include "rml/exp_sums.hpp"
#include "rml/fit.hpp"
#include "rml/parallel.hpp"

namespace rml {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double clip_alpha(double a) { return std::clamp(a, 0.0, 1.6); }

// Cumulative-in-h oscillation ladder shared across scales: evaluates
// |f(t +- off) - f(t)| on offsets off = 2^{-j/per_octave...} and keeps the
// running sup from the deepest offset up, so osc(h) is monotone in h and
// realizes a sup over (0, h].
template <typename Eval>
std::vector<double> oscillation_ladder(const Eval& f, double t, int j_min, int j_max,
                                       int samples, int per_octave) {
    if (j_min >= j_max) throw std::invalid_argument("oscillation ladder: j_min < j_max required");
    if (samples < 1) throw std::invalid_argument("oscillation ladder: samples must be >= 1");
    const auto base = f(t);
    const int rungs = per_octave * (j_max - j_min) + samples * per_octave;
    std::vector<double> deltas(static_cast<std::size_t>(rungs));
    for (int k = 0; k < rungs; ++k) {
        const double h = std::exp2(-(static_cast<double>(j_min) +
                                     static_cast<double>(k) / per_octave));
        deltas[static_cast<std::size_t>(k)] =
            std::max(std::abs(f(t + h) - base), std::abs(f(t - h) - base));
    }
    // suffix maxima: osc at rung k = sup over offsets <= 2^-(j_min + k/po)
    for (int k = rungs - 2; k >= 0; --k)
        deltas[static_cast<std::size_t>(k)] =
            std::max(deltas[static_cast<std::size_t>(k)], deltas[static_cast<std::size_t>(k + 1)]);
    std::vector<double> osc(static_cast<std::size_t>(j_max - j_min) + 1);
    for (int j = j_min; j <= j_max; ++j)
        osc[static_cast<std::size_t>(j - j_min)] =
            deltas[static_cast<std::size_t>(per_octave * (j - j_min))];
    return osc;
}

template <typename Eval>
HolderEstimate estimate_from_ladder(const Eval& f, double t, int j_min, int j_max,
                                    int samples, int per_octave) {
    const auto osc = oscillation_ladder(f, t, j_min, j_max, samples, per_octave);
    HolderEstimate est;
    est.t = t;
    est.j_min = j_min;
    est.j_max = j_max;
    std::vector<double> xs, ys;
    for (int j = j_min; j <= j_max; ++j) {
        const double o = osc[static_cast<std::size_t>(j - j_min)];
        est.oscillation_table.emplace_back(std::exp2(-j), o);
        if (o > 0.0) {
            xs.push_back(static_cast<double>(j));
            ys.push_back(std::log2(o));
        }
    }
    if (xs.size() < 3) {
        est.degenerate = true;
        return est;
    }
    const LineFit lf = least_squares(xs, ys);
    est.alpha_fit = clip_alpha(-lf.slope);
    est.residual = lf.rms_residual;
    est.degenerate = lf.rms_residual > 0.5; // flagged, not fatal
    return est;
}

} // namespace

int AlphaBins::count() const {
    return static_cast<int>(std::floor((hi - lo) / width + 0.5)) + 1;
}

double AlphaBins::center(int i) const { return lo + width * i; }

int AlphaBins::index(double alpha) const {
    const double rel = (alpha - lo) / width;
    const int i = static_cast<int>(std::floor(rel + 0.5));
    if (i < 0 || i >= count()) return -1;
    return i;
}

double oscillation(double x0, double t, double h, int N, int samples) {
    if (!(h > 0.0) || h > 0.5) throw std::invalid_argument("oscillation: need 0 < h <= 0.5");
    if (samples < 8) throw std::invalid_argument("oscillation: samples must be >= 8");
    const std::complex<double> base = eval_R(x0, t, N);
    double sup = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double off = h * std::exp2(-k);
        sup = std::max(sup, std::abs(eval_R(x0, t + off, N) - base));
        sup = std::max(sup, std::abs(eval_R(x0, t - off, N) - base));
    }
    return sup;
}

ScalingFit rational_scaling_fit(std::int64_t P, std::int64_t Q,
                                std::int64_t p, std::int64_t q,
                                int j_min, int j_max, int N) {
    if (q < 1 || Q < 1) throw std::invalid_argument("rational_scaling_fit: denominators >= 1");
    if (std::gcd(std::abs(p), q) != 1)
        throw std::invalid_argument("rational_scaling_fit: gcd(p, q) must be 1");
    if (j_max - j_min + 1 < 4)
        throw std::invalid_argument("rational_scaling_fit: need >= 4 dyadic scales");
    // h <= q^-3 keeps the q^{3/2} h^{3/2} error term subordinate
    if (std::exp2(-j_min) > std::pow(static_cast<double>(q), -3.0))
        throw std::invalid_argument("rational_scaling_fit: h_range must lie in (0, q^-3]");

    const std::complex<double> base = eval_R_rational(p, q, P, Q, 0.0, N);
    ScalingFit fit;
    std::vector<double> xs, ys;
    std::vector<std::complex<double>> vals(static_cast<std::size_t>(j_max - j_min + 1));
    parallel_chunks(vals.size(), 4, [&](std::size_t, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double h = std::exp2(-(j_min + static_cast<int>(i)));
            vals[i] = eval_R_rational(p, q, P, Q, h, N);
        }
    });
    for (int j = j_min; j <= j_max; ++j) {
        const double h = std::exp2(-j);
        const double d = std::abs(vals[static_cast<std::size_t>(j - j_min)] - base);
        fit.table.emplace_back(h, d);
        if (d > 0.0) {
            xs.push_back(std::log(h));
            ys.push_back(std::log(d));
        }
    }
    if (xs.size() < 4) throw std::domain_error("rational_scaling_fit: degenerate increments");
    const LineFit lf = least_squares(xs, ys);
    fit.exponent = lf.slope;
    fit.prefactor = std::exp(lf.intercept);
    fit.residual = lf.rms_residual;
    fit.classified = (q % (4 * Q) == 0);
    fit.theory_exponent = 0.5;
    // leading-term data of the increment law: the nearest point of Z/q to
    // x0 and the Gauss factor selected by it
    fit.m_x0q = llround(static_cast<double>(P) * static_cast<double>(q) /
                        static_cast<double>(Q));
    fit.dist_x0 = (static_cast<double>(P) * q - static_cast<double>(fit.m_x0q) * Q) /
                  (static_cast<double>(Q) * q);
    fit.gauss_modulus = gauss_sum(p, fit.m_x0q, q).modulus;
    return fit;
}

HolderEstimate holder_exponent_estimate(double x0, double t, int j_min, int j_max,
                                        int N, int samples) {
    if (samples < 8) throw std::invalid_argument("holder_exponent_estimate: samples >= 8");
    auto f = [&](double tt) { return eval_R(x0, tt, N); };
    return estimate_from_ladder(f, t, j_min, j_max, samples, 1);
}

HolderEstimate weierstrass_holder_estimate(double t, int j_min, int j_max,
                                           int N, int samples, int offsets_per_octave) {
    auto f = [&](double tt) { return std::complex<double>(eval_weierstrass(tt, N), 0.0); };
    return estimate_from_ladder(f, t, j_min, j_max, samples, offsets_per_octave);
}

// only Q enters: the 4QN denominator rule does not involve the numerator of x0
ExponentPrediction predicted_exponent([[maybe_unused]] std::int64_t P, std::int64_t Q,
                                      double t, int depth) {
    if (Q < 1) throw std::invalid_argument("predicted_exponent: Q must be >= 1");
    const ContinuedFraction cf = continued_fraction(t, depth);
    const std::int64_t step = 4 * Q;

    if (cf.rational_termination) {
        const auto& last = cf.convergents.back();
        ExponentPrediction pred;
        pred.mu_hat = std::numeric_limits<double>::quiet_NaN();
        if (last.q % step == 0) {
            pred.kind = PredictionKind::RationalHalf;
            pred.value = 0.5;
            pred.note = "rational with q in 4QN";
        } else {
            pred.kind = PredictionKind::RationalUnclassified;
            pred.value = std::numeric_limits<double>::quiet_NaN();
            pred.note = "unclassified rational (candidate 3/2)";
        }
        return pred;
    }

    const bool has_constrained = std::any_of(
        cf.convergents.begin(), cf.convergents.end(),
        [step](const Convergent& c) { return c.q % step == 0; });

    ExponentPrediction pred;
    if (has_constrained) {
        // mu_hat from the constrained record list, deepest third by q
        const std::int64_t q_max = std::min<std::int64_t>(
            std::int64_t{1} << 18, cf.convergents.back().q * 4);
        const auto recs = constrained_best_approximations(t, static_cast<int>(Q), q_max);
        if (recs.size() >= 3) {
            // deepest third of the q scale in log terms; small q otherwise
            // bias the limsup proxy upward
            const double q_floor = std::pow(static_cast<double>(q_max), 2.0 / 3.0);
            double m = 0.0;
            for (const auto& r : recs)
                if (static_cast<double>(r.q) >= q_floor) m = std::max(m, r.mu_q);
            if (m >= 1.0) {
                pred.kind = PredictionKind::IrrationalConstrained;
                pred.mu_hat = m;
                pred.value = 0.5 + 1.0 / (2.0 * m);
                pred.note = "constrained to denominators in 4QN";
                return pred;
            }
        }
    }
    const IrrationalityEstimate est = irrationality_exponent_estimate(cf);
    pred.kind = PredictionKind::IrrationalLowerOnly;
    pred.mu_hat = est.mu_hat;
    pred.value = 0.5 + 1.0 / (2.0 * est.mu_hat);
    pred.note = "no 4QN convergents: lower bound only";
    return pred;
}

SpectrumTable spectrum_from_oscillations(const std::vector<double>& osc, int j,
                                         const AlphaBins& bins, double calibration) {
    SpectrumTable table;
    table.bins = bins;
    table.j = j;
    table.boxes = static_cast<std::int64_t>(osc.size());
    table.counts.assign(static_cast<std::size_t>(bins.count()), 0);
    for (const double o : osc) {
        if (!(o > 0.0)) continue;
        const double alpha = clip_alpha(std::log2(o / calibration) / -static_cast<double>(j));
        const int bi = bins.index(alpha);
        if (bi >= 0) ++table.counts[static_cast<std::size_t>(bi)];
    }
    table.d_estimates.resize(table.counts.size());
    for (std::size_t i = 0; i < table.counts.size(); ++i)
        table.d_estimates[i] = table.counts[i] > 0
                                   ? std::log2(static_cast<double>(table.counts[i])) / j
                                   : kNegInf;
    return table;
}

namespace {

// per-box value diameter over ov+1 consecutive grid samples (box closed on
// the right: first sample of the next box included; periodic wrap)
template <typename T>
std::vector<double> box_diameters(const std::vector<T>& samples, std::int64_t boxes) {
    const std::int64_t total = static_cast<std::int64_t>(samples.size());
    const std::int64_t ov = total / boxes;
    std::vector<double> osc(static_cast<std::size_t>(boxes), 0.0);
    parallel_chunks(static_cast<std::size_t>(boxes), 1u << 12,
                    [&](std::size_t, std::size_t lo, std::size_t hi) {
                        for (std::size_t b = lo; b < hi; ++b) {
                            const std::int64_t s = static_cast<std::int64_t>(b) * ov;
                            double m = 0.0;
                            for (std::int64_t i = 0; i <= ov; ++i) {
                                for (std::int64_t k = i + 1; k <= ov; ++k) {
                                    const double d = std::abs(
                                        samples[static_cast<std::size_t>((s + i) & (total - 1))] -
                                        samples[static_cast<std::size_t>((s + k) & (total - 1))]);
                                    m = std::max(m, d);
                                }
                            }
                            osc[b] = m;
                        }
                    });
    return osc;
}

} // namespace

SpectrumTable spectrum_estimate(double x0, int grid_log2, int j,
                                const AlphaBins& bins, int N) {
    if (grid_log2 < 14) throw std::invalid_argument("spectrum_estimate: grid must be >= 2^14");
    if (j < 4 || j > grid_log2)
        throw std::invalid_argument("spectrum_estimate: need 4 <= j <= grid_log2");
    const std::int64_t T = std::int64_t{1} << grid_log2;
    const auto samples = sample_R_grid(x0, T, N);
    const auto osc = box_diameters(samples, std::int64_t{1} << j);
    return spectrum_from_oscillations(osc, j, bins, kQuadraticPhasePrefactor);
}

SpectrumTable weierstrass_spectrum(int grid_log2, int j, const AlphaBins& bins, int N) {
    if (grid_log2 < 14) throw std::invalid_argument("weierstrass_spectrum: grid must be >= 2^14");
    if (j < 4 || j > grid_log2)
        throw std::invalid_argument("weierstrass_spectrum: need 4 <= j <= grid_log2");
    const std::int64_t T = std::int64_t{1} << grid_log2;
    const auto samples = sample_weierstrass_grid(T, N);
    const auto osc = box_diameters(samples, std::int64_t{1} << j);
    return spectrum_from_oscillations(osc, j, bins, kLacunaryOscPrefactor);
}

} // namespace rml
