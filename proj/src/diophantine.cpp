#include "rml/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rml/dd.hpp"
#include "rml/fit.hpp"

namespace rml {

namespace {

double residual_abs(double t, std::int64_t p, std::int64_t q) {
    const DD r = dd_sub(dd_from(t), dd_div(dd_from(static_cast<double>(p)),
                                           dd_from(static_cast<double>(q))));
    return std::abs(dd_value(r));
}

double mu_of(double residual, std::int64_t q) {
    if (q < 2 || residual <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return -std::log(residual) / std::log(static_cast<double>(q));
}

} // namespace

ContinuedFraction continued_fraction(double t, int depth) {
    if (depth < 1) throw std::invalid_argument("continued_fraction: depth must be >= 1");
    if (!std::isfinite(t)) throw std::invalid_argument("continued_fraction: non-finite t");

    ContinuedFraction cf;
    cf.target = t;

    const double big = std::max(std::abs(t), 1.0);
    const double ulp_t = std::nextafter(big, std::numeric_limits<double>::infinity()) - big;
    // expansion is meaningless once q_n^2 residuals dive below ulp(t)
    const double q_limit = std::sqrt(1.0 / ulp_t) / 2.0;
    // below ulp/2 the double cannot distinguish t from the convergent
    const double rational_eps = 0.5 * ulp_t;

    // every double is a dyadic rational m * 2^(e-53); expand THAT with exact
    // integer Euclid, so coefficients and the recurrence are exact and the
    // float Gauss map never drifts
    int e = 0;
    const double mant = std::frexp(t, &e); // t = mant * 2^e, |mant| in [0.5, 1)
    if (t != 0.0 && e < -60) {
        // |t| < 2^-60: first partial quotient already exceeds any usable q
        cf.coefficients.push_back(0);
        cf.convergents.push_back({0, 1, std::abs(t), std::numeric_limits<double>::quiet_NaN()});
        cf.resolution_stop = true;
        cf.effective_depth = 0;
        return cf;
    }
    __int128 num = static_cast<__int128>(std::llround(std::ldexp(mant, 53)));
    __int128 den = __int128{1} << (53 - std::min(e, 53));
    if (e > 53) num <<= (e - 53);
    if (t == 0.0) { num = 0; den = 1; }

    // recurrence seeds: (p_{-1}, q_{-1}) = (1, 0), (p_{-2}, q_{-2}) = (0, 1)
    __int128 pm1 = 1, qm1 = 0, pm2 = 0, qm2 = 1;

    for (int n = 0; n <= depth; ++n) {
        // floor division (num may be negative at n = 0)
        __int128 a = num / den;
        if ((num % den != 0) && ((num < 0) != (den < 0))) --a;
        const __int128 rem = num - a * den;

        if (a > static_cast<__int128>(9.0e15) || a < -static_cast<__int128>(9.0e15)) {
            cf.resolution_stop = true;
            break;
        }
        const __int128 pn = a * pm1 + pm2;
        const __int128 qn = a * qm1 + qm2;
        if (n > 0 && static_cast<double>(qn) > q_limit) {
            cf.resolution_stop = true;
            break;
        }

        cf.coefficients.push_back(static_cast<std::int64_t>(a));
        Convergent c;
        c.p = static_cast<std::int64_t>(pn);
        c.q = static_cast<std::int64_t>(qn);
        c.residual = residual_abs(t, c.p, c.q);
        c.mu = mu_of(c.residual, c.q);
        cf.convergents.push_back(c);

        pm2 = pm1, qm2 = qm1;
        pm1 = pn, qm1 = qn;

        if (rem == 0 || (n > 0 && c.residual < rational_eps)) {
            cf.rational_termination = true; // exact, or rational in-representation
            break;
        }
        num = den;
        den = rem;
    }
    cf.effective_depth = static_cast<int>(cf.coefficients.size()) - 1;
    return cf;
}

IrrationalityEstimate irrationality_exponent_estimate(const ContinuedFraction& cf) {
    IrrationalityEstimate est;
    for (const auto& c : cf.convergents)
        if (std::isfinite(c.mu)) est.mu_sequence.push_back(c.mu);
    if (cf.rational_termination) {
        est.defined = false;
        est.note = "rational, mu undefined";
        return est;
    }
    if (est.mu_sequence.size() < 3)
        throw std::domain_error("irrationality_exponent_estimate: expansion too shallow");
    const std::size_t k = est.mu_sequence.size();
    const std::size_t start = (2 * k) / 3; // deepest third approximates the limsup
    double m = est.mu_sequence[start];
    for (std::size_t i = start; i < k; ++i) m = std::max(m, est.mu_sequence[i]);
    est.defined = true;
    est.mu_hat = m;
    return est;
}

std::uint64_t totient(std::uint64_t q) {
    if (q < 1) throw std::invalid_argument("totient: q must be >= 1");
    std::uint64_t result = q;
    std::uint64_t m = q;
    for (std::uint64_t f = 2; f * f <= m; ++f) {
        if (m % f == 0) {
            result -= result / f;
            while (m % f == 0) m /= f;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

std::vector<std::uint64_t> totient_sieve(std::uint64_t q_max) {
    if (q_max < 1) throw std::invalid_argument("totient_sieve: q_max must be >= 1");
    std::vector<std::uint64_t> phi(q_max + 1);
    for (std::uint64_t i = 0; i <= q_max; ++i) phi[i] = i;
    for (std::uint64_t i = 2; i <= q_max; ++i) {
        if (phi[i] == i) { // prime
            for (std::uint64_t j = i; j <= q_max; j += i) phi[j] -= phi[j] / i;
        }
    }
    return phi;
}

LimsupSetSpec LimsupSetSpec::inverse_square_multiples(std::int64_t Q) {
    LimsupSetSpec s;
    const std::int64_t m = 4 * Q;
    s.psi = [](std::int64_t q) { return 1.0 / (static_cast<double>(q) * static_cast<double>(q)); };
    s.q_filter = [m](std::int64_t q) { return q % m == 0; };
    s.name = "indicator(4*" + std::to_string(Q) + "*N)/q^2";
    return s;
}

LimsupSetSpec LimsupSetSpec::power_law(double exponent) {
    LimsupSetSpec s;
    s.psi = [exponent](std::int64_t q) { return std::pow(static_cast<double>(q), -exponent); };
    s.name = "q^-" + std::to_string(exponent);
    return s;
}

PartialSumSeries duffin_schaeffer_partial_sums(const LimsupSetSpec& spec, std::int64_t q_max) {
    if (q_max < 1) throw std::invalid_argument("duffin_schaeffer_partial_sums: q_max >= 1");
    if (!spec.psi) throw std::invalid_argument("duffin_schaeffer_partial_sums: psi not set");

    const auto phi = totient_sieve(static_cast<std::uint64_t>(q_max));

    // geometric checkpoints X, X/2, X/4, ... plus the start
    std::vector<std::int64_t> cps;
    for (std::int64_t x = q_max; x >= 2; x /= 2) cps.push_back(x);
    cps.push_back(1);
    std::sort(cps.begin(), cps.end());
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());

    PartialSumSeries out;
    Kahan acc;
    std::size_t ci = 0;
    for (std::int64_t q = 1; q <= q_max; ++q) {
        if (spec.accepts(q)) {
            const double w = spec.psi(q);
            if (w < 0.0) throw std::invalid_argument("psi must be nonnegative");
            acc.add(w * static_cast<double>(phi[static_cast<std::size_t>(q)]));
        }
        while (ci < cps.size() && cps[ci] == q) {
            out.checkpoints.push_back(q);
            out.sums.push_back(acc.sum);
            ++ci;
        }
    }

    // divergence diagnostic: S against ln X, plus the trailing doubling increment
    const std::size_t k = out.sums.size();
    if (k >= 3) {
        std::vector<double> lx(k), sy(k);
        for (std::size_t i = 0; i < k; ++i) {
            lx[i] = std::log(static_cast<double>(out.checkpoints[i]));
            sy[i] = out.sums[i];
        }
        out.log_slope = least_squares(lx, sy).slope;
        const double total = out.sums.back();
        const double tail_inc = out.sums[k - 1] - out.sums[k - 2];
        out.tail_ratio = total > 0.0 ? tail_inc / total : 0.0;
        if (total == 0.0 || out.tail_ratio < 1e-3)
            out.diagnostic = SeriesDiagnostic::Convergent;
        else if (out.log_slope > 0.0 && tail_inc > 0.0)
            out.diagnostic = SeriesDiagnostic::DivergentLogFit;
        else
            out.diagnostic = SeriesDiagnostic::Indeterminate;
    }
    return out;
}

bool IntervalUnion::contains(double x) const {
    auto it = std::upper_bound(intervals.begin(), intervals.end(), x,
                               [](double v, const std::pair<double, double>& iv) {
                                   return v < iv.first;
                               });
    if (it == intervals.begin()) return false;
    --it;
    return x <= it->second;
}

IntervalUnion limsup_union(const LimsupSetSpec& spec, std::int64_t q_min, std::int64_t q_max) {
    if (q_min > q_max) throw std::invalid_argument("limsup_union: q_min <= q_max required");
    if (!spec.psi) throw std::invalid_argument("limsup_union: psi not set");

    std::vector<std::pair<double, double>> raw;
    for (std::int64_t q = std::max<std::int64_t>(1, q_min); q <= q_max; ++q) {
        if (!spec.accepts(q)) continue;
        const double r = spec.psi(q);
        if (r < 0.0) throw std::invalid_argument("psi must be nonnegative");
        if (r == 0.0) continue;
        const double qd = static_cast<double>(q);
        for (std::int64_t p = 0; p <= q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const double center = static_cast<double>(p) / qd;
            const double lo = std::max(0.0, center - r);
            const double hi = std::min(1.0, center + r);
            if (hi > lo) raw.emplace_back(lo, hi);
        }
    }

    IntervalUnion u;
    if (raw.empty()) return u;
    std::sort(raw.begin(), raw.end());
    double cl = raw[0].first, ch = raw[0].second;
    Kahan len;
    for (std::size_t i = 1; i < raw.size(); ++i) {
        if (raw[i].first <= ch) {
            ch = std::max(ch, raw[i].second);
        } else {
            u.intervals.emplace_back(cl, ch);
            len.add(ch - cl);
            cl = raw[i].first;
            ch = raw[i].second;
        }
    }
    u.intervals.emplace_back(cl, ch);
    len.add(ch - cl);
    u.total_length = len.sum;
    return u;
}

BoxDimensionFit jarnik_box_dimension(int Q_filter, double mu, int j_min, int j_max) {
    if (mu < 2.0) throw std::invalid_argument("jarnik_box_dimension: mu must be >= 2");
    if (j_max - j_min + 1 < 3) throw std::invalid_argument("jarnik_box_dimension: need >= 3 scales");
    if (j_max > 40) throw std::invalid_argument("jarnik_box_dimension: scale beyond resolution");

    BoxDimensionFit fit;
    for (int j = j_min; j <= j_max; ++j) {
        const double delta = std::ldexp(1.0, -j);
        const std::int64_t boxes = std::int64_t{1} << j;
        const double q_cut = std::pow(delta, -1.0 / mu);
        const auto q_hi = static_cast<std::int64_t>(std::floor(q_cut));
        const auto q_lo = static_cast<std::int64_t>(std::floor(q_cut / 2.0));

        std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
        for (std::int64_t q = std::max<std::int64_t>(2, q_lo + 1); q <= q_hi; ++q) {
            if (Q_filter > 0 && q % (4 * static_cast<std::int64_t>(Q_filter)) != 0) continue;
            const double r = std::pow(static_cast<double>(q), -mu);
            const double qd = static_cast<double>(q);
            for (std::int64_t p = 0; p <= q; ++p) {
                if (std::gcd(p, q) != 1) continue;
                const double lo = std::max(0.0, static_cast<double>(p) / qd - r);
                const double hi = std::min(1.0, static_cast<double>(p) / qd + r);
                auto blo = static_cast<std::int64_t>(lo / delta);
                auto bhi = static_cast<std::int64_t>(hi / delta);
                blo = std::clamp<std::int64_t>(blo, 0, boxes - 1);
                bhi = std::clamp<std::int64_t>(bhi, 0, boxes - 1);
                ranges.emplace_back(blo, bhi);
            }
        }
        std::int64_t count = 0;
        if (!ranges.empty()) {
            std::sort(ranges.begin(), ranges.end());
            std::int64_t cl = ranges[0].first, ch = ranges[0].second;
            for (std::size_t i = 1; i < ranges.size(); ++i) {
                if (ranges[i].first <= ch + 1) {
                    ch = std::max(ch, ranges[i].second);
                } else {
                    count += ch - cl + 1;
                    cl = ranges[i].first;
                    ch = ranges[i].second;
                }
            }
            count += ch - cl + 1;
        }
        fit.j_values.push_back(j);
        fit.counts.push_back(count);
    }

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < fit.counts.size(); ++i) {
        if (fit.counts[i] <= 0) continue;
        xs.push_back(static_cast<double>(fit.j_values[i]));
        ys.push_back(std::log2(static_cast<double>(fit.counts[i])));
    }
    if (xs.size() < 3) throw std::domain_error("jarnik_box_dimension: too few nonempty scales");
    const LineFit lf = least_squares(xs, ys);
    fit.slope = lf.slope;
    fit.intercept = lf.intercept;
    return fit;
}

std::vector<RationalApproximation>
constrained_best_approximations(double t, int Q, std::int64_t q_max) {
    if (Q < 1) throw std::invalid_argument("constrained_best_approximations: Q must be >= 1");
    if (!std::isfinite(t)) throw std::invalid_argument("non-finite t");

    std::vector<RationalApproximation> recs;
    const std::int64_t step = 4 * static_cast<std::int64_t>(Q);
    for (std::int64_t q = step; q <= q_max; q += step) {
        const double tq = t * static_cast<double>(q);
        const auto p0 = static_cast<std::int64_t>(std::llround(tq));
        // candidates in exact |tq - p| order; first coprime wins
        bool found = false;
        RationalApproximation rec;
        for (std::int64_t d = 0; d <= q && !found; ++d) {
            const std::int64_t first = (tq >= static_cast<double>(p0)) ? p0 + d : p0 - d;
            const std::int64_t second = (tq >= static_cast<double>(p0)) ? p0 - d : p0 + d;
            for (const std::int64_t p : {first, second}) {
                if (std::gcd(std::abs(p), q) != 1) continue;
                rec.p = p;
                rec.q = q;
                rec.distance = residual_abs(t, p, q);
                rec.mu_q = rec.distance == 0.0
                               ? std::numeric_limits<double>::infinity()
                               : -std::log(rec.distance) / std::log(static_cast<double>(q));
                found = true;
                break;
            }
        }
        if (found) recs.push_back(rec);
    }
    std::sort(recs.begin(), recs.end(),
              [](const RationalApproximation& a, const RationalApproximation& b) {
                  return a.mu_q > b.mu_q;
              });
    return recs;
}

} // namespace rml
