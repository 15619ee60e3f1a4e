#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

// Continued fractions, irrationality exponents, totients, and finite-stage
// approximations of the limsup sets
//
//   A_psi = { t : |t - p/q| <= psi(q) for infinitely many coprime (p,q) },
//
// optionally with the denominator restricted to multiples of 4Q.

namespace rml {

struct Convergent {
    std::int64_t p = 0, q = 1;
    double residual = 0.0; // |t - p/q|, double-double accurate
    double mu = 0.0;       // -log|t - p/q| / log q  (NaN when q < 2 or residual 0)
};

struct ContinuedFraction {
    double target = 0.0;
    std::vector<std::int64_t> coefficients; // a_0, a_1, ...
    std::vector<Convergent> convergents;
    bool rational_termination = false;
    bool resolution_stop = false; // q_n^2 exceeded 1/ulp(t)
    int effective_depth = 0;
};

ContinuedFraction continued_fraction(double t, int depth);

struct IrrationalityEstimate {
    bool defined = false;   // false for rational inputs
    double mu_hat = 0.0;    // max mu_n over the deepest third of the expansion
    std::vector<double> mu_sequence;
    std::string note;
};

// Requires >= 3 usable convergents; throws std::domain_error otherwise.
IrrationalityEstimate irrationality_exponent_estimate(const ContinuedFraction& cf);

std::uint64_t totient(std::uint64_t q);
std::vector<std::uint64_t> totient_sieve(std::uint64_t q_max);

struct LimsupSetSpec {
    std::function<double(std::int64_t)> psi;       // radius, >= 0
    std::function<bool(std::int64_t)> q_filter;    // empty = accept all
    std::string name;                              // echoed in reports

    bool accepts(std::int64_t q) const { return !q_filter || q_filter(q); }
    static LimsupSetSpec inverse_square_multiples(std::int64_t Q); // 1_{4QN}(q)/q^2
    static LimsupSetSpec power_law(double exponent);               // q^{-exponent}, no filter
};

enum class SeriesDiagnostic { Convergent, DivergentLogFit, Indeterminate };

struct PartialSumSeries {
    std::vector<std::int64_t> checkpoints;
    std::vector<double> sums; // sum_{q<=X} psi(q) phi(q)
    SeriesDiagnostic diagnostic = SeriesDiagnostic::Indeterminate;
    double log_slope = 0.0;   // fit of S(X) against ln X
    double tail_ratio = 0.0;  // last doubling increment / total
};

PartialSumSeries duffin_schaeffer_partial_sums(const LimsupSetSpec& spec, std::int64_t q_max);

struct IntervalUnion {
    std::vector<std::pair<double, double>> intervals; // disjoint, sorted, within [0,1]
    double total_length = 0.0;

    bool contains(double x) const;
};

// Exact union (endpoint sort + merge) of B(p/q, psi(q)) over filtered
// q in [q_min, q_max] and coprime p in [0, q], clipped to [0,1].
IntervalUnion limsup_union(const LimsupSetSpec& spec, std::int64_t q_min, std::int64_t q_max);

struct BoxDimensionFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<int> j_values;
    std::vector<std::int64_t> counts;
};

// Box-counting estimate for the Jarnik set at exponent mu. At scale
// delta = 2^-j, boxes are counted against the balls B(p/q, q^-mu) with q in
// the dyadic window (Q/2, Q], Q = delta^{-1/mu} (the natural covering; see
// README). Q_filter = 0 disables the 4*Q_filter*N denominator restriction.
BoxDimensionFit jarnik_box_dimension(int Q_filter, double mu, int j_min, int j_max);

struct RationalApproximation {
    std::int64_t p = 0, q = 1;
    double distance = 0.0; // |t - p/q|
    double mu_q = 0.0;     // -log|t - p/q| / log q (inf when distance == 0)
};

// Best coprime approximation for every q in 4QN up to q_max, sorted by mu_q
// descending.
std::vector<RationalApproximation>
constrained_best_approximations(double t, int Q, std::int64_t q_max);

} // namespace rml
