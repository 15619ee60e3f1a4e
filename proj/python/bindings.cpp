// _rml: python bindings for the main laboratory operations.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rml/binormal.hpp"
#include "rml/diophantine.hpp"
#include "rml/exp_sums.hpp"
#include "rml/holder.hpp"
#include "rml/parallel.hpp"
#include "rml/turbulence.hpp"

namespace py = pybind11;
using namespace rml;

PYBIND11_MODULE(_rml, m) {
    m.doc() = "numerical laboratory for generalized Riemann non-differentiable functions";
    m.attr("__version__") = "0.1.0";

    m.def("set_max_threads", &set_max_threads, py::arg("k"));

    // ---- series evaluators ----
    m.def("eval_R", &eval_R, py::arg("x0"), py::arg("t"), py::arg("N"));
    m.def("eval_R_tilde", &eval_R_tilde, py::arg("x0"), py::arg("t"), py::arg("N"));
    m.def("eval_weierstrass", &eval_weierstrass, py::arg("t"), py::arg("N"));
    m.def("nls_truncated", &nls_truncated, py::arg("M"), py::arg("t"), py::arg("x"));
    m.def(
        "nls_truncated_with_derivative",
        [](int M, double t, double x) {
            const auto s = nls_truncated_with_derivative(M, t, x);
            return py::make_tuple(s.value, s.x_derivative);
        },
        py::arg("M"), py::arg("t"), py::arg("x"));
    m.def("required_terms", &SeriesParams::required_terms, py::arg("eps"));
    m.def("sample_R_grid", &sample_R_grid, py::arg("x0"), py::arg("T"), py::arg("N"));
    m.def("sample_weierstrass_grid", &sample_weierstrass_grid, py::arg("T"), py::arg("N"));

    py::class_<GaussSumResult>(m, "GaussSumResult")
        .def_readonly("p", &GaussSumResult::p)
        .def_readonly("b", &GaussSumResult::b)
        .def_readonly("q", &GaussSumResult::q)
        .def_readonly("value", &GaussSumResult::value)
        .def_readonly("modulus", &GaussSumResult::modulus)
        .def_readonly("zero_class", &GaussSumResult::zero_class);
    m.def("gauss_sum", &gauss_sum, py::arg("p"), py::arg("b"), py::arg("q"));

    py::class_<CurveTrace>(m, "CurveTrace")
        .def_readonly("t_grid", &CurveTrace::t_grid)
        .def_readonly("points", &CurveTrace::points);
    m.def("curve_trace", &curve_trace, py::arg("x0"), py::arg("t_start"), py::arg("t_end"),
          py::arg("samples"), py::arg("N"));

    // ---- diophantine ----
    py::class_<Convergent>(m, "Convergent")
        .def_readonly("p", &Convergent::p)
        .def_readonly("q", &Convergent::q)
        .def_readonly("residual", &Convergent::residual)
        .def_readonly("mu", &Convergent::mu);
    py::class_<ContinuedFraction>(m, "ContinuedFraction")
        .def_readonly("target", &ContinuedFraction::target)
        .def_readonly("coefficients", &ContinuedFraction::coefficients)
        .def_readonly("convergents", &ContinuedFraction::convergents)
        .def_readonly("rational_termination", &ContinuedFraction::rational_termination)
        .def_readonly("resolution_stop", &ContinuedFraction::resolution_stop)
        .def_readonly("effective_depth", &ContinuedFraction::effective_depth);
    m.def("continued_fraction", &continued_fraction, py::arg("t"), py::arg("depth"));

    py::class_<IrrationalityEstimate>(m, "IrrationalityEstimate")
        .def_readonly("defined", &IrrationalityEstimate::defined)
        .def_readonly("mu_hat", &IrrationalityEstimate::mu_hat)
        .def_readonly("mu_sequence", &IrrationalityEstimate::mu_sequence)
        .def_readonly("note", &IrrationalityEstimate::note);
    m.def("irrationality_exponent_estimate", &irrationality_exponent_estimate, py::arg("cf"));

    m.def("totient", &totient, py::arg("q"));
    m.def("totient_sieve", &totient_sieve, py::arg("q_max"));

    py::enum_<SeriesDiagnostic>(m, "SeriesDiagnostic")
        .value("Convergent", SeriesDiagnostic::Convergent)
        .value("DivergentLogFit", SeriesDiagnostic::DivergentLogFit)
        .value("Indeterminate", SeriesDiagnostic::Indeterminate);
    py::class_<PartialSumSeries>(m, "PartialSumSeries")
        .def_readonly("checkpoints", &PartialSumSeries::checkpoints)
        .def_readonly("sums", &PartialSumSeries::sums)
        .def_readonly("diagnostic", &PartialSumSeries::diagnostic)
        .def_readonly("log_slope", &PartialSumSeries::log_slope)
        .def_readonly("tail_ratio", &PartialSumSeries::tail_ratio);
    py::class_<IntervalUnion>(m, "IntervalUnion")
        .def_readonly("intervals", &IntervalUnion::intervals)
        .def_readonly("total_length", &IntervalUnion::total_length)
        .def("contains", &IntervalUnion::contains, py::arg("x"));
    py::class_<BoxDimensionFit>(m, "BoxDimensionFit")
        .def_readonly("slope", &BoxDimensionFit::slope)
        .def_readonly("intercept", &BoxDimensionFit::intercept)
        .def_readonly("j_values", &BoxDimensionFit::j_values)
        .def_readonly("counts", &BoxDimensionFit::counts);
    py::class_<RationalApproximation>(m, "RationalApproximation")
        .def_readonly("p", &RationalApproximation::p)
        .def_readonly("q", &RationalApproximation::q)
        .def_readonly("distance", &RationalApproximation::distance)
        .def_readonly("mu_q", &RationalApproximation::mu_q);

    // limsup-set specs cross the boundary as (power, Q_filter) pairs
    auto make_spec = [](double power, int Q) {
        LimsupSetSpec s = LimsupSetSpec::power_law(power);
        if (Q > 0) {
            const std::int64_t mqv = 4 * Q;
            s.q_filter = [mqv](std::int64_t q) { return q % mqv == 0; };
        }
        return s;
    };
    m.def(
        "duffin_schaeffer_partial_sums",
        [make_spec](double power, int Q, std::int64_t q_max) {
            return duffin_schaeffer_partial_sums(make_spec(power, Q), q_max);
        },
        py::arg("power"), py::arg("Q"), py::arg("q_max"));
    m.def(
        "limsup_union",
        [make_spec](double power, int Q, std::int64_t q_min, std::int64_t q_max) {
            return limsup_union(make_spec(power, Q), q_min, q_max);
        },
        py::arg("power"), py::arg("Q"), py::arg("q_min"), py::arg("q_max"));
    m.def("jarnik_box_dimension", &jarnik_box_dimension, py::arg("Q_filter"), py::arg("mu"),
          py::arg("j_min"), py::arg("j_max"));
    m.def("constrained_best_approximations", &constrained_best_approximations, py::arg("t"),
          py::arg("Q"), py::arg("q_max"));

    // ---- holder ----
    py::class_<HolderEstimate>(m, "HolderEstimate")
        .def_readonly("t", &HolderEstimate::t)
        .def_readonly("alpha_fit", &HolderEstimate::alpha_fit)
        .def_readonly("residual", &HolderEstimate::residual)
        .def_readonly("oscillation_table", &HolderEstimate::oscillation_table)
        .def_readonly("degenerate", &HolderEstimate::degenerate);
    py::class_<AlphaBins>(m, "AlphaBins")
        .def(py::init<>())
        .def_readwrite("lo", &AlphaBins::lo)
        .def_readwrite("hi", &AlphaBins::hi)
        .def_readwrite("width", &AlphaBins::width)
        .def("count", &AlphaBins::count)
        .def("center", &AlphaBins::center)
        .def("index", &AlphaBins::index);
    py::class_<SpectrumTable>(m, "SpectrumTable")
        .def_readonly("bins", &SpectrumTable::bins)
        .def_readonly("j", &SpectrumTable::j)
        .def_readonly("counts", &SpectrumTable::counts)
        .def_readonly("d_estimates", &SpectrumTable::d_estimates)
        .def_readonly("boxes", &SpectrumTable::boxes);
    py::class_<ScalingFit>(m, "ScalingFit")
        .def_readonly("exponent", &ScalingFit::exponent)
        .def_readonly("prefactor", &ScalingFit::prefactor)
        .def_readonly("residual", &ScalingFit::residual)
        .def_readonly("classified", &ScalingFit::classified)
        .def_readonly("m_x0q", &ScalingFit::m_x0q)
        .def_readonly("dist_x0", &ScalingFit::dist_x0)
        .def_readonly("gauss_modulus", &ScalingFit::gauss_modulus)
        .def_readonly("table", &ScalingFit::table);
    py::enum_<PredictionKind>(m, "PredictionKind")
        .value("IrrationalConstrained", PredictionKind::IrrationalConstrained)
        .value("IrrationalLowerOnly", PredictionKind::IrrationalLowerOnly)
        .value("RationalHalf", PredictionKind::RationalHalf)
        .value("RationalUnclassified", PredictionKind::RationalUnclassified);
    py::class_<ExponentPrediction>(m, "ExponentPrediction")
        .def_readonly("kind", &ExponentPrediction::kind)
        .def_readonly("value", &ExponentPrediction::value)
        .def_readonly("mu_hat", &ExponentPrediction::mu_hat)
        .def_readonly("note", &ExponentPrediction::note);

    m.def("oscillation", &oscillation, py::arg("x0"), py::arg("t"), py::arg("h"), py::arg("N"),
          py::arg("samples"));
    m.def("rational_scaling_fit", &rational_scaling_fit, py::arg("P"), py::arg("Q"), py::arg("p"),
          py::arg("q"), py::arg("j_min"), py::arg("j_max"), py::arg("N"));
    m.def("holder_exponent_estimate", &holder_exponent_estimate, py::arg("x0"), py::arg("t"),
          py::arg("j_min"), py::arg("j_max"), py::arg("N"), py::arg("samples") = 8);
    m.def("weierstrass_holder_estimate", &weierstrass_holder_estimate, py::arg("t"),
          py::arg("j_min"), py::arg("j_max"), py::arg("N"), py::arg("samples") = 16,
          py::arg("offsets_per_octave") = 2);
    m.def("predicted_exponent", &predicted_exponent, py::arg("P"), py::arg("Q"), py::arg("t"),
          py::arg("depth"));
    m.def("spectrum_estimate", &spectrum_estimate, py::arg("x0"), py::arg("grid_log2"),
          py::arg("j"), py::arg("bins") = AlphaBins{}, py::arg("N") = (1 << 18));
    m.def("weierstrass_spectrum", &weierstrass_spectrum, py::arg("grid_log2"), py::arg("j"),
          py::arg("bins") = AlphaBins{}, py::arg("N") = 45);

    // ---- turbulence ----
    py::class_<FlatnessPoint>(m, "FlatnessPoint")
        .def_readonly("n_cut", &FlatnessPoint::n_cut)
        .def_readonly("m_max", &FlatnessPoint::m_max)
        .def_readonly("value", &FlatnessPoint::value)
        .def_readonly("value_quadrature", &FlatnessPoint::value_quadrature)
        .def_readonly("value_convolution", &FlatnessPoint::value_convolution)
        .def_readonly("method_gap", &FlatnessPoint::method_gap)
        .def_readonly("tail_bound", &FlatnessPoint::tail_bound);
    py::class_<FlatnessCurve>(m, "FlatnessCurve")
        .def_readonly("points", &FlatnessCurve::points)
        .def_readonly("log_growth_slope", &FlatnessCurve::log_growth_slope);
    py::class_<StructureFunctionTable>(m, "StructureFunctionTable")
        .def_readonly("p_values", &StructureFunctionTable::p_values)
        .def_readonly("zeta", &StructureFunctionTable::zeta)
        .def_readonly("residuals", &StructureFunctionTable::residuals);
    py::class_<FrischParisiReport>(m, "FrischParisiReport")
        .def_readonly("alpha", &FrischParisiReport::alpha)
        .def_readonly("legendre", &FrischParisiReport::legendre)
        .def_readonly("d_hat", &FrischParisiReport::d_hat)
        .def_readonly("at_boundary", &FrischParisiReport::at_boundary)
        .def_readonly("max_dev_measured", &FrischParisiReport::max_dev_measured)
        .def_readonly("max_dev_theory", &FrischParisiReport::max_dev_theory);

    m.def("highpass_l2", &highpass_l2, py::arg("n_cut"));
    m.def(
        "flatness",
        [](double x0, std::int64_t n_cut, std::int64_t m_max, std::int64_t grid) {
            return flatness(x0, n_cut, m_max, grid, FlatnessMethod::Both);
        },
        py::arg("x0"), py::arg("n_cut"), py::arg("m_max"), py::arg("grid") = 0);
    m.def("flatness_curve", &flatness_curve, py::arg("x0"), py::arg("k_min"), py::arg("k_max"));
    m.def("flatness_of_coefficients", &flatness_of_coefficients, py::arg("coeffs"));
    m.def("structure_function_exponents", &structure_function_exponents, py::arg("x0"),
          py::arg("p_list"), py::arg("j_min"), py::arg("j_max"), py::arg("grid_log2"),
          py::arg("N"));
    m.def("frisch_parisi_check", &frisch_parisi_check, py::arg("spectrum"), py::arg("sf"),
          py::arg("alpha_lo") = 0.55, py::arg("alpha_hi") = 0.70);
    m.def(
        "legendre_infimum",
        [](double alpha, const std::vector<double>& p, const std::vector<double>& z) {
            return legendre_infimum(alpha, p, z, nullptr);
        },
        py::arg("alpha"), py::arg("p_values"), py::arg("zeta"));

    // ---- binormal ----
    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("t_grid", &Trajectory::t_grid)
        .def_readonly("positions", &Trajectory::positions);
    m.def(
        "trajectory_leading",
        [](double x0, int M, const std::vector<double>& grid) {
            return trajectory_leading(x0, M, grid);
        },
        py::arg("x0"), py::arg("M"), py::arg("t_grid"));
    m.def(
        "corner_trajectory",
        [](double x0, int M, const std::vector<double>& grid) {
            return corner_trajectory(x0, M, grid);
        },
        py::arg("x0"), py::arg("M"), py::arg("t_grid"));
    m.def("trajectory_deviation", &trajectory_deviation, py::arg("a"), py::arg("b"));
}
