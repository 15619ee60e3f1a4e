#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

// Parallel-frame evolution driven by truncated quadratic sums, and the
// corner-trajectory identity
//
//   int_0^t sum_{|n|<=M} e^{i n^2 tau + i n x0} dtau = -i Rt_{x0}(t).
//
// The frame system is d/dt (T,e1,e2)^T = Omega(t) (T,e1,e2)^T with the skew
// generator built from u = value and u_x = x-derivative of the driver:
//
//   Omega = [ 0      -Im u_x   Re u_x ]
//           [ Im u_x  0       -gamma  ]
//           [-Re u_x  gamma    0      ]   with gamma = (|u|^2 - A(t))/2.
//
// Steps apply the exact rotation exp(dt * Omega_mid) in Rodrigues form, so
// orthonormality is preserved to rounding.

namespace rml {

struct Vec3 {
    double x = 0, y = 0, z = 0;
};

Vec3 operator+(Vec3 a, Vec3 b);
Vec3 operator-(Vec3 a, Vec3 b);
Vec3 operator*(double s, Vec3 v);
double dot(Vec3 a, Vec3 b);
Vec3 cross(Vec3 a, Vec3 b);
double norm(Vec3 v);

struct Frame {
    Vec3 T{1, 0, 0};
    Vec3 e1{0, 1, 0};
    Vec3 e2{0, 0, 1};

    // max deviation over unit norms, pairwise orthogonality, det - 1
    double orthonormality_error() const;
};

struct Trajectory {
    std::vector<double> t_grid;
    std::vector<std::complex<double>> positions;
};

// Closed-form antiderivative sum_{|n|<=M} (e^{i n^2 t} - 1)/(i n^2) e^{i n x0}
// with the n = 0 term equal to t; identically -i * eval_R_tilde(x0, t, M).
Trajectory trajectory_leading(double x0, int M, std::span<const double> t_grid);

struct DriverSample {
    std::complex<double> u;
    std::complex<double> u_x;
};
using Driver = std::function<DriverSample(double)>;

// Midpoint exponential integrator for the frame system; one Frame per grid
// time (frame0 at t_grid[0]). A is the free gauge function.
std::vector<Frame> frame_evolve(const Driver& driver,
                                const std::function<double(double)>& A,
                                const Frame& frame0, std::span<const double> t_grid);

// Position quadrature of the frame-reconstructed velocity
// v = Re(u) e2 - Im(u) e1 driven by the truncated sum at x0, projected onto
// the initial (e1, e2) plane as a complex number. Uses the non-precessing
// gauge A = 2M+1 (the x-mean of |u|^2 for this driver).
Trajectory corner_trajectory(double x0, int M, std::span<const double> t_grid);

// sup_t |a - e^{i phi} b| after the L2-optimal phase alignment phi
// (the frame gauge leaves one global phase free).
double trajectory_deviation(const Trajectory& a, const Trajectory& b);

} // namespace rml
