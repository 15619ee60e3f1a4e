#include "rml/binormal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rml/dd.hpp"
#include "rml/exp_sums.hpp"
#include "rml/fit.hpp"

namespace rml {

Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm(Vec3 v) { return std::sqrt(dot(v, v)); }

double Frame::orthonormality_error() const {
    double e = 0.0;
    e = std::max(e, std::abs(norm(T) - 1.0));
    e = std::max(e, std::abs(norm(e1) - 1.0));
    e = std::max(e, std::abs(norm(e2) - 1.0));
    e = std::max(e, std::abs(dot(T, e1)));
    e = std::max(e, std::abs(dot(T, e2)));
    e = std::max(e, std::abs(dot(e1, e2)));
    e = std::max(e, std::abs(dot(cross(T, e1), e2) - 1.0)); // right-handedness
    return e;
}

Trajectory trajectory_leading(double x0, int M, std::span<const double> t_grid) {
    if (M < 0) throw std::invalid_argument("trajectory_leading: M must be >= 0");
    Trajectory traj;
    traj.t_grid.assign(t_grid.begin(), t_grid.end());
    traj.positions.resize(t_grid.size());
    const DD v = dd_frac(dd_div(dd_from(x0), dd_two_pi()));
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double t = t_grid[i];
        const DD u = dd_frac(dd_div(dd_from(t), dd_two_pi()));
        // plain -M..M loop over the antiderivative terms (n = 0 term is t)
        Kahan re, im;
        re.add(t);
        for (int n = -M; n <= M; ++n) {
            if (n == 0) continue;
            const double nd = static_cast<double>(n);
            const double f1 = frac_mul(nd * nd, u);
            const double f2 = frac_mul(nd, v);
            const double th = 2.0 * std::numbers::pi * f1;
            const double xa = 2.0 * std::numbers::pi * f2;
            const std::complex<double> num(std::cos(th) - 1.0, std::sin(th));
            const std::complex<double> rot(std::cos(xa), std::sin(xa));
            const std::complex<double> term = num / std::complex<double>(0.0, nd * nd) * rot;
            re.add(term.real());
            im.add(term.imag());
        }
        traj.positions[i] = {re.sum, im.sum};
    }
    return traj;
}

namespace {

// rows of the frame matrix advance by the exact rotation exp(dt * Omega).
// With Omega_ij = -eps_ijk w_k, w = (gamma, Re u_x, Im u_x) in frame
// coordinates, the rows rotate at angular velocity -w expressed in the lab.
Frame rotate_frame(const Frame& f, Vec3 omega_frame, double dt) {
    const double th = -norm(omega_frame) * dt;
    if (th == 0.0) return f;
    Vec3 axis_lab = omega_frame.x * f.T + omega_frame.y * f.e1 + omega_frame.z * f.e2;
    // renormalize: a non-unit axis would break the isometry and feed back
    axis_lab = (1.0 / norm(axis_lab)) * axis_lab;
    const double c = std::cos(th), s = std::sin(th);
    auto rot = [&](Vec3 v) {
        // Rodrigues
        return c * v + s * cross(axis_lab, v) + ((1.0 - c) * dot(axis_lab, v)) * axis_lab;
    };
    return {rot(f.T), rot(f.e1), rot(f.e2)};
}

} // namespace

std::vector<Frame> frame_evolve(const Driver& driver,
                                const std::function<double(double)>& A,
                                const Frame& frame0, std::span<const double> t_grid) {
    if (t_grid.size() < 1) throw std::invalid_argument("frame_evolve: empty grid");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw std::invalid_argument("frame_evolve: t_grid must be strictly increasing");
    if (frame0.orthonormality_error() > 1e-8)
        throw std::invalid_argument("frame_evolve: frame0 is not orthonormal");

    std::vector<Frame> out;
    out.reserve(t_grid.size());
    out.push_back(frame0);
    Frame f = frame0;
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double t0 = t_grid[i - 1], t1 = t_grid[i];
        const double tm = 0.5 * (t0 + t1);
        const DriverSample s = driver(tm);
        if (!std::isfinite(s.u.real()) || !std::isfinite(s.u.imag()) ||
            !std::isfinite(s.u_x.real()) || !std::isfinite(s.u_x.imag()))
            throw std::invalid_argument("frame_evolve: NaN in driver sample");
        const double gamma = 0.5 * (std::norm(s.u) - (A ? A(tm) : 0.0));
        const Vec3 omega{gamma, s.u_x.real(), s.u_x.imag()};
        f = rotate_frame(f, omega, t1 - t0);
        out.push_back(f);
    }
    return out;
}

Trajectory corner_trajectory(double x0, int M, std::span<const double> t_grid) {
    if (M < 0) throw std::invalid_argument("corner_trajectory: M must be >= 0");
    if (t_grid.size() < 2) throw std::invalid_argument("corner_trajectory: need >= 2 grid times");

    const Driver driver = [x0, M](double t) -> DriverSample {
        const NlsSample s = nls_truncated_with_derivative(M, t, x0);
        return {s.value, s.x_derivative};
    };
    // non-precessing gauge: A = time-mean of |u(., x0)|^2, which keeps the
    // (e1, e2) rotation rate purely oscillatory. The n^2 = m^2 resonances
    // give 2M + D_M(2 x0) with D_M the Dirichlet kernel.
    double dirichlet = 1.0;
    for (int n = 1; n <= M; ++n) dirichlet += 2.0 * std::cos(2.0 * n * x0);
    const double a_const = static_cast<double>(2 * M) + dirichlet;
    const auto A = [a_const](double) { return a_const; };

    const Frame frame0;
    const auto frames = frame_evolve(driver, A, frame0, t_grid);

    Trajectory traj;
    traj.t_grid.assign(t_grid.begin(), t_grid.end());
    traj.positions.resize(t_grid.size());
    traj.positions[0] = {0.0, 0.0};

    // velocity v = Re(u) e2 - Im(u) e1; trapezoidal quadrature, projection
    // onto the initial (e1, e2) plane
    Vec3 pos{0, 0, 0};
    DriverSample s_prev = driver(t_grid[0]);
    Vec3 v_prev = s_prev.u.real() * frames[0].e2 - s_prev.u.imag() * frames[0].e1;
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const DriverSample s = driver(t_grid[i]);
        const Vec3 v = s.u.real() * frames[i].e2 - s.u.imag() * frames[i].e1;
        const double dt = t_grid[i] - t_grid[i - 1];
        pos = pos + (0.5 * dt) * (v_prev + v);
        v_prev = v;
        traj.positions[i] = {dot(pos, frame0.e1), dot(pos, frame0.e2)};
    }
    return traj;
}

double trajectory_deviation(const Trajectory& a, const Trajectory& b) {
    if (a.positions.size() != b.positions.size())
        throw std::invalid_argument("trajectory_deviation: size mismatch");
    // L2-optimal global phase, then sup deviation
    std::complex<double> corr{0.0, 0.0};
    for (std::size_t i = 0; i < a.positions.size(); ++i)
        corr += std::conj(b.positions[i]) * a.positions[i];
    const double m = std::abs(corr);
    const std::complex<double> phase = m > 0.0 ? corr / m : std::complex<double>(1.0, 0.0);
    double sup = 0.0;
    for (std::size_t i = 0; i < a.positions.size(); ++i)
        sup = std::max(sup, std::abs(a.positions[i] - phase * b.positions[i]));
    return sup;
}

} // namespace rml
