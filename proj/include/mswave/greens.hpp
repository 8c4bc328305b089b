#pragma once

#include "mswave/hankel.hpp"
#include "mswave/waves.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace mswave {

/// Kernel value and gradient at a field point for a given source. The kernel
/// is split into a radial free-space part (i/4)H_0^(1)(k_ref r) and a smooth
/// remainder; the remainder stays finite at coincident points, where the
/// total fields are not populated and `coincident` is set.
struct GreensEvaluation {
    Complex psi{};
    Complex grad_x{}, grad_y{};
    Complex reg_psi{};
    Complex reg_x{}, reg_y{};
    double k_ref = 0.0;
    bool coincident = false;
    bool truncated = false;  // tail tolerance not reached before the cap
};

/// Constant-depth kernel psi = (i/4)H_0^(1)(k r). Throws std::invalid_argument
/// for coincident points.
GreensEvaluation greens_constant(double x, double y, double xs, double ys, double k);

/// Wavenumber profile along x: k(x) constant outside [a, c], smooth inside
/// except at the listed breakpoints.
struct WavenumberProfile {
    double a = 0.0, c = 0.0;
    std::function<double(double)> k;
    std::vector<double> breakpoints;

    double at(double x) const { return k(std::clamp(x, a, c)); }
    double k_left() const { return at(a); }
    double k_right() const { return at(c); }
    double k_max() const;
};

/// Profile of modified wavenumbers over an x-only bathymetry.
WavenumberProfile make_profile(const WaveEnvironment& env, const PiecewiseX& bathy,
                               std::vector<double> breakpoints = {});

/// Transformed 1D field for one transverse wavenumber: Psi solves
/// Psi_xx + (k^2(x) - lambda^2) Psi + delta(x - xs) = 0 with radiation
/// conditions at both ends of the solved interval.
class TransformedLine {
public:
    Complex value(double x) const;
    Complex deriv(double x) const;
    double lo() const;
    double hi() const;

    struct Impl;
    explicit TransformedLine(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

private:
    std::shared_ptr<const Impl> impl_;
};

/// Solves the transformed problem on [lo, hi] (defaults to the profile band).
/// xs must lie inside the solved interval; the interval is widened to contain
/// the band so the Robin ends sit in constant-wavenumber regions.
TransformedLine solve_transformed_1d(const WavenumberProfile& profile, double lambda_y,
                                     double xs, double lo = 0.0, double hi = -1.0);

/// One kernel evaluation request: source (xs, ys), field point (x, y).
struct KernelRequest {
    double xs = 0.0, ys = 0.0;
    double x = 0.0, y = 0.0;
};

/// Variable-depth kernel via the inverse Fourier integral over the transverse
/// wavenumber. Requests sharing a source x are processed in one sweep.
std::vector<GreensEvaluation> greens_variable_batch(const WavenumberProfile& profile,
                                                    const std::vector<KernelRequest>& requests);

GreensEvaluation greens_variable(const WavenumberProfile& profile,
                                 double x, double y, double xs, double ys);

/// Incident transformed potential and its gradient.
struct IncidentField {
    Complex phi{};
    Complex grad_x{}, grad_y{};
};

/// Incident wave entering from x = -inf at angle env.theta. Over a constant
/// wavenumber this is the plane wave amplitude * e^{ik(x cos + y sin)}; over
/// a variable profile the x-dependence comes from a 1D refraction solve with
/// the transverse wavenumber fixed by the upstream medium.
class IncidentSolver {
public:
    IncidentSolver(const WaveEnvironment& env, double k_const);
    IncidentSolver(const WaveEnvironment& env, const WavenumberProfile& profile,
                   double lo, double hi);
    ~IncidentSolver();
    IncidentSolver(IncidentSolver&&) noexcept;

    IncidentField at(double x, double y) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace mswave
