#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>

namespace mswave {

using Complex = std::complex<double>;

inline constexpr double kGravity = 9.81;  // m/s^2

/// Time-harmonic wave environment: angular frequency, incident direction and
/// amplitude scale of the incident (transformed) potential.
struct WaveEnvironment {
    double omega = 1.0;        // rad/s
    double theta = 0.0;        // incident direction, rad from +x
    Complex amplitude = 1.0;   // scale of the incident transformed potential

    double period() const { return 2.0 * std::acos(-1.0) / omega; }
};

/// Seabed profiles used by the benchmarks. Depth must stay positive.
class Bathymetry {
public:
    virtual ~Bathymetry() = default;
    virtual double depth(double x, double y) const = 0;
    /// True when the wavenumber field has a non-smooth derivative somewhere
    /// inside the axis-aligned rectangle [x0,x1]x[y0,y1].
    virtual bool nonsmooth_in(double x0, double x1, double y0, double y1) const {
        (void)x0; (void)x1; (void)y0; (void)y1;
        return false;
    }
    /// True when depth depends on x only.
    virtual bool x_only() const { return false; }
};

class ConstantDepth final : public Bathymetry {
public:
    explicit ConstantDepth(double h) : h_(h) {}
    double depth(double, double) const override { return h_; }
    bool x_only() const override { return true; }

private:
    double h_;
};

/// Parabolic circular shoal on a 0.15 m flat bottom:
/// h = 0.1 (r/0.8)^2 + 0.05 for r < 0.8, 0.15 outside, r measured from
/// the shoal center.
class CircularShoal final : public Bathymetry {
public:
    CircularShoal(double xc = 1.2, double yc = 1.2) : xc_(xc), yc_(yc) {}
    double depth(double x, double y) const override;
    bool nonsmooth_in(double x0, double x1, double y0, double y1) const override;

private:
    double xc_, yc_;
};

/// Sloping bottom (2% slope along x between flat ends) with a superimposed
/// elliptic shoal.
class SlopeEllipticShoal final : public Bathymetry {
public:
    double depth(double x, double y) const override;
    bool nonsmooth_in(double x0, double x1, double y0, double y1) const override;

    /// Slope-only component (depth depends on x alone); this is the profile
    /// seen by the outer-region kernel.
    static double slope_depth(double x);
};

/// Depth depending on x only, flat outside [a, c]; wraps a callable.
class PiecewiseX final : public Bathymetry {
public:
    PiecewiseX(double a, double c, std::function<double(double)> h)
        : a_(a), c_(c), h_(std::move(h)) {}
    double depth(double x, double) const override {
        return h_(std::clamp(x, a_, c_));
    }
    bool x_only() const override { return true; }
    double band_begin() const { return a_; }
    double band_end() const { return c_; }

private:
    double a_, c_;
    std::function<double(double)> h_;
};

/// Per-point wave quantities derived from depth and frequency.
struct DispersionState {
    double k = 0.0;     // rad/m
    double c = 0.0;     // phase velocity, m/s
    double cg = 0.0;    // group velocity, m/s
    double k_hat = 0.0; // modified wavenumber (== k here)
    double ccg = 0.0;   // c * cg
};

/// Positive root of omega^2 = g k tanh(k h).
double solve_dispersion(double omega, double h);

/// Phase and group velocity for a consistent (omega, k, h) triple.
std::pair<double, double> velocities(double k, double h, double omega);

/// Full dispersion state at depth h.
DispersionState dispersion_state(double omega, double h);

/// Modified wavenumber at a point; equals the local dispersion root.
double modified_wavenumber(const WaveEnvironment& env, const Bathymetry& bathy,
                           double x, double y);

/// Change of variable phi_hat = phi * sqrt(c cg) that turns the mild-slope
/// operator into a Helmholtz operator.
Complex to_helmholtz_var(Complex phi, double c, double cg);
Complex from_helmholtz_var(Complex phi_hat, double c, double cg);

/// H = 2 omega |phi| / g.
double wave_height(Complex phi, double omega);

}  // namespace mswave
