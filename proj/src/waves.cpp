#include "mswave/waves.hpp"

#include <cmath>
#include <stdexcept>

namespace mswave {

double CircularShoal::depth(double x, double y) const {
    double r = std::hypot(x - xc_, y - yc_);
    if (r < 0.8) return 0.1 * (r / 0.8) * (r / 0.8) + 0.05;
    return 0.15;
}

bool CircularShoal::nonsmooth_in(double x0, double x1, double y0, double y1) const {
    // The depth derivative jumps on the circle r = 0.8.
    double dx = std::max({x0 - xc_, 0.0, xc_ - x1});
    double dy = std::max({y0 - yc_, 0.0, yc_ - y1});
    double dmin = std::hypot(dx, dy);
    double dmax = std::hypot(std::max(std::abs(x0 - xc_), std::abs(x1 - xc_)),
                             std::max(std::abs(y0 - yc_), std::abs(y1 - yc_)));
    return dmin <= 0.8 && dmax >= 0.8;
}

double SlopeEllipticShoal::slope_depth(double x) {
    if (x < -5.85) return 0.45;
    if (x > 14.15) return 0.05;
    return 0.45 - 0.02 * (5.85 + x);
}

double SlopeEllipticShoal::depth(double x, double y) const {
    double h = slope_depth(x);
    double e = (x / 3.0) * (x / 3.0) + (y / 4.0) * (y / 4.0);
    if (e <= 1.0) {
        double s = 1.0 - (x / 3.75) * (x / 3.75) - (y / 5.0) * (y / 5.0);
        h += 0.3 - 0.5 * std::sqrt(s);
    }
    return h;
}

bool SlopeEllipticShoal::nonsmooth_in(double x0, double x1, double y0, double y1) const {
    // Non-smooth on the shoal edge (x/3)^2 + (y/4)^2 = 1 and at the slope
    // breaks x = -5.85, x = 14.15.
    if ((x0 <= -5.85 && x1 >= -5.85) || (x0 <= 14.15 && x1 >= 14.15)) return true;
    auto e = [](double x, double y) { return (x / 3.0) * (x / 3.0) + (y / 4.0) * (y / 4.0); };
    double ex = (x0 <= 0.0 && x1 >= 0.0) ? 0.0 : std::min(std::abs(x0), std::abs(x1));
    double ey = (y0 <= 0.0 && y1 >= 0.0) ? 0.0 : std::min(std::abs(y0), std::abs(y1));
    double emin = e(ex, ey);
    double emax = std::max({e(x0, y0), e(x0, y1), e(x1, y0), e(x1, y1)});
    return emin <= 1.0 && emax >= 1.0;
}

double solve_dispersion(double omega, double h) {
    if (omega <= 0.0 || h <= 0.0)
        throw std::invalid_argument("solve_dispersion: omega and h must be positive");
    double w2g = omega * omega / kGravity;
    // Guo-style initial guess, then Newton on f(k) = g k tanh(k h) - omega^2.
    double k = w2g / std::tanh(std::min(w2g * h, 700.0));
    double target = omega * omega;
    for (int it = 0; it < 100; ++it) {
        double th = std::tanh(std::min(k * h, 700.0));
        double f = kGravity * k * th - target;
        double df = kGravity * (th + k * h * (1.0 - th * th));
        double dk = f / df;
        k -= dk;
        if (k <= 0.0) k = 1e-12;
        if (std::abs(dk) < 1e-15 * std::max(k, 1.0)) break;
    }
    // Bisection fallback if Newton left a residual.
    double th = std::tanh(std::min(k * h, 700.0));
    if (std::abs(kGravity * k * th - target) > 1e-12 * target) {
        double lo = 1e-8, hi = 10.0 * w2g + 1.0;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            double f = kGravity * mid * std::tanh(std::min(mid * h, 700.0)) - target;
            (f < 0.0 ? lo : hi) = mid;
        }
        k = 0.5 * (lo + hi);
    }
    return k;
}

std::pair<double, double> velocities(double k, double h, double omega) {
    double c = omega / k;
    double kh2 = 2.0 * k * h;
    double ratio = (kh2 > 700.0) ? 0.0 : kh2 / std::sinh(kh2);
    double cg = 0.5 * c * (1.0 + ratio);
    return {c, cg};
}

DispersionState dispersion_state(double omega, double h) {
    DispersionState s;
    s.k = solve_dispersion(omega, h);
    auto [c, cg] = velocities(s.k, h, omega);
    s.c = c;
    s.cg = cg;
    s.k_hat = s.k;
    s.ccg = c * cg;
    return s;
}

double modified_wavenumber(const WaveEnvironment& env, const Bathymetry& bathy,
                           double x, double y) {
    return solve_dispersion(env.omega, bathy.depth(x, y));
}

Complex to_helmholtz_var(Complex phi, double c, double cg) {
    return phi * std::sqrt(c * cg);
}

Complex from_helmholtz_var(Complex phi_hat, double c, double cg) {
    return phi_hat / std::sqrt(c * cg);
}

double wave_height(Complex phi, double omega) {
    return 2.0 * omega * std::abs(phi) / kGravity;
}

}  // namespace mswave
