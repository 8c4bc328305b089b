#include "mswave/hankel.hpp"

#include <cmath>
#include <stdexcept>

namespace mswave {

namespace {

constexpr long double kEuler = 0.57721566490153286060651209008240243L;
constexpr long double kPi = 3.14159265358979323846264338327950288L;

// Crossover between the ascending series and the large-argument expansion.
// At z = 13 the truncated asymptotic tail bottoms out near exp(-2z) ~ 5e-12,
// while the series cancellation still leaves ample long double headroom.
constexpr double kSplit = 13.0;

struct Pair {
    long double j, y;
};

// Ascending series for J0, Y0 (DLMF 10.2.2, 10.8.1), long double throughout
// to absorb the alternating-series cancellation near the crossover.
Pair series0(long double z) {
    long double q = z * z / 4.0L;
    long double term = 1.0L, j = 1.0L, s = 0.0L, harm = 0.0L;
    for (int m = 1; m < 200; ++m) {
        term *= -q / (static_cast<long double>(m) * m);
        harm += 1.0L / m;
        j += term;
        s += -term * harm;  // (-1)^{m+1} H_m q^m / (m!)^2
        if (std::abs(term) < 1e-22L * std::abs(j) && m > 3) break;
    }
    long double y = (2.0L / kPi) * ((std::log(z / 2.0L) + kEuler) * j + s);
    return {j, y};
}

// Ascending series for J1, Y1 (DLMF 10.2.2, 10.8.1).
Pair series1(long double z) {
    long double q = z * z / 4.0L;
    // J1 = (z/2) sum (-q)^m / (m! (m+1)!)
    long double term = 1.0L, j = 1.0L;
    // Y1 companion sum: (psi(m+1) + psi(m+2)) (-q)^m / (m! (m+1)!)
    long double hm = 0.0L, hm1 = 1.0L;
    long double s = hm + hm1 - 2.0L * kEuler;
    long double c = 1.0L;
    for (int m = 1; m < 200; ++m) {
        term *= -q / (static_cast<long double>(m) * (m + 1));
        j += term;
        c *= -q / (static_cast<long double>(m) * (m + 1));
        hm += 1.0L / m;
        hm1 += 1.0L / (m + 1);
        s += c * (hm + hm1 - 2.0L * kEuler);
        if (std::abs(term) < 1e-22L * std::abs(j) && m > 3) break;
    }
    j *= z / 2.0L;
    long double y = -2.0L / (kPi * z) + (2.0L / kPi) * std::log(z / 2.0L) * j -
                    (z / (2.0L * kPi)) * s;
    return {j, y};
}

// Large-argument expansion H_nu^(1)(z) ~ sqrt(2/(pi z)) e^{i(z - nu pi/2 - pi/4)}
// sum_k i^k a_k(nu) / z^k, truncated at the smallest term (DLMF 10.17.5).
Complex asymptotic(int nu, double z) {
    long double mu = 4.0L * nu * nu;
    long double zr = z;
    // Complex sum in long double components.
    long double sr = 1.0L, si = 0.0L;
    long double ak = 1.0L;
    long double prev = 1.0L;
    for (int k = 1; k < 60; ++k) {
        long double odd = 2.0L * k - 1.0L;
        ak *= (mu - odd * odd) / (8.0L * k * zr);
        if (std::abs(ak) > prev) break;  // past the optimal truncation point
        prev = std::abs(ak);
        switch (k % 4) {
            case 0: sr += ak; break;
            case 1: si += ak; break;
            case 2: sr -= ak; break;
            case 3: si -= ak; break;
        }
        if (std::abs(ak) < 1e-20L) break;
    }
    long double amp = std::sqrt(2.0L / (kPi * zr));
    long double phase = zr - nu * kPi / 2.0L - kPi / 4.0L;
    long double cr = std::cos(phase), ci = std::sin(phase);
    long double re = amp * (cr * sr - ci * si);
    long double im = amp * (cr * si + ci * sr);
    return Complex(static_cast<double>(re), static_cast<double>(im));
}

}  // namespace

Complex hankel1_0(double z) {
    if (!(z > 0.0)) throw std::domain_error("hankel1_0: argument must be positive");
    if (z <= kSplit) {
        Pair p = series0(z);
        return Complex(static_cast<double>(p.j), static_cast<double>(p.y));
    }
    return asymptotic(0, z);
}

Complex hankel1_1(double z) {
    if (!(z > 0.0)) throw std::domain_error("hankel1_1: argument must be positive");
    if (z <= kSplit) {
        Pair p = series1(z);
        return Complex(static_cast<double>(p.j), static_cast<double>(p.y));
    }
    return asymptotic(1, z);
}

}  // namespace mswave
