#include <doctest.h>

#include "mswave/specbasis.hpp"

#include <cmath>

using namespace mswave;

TEST_CASE("legendre recurrence values") {
    auto [p0, d0] = legendre_eval(0, 0.3);
    CHECK(p0 == 1.0);
    CHECK(d0 == 0.0);

    auto [p2, d2] = legendre_eval(2, 0.0);
    CHECK(p2 == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(d2 == doctest::Approx(0.0).epsilon(1e-14));

    auto [p5, d5] = legendre_eval(5, 1.0);
    CHECK(p5 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d5 == doctest::Approx(15.0).epsilon(1e-13));
}

TEST_CASE("lgl rule small orders") {
    LglRule r1 = lgl_rule(1);
    CHECK(r1.nodes[0] == -1.0);
    CHECK(r1.nodes[1] == 1.0);
    CHECK(r1.weights[0] == doctest::Approx(1.0));
    CHECK(r1.weights[1] == doctest::Approx(1.0));

    LglRule r2 = lgl_rule(2);
    CHECK(r2.nodes[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(r2.weights[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(r2.weights[1] == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("lgl rule invariants across orders") {
    for (int p = 1; p <= 32; ++p) {
        LglRule r = lgl_rule(p);
        CHECK(r.nodes.front() == -1.0);
        CHECK(r.nodes.back() == 1.0);
        double sum = 0.0;
        for (int m = 0; m <= p; ++m) {
            sum += r.weights[m];
            CHECK(r.weights[m] > 0.0);
            if (m > 0) CHECK(r.nodes[m] > r.nodes[m - 1]);
            CHECK(r.nodes[m] == doctest::Approx(-r.nodes[p - m]).epsilon(1e-14));
            if (m > 0 && m < p) {
                auto [val, der] = legendre_eval(p, r.nodes[m]);
                (void)val;
                CHECK(std::abs(der) < 1e-11);
            }
        }
        CHECK(sum == doctest::Approx(2.0).epsilon(1e-13));
    }
}

TEST_CASE("lgl quadrature integrates monomials up to 2p-1") {
    for (int p = 2; p <= 20; ++p) {
        LglRule r = lgl_rule(p);
        for (int deg = 0; deg <= 2 * p - 1; ++deg) {
            double q = 0.0;
            for (int m = 0; m <= p; ++m) q += r.weights[m] * std::pow(r.nodes[m], deg);
            double exact = (deg % 2 == 0) ? 2.0 / (deg + 1) : 0.0;
            CHECK(std::abs(q - exact) < 1e-12);
        }
    }
}

TEST_CASE("gauss rule") {
    GaussRule g1 = gauss_rule(1);
    CHECK(g1.nodes[0] == 0.0);
    CHECK(g1.weights[0] == doctest::Approx(2.0));

    GaussRule g2 = gauss_rule(2);
    CHECK(g2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(g2.weights[0] == doctest::Approx(1.0).epsilon(1e-14));

    // Degree-5 exactness at n=3: integral of x^4 is 2/5.
    GaussRule g3 = gauss_rule(3);
    double q = 0.0;
    for (int m = 0; m < 3; ++m) q += g3.weights[m] * std::pow(g3.nodes[m], 4);
    CHECK(q == doctest::Approx(0.4).epsilon(1e-14));

    for (int n : {8, 32, 64}) {
        GaussRule g = gauss_rule(n);
        for (int deg = 0; deg <= 2 * n - 1; deg += 7) {
            double s = 0.0;
            for (int m = 0; m < n; ++m) s += g.weights[m] * std::pow(g.nodes[m], deg);
            double exact = (deg % 2 == 0) ? 2.0 / (deg + 1) : 0.0;
            CHECK(std::abs(s - exact) < 1e-13);
        }
    }
}

TEST_CASE("barycentric lagrange evaluation") {
    LglRule r = lgl_rule(2);
    // Nodes {-1, 0, 1}: L_1(xi) = 1 - xi^2.
    CHECK(lagrange_eval(r, 1, 0.5) == doctest::Approx(0.75).epsilon(1e-14));

    for (int p : {3, 7, 12}) {
        LglRule rule = lgl_rule(p);
        // Kronecker property is exact at nodes.
        for (int m = 0; m <= p; ++m)
            for (int k = 0; k <= p; ++k)
                CHECK(lagrange_eval(rule, m, rule.nodes[k]) == (m == k ? 1.0 : 0.0));
        // Partition of unity off the nodes.
        for (double xi : {-0.9137, -0.3, 0.123456, 0.77}) {
            double s = 0.0;
            for (int m = 0; m <= p; ++m) s += lagrange_eval(rule, m, xi);
            CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("derivative matrix") {
    LglRule r1 = lgl_rule(1);
    DerivativeMatrix d1 = lagrange_derivative_matrix(r1);
    CHECK(d1(0, 0) == doctest::Approx(-0.5));
    CHECK(d1(0, 1) == doctest::Approx(0.5));
    CHECK(d1(1, 0) == doctest::Approx(-0.5));
    CHECK(d1(1, 1) == doctest::Approx(0.5));

    for (int p : {3, 5, 10}) {
        LglRule r = lgl_rule(p);
        DerivativeMatrix d = lagrange_derivative_matrix(r);
        for (int i = 0; i <= p; ++i) {
            double row = 0.0;
            for (int j = 0; j <= p; ++j) row += d(i, j);
            CHECK(std::abs(row) < 1e-12);
        }
        // Exact differentiation of an in-space polynomial: xi^3 -> 3 xi^2.
        Eigen::VectorXd f(p + 1);
        for (int j = 0; j <= p; ++j) f(j) = std::pow(r.nodes[j], 3);
        Eigen::VectorXd df = d * f;
        for (int i = 0; i <= p; ++i)
            CHECK(df(i) == doctest::Approx(3.0 * r.nodes[i] * r.nodes[i]).epsilon(1e-11));
    }
}
