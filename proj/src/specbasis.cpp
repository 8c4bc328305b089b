#include "mswave/specbasis.hpp"

#include <cmath>
#include <stdexcept>

namespace mswave {

std::pair<double, double> legendre_eval(int p, double x) {
    if (p < 0) throw std::invalid_argument("legendre_eval: p must be >= 0");
    if (p == 0) return {1.0, 0.0};
    double pm1 = 1.0;  // P_0
    double pc = x;     // P_1
    for (int n = 2; n <= p; ++n) {
        double pn = ((2.0 * n - 1.0) * x * pc - (n - 1.0) * pm1) / n;
        pm1 = pc;
        pc = pn;
    }
    // P_p'(x) = p (x P_p - P_{p-1}) / (x^2 - 1), with the endpoint limit
    // P_p'(+-1) = (+-1)^{p+1} p (p+1) / 2.
    double deriv;
    if (std::abs(1.0 - x * x) < 1e-14) {
        double sign = (x > 0.0) ? 1.0 : ((p % 2 == 0) ? -1.0 : 1.0);
        deriv = sign * 0.5 * p * (p + 1);
    } else {
        deriv = p * (x * pc - pm1) / (x * x - 1.0);
    }
    return {pc, deriv};
}

namespace {

// Second derivative of P_p from the Legendre ODE:
// (1-x^2) P'' - 2x P' + p(p+1) P = 0.
double legendre_second_deriv(int p, double x, double value, double deriv) {
    return (2.0 * x * deriv - p * (p + 1.0) * value) / (1.0 - x * x);
}

void fill_barycentric(LglRule& rule) {
    int n = rule.num_nodes();
    rule.bary.assign(n, 1.0);
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
            if (l != j) rule.bary[j] /= (rule.nodes[j] - rule.nodes[l]);
        }
    }
}

}  // namespace

LglRule lgl_rule(int p) {
    if (p < 1 || p > 32) throw std::invalid_argument("lgl_rule: need 1 <= p <= 32");
    LglRule rule;
    rule.order = p;
    rule.nodes.assign(p + 1, 0.0);
    rule.weights.assign(p + 1, 0.0);
    rule.nodes[0] = -1.0;
    rule.nodes[p] = 1.0;

    const double pi = std::acos(-1.0);
    for (int m = 1; m < p; ++m) {
        // Chebyshev-Lobatto initial guess, Newton on P_p'.
        double x = -std::cos(pi * m / p);
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            auto [val, der] = legendre_eval(p, x);
            double d2 = legendre_second_deriv(p, x, val, der);
            double dx = der / d2;
            x -= dx;
            if (std::abs(dx) < 1e-14) {
                converged = true;
                break;
            }
        }
        if (!converged) throw std::runtime_error("lgl_rule: Newton failed");
        rule.nodes[m] = x;
    }
    // Enforce exact symmetry of the node set.
    for (int m = 0; m <= p / 2; ++m) {
        double s = 0.5 * (rule.nodes[m] - rule.nodes[p - m]);
        rule.nodes[m] = s;
        rule.nodes[p - m] = -s;
    }
    for (int m = 0; m <= p; ++m) {
        auto [val, der] = legendre_eval(p, rule.nodes[m]);
        (void)der;
        rule.weights[m] = 2.0 / (p * (p + 1.0) * val * val);
    }
    fill_barycentric(rule);
    return rule;
}

GaussRule gauss_rule(int n) {
    if (n < 1 || n > 64) throw std::invalid_argument("gauss_rule: need 1 <= n <= 64");
    GaussRule rule;
    rule.order = n;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const double pi = std::acos(-1.0);
    for (int m = 0; m < n; ++m) {
        double x = -std::cos(pi * (m + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            auto [val, der] = legendre_eval(n, x);
            double dx = val / der;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        auto [val, der] = legendre_eval(n, x);
        (void)val;
        rule.nodes[m] = x;
        rule.weights[m] = 2.0 / ((1.0 - x * x) * der * der);
    }
    // Symmetrize.
    for (int m = 0; m < n / 2; ++m) {
        double s = 0.5 * (rule.nodes[m] - rule.nodes[n - 1 - m]);
        rule.nodes[m] = s;
        rule.nodes[n - 1 - m] = -s;
        double w = 0.5 * (rule.weights[m] + rule.weights[n - 1 - m]);
        rule.weights[m] = w;
        rule.weights[n - 1 - m] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

double lagrange_eval(const LglRule& rule, int m, double xi) {
    int n = rule.num_nodes();
    for (int j = 0; j < n; ++j) {
        if (xi == rule.nodes[j]) return (j == m) ? 1.0 : 0.0;
    }
    double num = rule.bary[m] / (xi - rule.nodes[m]);
    double den = 0.0;
    for (int j = 0; j < n; ++j) den += rule.bary[j] / (xi - rule.nodes[j]);
    return num / den;
}

void lagrange_eval_all(const LglRule& rule, double xi, double* out) {
    int n = rule.num_nodes();
    for (int j = 0; j < n; ++j) {
        if (xi == rule.nodes[j]) {
            for (int l = 0; l < n; ++l) out[l] = (l == j) ? 1.0 : 0.0;
            return;
        }
    }
    double den = 0.0;
    for (int j = 0; j < n; ++j) {
        out[j] = rule.bary[j] / (xi - rule.nodes[j]);
        den += out[j];
    }
    for (int j = 0; j < n; ++j) out[j] /= den;
}

void lagrange_deriv_all(const LglRule& rule, double xi, double* out) {
    int n = rule.num_nodes();
    // L_j'(xi) via differentiation of the barycentric form. At a node k the
    // standard node-differentiation formula applies.
    for (int k = 0; k < n; ++k) {
        if (xi == rule.nodes[k]) {
            double diag = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                out[j] = (rule.bary[j] / rule.bary[k]) / (rule.nodes[k] - rule.nodes[j]);
                diag -= out[j];
            }
            out[k] = diag;
            return;
        }
    }
    // Off-node: direct differentiation of the barycentric form loses accuracy
    // near (but not at) a node, so interpolate the nodal derivative values
    // instead: L_m'(xi) = sum_j L_j(xi) L_m'(x_j), exact since L_m' has
    // degree n - 2.
    std::vector<double> l(n);
    lagrange_eval_all(rule, xi, l.data());
    for (int m = 0; m < n; ++m) out[m] = 0.0;
    std::vector<double> row(n);
    for (int k = 0; k < n; ++k) {
        double diag = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == k) continue;
            row[j] = (rule.bary[j] / rule.bary[k]) / (rule.nodes[k] - rule.nodes[j]);
            diag -= row[j];
        }
        row[k] = diag;
        for (int m = 0; m < n; ++m) out[m] += l[k] * row[m];
    }
}

DerivativeMatrix lagrange_derivative_matrix(const LglRule& rule) {
    int n = rule.num_nodes();
    DerivativeMatrix d(n, n);
    std::vector<double> row(n);
    for (int i = 0; i < n; ++i) {
        lagrange_deriv_all(rule, rule.nodes[i], row.data());
        for (int j = 0; j < n; ++j) d(i, j) = row[j];
    }
    return d;
}

}  // namespace mswave
