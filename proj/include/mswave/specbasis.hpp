#pragma once

#include <Eigen/Dense>
#include <vector>

namespace mswave {

/// Legendre-Gauss-Lobatto rule of order p: p+1 nodes on [-1,1] including the
/// endpoints, with the interior nodes at the roots of P'_p.
struct LglRule {
    int order = 0;
    std::vector<double> nodes;    // ascending, nodes[0] = -1, nodes[p] = +1
    std::vector<double> weights;  // w_m = 2 / (p (p+1) P_p(x_m)^2)
    std::vector<double> bary;     // barycentric weights for interpolation

    int num_nodes() const { return order + 1; }
};

/// Standard Gauss-Legendre rule with n points, exact for degree <= 2n-1.
struct GaussRule {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// D(i,j) = L_j'(x_i) for the Lagrange nodal basis on the LGL nodes.
using DerivativeMatrix = Eigen::MatrixXd;

/// Value and derivative of the Legendre polynomial P_p at x, by the
/// three-term recurrence. Total on p >= 0, |x| <= 1.
std::pair<double, double> legendre_eval(int p, double x);

/// LGL rule for 1 <= p <= 32. Interior nodes by Newton iteration on P'_p
/// seeded from the Chebyshev-Lobatto points.
LglRule lgl_rule(int p);

/// Gauss-Legendre rule for 1 <= n <= 64.
GaussRule gauss_rule(int n);

/// Value of the m-th nodal basis L_m at xi, by the barycentric formula with
/// an exact short-circuit when xi coincides with a node.
double lagrange_eval(const LglRule& rule, int m, double xi);

/// All p+1 basis values at xi at once.
void lagrange_eval_all(const LglRule& rule, double xi, double* out);

/// All p+1 basis derivatives at xi.
void lagrange_deriv_all(const LglRule& rule, double xi, double* out);

/// D(i,j) = L_j'(x_i); every row sums to zero.
DerivativeMatrix lagrange_derivative_matrix(const LglRule& rule);

}  // namespace mswave
