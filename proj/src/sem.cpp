#include "mswave/sem.hpp"

#include <vector>

namespace mswave {

Eigen::MatrixXd element_stiffness(const SpectralMesh& mesh, int elem) {
    const int p = mesh.order;
    const int n1 = p + 1;
    const int nn = n1 * n1;
    const auto& w = mesh.rule.weights;
    DerivativeMatrix d = lagrange_derivative_matrix(mesh.rule);

    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(nn, nn);
    // Physical gradients at the collocated quadrature node (qx, qy) are
    // nonzero only for basis nodes sharing a row or column with it.
    std::vector<int> idx;
    std::vector<double> gx, gy;
    for (int qy = 0; qy < n1; ++qy)
        for (int qx = 0; qx < n1; ++qx) {
            ElementFrame f =
                element_frame(mesh, elem, mesh.rule.nodes[qx], mesh.rule.nodes[qy]);
            double inv = 1.0 / f.det;
            // Rows of J^{-1}: d(xi)/d(x,y) and d(zeta)/d(x,y).
            double xix = f.jac[3] * inv, xiy = -f.jac[1] * inv;
            double zex = -f.jac[2] * inv, zey = f.jac[0] * inv;

            idx.clear();
            gx.clear();
            gy.clear();
            for (int ax = 0; ax < n1; ++ax) {
                if (ax == qx) continue;  // picks up both directions, added last
                double dxi = d(qx, ax);
                idx.push_back(qy * n1 + ax);
                gx.push_back(dxi * xix);
                gy.push_back(dxi * xiy);
            }
            for (int ay = 0; ay < n1; ++ay) {
                double dze = d(qy, ay);
                if (ay == qy) continue;
                idx.push_back(ay * n1 + qx);
                gx.push_back(dze * zex);
                gy.push_back(dze * zey);
            }
            idx.push_back(qy * n1 + qx);
            gx.push_back(d(qx, qx) * xix + d(qy, qy) * zex);
            gy.push_back(d(qx, qx) * xiy + d(qy, qy) * zey);

            double wq = w[qx] * w[qy] * f.det;
            int m = static_cast<int>(idx.size());
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    k(idx[a], idx[b]) += wq * (gx[a] * gx[b] + gy[a] * gy[b]);
        }
    return k;
}

Eigen::MatrixXd element_stiffness_quad(const SpectralMesh& mesh, int elem,
                                       const GaussRule& quad) {
    const int p = mesh.order;
    const int n1 = p + 1;
    const int nn = n1 * n1;
    const int nq = quad.order;

    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(nn, nn);
    std::vector<double> lx(n1), lz(n1), dlx(n1), dlz(n1);
    std::vector<double> gx(nn), gy(nn);
    for (int qy = 0; qy < nq; ++qy)
        for (int qx = 0; qx < nq; ++qx) {
            double xi = quad.nodes[qx], ze = quad.nodes[qy];
            ElementFrame f = element_frame(mesh, elem, xi, ze);
            double inv = 1.0 / f.det;
            double xix = f.jac[3] * inv, xiy = -f.jac[1] * inv;
            double zex = -f.jac[2] * inv, zey = f.jac[0] * inv;
            lagrange_eval_all(mesh.rule, xi, lx.data());
            lagrange_eval_all(mesh.rule, ze, lz.data());
            lagrange_deriv_all(mesh.rule, xi, dlx.data());
            lagrange_deriv_all(mesh.rule, ze, dlz.data());
            for (int ay = 0; ay < n1; ++ay)
                for (int ax = 0; ax < n1; ++ax) {
                    double dxi = dlx[ax] * lz[ay];
                    double dze = lx[ax] * dlz[ay];
                    gx[ay * n1 + ax] = dxi * xix + dze * zex;
                    gy[ay * n1 + ax] = dxi * xiy + dze * zey;
                }
            double wq = quad.weights[qx] * quad.weights[qy] * f.det;
            for (int a = 0; a < nn; ++a)
                for (int b = 0; b < nn; ++b)
                    k(a, b) += wq * (gx[a] * gx[b] + gy[a] * gy[b]);
        }
    return k;
}

Eigen::VectorXd element_mass(const SpectralMesh& mesh, int elem,
                             const std::vector<double>& k_hat_nodes) {
    const int p = mesh.order;
    const int n1 = p + 1;
    const auto& conn = mesh.quads.at(elem);
    Eigen::VectorXd m(n1 * n1);
    for (int qy = 0; qy < n1; ++qy)
        for (int qx = 0; qx < n1; ++qx) {
            ElementFrame f =
                element_frame(mesh, elem, mesh.rule.nodes[qx], mesh.rule.nodes[qy]);
            int local = qy * n1 + qx;
            double kh = k_hat_nodes[conn[local]];
            m(local) = kh * kh * f.det * mesh.rule.weights[qx] * mesh.rule.weights[qy];
        }
    return m;
}

Eigen::VectorXd element_boundary(const SpectralMesh& mesh, int belem) {
    const int n1 = mesh.order + 1;
    Eigen::VectorXd c(n1);
    for (int m = 0; m < n1; ++m) {
        BoundaryFrame f = boundary_frame(mesh, belem, mesh.rule.nodes[m]);
        c(m) = f.arc_jac * mesh.rule.weights[m];
    }
    return c;
}

SemSystem assemble_sem(const SpectralMesh& mesh, const WaveEnvironment& env,
                       const Bathymetry& bathy) {
    const int n = mesh.num_nodes();
    const int n1 = mesh.order + 1;
    SemSystem sys;

    sys.k_hat.resize(n);
    for (int i = 0; i < n; ++i)
        sys.k_hat[i] = modified_wavenumber(env, bathy, mesh.coord_x[i], mesh.coord_y[i]);

    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(mesh.quads.size() * n1 * n1 * (2 * mesh.order + 1));
    sys.mass_diag = Eigen::VectorXcd::Zero(n);
    for (size_t e = 0; e < mesh.quads.size(); ++e) {
        Eigen::MatrixXd ke = element_stiffness(mesh, static_cast<int>(e));
        Eigen::VectorXd me = element_mass(mesh, static_cast<int>(e), sys.k_hat);
        const auto& conn = mesh.quads[e];
        for (int a = 0; a < ke.rows(); ++a) {
            sys.mass_diag(conn[a]) += me(a);
            for (int b = 0; b < ke.cols(); ++b) {
                if (ke(a, b) != 0.0)
                    trip.emplace_back(conn[a], conn[b], Complex(ke(a, b), 0.0));
            }
        }
    }
    sys.stiffness.resize(n, n);
    sys.stiffness.setFromTriplets(trip.begin(), trip.end());

    sys.helmholtz = sys.stiffness;
    for (int i = 0; i < n; ++i) sys.helmholtz.coeffRef(i, i) -= sys.mass_diag(i);
    sys.helmholtz.makeCompressed();

    // Boundary matrix over loop indices; junction nodes sum both elements.
    BoundaryTrace trace = boundary_trace(mesh);
    sys.boundary_diag = Eigen::VectorXcd::Zero(mesh.num_boundary());
    for (size_t be = 0; be < mesh.boundary_elems.size(); ++be) {
        Eigen::VectorXd ce = element_boundary(mesh, static_cast<int>(be));
        const auto& conn = mesh.boundary_elems[be];
        for (int m = 0; m < ce.size(); ++m)
            sys.boundary_diag(trace.node_to_loop[conn[m]]) += ce(m);
    }
    return sys;
}

}  // namespace mswave
