#include <doctest.h>

#include "mswave/couple.hpp"

#include <cmath>
#include <cstring>

using namespace mswave;

namespace {

struct NullCase {
    WaveEnvironment env;
    double depth = 0.5;
    double k = 0.0;
    SpectralMesh mesh;

    NullCase(int nx, int ny, int p, double theta) {
        env.omega = 5.0;
        env.theta = theta;
        k = solve_dispersion(env.omega, depth);
        mesh = build_structured_mesh({0.0, 1.0, 0.0, 1.0}, nx, ny, p);
    }
};

}  // namespace

TEST_CASE("coupled system has the expected block structure") {
    NullCase tc(3, 2, 4, 0.0);
    ConstantKernel kernel(tc.k);
    ConstantDepth bathy(tc.depth);
    CoupledSystem sys = assemble_coupled(tc.mesh, tc.env, bathy, kernel, nullptr);

    int nc = tc.mesh.num_boundary();
    CHECK(sys.num_interior() == tc.mesh.num_interior);
    CHECK(sys.num_boundary() == nc);
    CHECK(sys.num_flux() == nc + 4);
    CHECK(sys.bsem.H.rows() == nc + 4);
    CHECK(sys.c_flux.rows() == nc);
    CHECK(sys.c_flux.cols() == nc + 4);

    // Every flux dof receives weight from exactly its owning element(s);
    // summing the columns recovers the diagonal boundary matrix.
    for (size_t e = 0; e < tc.mesh.boundary_elems.size(); ++e) {
        Eigen::VectorXd ce = element_boundary(tc.mesh, static_cast<int>(e));
        for (int m = 0; m <= tc.mesh.order; ++m) CHECK(ce(m) > 0.0);
    }
    Eigen::VectorXcd rowsum = sys.c_flux.rowwise().sum();
    for (int i = 0; i < nc; ++i) CHECK(std::abs(rowsum(i).imag()) < 1e-15);
}

TEST_CASE("null scatterer: constant depth passes the incident wave through") {
    NullCase tc(4, 4, 6, 0.3);
    ConstantKernel kernel(tc.k);
    ConstantDepth bathy(tc.depth);
    IncidentSolver incident(tc.env, tc.k);
    CoupledSystem sys = assemble_coupled(tc.mesh, tc.env, bathy, kernel, &incident);
    FieldSolution sol = solve_coupled(sys, tc.mesh, tc.env, bathy);

    CHECK(sol.residual < 1e-10);
    CHECK(sol.truncated == 0);

    Complex i1(0.0, 1.0);
    double cs = std::cos(tc.env.theta), sn = std::sin(tc.env.theta);
    double err = 0.0;
    for (int id = 0; id < tc.mesh.num_nodes(); ++id) {
        Complex exact = std::exp(i1 * tc.k * (tc.mesh.coord_x[id] * cs +
                                              tc.mesh.coord_y[id] * sn));
        err = std::max(err, std::abs(sol.phi_hat(id) - exact));
    }
    CHECK(err < 1e-6);

    // Fluxes recover the incident normal derivative (inner-pointing normal).
    double qerr = 0.0;
    int p = tc.mesh.order;
    for (size_t e = 0; e < sys.bsem.elem_qdof.size(); ++e)
        for (int m = 0; m <= p; ++m) {
            BoundaryFrame f = boundary_frame(tc.mesh, static_cast<int>(e),
                                             tc.mesh.rule.nodes[m]);
            Complex exact = -i1 * tc.k * (cs * f.nx + sn * f.ny) *
                            std::exp(i1 * tc.k * (f.x * cs + f.y * sn));
            qerr = std::max(qerr, std::abs(sol.flux(sys.bsem.elem_qdof[e][m]) - exact));
        }
    CHECK(qerr < 1e-5);

    // Wave height of a unit-amplitude transformed plane wave matches the
    // incident height everywhere.
    for (int id = 0; id < tc.mesh.num_nodes(); ++id)
        CHECK(sol.height(id) == doctest::Approx(sol.h_incident).epsilon(1e-6));
}

TEST_CASE("assembly is deterministic") {
    NullCase tc(2, 2, 4, 0.2);
    ConstantKernel kernel(tc.k);
    ConstantDepth bathy(tc.depth);
    IncidentSolver incident(tc.env, tc.k);
    CoupledSystem a = assemble_coupled(tc.mesh, tc.env, bathy, kernel, &incident);
    CoupledSystem b = assemble_coupled(tc.mesh, tc.env, bathy, kernel, &incident);
    CHECK(std::memcmp(a.bsem.H.data(), b.bsem.H.data(),
                      sizeof(Complex) * a.bsem.H.size()) == 0);
    CHECK(std::memcmp(a.bsem.G.data(), b.bsem.G.data(),
                      sizeof(Complex) * a.bsem.G.size()) == 0);
    CHECK(std::memcmp(a.bsem.phi_in.data(), b.bsem.phi_in.data(),
                      sizeof(Complex) * a.bsem.phi_in.size()) == 0);

    FieldSolution s1 = solve_coupled(a, tc.mesh, tc.env, bathy);
    FieldSolution s2 = solve_coupled(b, tc.mesh, tc.env, bathy);
    CHECK(std::memcmp(s1.phi_hat.data(), s2.phi_hat.data(),
                      sizeof(Complex) * s1.phi_hat.size()) == 0);
}

TEST_CASE("solution is invariant under interior renumbering") {
    NullCase tc(3, 3, 5, 0.35);
    ConstantKernel kernel(tc.k);
    ConstantDepth bathy(tc.depth);
    IncidentSolver incident(tc.env, tc.k);
    CoupledSystem sys = assemble_coupled(tc.mesh, tc.env, bathy, kernel, &incident);
    FieldSolution base = solve_coupled(sys, tc.mesh, tc.env, bathy);

    // Permute the interior unknowns of the assembled system; the recovered
    // boundary trace and fluxes must not change.
    int ni = sys.num_interior();
    std::vector<int> perm(ni);
    for (int i = 0; i < ni; ++i) perm[i] = (i * 7919 + 13) % ni;  // bijection: gcd(7919, ni)=1
    Eigen::PermutationMatrix<Eigen::Dynamic> P(ni);
    for (int i = 0; i < ni; ++i) P.indices()[i] = perm[i];
    CoupledSystem permuted = sys;
    permuted.a_ii = P * sys.a_ii * P.transpose();
    permuted.a_ib = P * sys.a_ib;
    permuted.a_bi = sys.a_bi * P.transpose();
    FieldSolution moved = solve_coupled(permuted, tc.mesh, tc.env, bathy);

    CHECK(moved.residual < 1e-10);
    // Boundary nodes are numbered last, so their recovered values align.
    double err = 0.0;
    for (int id = ni; id < tc.mesh.num_nodes(); ++id)
        err = std::max(err, std::abs(moved.phi_hat(id) - base.phi_hat(id)));
    CHECK(err < 1e-10);
    CHECK((moved.flux - base.flux).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("flat variable-depth kernel reproduces the constant-kernel solution") {
    NullCase tc(2, 2, 5, 0.25);
    ConstantDepth bathy(tc.depth);
    PiecewiseX flat(0.4, 0.6, [&](double) { return tc.depth; });
    WavenumberProfile prof = make_profile(tc.env, flat);
    ConstantKernel ck(tc.k);
    VariableKernel vk(prof);
    IncidentSolver inc_c(tc.env, tc.k);
    IncidentSolver inc_v(tc.env, prof, -1.0, 2.0);

    CoupledSystem sa = assemble_coupled(tc.mesh, tc.env, bathy, ck, &inc_c);
    CoupledSystem sb = assemble_coupled(tc.mesh, tc.env, bathy, vk, &inc_v);
    FieldSolution fa = solve_coupled(sa, tc.mesh, tc.env, bathy);
    FieldSolution fb = solve_coupled(sb, tc.mesh, tc.env, bathy);
    CHECK((fa.phi_hat - fb.phi_hat).cwiseAbs().maxCoeff() < 1e-5);
}
