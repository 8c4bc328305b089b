#include "mswave/couple.hpp"

#include <Eigen/SparseLU>

#include <stdexcept>
#include <vector>

namespace mswave {

CoupledSystem assemble_coupled(const SpectralMesh& mesh, const WaveEnvironment& env,
                               const Bathymetry& bathy, const BoundaryKernel& kernel,
                               const IncidentSolver* incident) {
    CoupledSystem sys;
    sys.trace = boundary_trace(mesh);
    const int n_int = mesh.num_interior;
    const int n_bnd = mesh.num_boundary();

    SemSystem sem = assemble_sem(mesh, env, bathy);

    // Split the Helmholtz operator by interior/boundary destination, mapping
    // boundary node ids to loop indices.
    std::vector<Eigen::Triplet<Complex>> t_ii, t_ib, t_bi;
    sys.a_bb = Eigen::MatrixXcd::Zero(n_bnd, n_bnd);
    for (int outer = 0; outer < sem.helmholtz.outerSize(); ++outer)
        for (Eigen::SparseMatrix<Complex>::InnerIterator it(sem.helmholtz, outer); it; ++it) {
            int i = static_cast<int>(it.row()), j = static_cast<int>(it.col());
            bool bi = i >= n_int, bj = j >= n_int;
            int ri = bi ? sys.trace.node_to_loop[i] : i;
            int rj = bj ? sys.trace.node_to_loop[j] : j;
            if (!bi && !bj)
                t_ii.emplace_back(ri, rj, it.value());
            else if (!bi)
                t_ib.emplace_back(ri, rj, it.value());
            else if (!bj)
                t_bi.emplace_back(ri, rj, it.value());
            else
                sys.a_bb(ri, rj) += it.value();
        }
    sys.a_ii.resize(n_int, n_int);
    sys.a_ii.setFromTriplets(t_ii.begin(), t_ii.end());
    sys.a_ib.resize(n_int, n_bnd);
    sys.a_ib.setFromTriplets(t_ib.begin(), t_ib.end());
    sys.a_bi.resize(n_bnd, n_int);
    sys.a_bi.setFromTriplets(t_bi.begin(), t_bi.end());

    sys.bsem = assemble_bsem(mesh, kernel, incident, {Side::Exterior, true});

    // Boundary flux matrix: element boundary weights scattered onto the
    // corner-split flux dofs. The + sign converts the exterior flux
    // convention to the mesh-outward normal used by the weak form.
    sys.c_flux = Eigen::MatrixXcd::Zero(n_bnd, sys.bsem.num_qdofs());
    int p = mesh.order;
    for (size_t e = 0; e < mesh.boundary_elems.size(); ++e) {
        Eigen::VectorXd ce = element_boundary(mesh, static_cast<int>(e));
        for (int m = 0; m <= p; ++m) {
            int li = sys.trace.node_to_loop[mesh.boundary_elems[e][m]];
            sys.c_flux(li, sys.bsem.elem_qdof[e][m]) += ce(m);
        }
    }
    return sys;
}

FieldSolution solve_coupled(const CoupledSystem& sys, const SpectralMesh& mesh,
                            const WaveEnvironment& env, const Bathymetry& bathy) {
    const int n_int = sys.num_interior();
    const int n_bnd = sys.num_boundary();
    const int n_q = sys.num_flux();
    const int n_coll = static_cast<int>(sys.bsem.H.rows());
    if (n_coll != n_q)
        throw std::invalid_argument("coupled system requires corner flux collocation");

    Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu_ii;
    lu_ii.compute(sys.a_ii);
    if (lu_ii.info() != Eigen::Success)
        throw std::runtime_error("interior Helmholtz block is singular");

    // Schur complement of the interior block, built in column blocks to keep
    // the dense interior solves bounded in memory.
    Eigen::MatrixXcd schur = sys.a_bb;
    const int blk = 64;
    for (int c0 = 0; c0 < n_bnd; c0 += blk) {
        int nc = std::min(blk, n_bnd - c0);
        Eigen::MatrixXcd rhs = sys.a_ib.middleCols(c0, nc);
        Eigen::MatrixXcd x = lu_ii.solve(rhs);
        schur.middleCols(c0, nc).noalias() -= sys.a_bi * x;
    }

    Eigen::MatrixXcd reduced(n_bnd + n_coll, n_bnd + n_q);
    reduced.topLeftCorner(n_bnd, n_bnd) = schur;
    reduced.topRightCorner(n_bnd, n_q) = sys.c_flux;
    reduced.bottomLeftCorner(n_coll, n_bnd) = sys.bsem.H;
    reduced.bottomRightCorner(n_coll, n_q) = -sys.bsem.G;
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n_bnd + n_coll);
    rhs.tail(n_coll) = sys.bsem.phi_in;

    Eigen::VectorXcd sol = Eigen::PartialPivLU<Eigen::MatrixXcd>(reduced).solve(rhs);
    Eigen::VectorXcd phi_b = sol.head(n_bnd);
    Eigen::VectorXcd q = sol.tail(n_q);
    Eigen::VectorXcd phi_i = lu_ii.solve(Eigen::VectorXcd(-(sys.a_ib * phi_b)));

    FieldSolution out;
    out.flux = q;
    out.truncated = sys.bsem.truncated;

    double scale = std::max(1.0, sys.bsem.phi_in.cwiseAbs().maxCoeff());
    double r = (sys.a_ii * phi_i + sys.a_ib * phi_b).cwiseAbs().maxCoeff();
    r = std::max(r, (sys.a_bi * phi_i + sys.a_bb * phi_b + sys.c_flux * q)
                        .cwiseAbs()
                        .maxCoeff());
    r = std::max(r,
                 (sys.bsem.H * phi_b - sys.bsem.G * q - sys.bsem.phi_in).cwiseAbs().maxCoeff());
    out.residual = r / scale;

    int n = mesh.num_nodes();
    out.phi_hat.resize(n);
    out.phi.resize(n);
    out.height.resize(n);
    for (int id = 0; id < n; ++id) {
        Complex ph = (id < n_int) ? phi_i(id) : phi_b(sys.trace.node_to_loop[id]);
        out.phi_hat(id) = ph;
        DispersionState ds = dispersion_state(env.omega, bathy.depth(mesh.coord_x[id],
                                                                     mesh.coord_y[id]));
        out.phi(id) = from_helmholtz_var(ph, ds.c, ds.cg);
        out.height(id) = wave_height(out.phi(id), env.omega);
    }

    // Upstream (incident-side) reference depth: far left of the domain, where
    // every benchmark bathymetry is flat.
    double h_ref = bathy.depth(mesh.domain.x0 - 100.0 * mesh.domain.width(),
                               0.5 * (mesh.domain.y0 + mesh.domain.y1));
    out.h_incident = incident_height(env, h_ref);
    return out;
}

double incident_height(const WaveEnvironment& env, double h_ref) {
    DispersionState ds = dispersion_state(env.omega, h_ref);
    return 2.0 * env.omega * std::abs(env.amplitude) / (kGravity * std::sqrt(ds.ccg));
}

}  // namespace mswave
