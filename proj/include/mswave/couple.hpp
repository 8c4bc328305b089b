#pragma once

#include "mswave/bsem.hpp"
#include "mswave/sem.hpp"

#include <Eigen/Sparse>

namespace mswave {

/// Coupled inner-region / open-boundary system over the unknowns
/// (phi_hat interior, phi_hat boundary, flux), in that order:
///
///   [ A_II  A_Ic  0 ] [phi_I]   [  0   ]
///   [ A_cI  A_cc  C ] [phi_c] = [  0   ]
///   [  0     H   -G ] [  q  ]   [phi_in]
///
/// Boundary unknowns are loop-ordered; fluxes use the exterior convention
/// (toward the inner region), which fixes the +C sign.
struct CoupledSystem {
    BsemSystem bsem;
    Eigen::SparseMatrix<Complex> a_ii;  // N_I x N_I
    Eigen::SparseMatrix<Complex> a_ib;  // N_I x N_c
    Eigen::SparseMatrix<Complex> a_bi;  // N_c x N_I
    Eigen::MatrixXcd a_bb;              // N_c x N_c
    Eigen::MatrixXcd c_flux;            // N_c x N_q, per-element boundary weights
    BoundaryTrace trace;

    int num_interior() const { return static_cast<int>(a_ii.rows()); }
    int num_boundary() const { return static_cast<int>(a_bb.rows()); }
    int num_flux() const { return bsem.num_qdofs(); }
};

CoupledSystem assemble_coupled(const SpectralMesh& mesh, const WaveEnvironment& env,
                               const Bathymetry& bathy, const BoundaryKernel& kernel,
                               const IncidentSolver* incident);

/// Solution fields over the mesh nodes.
struct FieldSolution {
    Eigen::VectorXcd phi_hat;  // transformed potential, all mesh nodes
    Eigen::VectorXcd phi;      // physical potential
    Eigen::VectorXd height;    // local wave height, m
    Eigen::VectorXcd flux;     // boundary flux dofs (exterior convention)
    double h_incident = 0.0;   // incident wave height, m
    double residual = 0.0;     // relative residual of the coupled system
    int truncated = 0;         // kernel evaluations that hit the tail cap
};

/// Direct solve by eliminating the interior block: sparse LU of A_II, dense
/// LU of the reduced boundary system, then back-substitution. env/bathy are
/// needed again to invert the sqrt(c c_g) scaling node by node.
FieldSolution solve_coupled(const CoupledSystem& sys, const SpectralMesh& mesh,
                            const WaveEnvironment& env, const Bathymetry& bathy);

/// Incident wave height 2 omega |amplitude| / (g sqrt(c c_g)) at depth h_ref.
double incident_height(const WaveEnvironment& env, double h_ref);

}  // namespace mswave
