#pragma once

#include "mswave/mesh.hpp"
#include "mswave/waves.hpp"

#include <Eigen/Sparse>

namespace mswave {

/// Assembled spectral-element discretization of the transformed Helmholtz
/// equation: A phi_hat - C q_hat = 0 with q_hat along the inner-region
/// outward normal. The mass term is diagonal by construction.
struct SemSystem {
    Eigen::SparseMatrix<Complex> stiffness;  // K, N_F x N_F
    Eigen::VectorXcd mass_diag;              // M_ii = k^2 J w at node i
    Eigen::SparseMatrix<Complex> helmholtz;  // A = K - M
    Eigen::VectorXcd boundary_diag;          // C over loop index, size N_c
    std::vector<double> k_hat;               // modified wavenumber per node
};

/// K^e_ij over one quad with the collocated LGL rule.
Eigen::MatrixXd element_stiffness(const SpectralMesh& mesh, int elem);

/// Same integral with an arbitrary Gauss rule (cross-check path).
Eigen::MatrixXd element_stiffness_quad(const SpectralMesh& mesh, int elem,
                                       const GaussRule& quad);

/// Diagonal of M^e: k_hat^2(x_i) J(x_i) w_i per local node.
Eigen::VectorXd element_mass(const SpectralMesh& mesh, int elem,
                             const std::vector<double>& k_hat_nodes);

/// Diagonal of the boundary matrix C^e: J(xi_i) w_i per local node.
Eigen::VectorXd element_boundary(const SpectralMesh& mesh, int belem);

/// Global assembly over the mesh with the physics of env/bathymetry.
SemSystem assemble_sem(const SpectralMesh& mesh, const WaveEnvironment& env,
                       const Bathymetry& bathy);

}  // namespace mswave
