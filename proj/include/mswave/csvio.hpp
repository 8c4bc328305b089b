#pragma once

#include "mswave/bench.hpp"

#include <string>
#include <vector>

namespace mswave {

/// Nodal solution table: columns
/// x,y,re_phi_hat,im_phi_hat,re_phi,im_phi,H,H_norm
/// one node per line in mesh node order, 17 significant digits, LF endings.
void write_field_csv(const SpectralMesh& mesh, const FieldSolution& sol,
                     const std::string& path);

/// Section table: columns coord,h_norm.
void write_profile_csv(const std::vector<ProfilePoint>& series, const std::string& path);

/// Convergence table: columns p,n,dof,linf_error,relative_error,runtime_s.
void write_convergence_csv(const std::vector<ErrorReport>& reports,
                           const std::string& path);

}  // namespace mswave
