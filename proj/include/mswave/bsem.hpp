#pragma once

#include "mswave/greens.hpp"
#include "mswave/mesh.hpp"

#include <Eigen/Dense>

#include <vector>

namespace mswave {

/// Which region the integral equation represents. The interior form uses the
/// mesh outward normal and the interior boundary angles; the exterior form
/// flips the normal, so the flux unknowns point toward the inner region.
enum class Side { Interior, Exterior };

/// Green's kernel used by the boundary integrals.
class BoundaryKernel {
public:
    virtual ~BoundaryKernel() = default;
    /// Reference wavenumber at a source abscissa (controls the log-singular
    /// part extracted analytically near the collocation point).
    virtual double k_at(double xs) const = 0;
    /// True when the kernel depends on the source-field distance only.
    virtual bool uniform() const = 0;
    virtual std::vector<GreensEvaluation> evaluate(
        const std::vector<KernelRequest>& requests) const = 0;
};

class ConstantKernel final : public BoundaryKernel {
public:
    explicit ConstantKernel(double k) : k_(k) {}
    double k_at(double) const override { return k_; }
    bool uniform() const override { return true; }
    std::vector<GreensEvaluation> evaluate(
        const std::vector<KernelRequest>& requests) const override;

private:
    double k_;
};

class VariableKernel final : public BoundaryKernel {
public:
    explicit VariableKernel(WavenumberProfile profile) : profile_(std::move(profile)) {}
    double k_at(double xs) const override { return profile_.at(xs); }
    bool uniform() const override { return false; }
    std::vector<GreensEvaluation> evaluate(
        const std::vector<KernelRequest>& requests) const override;
    const WavenumberProfile& profile() const { return profile_; }

private:
    WavenumberProfile profile_;
};

/// A collocation point on the boundary loop. Nodal points carry their loop
/// index; the optional corner points sit between the first two nodes of the
/// element following each corner and have node = -1.
struct CollocationPoint {
    double x = 0.0, y = 0.0;
    int belem = 0;
    double xi = 0.0;
    int node = -1;
};

/// Collocated boundary integral operators: H phi = G q + phi_in, where phi
/// lives on the N_c loop nodes and q on flux dofs that are split at corners
/// (each corner contributes one dof per adjacent element).
struct BsemSystem {
    Eigen::MatrixXcd H;                     // n_coll x N_c
    Eigen::MatrixXcd G;                     // n_coll x N_q
    Eigen::VectorXcd phi_in;                // n_coll
    std::vector<CollocationPoint> points;
    std::vector<std::vector<int>> elem_qdof;  // per boundary element: p+1 dof ids
    std::vector<int> qdof_node;               // flux dof -> loop index
    int truncated = 0;  // kernel evaluations that hit the spectral tail cap

    int num_qdofs() const { return static_cast<int>(qdof_node.size()); }
};

struct BsemOptions {
    Side side = Side::Exterior;
    /// Add one non-nodal collocation point after each corner so the system
    /// stays square with the corner-split flux dofs.
    bool corner_flux_collocation = true;
};

/// Free term theta/(2 pi) at a boundary loop node.
double free_term(const SpectralMesh& mesh, int loop_index, Side side);

/// Regularized singular integrals of the radial kernel over one element:
/// entry j is the principal value of int (i/4) H0(k sigma) L_j J dxi with the
/// collocation point at local coordinate xi_s inside the element. The log
/// part is integrated in closed form; the remainder by graded quadrature.
Eigen::VectorXcd integrate_singular(const SpectralMesh& mesh, int belem, double xi_s,
                                    double k);

/// Contributions of one element to the H and G rows of a collocation point
/// not lying on it; quadrature scheme chosen from the distance and the
/// element's oscillation content.
void integrate_regular(const SpectralMesh& mesh, int belem, double cx, double cy,
                       const BoundaryKernel& kernel, Side side,
                       Eigen::Ref<Eigen::VectorXcd> h_row,
                       Eigen::Ref<Eigen::VectorXcd> g_row);

/// Assembles the collocated system over the whole loop. incident may be null
/// (pure boundary-value problem, phi_in = 0).
BsemSystem assemble_bsem(const SpectralMesh& mesh, const BoundaryKernel& kernel,
                         const IncidentSolver* incident, const BsemOptions& opts);

}  // namespace mswave
