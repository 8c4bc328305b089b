#pragma once

#include "mswave/couple.hpp"

#include <string>
#include <vector>

namespace mswave {

enum class Method { Sem, Bsem };

/// One convergence-series entry.
struct ErrorReport {
    int p = 0;
    int n = 0;             // nodes carrying the compared field
    int dof = 0;           // unknowns solved for
    double linf = 0.0;     // max nodal error against the exact/reference field
    double relative = 0.0; // |integral of the difference / integral of the reference|
    double runtime_s = 0.0;
};

/// A completed benchmark solve.
struct FieldRun {
    SpectralMesh mesh;
    WaveEnvironment env;
    FieldSolution sol;
    double runtime_s = 0.0;
};

/// Plane-wave mixed boundary-value problem on [0,2]x[0,1] at k = 15,
/// theta = pi/6: Dirichlet data on x in {0,2}, Neumann data on y in {0,1},
/// exact solution e^{ik(x cos + y sin)}. One report per requested order.
std::vector<ErrorReport> run_plane_wave(double h, const std::vector<int>& orders,
                                        Method method);

/// Wave scattering by the parabolic circular shoal, T = 0.511 s, normal
/// incidence over 0.15 m depth outside, 10x10 elements on [0,2.4]^2.
FieldRun run_circular_shoal(int p);

/// Refraction-diffraction over the elliptic shoal on a 2% slope, T = 1 s,
/// incidence at 20 degrees, 40x30 elements on [-10,10]x[-7.5,7.5];
/// variable-depth kernel built from the slope-only profile.
FieldRun run_elliptic_shoal(int p);

/// Max nodal difference of two fields on the same node set.
double error_linf(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

/// Element-wise collocated quadrature of a nodal field over the mesh.
Complex integrate_field(const SpectralMesh& mesh, const Eigen::VectorXcd& f);

/// Spectral interpolation of a nodal field at an arbitrary point.
Complex eval_field(const SpectralMesh& mesh, const Eigen::VectorXcd& f, double x,
                   double y);

/// Samples a nodal field at the nodes of another mesh over the same domain.
Eigen::VectorXcd interpolate_field(const SpectralMesh& from, const Eigen::VectorXcd& f,
                                   const SpectralMesh& to);

/// |int (phi - phi_ref) dOmega / int phi_ref dOmega| on the reference mesh;
/// throws when the reference integral vanishes.
double error_relative(const SpectralMesh& ref_mesh, const Eigen::VectorXcd& on_ref,
                      const Eigen::VectorXcd& ref);

/// One sample of a wave-height section.
struct ProfilePoint {
    double coord = 0.0;
    double h_norm = 0.0;  // H / H_incident
};

/// Normalized wave height along x = value (axis 'x') or y = value (axis 'y'),
/// sampled uniformly with endpoints included. The complex potential is
/// interpolated spectrally before the modulus is taken.
std::vector<ProfilePoint> extract_profile(const SpectralMesh& mesh,
                                          const Eigen::VectorXcd& phi_hat,
                                          const WaveEnvironment& env,
                                          const Bathymetry& bathy, char axis,
                                          double value, int samples,
                                          double h_incident);

/// Binary nodal-field cache keyed by a descriptive tag; load returns false on
/// a missing file or tag mismatch.
bool load_field(const std::string& path, const std::string& tag, Eigen::VectorXcd& out);
void save_field(const std::string& path, const std::string& tag,
                const Eigen::VectorXcd& field);

/// Tag describing a benchmark field file (case, order, mesh).
std::string field_tag(const std::string& case_id, int p, const SpectralMesh& mesh);

}  // namespace mswave
