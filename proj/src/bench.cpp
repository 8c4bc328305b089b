#include "mswave/bench.hpp"

#include <Eigen/SparseLU>

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mswave {

namespace {

const double kPi = std::acos(-1.0);

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Plane-wave benchmark frequency: depth 1 m with omega chosen so the
// dispersion root sits at k = 15.
struct PlaneWaveSetup {
    double depth = 1.0;
    double omega = 0.0;
    double k = 0.0;
    double theta = kPi / 6.0;

    PlaneWaveSetup() {
        omega = std::sqrt(kGravity * 15.0 * std::tanh(15.0 * depth));
        k = solve_dispersion(omega, depth);
    }
    Complex exact(double x, double y) const {
        return std::exp(Complex(0.0, k) * (x * std::cos(theta) + y * std::sin(theta)));
    }
    Complex exact_flux(double x, double y, double nx, double ny) const {
        return Complex(0.0, k) * (std::cos(theta) * nx + std::sin(theta) * ny) *
               exact(x, y);
    }
};

bool on_dirichlet_side(double x) { return std::abs(x) < 1e-9 || std::abs(x - 2.0) < 1e-9; }

ErrorReport plane_wave_sem(const PlaneWaveSetup& pw, const SpectralMesh& mesh) {
    auto t0 = std::chrono::steady_clock::now();
    WaveEnvironment env;
    env.omega = pw.omega;
    env.theta = pw.theta;
    ConstantDepth bathy(pw.depth);
    SemSystem sem = assemble_sem(mesh, env, bathy);
    BoundaryTrace trace = boundary_trace(mesh);

    int n = mesh.num_nodes();
    std::vector<int> umap(n, -1);
    int nu = 0;
    for (int i = 0; i < n; ++i)
        if (!on_dirichlet_side(mesh.coord_x[i])) umap[i] = nu++;

    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(nu);
    std::vector<Eigen::Triplet<Complex>> trips;
    for (int outer = 0; outer < sem.helmholtz.outerSize(); ++outer)
        for (Eigen::SparseMatrix<Complex>::InnerIterator it(sem.helmholtz, outer); it; ++it) {
            int i = static_cast<int>(it.row()), j = static_cast<int>(it.col());
            if (umap[i] < 0) continue;
            if (umap[j] >= 0)
                trips.emplace_back(umap[i], umap[j], it.value());
            else
                rhs(umap[i]) -= it.value() * pw.exact(mesh.coord_x[j], mesh.coord_y[j]);
        }
    // Natural data on the y sides: C q with the exact outward flux.
    for (int li = 0; li < mesh.num_boundary(); ++li) {
        int id = trace.loop_to_node[li];
        if (umap[id] < 0) continue;
        double ny = (mesh.coord_y[id] < 0.5) ? -1.0 : 1.0;
        rhs(umap[id]) += sem.boundary_diag(li) *
                         pw.exact_flux(mesh.coord_x[id], mesh.coord_y[id], 0.0, ny);
    }

    Eigen::SparseMatrix<Complex> a(nu, nu);
    a.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("plane-wave SEM: factorization failed");
    Eigen::VectorXcd sol = lu.solve(rhs);

    double err = 0.0;
    for (int i = 0; i < n; ++i)
        if (umap[i] >= 0)
            err = std::max(err, std::abs(sol(umap[i]) -
                                         pw.exact(mesh.coord_x[i], mesh.coord_y[i])));
    ErrorReport rep;
    rep.p = mesh.order;
    rep.n = n;
    rep.dof = nu;
    rep.linf = err;
    rep.relative = err;  // unit-amplitude exact field
    rep.runtime_s = seconds_since(t0);
    return rep;
}

ErrorReport plane_wave_bsem(const PlaneWaveSetup& pw, const SpectralMesh& mesh) {
    auto t0 = std::chrono::steady_clock::now();
    ConstantKernel kernel(pw.k);
    BsemSystem sys = assemble_bsem(mesh, kernel, nullptr, {Side::Interior, false});

    int nc = mesh.num_boundary();
    int nq = sys.num_qdofs();
    int p = mesh.order;

    // Dirichlet elements are the vertical ones; their potential is data and
    // their flux is unknown, and vice versa on the Neumann sides.
    std::vector<bool> elem_dirichlet(mesh.boundary_elems.size());
    std::vector<bool> qdof_known(nq, false);
    for (size_t e = 0; e < mesh.boundary_elems.size(); ++e) {
        BoundaryFrame f = boundary_frame(mesh, static_cast<int>(e), 0.0);
        elem_dirichlet[e] = std::abs(f.nx) > 0.5;
        for (int m = 0; m <= p; ++m)
            if (!elem_dirichlet[e]) qdof_known[sys.elem_qdof[e][m]] = true;
    }

    // Unknown ordering: free potentials first, then free fluxes.
    std::vector<int> phi_u(nc, -1), q_u(nq, -1);
    int nun = 0;
    for (int li = 0; li < nc; ++li) {
        int id = mesh.boundary_nodes[li];
        if (!on_dirichlet_side(mesh.coord_x[id])) phi_u[li] = nun++;
    }
    for (int d = 0; d < nq; ++d)
        if (!qdof_known[d]) q_u[d] = nun++;
    if (nun != nc)
        throw std::runtime_error("plane-wave BSEM: unknown count mismatch");

    // Known data vectors.
    Eigen::VectorXcd phi_k = Eigen::VectorXcd::Zero(nc), q_k = Eigen::VectorXcd::Zero(nq);
    for (int li = 0; li < nc; ++li) {
        int id = mesh.boundary_nodes[li];
        if (phi_u[li] < 0) phi_k(li) = pw.exact(mesh.coord_x[id], mesh.coord_y[id]);
    }
    for (size_t e = 0; e < mesh.boundary_elems.size(); ++e)
        for (int m = 0; m <= p; ++m) {
            int d = sys.elem_qdof[e][m];
            if (!qdof_known[d]) continue;
            BoundaryFrame f = boundary_frame(mesh, static_cast<int>(e), mesh.rule.nodes[m]);
            q_k(d) = pw.exact_flux(f.x, f.y, f.nx, f.ny);
        }

    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(nc, nc);
    Eigen::VectorXcd rhs = -(sys.H * phi_k) + sys.G * q_k;
    for (int li = 0; li < nc; ++li)
        if (phi_u[li] >= 0) a.col(phi_u[li]) = sys.H.col(li);
    for (int d = 0; d < nq; ++d)
        if (q_u[d] >= 0) a.col(q_u[d]) = -sys.G.col(d);

    Eigen::VectorXcd sol = Eigen::PartialPivLU<Eigen::MatrixXcd>(a).solve(rhs);

    double err = 0.0;
    for (int li = 0; li < nc; ++li) {
        if (phi_u[li] < 0) continue;
        int id = mesh.boundary_nodes[li];
        err = std::max(err, std::abs(sol(phi_u[li]) -
                                     pw.exact(mesh.coord_x[id], mesh.coord_y[id])));
    }
    ErrorReport rep;
    rep.p = p;
    rep.n = nc;
    rep.dof = nc;
    rep.linf = err;
    rep.relative = err;
    rep.runtime_s = seconds_since(t0);
    return rep;
}

}  // namespace

std::vector<ErrorReport> run_plane_wave(double h, const std::vector<int>& orders,
                                        Method method) {
    PlaneWaveSetup pw;
    int nx = static_cast<int>(std::lround(2.0 / h));
    int ny = static_cast<int>(std::lround(1.0 / h));
    std::vector<ErrorReport> out;
    for (int p : orders) {
        SpectralMesh mesh = build_structured_mesh({0.0, 2.0, 0.0, 1.0}, nx, ny, p);
        out.push_back(method == Method::Sem ? plane_wave_sem(pw, mesh)
                                            : plane_wave_bsem(pw, mesh));
    }
    return out;
}

FieldRun run_circular_shoal(int p) {
    auto t0 = std::chrono::steady_clock::now();
    FieldRun run;
    run.env.omega = 2.0 * kPi / 0.511;
    run.env.theta = 0.0;
    run.mesh = build_structured_mesh({0.0, 2.4, 0.0, 2.4}, 10, 10, p);
    CircularShoal bathy;
    double k_out = solve_dispersion(run.env.omega, 0.15);
    ConstantKernel kernel(k_out);
    IncidentSolver incident(run.env, k_out);
    CoupledSystem sys = assemble_coupled(run.mesh, run.env, bathy, kernel, &incident);
    run.sol = solve_coupled(sys, run.mesh, run.env, bathy);
    run.runtime_s = seconds_since(t0);
    return run;
}

FieldRun run_elliptic_shoal(int p) {
    auto t0 = std::chrono::steady_clock::now();
    FieldRun run;
    run.env.omega = 2.0 * kPi;
    run.env.theta = 20.0 * kPi / 180.0;
    // Incident height 0.01058 m over the 0.45 m deep upstream region.
    double h_up = 0.45;
    DispersionState up = dispersion_state(run.env.omega, h_up);
    run.env.amplitude = 0.01058 * kGravity * std::sqrt(up.ccg) / (2.0 * run.env.omega);
    run.mesh = build_structured_mesh({-10.0, 10.0, -7.5, 7.5}, 40, 30, p);
    SlopeEllipticShoal bathy;
    PiecewiseX slope(-5.85, 14.15, SlopeEllipticShoal::slope_depth);
    WavenumberProfile prof = make_profile(run.env, slope);
    VariableKernel kernel(prof);
    IncidentSolver incident(run.env, prof, -10.0, 10.0);
    CoupledSystem sys = assemble_coupled(run.mesh, run.env, bathy, kernel, &incident);
    run.sol = solve_coupled(sys, run.mesh, run.env, bathy);
    run.runtime_s = seconds_since(t0);
    return run;
}

double error_linf(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("error_linf: mismatched node sets");
    return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

Complex integrate_field(const SpectralMesh& mesh, const Eigen::VectorXcd& f) {
    int p = mesh.order;
    Complex total = 0.0;
    for (size_t e = 0; e < mesh.quads.size(); ++e) {
        double det = element_frame(mesh, static_cast<int>(e), 0.0, 0.0).det;
        for (int j = 0; j <= p; ++j)
            for (int i = 0; i <= p; ++i)
                total += det * mesh.rule.weights[i] * mesh.rule.weights[j] *
                         f(mesh.quads[e][j * (p + 1) + i]);
    }
    return total;
}

Complex eval_field(const SpectralMesh& mesh, const Eigen::VectorXcd& f, double x,
                   double y) {
    Location loc = locate_point(mesh, x, y);
    int p = mesh.order;
    std::vector<double> lx(p + 1), lz(p + 1);
    lagrange_eval_all(mesh.rule, loc.xi, lx.data());
    lagrange_eval_all(mesh.rule, loc.zeta, lz.data());
    Complex v = 0.0;
    for (int j = 0; j <= p; ++j)
        for (int i = 0; i <= p; ++i)
            v += lx[i] * lz[j] * f(mesh.quads[loc.elem][j * (p + 1) + i]);
    return v;
}

Eigen::VectorXcd interpolate_field(const SpectralMesh& from, const Eigen::VectorXcd& f,
                                   const SpectralMesh& to) {
    Eigen::VectorXcd out(to.num_nodes());
    for (int i = 0; i < to.num_nodes(); ++i)
        out(i) = eval_field(from, f, to.coord_x[i], to.coord_y[i]);
    return out;
}

double error_relative(const SpectralMesh& ref_mesh, const Eigen::VectorXcd& on_ref,
                      const Eigen::VectorXcd& ref) {
    Complex denom = integrate_field(ref_mesh, ref);
    if (std::abs(denom) == 0.0)
        throw std::domain_error("error_relative: reference integral vanishes");
    Complex num = integrate_field(ref_mesh, Eigen::VectorXcd(on_ref - ref));
    return std::abs(num / denom);
}

std::vector<ProfilePoint> extract_profile(const SpectralMesh& mesh,
                                          const Eigen::VectorXcd& phi_hat,
                                          const WaveEnvironment& env,
                                          const Bathymetry& bathy, char axis,
                                          double value, int samples,
                                          double h_incident) {
    if (samples < 2) throw std::invalid_argument("extract_profile: need >= 2 samples");
    double lo = (axis == 'x') ? mesh.domain.y0 : mesh.domain.x0;
    double hi = (axis == 'x') ? mesh.domain.y1 : mesh.domain.x1;
    std::vector<ProfilePoint> out(samples);
    for (int s = 0; s < samples; ++s) {
        double t = lo + (hi - lo) * s / (samples - 1);
        double x = (axis == 'x') ? value : t;
        double y = (axis == 'x') ? t : value;
        Complex ph = eval_field(mesh, phi_hat, x, y);
        DispersionState ds = dispersion_state(env.omega, bathy.depth(x, y));
        double hh = wave_height(from_helmholtz_var(ph, ds.c, ds.cg), env.omega);
        out[s] = {t, hh / h_incident};
    }
    return out;
}

bool load_field(const std::string& path, const std::string& tag, Eigen::VectorXcd& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::string magic, line;
    if (!std::getline(in, magic) || magic != "MSWF1") return false;
    if (!std::getline(in, line) || line != tag) return false;
    std::int64_t n = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    if (!in || n < 0 || n > (1 << 28)) return false;
    out.resize(n);
    in.read(reinterpret_cast<char*>(out.data()),
            static_cast<std::streamsize>(n) * sizeof(Complex));
    return static_cast<bool>(in);
}

void save_field(const std::string& path, const std::string& tag,
                const Eigen::VectorXcd& field) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("save_field: cannot open " + path);
    os << "MSWF1\n" << tag << "\n";
    std::int64_t n = field.size();
    os.write(reinterpret_cast<const char*>(&n), sizeof(n));
    os.write(reinterpret_cast<const char*>(field.data()),
             static_cast<std::streamsize>(n) * sizeof(Complex));
    if (!os) throw std::runtime_error("save_field: write failed for " + path);
}

std::string field_tag(const std::string& case_id, int p, const SpectralMesh& mesh) {
    std::ostringstream tag;
    tag << case_id << " p=" << p << " nx=" << mesh.nx << " ny=" << mesh.ny << " domain=["
        << mesh.domain.x0 << "," << mesh.domain.x1 << "]x[" << mesh.domain.y0 << ","
        << mesh.domain.y1 << "]";
    return tag.str();
}

}  // namespace mswave
