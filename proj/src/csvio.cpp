#include "mswave/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mswave {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);  // binary: LF endings everywhere
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    return os;
}

// Shortest representation that round-trips a double exactly.
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void finish(std::ofstream& os, const std::string& path) {
    os.flush();
    if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void write_field_csv(const SpectralMesh& mesh, const FieldSolution& sol,
                     const std::string& path) {
    std::ofstream os = open_out(path);
    os << "x,y,re_phi_hat,im_phi_hat,re_phi,im_phi,H,H_norm\n";
    for (int i = 0; i < mesh.num_nodes(); ++i) {
        double hn = sol.height(i) / sol.h_incident;
        os << num(mesh.coord_x[i]) << ',' << num(mesh.coord_y[i]) << ','
           << num(sol.phi_hat(i).real()) << ',' << num(sol.phi_hat(i).imag()) << ','
           << num(sol.phi(i).real()) << ',' << num(sol.phi(i).imag()) << ','
           << num(sol.height(i)) << ',' << num(hn) << '\n';
    }
    finish(os, path);
}

void write_profile_csv(const std::vector<ProfilePoint>& series, const std::string& path) {
    std::ofstream os = open_out(path);
    os << "coord,h_norm\n";
    for (const ProfilePoint& pt : series)
        os << num(pt.coord) << ',' << num(pt.h_norm) << '\n';
    finish(os, path);
}

void write_convergence_csv(const std::vector<ErrorReport>& reports,
                           const std::string& path) {
    std::ofstream os = open_out(path);
    os << "p,n,dof,linf_error,relative_error,runtime_s\n";
    for (const ErrorReport& r : reports)
        os << r.p << ',' << r.n << ',' << r.dof << ',' << num(r.linf) << ','
           << num(r.relative) << ',' << num(r.runtime_s) << '\n';
    finish(os, path);
}

}  // namespace mswave
