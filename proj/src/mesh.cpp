#include "mswave/mesh.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace mswave {

SpectralMesh build_structured_mesh(const Rect& domain, int nx, int ny, int p) {
    if (nx < 1 || ny < 1 || p < 1)
        throw std::invalid_argument("build_structured_mesh: nx, ny, p must be >= 1");
    if (domain.width() <= 0.0 || domain.height() <= 0.0)
        throw std::invalid_argument("build_structured_mesh: degenerate rectangle");

    SpectralMesh mesh;
    mesh.order = p;
    mesh.nx = nx;
    mesh.ny = ny;
    mesh.domain = domain;
    mesh.rule = lgl_rule(p);

    const int gnx = nx * p + 1;
    const int gny = ny * p + 1;
    const int n_nodes = gnx * gny;

    // Grid coordinates: LGL nodes mapped into each element interval.
    std::vector<double> gx(gnx), gy(gny);
    double hx = domain.width() / nx, hy = domain.height() / ny;
    for (int e = 0; e < nx; ++e)
        for (int m = 0; m <= p; ++m)
            gx[e * p + m] = domain.x0 + hx * (e + 0.5 * (mesh.rule.nodes[m] + 1.0));
    for (int e = 0; e < ny; ++e)
        for (int m = 0; m <= p; ++m)
            gy[e * p + m] = domain.y0 + hy * (e + 0.5 * (mesh.rule.nodes[m] + 1.0));
    gx[gnx - 1] = domain.x1;
    gy[gny - 1] = domain.y1;

    // Global numbering: interior nodes first, boundary nodes last in
    // counterclockwise loop order starting at the (x0, y0) corner.
    std::vector<int> grid_id(n_nodes, -1);
    auto gidx = [gnx](int ix, int iy) { return iy * gnx + ix; };

    int next = 0;
    for (int iy = 1; iy < gny - 1; ++iy)
        for (int ix = 1; ix < gnx - 1; ++ix)
            grid_id[gidx(ix, iy)] = next++;
    mesh.num_interior = next;

    std::vector<std::pair<int, int>> loop;  // (ix, iy) along the loop
    loop.reserve(2 * (gnx + gny) - 4);
    for (int ix = 0; ix < gnx - 1; ++ix) loop.emplace_back(ix, 0);
    for (int iy = 0; iy < gny - 1; ++iy) loop.emplace_back(gnx - 1, iy);
    for (int ix = gnx - 1; ix > 0; --ix) loop.emplace_back(ix, gny - 1);
    for (int iy = gny - 1; iy > 0; --iy) loop.emplace_back(0, iy);

    mesh.coord_x.resize(n_nodes);
    mesh.coord_y.resize(n_nodes);
    for (auto [ix, iy] : loop) {
        grid_id[gidx(ix, iy)] = next;
        mesh.boundary_nodes.push_back(next);
        ++next;
    }
    for (int iy = 0; iy < gny; ++iy)
        for (int ix = 0; ix < gnx; ++ix) {
            int id = grid_id[gidx(ix, iy)];
            mesh.coord_x[id] = gx[ix];
            mesh.coord_y[id] = gy[iy];
        }

    // Quads, x fastest within each element.
    mesh.quads.reserve(static_cast<size_t>(nx) * ny);
    for (int ey = 0; ey < ny; ++ey)
        for (int ex = 0; ex < nx; ++ex) {
            std::vector<int> conn((p + 1) * (p + 1));
            for (int jy = 0; jy <= p; ++jy)
                for (int jx = 0; jx <= p; ++jx)
                    conn[jy * (p + 1) + jx] = grid_id[gidx(ex * p + jx, ey * p + jy)];
            mesh.quads.push_back(std::move(conn));
        }

    // Boundary elements: one per quad edge segment along the loop.
    const int n_be = 2 * (nx + ny);
    const int n_loop = static_cast<int>(loop.size());
    mesh.boundary_elems.reserve(n_be);
    int pos = 0;
    for (int e = 0; e < n_be; ++e) {
        std::vector<int> conn(p + 1);
        for (int m = 0; m <= p; ++m) {
            int idx = (pos + m) % n_loop;
            conn[m] = mesh.boundary_nodes[idx];
        }
        mesh.boundary_elems.push_back(std::move(conn));
        pos += p;
    }
    return mesh;
}

ElementFrame element_frame(const SpectralMesh& mesh, int elem, double xi, double zeta) {
    const auto& conn = mesh.quads.at(elem);
    const int n1 = mesh.order + 1;
    std::vector<double> lx(n1), lz(n1), dlx(n1), dlz(n1);
    lagrange_eval_all(mesh.rule, xi, lx.data());
    lagrange_eval_all(mesh.rule, zeta, lz.data());
    lagrange_deriv_all(mesh.rule, xi, dlx.data());
    lagrange_deriv_all(mesh.rule, zeta, dlz.data());

    ElementFrame f;
    double dxdxi = 0, dxdze = 0, dydxi = 0, dydze = 0;
    for (int jy = 0; jy < n1; ++jy)
        for (int jx = 0; jx < n1; ++jx) {
            int id = conn[jy * n1 + jx];
            double x = mesh.coord_x[id], y = mesh.coord_y[id];
            dxdxi += x * dlx[jx] * lz[jy];
            dxdze += x * lx[jx] * dlz[jy];
            dydxi += y * dlx[jx] * lz[jy];
            dydze += y * lx[jx] * dlz[jy];
        }
    f.jac = {dxdxi, dxdze, dydxi, dydze};
    f.det = dxdxi * dydze - dxdze * dydxi;
    if (f.det <= 0.0) throw std::runtime_error("element_frame: inverted element");
    return f;
}

BoundaryFrame boundary_frame(const SpectralMesh& mesh, int belem, double xi) {
    const auto& conn = mesh.boundary_elems.at(belem);
    const int n1 = mesh.order + 1;
    std::vector<double> l(n1), dl(n1);
    lagrange_eval_all(mesh.rule, xi, l.data());
    lagrange_deriv_all(mesh.rule, xi, dl.data());

    BoundaryFrame f;
    double dx = 0, dy = 0;
    for (int m = 0; m < n1; ++m) {
        int id = conn[m];
        f.x += mesh.coord_x[id] * l[m];
        f.y += mesh.coord_y[id] * l[m];
        dx += mesh.coord_x[id] * dl[m];
        dy += mesh.coord_y[id] * dl[m];
    }
    f.arc_jac = std::hypot(dx, dy);
    f.tx = dx / f.arc_jac;
    f.ty = dy / f.arc_jac;
    // Counterclockwise traversal: the inner-region outward normal is the
    // tangent rotated clockwise.
    f.nx = f.ty;
    f.ny = -f.tx;
    return f;
}

BoundaryTrace boundary_trace(const SpectralMesh& mesh) {
    BoundaryTrace t;
    t.loop_to_node = mesh.boundary_nodes;
    t.node_to_loop.assign(mesh.num_nodes(), -1);
    for (int i = 0; i < mesh.num_boundary(); ++i) t.node_to_loop[mesh.boundary_nodes[i]] = i;
    return t;
}

namespace {

// Inverse of the LGL piecewise map on one axis: element index and local coord.
std::pair<int, double> locate_axis(double v, double v0, double h, int n, double tol) {
    double s = (v - v0) / h;
    if (s < -tol || s > n + tol) throw std::runtime_error("locate_point: outside domain");
    int e = std::clamp(static_cast<int>(std::floor(s)), 0, n - 1);
    double local = 2.0 * (s - e) - 1.0;
    return {e, std::clamp(local, -1.0, 1.0)};
}

}  // namespace

Location locate_point(const SpectralMesh& mesh, double x, double y) {
    double hx = mesh.domain.width() / mesh.nx;
    double hy = mesh.domain.height() / mesh.ny;
    auto [ex, xi] = locate_axis(x, mesh.domain.x0, hx, mesh.nx, 1e-10);
    auto [ey, zeta] = locate_axis(y, mesh.domain.y0, hy, mesh.ny, 1e-10);
    return {ey * mesh.nx + ex, xi, zeta};
}

void dump_mesh(const SpectralMesh& mesh, std::ostream& os) {
    os << "nodes " << mesh.num_nodes() << "\n";
    for (int i = 0; i < mesh.num_nodes(); ++i)
        os << i << " " << mesh.coord_x[i] << " " << mesh.coord_y[i] << "\n";
    os << "quads " << mesh.quads.size() << "\n";
    for (size_t e = 0; e < mesh.quads.size(); ++e) {
        os << e;
        for (int id : mesh.quads[e]) os << " " << id;
        os << "\n";
    }
    os << "boundary_elems " << mesh.boundary_elems.size() << "\n";
    for (size_t e = 0; e < mesh.boundary_elems.size(); ++e) {
        os << e;
        for (int id : mesh.boundary_elems[e]) os << " " << id;
        os << "\n";
    }
}

}  // namespace mswave
