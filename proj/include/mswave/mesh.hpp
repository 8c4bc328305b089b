#pragma once

#include "mswave/specbasis.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace mswave {

struct Rect {
    double x0 = 0.0, x1 = 1.0;
    double y0 = 0.0, y1 = 1.0;
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
};

/// Jacobian data of the isoparametric map at a local point.
struct ElementFrame {
    std::array<double, 4> jac{};  // [dx/dxi, dx/dzeta, dy/dxi, dy/dzeta]
    double det = 0.0;             // m^2, must be positive
};

/// Geometry of a boundary element at a local coordinate.
struct BoundaryFrame {
    double x = 0.0, y = 0.0;
    double arc_jac = 0.0;               // |dx/dxi|, m
    double nx = 0.0, ny = 0.0;          // unit normal, outward of the inner region
    double tx = 0.0, ty = 0.0;          // unit tangent along traversal
};

/// Structured conforming quadrilateral spectral-element mesh with the matched
/// boundary-element loop. Boundary nodes are numbered last so the coupled
/// system blocks slice contiguously; the loop is traversed counterclockwise.
struct SpectralMesh {
    int order = 1;
    int nx = 1, ny = 1;
    Rect domain;
    LglRule rule;

    std::vector<double> coord_x, coord_y;            // global node coordinates
    std::vector<std::vector<int>> quads;             // (p+1)^2 ids, x fastest
    std::vector<std::vector<int>> boundary_elems;    // p+1 ids along the loop
    std::vector<int> boundary_nodes;                 // loop order, size N_c
    int num_interior = 0;

    int num_nodes() const { return static_cast<int>(coord_x.size()); }
    int num_boundary() const { return static_cast<int>(boundary_nodes.size()); }
};

/// nx-by-ny quads of order p on a rectangle, plus the 2(nx+ny) element
/// boundary loop matching the quad edges node for node.
SpectralMesh build_structured_mesh(const Rect& domain, int nx, int ny, int p);

ElementFrame element_frame(const SpectralMesh& mesh, int elem, double xi, double zeta);

BoundaryFrame boundary_frame(const SpectralMesh& mesh, int belem, double xi);

/// Maps between SEM global node ids and BSEM loop indices.
struct BoundaryTrace {
    std::vector<int> loop_to_node;  // BSEM index -> SEM global node id
    std::vector<int> node_to_loop;  // SEM global node id -> BSEM index or -1
};

BoundaryTrace boundary_trace(const SpectralMesh& mesh);

/// Element containing (x, y) and its local coordinates; throws when the point
/// lies outside the domain (beyond a small tolerance).
struct Location {
    int elem = -1;
    double xi = 0.0, zeta = 0.0;
};
Location locate_point(const SpectralMesh& mesh, double x, double y);

/// Plain-text node/element listing for debugging.
void dump_mesh(const SpectralMesh& mesh, std::ostream& os);

}  // namespace mswave
