#pragma once
#include <vector>

#include "spiralcut/spiral.hpp"

namespace spiralcut {

// The surface cut open along the spiral: a topological disk whose boundary
// runs up the right side of the cut and back down the left side.
struct CutDisk {
    std::vector<Vec3> points;                  // per cut-point position
    std::vector<int> source_corner;            // spiral corner index or -1
    std::vector<std::array<int, 3>> triangles; // ccw viewed from outside
    std::vector<int> source_triangle;          // original mesh triangle
    std::vector<int> rho_chain;                // point ids, bottom to top (surface right)
    std::vector<int> lambda_chain;             // point ids, bottom to top (surface left)
    std::vector<char> corner_is_vertex;        // per spiral corner
    double surface_diameter = 0.0;

    int corner_count() const { return static_cast<int>(rho_chain.size()); }
    long euler_characteristic() const;
    double area() const;
    double boundary_length() const;
};

struct BoundaryPoint {
    Vec2 pos;
    bool is_polyhedron_vertex = false;
    int corner_index = -1;
};

struct PlanarLayout {
    struct PlacedTriangle {
        std::array<Vec2, 3> pts;
        std::array<int, 3> point_ids;
        int source_triangle = -1;
    };
    std::vector<PlacedTriangle> triangles;
    std::vector<Vec2> placed;           // per cut-point 2D position
    std::vector<int> source_corner;     // per cut-point spiral corner or -1
    std::vector<BoundaryPoint> rho;
    std::vector<BoundaryPoint> lambda;
    std::vector<int> rho_ids, lambda_ids;
    double scale = 0.0;                 // 3D surface diameter, for tolerances

    double diameter2d() const;
};

CutDisk cut_surface(const Polyhedron& p, const SpiralPath& s, double height_tol = -1.0);

// Breadth-first rigid development; p_1 at the origin, the first rho
// segment along +x, the surface to the right of rho.
PlanarLayout develop(const CutDisk& d);

enum class PathEndpoint { bottom, top };

// Gap angle of the layout boundary at the image of p_1 / p_m; equals the
// Gaussian curvature at the corresponding polyhedron vertex.
double endpoint_exterior_angle(const PlanarLayout& l, PathEndpoint which);

std::pair<std::vector<BoundaryPoint>, std::vector<BoundaryPoint>> boundary_paths(
    const PlanarLayout& l);

}  // namespace spiralcut
