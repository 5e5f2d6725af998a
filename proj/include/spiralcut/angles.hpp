#pragma once
#include <optional>
#include <vector>

#include "spiralcut/mesh.hpp"

namespace spiralcut {

// A point on the surface, anchored to the mesh element hosting it.
struct SurfacePoint {
    enum class Kind { vertex, edge_point, face_point };
    Kind kind = Kind::vertex;
    int id = -1;      // vertex index, edge index, or triangle index
    double t = 0.0;   // edge parameter for edge_point
    Vec3 pos;

    static SurfacePoint at_vertex(const Polyhedron& p, int v) {
        return {Kind::vertex, v, 0.0, p.vertices[v]};
    }
    static SurfacePoint on_edge(const Polyhedron& p, int e, double t) {
        const MeshEdge& me = p.edges[e];
        return {Kind::edge_point, e, t,
                p.vertices[me.a] + (p.vertices[me.b] - p.vertices[me.a]) * t};
    }
};

enum class PlaneSide { below, above };

// Intrinsic angles from a tangent direction to the horizontal section of
// the surface through the point: rho_h sweeps clockwise (viewed from
// outside), lambda_h counterclockwise. The direction must point into the
// requested side of the horizontal plane and the sweep stays on that side,
// so rho_h + lambda_h equals the total surface angle on that side.
struct SurfaceAngleSplit {
    double rho_h = 0.0;
    double lambda_h = 0.0;
};

// Development of the full direction fan around a surface point: cyclic,
// ccw about the outward normal, total angle 2*pi - curvature at vertices
// and 2*pi elsewhere.
struct DirectionFan {
    struct Wedge {
        int triangle;
        double start_angle;  // cumulative intrinsic angle of the leading direction
        double angle;        // wedge width
        Vec3 lead_dir;       // unit 3D direction at start_angle
        Vec3 in_normal;      // unit in-plane normal, ccw from lead_dir
    };
    std::vector<Wedge> wedges;
    double total = 0.0;

    // Intrinsic cyclic angle of a 3D tangent direction.
    double angle_of(const Vec3& dir) const;
    // 3D unit direction at a given intrinsic angle.
    Vec3 dir_at(double angle) const;
    // z-component of the unit direction at a given intrinsic angle.
    double z_at(double angle) const;
};

DirectionFan direction_fan(const Polyhedron& p, const SurfacePoint& at);

SurfaceAngleSplit surface_angle_split(const Polyhedron& p, const SurfacePoint& at,
                                      const Vec3& dir, PlaneSide side);

// Thrown internally when the horizontal section through the point is empty
// (bottom-most / top-most point); callers waive the ccw clause there.
struct NoHorizontalSection : Error { using Error::Error; };

}  // namespace spiralcut
