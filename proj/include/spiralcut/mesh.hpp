#pragma once
#include <optional>
#include <unordered_map>
#include <vector>

#include "spiralcut/geometry.hpp"

namespace spiralcut {

struct Triangle {
    std::array<int, 3> v{-1, -1, -1};  // ccw viewed from outside
    int face_id = -1;                  // coplanar triangles share a face id
};

struct MeshEdge {
    int a = -1, b = -1;      // a < b
    int tri[2] = {-1, -1};   // the two incident triangles
    bool has(int v) const { return a == v || b == v; }
    int other(int v) const { return v == a ? b : a; }
};

// Watertight triangulated closed surface mesh. Coplanar triangle fans keep
// the face id of the polygonal face they came from, so triangulation never
// introduces artificial creases in intrinsic-angle bookkeeping.
class Polyhedron {
public:
    std::vector<Vec3> vertices;
    std::vector<Triangle> triangles;
    std::vector<MeshEdge> edges;
    std::vector<std::vector<int>> vertex_triangles;  // unordered incidence
    bool convex = false;

    static Polyhedron from_triangles(std::vector<Vec3> verts,
                                     const std::vector<std::array<int, 3>>& tris,
                                     bool convex_flag = false);

    int edge_index(int a, int b) const;  // -1 if absent
    // An edge is a crease when its two triangles belong to different faces;
    // flat triangulation diagonals are not creases.
    bool edge_is_crease(int e) const {
        return triangles[edges[e].tri[0]].face_id != triangles[edges[e].tri[1]].face_id;
    }
    Vec3 triangle_normal(int t) const;   // unit outward normal
    double triangle_area(int t) const;
    double surface_area() const;
    double signed_volume() const;
    Vec3 centroid() const;

    double min_z() const;
    double max_z() const;
    double diameter() const { return diameter_; }
    double default_height_tol() const { return 1e-9 * diameter_; }

    // Throws if the mesh is not a closed 2-manifold with outward
    // orientation (flat doubly covered polygons pass with volume 0).
    void validate() const;
    bool is_convex(double tol_factor = 1e-9) const;

    // Total angle of incident triangle corners at vertex v.
    double total_vertex_angle(int v) const;

    // Triangles incident to v, ordered ccw about the outward normal.
    // fan[i] shares edge (v, ring[i+1]) with fan[i+1]; ring has one entry
    // per fan triangle, the wedge's leading direction endpoint.
    struct VertexFan {
        std::vector<int> tris;
        std::vector<int> ring;  // ring[i] = third vertex starting wedge i
    };
    VertexFan vertex_fan(int v) const;

private:
    std::unordered_map<std::uint64_t, int> edge_lookup_;
    double diameter_ = 0.0;

    void build_adjacency();
    void assign_face_ids();
    void compute_diameter();
};

Polyhedron orient(const Polyhedron& p, const Mat3& rotation);

// 2*pi minus the sum of incident face angles at v.
double gaussian_curvature(const Polyhedron& p, int v);

double total_curvature(const Polyhedron& p);

}  // namespace spiralcut
