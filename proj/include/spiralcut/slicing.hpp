#pragma once
#include <vector>

#include "spiralcut/mesh.hpp"

namespace spiralcut {

struct SliceCorner {
    enum class Host { edge, vertex };
    Host host = Host::edge;
    int host_id = -1;   // edge index or vertex index
    double t = 0.0;     // position on the edge from edge.a to edge.b
    Vec3 pos;
};

// Intersection of the surface with the horizontal plane z = const, as a
// cyclic polygon ordered ccw viewed from +z. Slices exactly through a
// vertex report that corner as vertex-hosted.
struct SlicePolygon {
    double z = 0.0;
    std::vector<SliceCorner> corners;
    bool degenerate = false;  // slice at the extreme z collapsed to a point/edge/face

    int find_vertex_corner(int vertex) const;
};

// Vertex-free horizontal slab with its cyclic strip of crossing edges.
struct Band {
    double z_lo = 0.0, z_hi = 0.0;
    std::vector<int> crossing_edges;      // cyclic, ccw about +z
    std::vector<double> crossing_angle;   // angular position at mid-height
    Vec3 mid_centroid;                    // centre used for angular positions
    SlicePolygon lower, upper;
};

SlicePolygon slice_at(const Polyhedron& p, double z, double height_tol = -1.0);

Band band_between(const Polyhedron& p, double z_lo, double z_hi, double height_tol = -1.0);

// Groups of vertex indices at equal heights, ascending in z. Within a
// group, vertices follow the ccw order of the slice polygon at that
// height, rotated so the lowest id comes first.
std::vector<std::vector<int>> vertex_levels(const Polyhedron& p, double height_tol = -1.0);

}  // namespace spiralcut
